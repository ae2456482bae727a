#include "thimac/scenario.hpp"

#include <charconv>
#include <sstream>

namespace thimac {

namespace {

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return !text.empty() && ec == std::errc() && ptr == end;
}

std::vector<std::string> split_words(std::string_view line) {
    std::istringstream in{std::string(line)};
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    return words;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

class ScenarioParser {
public:
    ScenarioParser(std::string_view text, const std::string& file) : text_(text), file_(file) {}

    ScenarioParse run() {
        std::size_t start = 0;
        while (start <= text_.size()) {
            auto nl = text_.find('\n', start);
            if (nl == std::string_view::npos) nl = text_.size();
            std::string_view line = text_.substr(start, nl - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            ++line_no_;
            line_len_ = static_cast<int>(line.size());
            if (!trim(line).empty()) parse_line(line);
            start = nl + 1;
        }
        return std::move(out_);
    }

private:
    void fail(const std::string& message) {
        out_.diagnostics.error("S001", message,
                               {file_, line_no_, 1, line_no_, std::max(1, line_len_)});
    }

    void parse_line(std::string_view line) {
        const auto words = split_words(line);
        const std::string& head = words[0];
        if (head == "inject") return parse_inject(words);
        if (head == "outcome") return parse_outcome(line);
        if (head == "maxticks" || head == "seed") {
            if (words.size() != 2) return fail("'" + head + "' takes exactly one number");
            if (head == "maxticks") {
                std::int64_t n = 0;
                if (!parse_int(words[1], n) || n < 1)
                    return fail("maxticks must be a positive integer");
                out_.scenario.max_ticks = n;
            } else {
                std::uint64_t n = 0;
                if (!parse_int(words[1], n)) return fail("seed must be a non-negative integer");
                out_.scenario.seed = n;
            }
            return;
        }
        fail("unknown directive '" + head + "'");
    }

    void parse_inject(const std::vector<std::string>& w) {
        if (w.size() < 5 || w[2] != "at" || w[4].rfind("tick=", 0) != 0)
            return fail("expected 'inject <flow> at <path.stage> tick=<n> [attr k=v]...'");
        Injection inj;
        inj.flow = w[1];
        auto ref = parse_stage_ref(w[3]);
        if (!ref) return fail("'" + w[3] + "' is not a stage reference");
        inj.at = *ref;
        if (!parse_int(std::string_view(w[4]).substr(5), inj.tick) || inj.tick < 0)
            return fail("tick must be a non-negative integer");
        for (std::size_t i = 5; i < w.size(); i += 2) {
            if (w[i] != "attr" || i + 1 >= w.size())
                return fail("expected 'attr k=v' after the tick");
            const auto eq = w[i + 1].find('=');
            if (eq == std::string::npos || eq == 0)
                return fail("attribute '" + w[i + 1] + "' is not of the form k=v");
            inj.attrs[w[i + 1].substr(0, eq)] = w[i + 1].substr(eq + 1);
        }
        inj.span = {file_, line_no_, 1, line_no_, std::max(1, line_len_)};
        out_.scenario.injections.push_back(std::move(inj));
    }

    void parse_outcome(std::string_view line) {
        line = trim(line).substr(std::string_view("outcome").size());
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            return fail("expected 'outcome <path.stage>.<name> = true|false,...'");
        const auto key = trim(line.substr(0, eq));
        const auto dot = key.rfind('.');
        if (dot == std::string_view::npos) return fail("outcome key needs a stage and a name");
        auto ref = parse_stage_ref(key.substr(0, dot));
        const auto name = key.substr(dot + 1);
        if (!ref || name.empty())
            return fail("'" + std::string(key) + "' is not <path.stage>.<name>");
        std::vector<bool> values;
        std::string_view rest = line.substr(eq + 1);
        while (true) {
            const auto comma = rest.find(',');
            const auto item = trim(rest.substr(0, comma));
            if (item == "true") {
                values.push_back(true);
            } else if (item == "false") {
                values.push_back(false);
            } else {
                return fail("outcome value '" + std::string(item) + "' is not true or false");
            }
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        auto& slot = out_.scenario.outcomes[{*ref, std::string(name)}];
        slot.insert(slot.end(), values.begin(), values.end());
    }

    std::string_view text_;
    const std::string& file_;
    int line_no_ = 0;
    int line_len_ = 0;
    ScenarioParse out_;
};

}  // namespace

ScenarioParse parse_scenario(std::string_view text, const std::string& file_name) {
    return ScenarioParser(text, file_name).run();
}

}  // namespace thimac
