#include "thimac/trace.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <sstream>

namespace thimac {

namespace {

constexpr std::array<std::pair<Action, std::string_view>, 9> kNames = {{
    {Action::Create, "create"},
    {Action::Enter, "enter"},
    {Action::Exit, "exit"},
    {Action::Spawn, "spawn"},
    {Action::Park, "park"},
    {Action::Unpark, "unpark"},
    {Action::Consume, "consume"},
    {Action::TriggerFire, "trigger-fire"},
    {Action::CounterSet, "counter-set"},
}};

template <typename Int>
bool parse_int(std::string_view text, Int& out) {
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

// Reads "key=value" from the front of `rest`, advancing past the following
// space.
std::optional<std::string_view> field(std::string_view& rest, std::string_view key) {
    if (rest.substr(0, key.size()) != key || rest.size() <= key.size() ||
        rest[key.size()] != '=')
        return std::nullopt;
    rest.remove_prefix(key.size() + 1);
    const auto space = rest.find(' ');
    const auto value = rest.substr(0, space);
    rest = space == std::string_view::npos ? std::string_view() : rest.substr(space + 1);
    return value;
}

}  // namespace

std::string_view to_string(Action action) {
    for (const auto& [a, name] : kNames) {
        if (a == action) return name;
    }
    return "?";
}

std::optional<Action> parse_action(std::string_view text) {
    for (const auto& [a, name] : kNames) {
        if (name == text) return a;
    }
    return std::nullopt;
}

bool is_positional(Action action) {
    return action != Action::TriggerFire && action != Action::CounterSet;
}

std::string format_event(const MicroEvent& e) {
    std::string out = "tick=" + std::to_string(e.tick) + " token=" + std::to_string(e.token) +
                      " flow=" + e.flow + " path=" + e.path + " action=";
    out += to_string(e.action);
    if (e.action == Action::CounterSet) {
        out += " counter=" + e.counter + " value=" + std::to_string(e.value);
    }
    return out;
}

bool write_trace(const Trace& trace, std::ostream& sink) {
    for (const MicroEvent& e : trace) sink << format_event(e) << '\n';
    sink.flush();
    return static_cast<bool>(sink);
}

std::string trace_text(const Trace& trace) {
    std::ostringstream out;
    write_trace(trace, out);
    return out.str();
}

std::optional<MicroEvent> parse_event(std::string_view line) {
    MicroEvent e;
    auto tick = field(line, "tick");
    auto token = field(line, "token");
    auto flow = field(line, "flow");
    auto path = field(line, "path");
    auto action = field(line, "action");
    if (!tick || !token || !flow || !path || !action) return std::nullopt;
    if (!parse_int(*tick, e.tick) || !parse_int(*token, e.token)) return std::nullopt;
    auto a = parse_action(*action);
    if (!a) return std::nullopt;
    e.flow = std::string(*flow);
    e.path = std::string(*path);
    e.action = *a;
    if (e.action == Action::CounterSet) {
        auto counter = field(line, "counter");
        auto value = field(line, "value");
        if (!counter || !value || !parse_int(*value, e.value)) return std::nullopt;
        e.counter = std::string(*counter);
    }
    if (!line.empty()) return std::nullopt;
    return e;
}

}  // namespace thimac
