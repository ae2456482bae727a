#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "support.hpp"
#include "thimac/printer.hpp"

namespace support {

const std::vector<std::string> kReferenceModels = {
    "simple_atm.tm", "banking_atm.tm", "card_instance.tm", "joined_atm.tm"};

const std::map<std::string, std::string> kErrorFixtures = {
    {"bad_adjacency.tm", "E_ADJ"},
    {"bad_ref.tm", "E_REF"},
    {"bad_duplicate_flow.tm", "E_DUP"},
    {"bad_trigger_source.tm", "E_TRIG_SRC"},
    {"bad_trigger_target.tm", "E_TRIG_DST"},
    {"bad_sibling_names.tm", "E_NAME"},
    {"bad_branch.tm", "E_BRANCH"},
    {"bad_guard.tm", "E_GUARD"},
    {"bad_empty_thimac.tm", "E_EMPTY"},
    {"bad_generator.tm", "E_GEN_SPEC"},
    {"bad_syntax.tm", "P002"},
    {"bad_lexical.tm", "P001"},
    {"bad_duplicate_decl.tm", "P003"},
    {"bad_region.tm", "B002"},
    {"bad_chronology_cycle.tm", "C002"},
    {"unreachable.tm", "W_UNREACH"},
};

const std::vector<std::pair<std::string, std::string>> kRuns = {
    {"simple_atm.tm", "mismatch.scn"},
    {"simple_atm.tm", "match.scn"},
    {"banking_atm.tm", "one_failure.scn"},
    {"banking_atm.tm", "two_failures_then_ok.scn"},
    {"banking_atm.tm", "three_failures.scn"},
    {"card_instance.tm", "two_cards.scn"},
};

std::string source_dir() { return THIMAC_SOURCE_DIR; }
std::string corpus_path(const std::string& name) { return source_dir() + "/corpus/" + name; }
std::string golden_path(const std::string& name) { return source_dir() + "/tests/golden/" + name; }

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path);
}

thimac::ParseResult load_model(const std::string& name) {
    auto result = thimac::parse(read_text(corpus_path(name)), name);
    if (!result.model) throw std::runtime_error(name + " does not parse");
    return result;
}

thimac::Scenario load_scenario(const std::string& name) {
    auto parsed = thimac::parse_scenario(read_text(corpus_path(name)), name);
    if (parsed.diagnostics.has_errors()) throw std::runtime_error(name + " does not parse");
    return parsed.scenario;
}

bool matches_golden(const std::string& name, const std::string& actual, std::string* why) {
    const std::string path = golden_path(name);
    if (std::getenv("THIMAC_UPDATE_GOLDENS") != nullptr) {
        write_text(path, actual);
        return true;
    }
    std::string expected;
    try {
        expected = read_text(path);
    } catch (const std::exception& e) {
        if (why) *why = e.what();
        return false;
    }
    if (expected == actual) return true;
    if (why) {
        std::size_t i = 0;
        while (i < expected.size() && i < actual.size() && expected[i] == actual[i]) ++i;
        const auto line = std::count(expected.begin(), expected.begin() + i, '\n') + 1;
        *why = name + " differs from golden at line " + std::to_string(line);
    }
    return false;
}

std::vector<thimac::Joint> atm_transaction_joints() {
    using thimac::StageKind;
    auto joint = [](std::string from, std::string to, std::string outcome) {
        thimac::Joint j;
        j.kind = thimac::Joint::Kind::Trigger;
        j.from = {std::move(from), StageKind::Process};
        j.to = {std::move(to), StageKind::Create};
        j.guard = thimac::Guard{{thimac::GuardTerm{true, thimac::OutcomeRef{std::move(outcome)}}}};
        return j;
    };
    return {joint("ATM.Compare", "Transaction.PinOk", "mismatch"),
            joint("ATM.BankLink", "Transaction.CardValid", "stolen"),
            joint("ATM.Expiry", "Transaction.DateValid", "expired")};
}

std::string joined_atm_text() {
    auto banking = load_model("banking_atm.tm");
    auto stub = load_model("transaction_stub.tm");
    auto joined = thimac::join_models(*banking.model, *stub.model, atm_transaction_joints());
    if (!joined.model) throw std::runtime_error("joined model does not validate");
    return thimac::print_canonical(*joined.model, banking.events, banking.chronology);
}

ScanCounts scan_counts(const std::string& source) {
    // Drop comments, then treat every ';' or '{' / '}' as a statement end.
    static const std::regex comment("#[^\n]*");
    const std::string text = std::regex_replace(source, comment, "");
    static const std::regex stages(R"(\bstages\s*:([^;]*);)");
    static const std::regex kind(R"(\b(create|process|release|transfer|receive)\b)");
    static const std::regex flow(R"(\bflow\s+\w+\s*:([^;]*);)");
    static const std::regex arrow("->");
    static const std::regex trigger(R"(\btrigger\s)");
    static const std::regex counter(R"(\bcounter\s+\w+\s*=)");

    ScanCounts c;
    auto count = [](const std::string& s, const std::regex& re) {
        return static_cast<std::size_t>(
            std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
    };
    for (auto it = std::sregex_iterator(text.begin(), text.end(), stages);
         it != std::sregex_iterator(); ++it)
        c.stages += count((*it)[1].str(), kind);
    for (auto it = std::sregex_iterator(text.begin(), text.end(), flow);
         it != std::sregex_iterator(); ++it)
        c.flow_edges += count((*it)[1].str(), arrow);
    c.triggers = count(text, trigger);
    c.counters = count(text, counter);
    return c;
}

}  // namespace support
