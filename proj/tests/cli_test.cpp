#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "support.hpp"
#include "thimac/cli.hpp"
#include "thimac/printer.hpp"

using namespace thimac;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

Outcome run_tm(std::vector<std::string> args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = run_cli(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string corpus(const std::string& name) { return support::corpus_path(name); }

std::size_t lines_with(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        if (line.find(needle) != std::string::npos) ++n;
    return n;
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("thimac_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

}  // namespace

TEST(Cli, CheckReferenceModels) {
    for (const auto& model : support::kReferenceModels) {
        auto r = run_tm({"check", corpus(model)});
        EXPECT_EQ(r.code, kExitOk) << model << "\n" << r.err;
        EXPECT_TRUE(r.err.empty()) << r.err;
    }
}

TEST(Cli, CheckFixtures) {
    for (const auto& [file, code] : support::kErrorFixtures) {
        if (code[0] == 'B' || code[0] == 'C') continue;  // behaviour checks, not `check`
        auto r = run_tm({"check", corpus(file)});
        const int expected = code[0] == 'P' ? kExitParse : code[0] == 'W' ? kExitOk : kExitFailure;
        EXPECT_EQ(r.code, expected) << file << "\n" << r.err;
        EXPECT_GE(lines_with(r.err, code + ":"), 1u) << file << "\n" << r.err;
    }
    auto adj = run_tm({"check", corpus("bad_adjacency.tm")});
    EXPECT_EQ(lines_with(adj.err, "error"), 1u) << adj.err;
    EXPECT_EQ(lines_with(adj.err, "bad_adjacency.tm:"), 1u) << adj.err;
}

TEST(Cli, IoAndUsageErrors) {
    EXPECT_EQ(run_tm({"check", corpus("no_such_model.tm")}).code, kExitIo);
    EXPECT_EQ(run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("none.scn")}).code,
              kExitIo);
    EXPECT_EQ(run_tm({}).code, kExitUsage);
    EXPECT_EQ(run_tm({"launch"}).code, kExitUsage);
    EXPECT_EQ(run_tm({"simulate", corpus("simple_atm.tm")}).code, kExitUsage);
    EXPECT_EQ(run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("match.scn"),
                  "--max-ticks", "0"})
                  .code,
              kExitUsage);
    EXPECT_EQ(run_tm({"render", corpus("simple_atm.tm"), "--format", "png"}).code, kExitUsage);
    auto help = run_tm({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_NE(help.out.find("simulate"), std::string::npos);
}

TEST(Cli, ParseErrorsExitTwo) {
    for (const char* file : {"bad_syntax.tm", "bad_lexical.tm", "bad_duplicate_decl.tm"}) {
        EXPECT_EQ(run_tm({"check", corpus(file)}).code, kExitParse) << file;
        EXPECT_EQ(run_tm({"render", corpus(file)}).code, kExitParse) << file;
        EXPECT_EQ(run_tm({"fmt", "--check", corpus(file)}).code, kExitParse) << file;
    }
}

TEST(Cli, SimulatePrintsTheGoldenTrace) {
    auto r = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("mismatch.scn")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.out, support::read_text(support::golden_path("trace_simple_atm_mismatch.txt")));
    for (int i = 0; i < 3; ++i)
        EXPECT_EQ(run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("mismatch.scn")}).out,
                  r.out);
}

TEST(Cli, SimulateWritesTraceFile) {
    TempDir dir;
    const auto path = dir.file("trace.txt");
    auto r = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("match.scn"),
                 "--trace-out", path});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(support::read_text(path),
              support::read_text(support::golden_path("trace_simple_atm_match.txt")));
    auto bad = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("match.scn"),
                   "--trace-out", dir.file("missing/dir/trace.txt")});
    EXPECT_EQ(bad.code, kExitIo);
}

TEST(Cli, SimulateLimitsAndFailures) {
    auto r = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", corpus("mismatch.scn"),
                 "--max-ticks", "3"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(lines_with(r.out, "tick=3 "), 0u);
    EXPECT_GT(lines_with(r.out, "tick=2 "), 0u);

    TempDir dir;
    const auto scn = dir.file("no_outcome.scn");
    support::write_text(scn, "inject card at User.create tick=0\ninject pin at User.create tick=1\n");
    auto fail = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", scn});
    EXPECT_EQ(fail.code, kExitFailure);
    EXPECT_NE(fail.err.find("E_SIM_OUTCOME"), std::string::npos) << fail.err;

    const auto broken = dir.file("broken.scn");
    support::write_text(broken, "inject card\n");
    auto parse = run_tm({"simulate", corpus("simple_atm.tm"), "--scenario", broken});
    EXPECT_EQ(parse.code, kExitParse);
    EXPECT_NE(parse.err.find("S001"), std::string::npos);

    EXPECT_EQ(run_tm({"simulate", corpus("bad_adjacency.tm"), "--scenario", corpus("match.scn")}).code,
              kExitFailure);
}

TEST(Cli, SeedOverride) {
    auto a = run_tm({"simulate", corpus("card_instance.tm"), "--scenario", corpus("two_cards.scn")});
    auto b = run_tm({"simulate", corpus("card_instance.tm"), "--scenario", corpus("two_cards.scn"),
                 "--seed", "2015"});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BehaveVerdicts) {
    auto ok = run_tm({"behave", corpus("simple_atm.tm"), "--scenario", corpus("mismatch.scn")});
    EXPECT_EQ(ok.code, kExitOk) << ok.err;
    EXPECT_EQ(ok.out, support::read_text(support::golden_path("report_simple_atm_mismatch.txt")));

    auto bad = run_tm({"behave", corpus("simple_atm_inverted.tm"), "--scenario", corpus("match.scn")});
    EXPECT_EQ(bad.code, kExitFailure);
    EXPECT_EQ(bad.out.rfind("verdict=VIOLATES\n", 0), 0u) << bad.out;
    EXPECT_EQ(lines_with(bad.out, "violation "), 1u);
    EXPECT_EQ(lines_with(bad.out, "violation event=E1 tick=3 missing=E2"), 1u) << bad.out;
}

TEST(Cli, BehaveOnBankingUsesOnlyDeclaredEvents) {
    auto r = run_tm({"behave", corpus("banking_atm.tm"), "--scenario", corpus("three_failures.scn")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    std::istringstream in(r.out);
    std::size_t occurrences = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("occurrence event=", 0) != 0) continue;
        ++occurrences;
        const std::string id = line.substr(17, line.find(' ', 17) - 17);
        EXPECT_TRUE(id.size() == 2 && id[0] == 'E' && id[1] >= '1' && id[1] <= '9') << line;
    }
    EXPECT_GT(occurrences, 0u);
    EXPECT_EQ(lines_with(r.out, "occurrence event=E7 "), 1u);
}

TEST(Cli, BehaveNeedsEventsAndChronology) {
    auto r = run_tm({"behave", corpus("transaction_stub.tm"), "--scenario", corpus("match.scn")});
    EXPECT_EQ(r.code, kExitFailure);
    auto region = run_tm({"behave", corpus("bad_region.tm"), "--scenario", corpus("match.scn")});
    EXPECT_EQ(region.code, kExitFailure);
    EXPECT_NE(region.err.find("B002"), std::string::npos) << region.err;
    auto cycle = run_tm({"behave", corpus("bad_chronology_cycle.tm"), "--scenario", corpus("match.scn")});
    EXPECT_EQ(cycle.code, kExitFailure);
    EXPECT_NE(cycle.err.find("C002"), std::string::npos) << cycle.err;
}

TEST(Cli, RenderToStdoutAndFile) {
    auto r = run_tm({"render", corpus("simple_atm.tm")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out, support::read_text(support::golden_path("dot_simple_atm.dot")));
    auto explicit_format = run_tm({"render", corpus("simple_atm.tm"), "--format", "dot"});
    EXPECT_EQ(explicit_format.out, r.out);

    TempDir dir;
    const auto path = dir.file("atm.dot");
    auto w = run_tm({"render", corpus("simple_atm.tm"), "-o", path});
    EXPECT_EQ(w.code, kExitOk);
    EXPECT_TRUE(w.out.empty());
    EXPECT_EQ(support::read_text(path), r.out);

    auto events = run_tm({"render", corpus("simple_atm.tm"), "--events"});
    EXPECT_EQ(lines_with(events.out, "// event "), 5u);
    EXPECT_EQ(run_tm({"render", corpus("bad_adjacency.tm")}).code, kExitFailure);
}

TEST(Cli, FmtRewritesOnceThenIsCanonical) {
    TempDir dir;
    const auto path = dir.file("atm.tm");
    support::write_text(path, support::read_text(corpus("simple_atm.tm")));
    EXPECT_EQ(run_tm({"fmt", "--check", path}).code, kExitFailure);
    EXPECT_EQ(run_tm({"fmt", path}).code, kExitOk);
    const auto once = support::read_text(path);
    EXPECT_EQ(run_tm({"fmt", "--check", path}).code, kExitOk);
    EXPECT_EQ(run_tm({"fmt", path}).code, kExitOk);
    EXPECT_EQ(support::read_text(path), once);

    auto original = support::load_model("simple_atm.tm");
    auto reparsed = parse(once, "atm.tm");
    ASSERT_TRUE(reparsed.model);
    EXPECT_TRUE(*reparsed.model == *original.model);
    EXPECT_EQ(run_tm({"fmt", dir.file("absent.tm")}).code, kExitIo);
}

TEST(Cli, FmtNormalizesOrder) {
    TempDir dir;
    const auto a = dir.file("a.tm");
    const auto b = dir.file("b.tm");
    support::write_text(a,
                        "model M {\n  flow x: A.create -> A.release;\n"
                        "  thimac A { stages: create, release; }\n}\n");
    support::write_text(b,
                        "model M { thimac A { stages: create, release; }\n"
                        "  flow x: A.create -> A.release; }\n");
    EXPECT_EQ(run_tm({"fmt", a}).code, kExitOk);
    EXPECT_EQ(run_tm({"fmt", b}).code, kExitOk);
    EXPECT_EQ(support::read_text(a), support::read_text(b));
    EXPECT_EQ(support::read_text(a), "model M {\n  thimac A {\n    stages: create, release;\n  }\n"
                                     "  flow x: A.create -> A.release;\n}\n");
}

TEST(Cli, ThirdFailureEndsWithConfiscation) {
    auto r = run_tm({"simulate", corpus("banking_atm.tm"), "--scenario", corpus("three_failures.scn")});
    ASSERT_EQ(r.code, kExitOk);
    std::istringstream in(r.out);
    std::string last_fire;
    for (std::string line; std::getline(in, line);)
        if (line.find("action=trigger-fire") != std::string::npos) last_fire = line;
    EXPECT_NE(last_fire.find("path=ATM.Confiscation.release"), std::string::npos) << last_fire;
}

TEST(Cli, WarningsOnlyFromCheck) {
    auto r = run_tm({"check", corpus("unreachable.tm")});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.err.find("warning W_UNREACH"), std::string::npos) << r.err;
    auto render = run_tm({"render", corpus("unreachable.tm")});
    EXPECT_EQ(render.code, kExitOk);
    EXPECT_TRUE(render.err.empty()) << render.err;
}
