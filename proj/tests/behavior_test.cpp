#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "support.hpp"
#include "thimac/behavior.hpp"
#include "thimac/joints.hpp"
#include "thimac/printer.hpp"
#include "thimac/simulator.hpp"
#include "thimac/validate.hpp"

using namespace thimac;

namespace {

struct Run {
    ParseResult parsed;
    std::vector<BoundEvent> events;
    SimResult sim;
    std::vector<EventOccurrence> occurrences;
};

Run run(const std::string& model, const std::string& scenario) {
    Run r{support::load_model(model), {}, {}, {}};
    auto bound = bind_events(*r.parsed.model, r.parsed.events);
    if (bound.diagnostics.has_errors()) throw std::runtime_error(model + " events do not bind");
    r.events = bound.events;
    r.sim = simulate(*r.parsed.model, support::load_scenario(scenario));
    r.occurrences = project(r.sim.trace, r.events);
    return r;
}

std::vector<std::string> ids(const std::vector<EventOccurrence>& occurrences) {
    std::vector<std::string> out;
    for (const auto& o : occurrences) out.push_back(o.event);
    return out;
}

EventOccurrence occ(std::string event, std::int64_t start, std::int64_t end = -1) {
    return {std::move(event), start, end < 0 ? start : end, 0, {}};
}

Chronology chain(std::vector<std::pair<std::string, std::string>> edges) {
    Chronology c;
    c.edges = std::move(edges);
    return c;
}

MicroEvent at(std::int64_t tick, std::uint64_t token, std::string path, Action action) {
    return {tick, token, "x", std::move(path), action, {}, 0};
}

}  // namespace

TEST(Bind, ReferenceModelsBindCleanly) {
    for (const auto& name : support::kReferenceModels) {
        auto p = support::load_model(name);
        auto b = bind_events(*p.model, p.events);
        EXPECT_TRUE(b.diagnostics.empty()) << name;
        EXPECT_EQ(b.events.size(), p.events.size()) << name;
        ASSERT_TRUE(p.chronology) << name;
        EXPECT_TRUE(check_chronology_structure(*p.chronology, p.events).empty()) << name;
    }
}

TEST(Bind, RegionErrors) {
    const std::string base =
        "model M {\n"
        "  thimac A { stages: create, release, transfer; }\n"
        "  thimac B { stages: create, release; }\n"
        "  flow a: A.create -> A.release -> A.transfer;\n"
        "  flow b: B.create -> B.release;\n";
    struct Case {
        const char* events;
        const char* code;
    };
    for (const Case& c : {Case{"  event E \"\" region { A.process }\n", "B001"},
                          Case{"  event E \"\" region { Z.create }\n", "B001"},
                          Case{"  event E \"\" region { A.create, B.create }\n", "B002"},
                          Case{"  event E \"\" region { A.create, A.transfer }\n", "B002"},
                          Case{"  event E \"\" region { A.create }\n"
                               "  event E \"\" region { A.release }\n",
                               "B003"}}) {
        auto p = parse(base + c.events + "}\n", "r.tm");
        ASSERT_TRUE(p.model) << c.events;
        auto b = bind_events(*p.model, p.events);
        EXPECT_EQ(b.diagnostics.size(), 1u) << c.events;
        EXPECT_TRUE(b.diagnostics.has_code(c.code)) << c.events;
    }
    auto p = support::load_model("simple_atm.tm");
    auto b = bind_events(*p.model, {EventDecl{"E0", "nothing", {}, {}}});
    EXPECT_TRUE(b.diagnostics.has_code("B004"));
}

TEST(Bind, TriggersConnectRegions) {
    auto p = support::load_model("simple_atm.tm");
    std::vector<EventDecl> decls{
        {"T", "", {{"ATM.Compare", StageKind::Process}, {"ATM.Menu", StageKind::Create}}, {}}};
    EXPECT_TRUE(bind_events(*p.model, decls).diagnostics.empty());
}

TEST(Chronology, StructureErrors) {
    auto p = support::load_model("simple_atm.tm");
    auto cycle = chain({{"E1", "E2"}, {"E2", "E3"}, {"E3", "E1"}});
    EXPECT_TRUE(check_chronology_structure(cycle, p.events).has_code("C002"));
    auto self = chain({{"E4", "E4"}});
    EXPECT_TRUE(check_chronology_structure(self, p.events).has_code("C002"));
    auto unknown = chain({{"E1", "E9"}});
    EXPECT_TRUE(check_chronology_structure(unknown, p.events).has_code("C003"));

    auto fixture = parse(support::read_text(support::corpus_path("bad_chronology_cycle.tm")), "c.tm");
    ASSERT_TRUE(fixture.model && fixture.chronology);
    auto d = check_chronology_structure(*fixture.chronology, fixture.events);
    EXPECT_EQ(d.size(), 1u);
    EXPECT_TRUE(d.has_code("C002"));
}

TEST(Chronology, VerticesInFirstMentionOrder) {
    auto c = chain({{"B", "C"}, {"A", "B"}, {"C", "D"}});
    EXPECT_EQ(c.vertices(), (std::vector<std::string>{"B", "C", "A", "D"}));
}

TEST(Project, EmptyTrace) {
    auto p = support::load_model("simple_atm.tm");
    auto b = bind_events(*p.model, p.events);
    EXPECT_TRUE(project({}, b.events).empty());
}

TEST(Project, StaysAreSplitByLeavingTheRegion) {
    std::vector<BoundEvent> events{{"R", "", {"A.receive", "A.process"}, 0}};
    Trace trace{at(0, 0, "A.receive", Action::Enter),   at(1, 0, "A.receive", Action::Exit),
                at(1, 0, "A.process", Action::Enter),   at(2, 0, "A.process", Action::Exit),
                at(2, 0, "A.release", Action::Enter),   at(3, 0, "A.release", Action::Exit),
                at(3, 0, "A.process", Action::Enter),   at(3, 0, "A.process", Action::TriggerFire),
                at(4, 0, "A.process", Action::Consume)};
    auto occ = project(trace, events);
    ASSERT_EQ(occ.size(), 2u);
    EXPECT_EQ(occ[0].start, 0);
    EXPECT_EQ(occ[0].end, 2);
    EXPECT_EQ(occ[0].indices, (std::vector<std::size_t>{0, 1, 2, 3}));
    EXPECT_EQ(occ[1].start, 3);
    EXPECT_EQ(occ[1].end, 4);
    EXPECT_EQ(occ[1].indices, (std::vector<std::size_t>{6, 8}));
}

TEST(Project, OrderIsStartThenDeclaration) {
    std::vector<BoundEvent> events{{"First", "", {"B.create"}, 0}, {"Second", "", {"A.create"}, 1}};
    Trace trace{at(0, 0, "A.create", Action::Create), at(0, 1, "B.create", Action::Create)};
    EXPECT_EQ(ids(project(trace, events)), (std::vector<std::string>{"First", "Second"}));
}

TEST(Conformance, SimpleAtmScenarios) {
    auto mismatch = run("simple_atm.tm", "mismatch.scn");
    EXPECT_EQ(ids(mismatch.occurrences), (std::vector<std::string>{"E1", "E2", "E3", "E4"}));
    auto rm = check_chronology(mismatch.occurrences, *mismatch.parsed.chronology);
    ASSERT_TRUE(rm.ok());
    EXPECT_EQ(rm->verdict, Verdict::Conforms);

    auto match = run("simple_atm.tm", "match.scn");
    EXPECT_EQ(ids(match.occurrences), (std::vector<std::string>{"E1", "E2", "E3", "E5"}));
    auto rt = check_chronology(match.occurrences, *match.parsed.chronology);
    ASSERT_TRUE(rt.ok());
    EXPECT_EQ(rt->verdict, Verdict::Conforms);
}

TEST(Conformance, BankingRunsConform) {
    for (const auto& scn : {"one_failure.scn", "two_failures_then_ok.scn", "three_failures.scn"}) {
        auto r = run("banking_atm.tm", scn);
        auto report = check_chronology(r.occurrences, *r.parsed.chronology);
        ASSERT_TRUE(report.ok()) << scn;
        EXPECT_EQ(report->verdict, Verdict::Conforms) << scn;
        const auto v = ids(r.occurrences);
        EXPECT_EQ(std::count(v.begin(), v.end(), "E7"), std::string(scn) == "three_failures.scn")
            << scn;
    }
}

TEST(Conformance, LoneSuccessorViolates) {
    auto report = check_chronology({occ("E5", 4)}, chain({{"E3", "E5"}}));
    ASSERT_TRUE(report.ok());
    EXPECT_EQ(report->verdict, Verdict::Violates);
    ASSERT_EQ(report->violations.size(), 1u);
    EXPECT_EQ(report->violations[0], (Violation{"E5", 4, "E3"}));
}

TEST(Conformance, PredecessorMayStartInTheSameTick) {
    auto report = check_chronology({occ("E5", 4), occ("E3", 4)}, chain({{"E3", "E5"}}));
    ASSERT_TRUE(report.ok());
    EXPECT_EQ(report->verdict, Verdict::Conforms);
    auto late = check_chronology({occ("E5", 4), occ("E3", 5)}, chain({{"E3", "E5"}}));
    EXPECT_EQ(late->verdict, Verdict::Violates);
}

TEST(Conformance, UnknownEventInTrace) {
    auto report = check_chronology({occ("E1", 0), occ("Z", 1)}, chain({{"E1", "E2"}}));
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.error().code, "C001");
}

TEST(Conformance, InvertedChronologyViolates) {
    auto p = support::load_model("simple_atm_inverted.tm");
    auto b = bind_events(*p.model, p.events);
    auto sim = simulate(*p.model, support::load_scenario("match.scn"));
    auto report = check_chronology(project(sim.trace, b.events), *p.chronology);
    ASSERT_TRUE(report.ok());
    EXPECT_EQ(report->verdict, Verdict::Violates);
    ASSERT_EQ(report->violations.size(), 1u);
    EXPECT_EQ(report->violations[0].event, "E1");
    EXPECT_EQ(report->violations[0].missing, "E2");
}

TEST(Conformance, DroppingAnEdgeKeepsConformance) {
    for (const auto& [model, scenario] : support::kRuns) {
        auto r = run(model, scenario);
        const Chronology& full = *r.parsed.chronology;
        for (std::size_t skip = 0; skip < full.edges.size(); ++skip) {
            Chronology fewer;
            for (std::size_t i = 0; i < full.edges.size(); ++i)
                if (i != skip) fewer.edges.push_back(full.edges[i]);
            // keep every event a vertex so the check stays defined
            for (const auto& e : r.events) fewer.edges.push_back({e.id, "__sink"});
            auto report = check_chronology(r.occurrences, fewer);
            ASSERT_TRUE(report.ok()) << model;
            EXPECT_EQ(report->verdict, Verdict::Conforms) << model << " without edge " << skip;
        }
    }
}

TEST(Waves, EachCardIsItsOwnInstance) {
    auto r = run("card_instance.tm", "two_cards.scn");
    std::vector<EventOccurrence> issues;
    for (const auto& o : r.occurrences)
        if (o.event == "Issue") issues.push_back(o);
    ASSERT_EQ(issues.size(), 2u);
    EXPECT_NE(issues[0].token, issues[1].token);
    EXPECT_LT(issues[0].start, issues[1].start);
    for (std::size_t i : issues[0].indices)
        EXPECT_EQ(std::count(issues[1].indices.begin(), issues[1].indices.end(), i), 0);
    auto report = check_chronology(r.occurrences, *r.parsed.chronology);
    EXPECT_EQ(report->verdict, Verdict::Conforms);
}

TEST(Reports, Goldens) {
    for (const auto& [model, scenario] : support::kRuns) {
        auto r = run(model, scenario);
        auto report = check_chronology(r.occurrences, *r.parsed.chronology);
        ASSERT_TRUE(report.ok());
        auto stem = [](std::string s) { return s.substr(0, s.find('.')); };
        std::string why;
        EXPECT_TRUE(support::matches_golden("report_" + stem(model) + "_" + stem(scenario) + ".txt",
                                            format_report(*report), &why))
            << why;
    }
}

TEST(Joints, BankingAndTransactionJoin) {
    auto banking = support::load_model("banking_atm.tm");
    auto stub = support::load_model("transaction_stub.tm");
    auto joined = join_models(*banking.model, *stub.model, support::atm_transaction_joints());
    ASSERT_TRUE(joined.model);
    EXPECT_FALSE(validate(*joined.model).has_errors());
    EXPECT_EQ(joined.model->name, banking.model->name);
    EXPECT_EQ(joined.model->roots.size(), banking.model->roots.size() + stub.model->roots.size());
    EXPECT_EQ(joined.model->flows.size(), banking.model->flows.size() + stub.model->flows.size());
    ASSERT_EQ(joined.model->triggers.size(),
              banking.model->triggers.size() + stub.model->triggers.size() + 3);
    std::size_t crossing = 0;
    for (const auto& t : joined.model->triggers) {
        const bool from_atm = t.from.thimac_path.rfind("ATM", 0) == 0;
        const bool to_tx = t.to.thimac_path.rfind("Transaction", 0) == 0;
        if (from_atm && to_tx) ++crossing;
    }
    EXPECT_EQ(crossing, 3u);
}

TEST(Joints, CorpusFileIsTheCanonicalJoin) {
    const std::string text = support::joined_atm_text();
    if (std::getenv("THIMAC_UPDATE_GOLDENS") != nullptr)
        support::write_text(support::corpus_path("joined_atm.tm"), text);
    EXPECT_EQ(support::read_text(support::corpus_path("joined_atm.tm")), text);
}

TEST(Joints, Errors) {
    auto banking = support::load_model("banking_atm.tm");
    auto stub = support::load_model("transaction_stub.tm");
    auto empty = join_models(*banking.model, *stub.model, {});
    EXPECT_FALSE(empty.model);
    EXPECT_TRUE(empty.diagnostics.has_code("J001"));

    auto clash = join_models(*banking.model, *banking.model, support::atm_transaction_joints());
    EXPECT_FALSE(clash.model);
    EXPECT_TRUE(clash.diagnostics.has_code("J002"));

    auto joints = support::atm_transaction_joints();
    joints[0].to = {"Transaction.Nowhere", StageKind::Create};
    auto dangling = join_models(*banking.model, *stub.model, joints);
    EXPECT_FALSE(dangling.model);
    EXPECT_TRUE(dangling.diagnostics.has_code("J001"));

    Joint flow;
    flow.kind = Joint::Kind::Flow;
    flow.from = {"ATM.Compare", StageKind::Process};
    flow.to = {"Transaction.PinOk", StageKind::Create};
    flow.label = "ok";
    auto shape = join_models(*banking.model, *stub.model, {flow});
    EXPECT_FALSE(shape.model);
    EXPECT_TRUE(shape.diagnostics.has_code("J001"));
}
