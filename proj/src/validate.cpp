#include "thimac/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "thimac/generator.hpp"

namespace thimac {

namespace {

class Validator {
public:
    explicit Validator(const StaticModel& model) : model_(model) {}

    Diagnostics run() {
        check_names(model_.roots, "model '" + model_.name + "'");
        for (const Thimac* t : model_.all_thimacs()) check_thimac(*t);
        check_declarations();
        for (const FlowEdge& f : model_.flows) check_flow(f);
        check_duplicate_flows();
        for (const TriggerEdge& t : model_.triggers) check_trigger(t);
        for (const GuardDef& g : model_.guards) check_guard(g.expr, g.span);
        check_branches();
        check_reachability();
        out_.sort();
        return out_;
    }

private:
    void check_names(const std::vector<Thimac>& level, const std::string& scope) {
        std::set<std::string> seen;
        for (const Thimac& t : level) {
            if (!seen.insert(t.name).second) {
                out_.error("E_NAME", "duplicate thimac name '" + t.name + "' in " + scope, t.span);
            }
        }
    }

    void check_thimac(const Thimac& t) {
        check_names(t.children, "thimac '" + t.path + "'");
        if (t.stages.empty() && t.children.empty()) {
            out_.error("E_EMPTY", "thimac '" + t.path + "' has neither stages nor children",
                       t.span);
        }
        std::set<StageKind> kinds;
        for (StageKind kind : t.stages) {
            if (!kinds.insert(kind).second) {
                out_.error("E_STAGE",
                           "thimac '" + t.path + "' declares stage '" +
                               std::string(to_string(kind)) + "' more than once",
                           t.span);
            }
        }
        for (const Generator& g : t.generators) {
            if (auto problem = check_generator_spec(g)) {
                out_.error("E_GEN_SPEC", "generator '" + g.attr + "': " + *problem, g.span);
            }
        }
    }

    void check_declarations() {
        std::set<std::string> counters;
        for (const CounterDecl& c : model_.counters) {
            if (!counters.insert(c.name).second)
                out_.error("E_NAME", "duplicate counter '" + c.name + "'", c.span);
            if (c.initial < 0)
                out_.error("E_GUARD", "counter '" + c.name + "' has a negative initial value",
                           c.span);
        }
        std::set<std::string> guards;
        for (const GuardDef& g : model_.guards) {
            if (!guards.insert(g.name).second)
                out_.error("E_NAME", "duplicate guard '" + g.name + "'", g.span);
        }
    }

    bool check_ref(const StageRef& ref, const SourceSpan& span, const std::string& what) {
        const Thimac* t = model_.find_thimac(ref.thimac_path);
        if (t == nullptr) {
            out_.error("E_REF", what + ": no thimac '" + ref.thimac_path + "'", span);
            return false;
        }
        if (!t->has_stage(ref.kind)) {
            out_.error("E_REF",
                       what + ": thimac '" + ref.thimac_path + "' has no " +
                           std::string(to_string(ref.kind)) + " stage",
                       span);
            return false;
        }
        return true;
    }

    void check_flow(const FlowEdge& f) {
        const std::string what = "flow '" + f.label + "'";
        const bool from_ok = check_ref(f.from, f.span, what);
        const bool to_ok = check_ref(f.to, f.span, what);
        if (!from_ok || !to_ok) return;
        if (!allowed_adjacency(f.from.kind, f.to.kind, f.same_thimac())) {
            out_.error("E_ADJ",
                       what + " from " + f.from.str() + " to " + f.to.str() +
                           " is not a legal stage transition",
                       f.span);
        }
    }

    void check_duplicate_flows() {
        std::set<std::tuple<std::string, StageRef, StageRef>> seen;
        for (const FlowEdge& f : model_.flows) {
            if (!seen.insert({f.label, f.from, f.to}).second) {
                out_.error("E_DUP",
                           "duplicate flow '" + f.label + "' from " + f.from.str() + " to " +
                               f.to.str(),
                           f.span);
            }
        }
    }

    void check_trigger(const TriggerEdge& t) {
        const bool from_ok = check_ref(t.from, t.span, "trigger");
        const bool to_ok = check_ref(t.to, t.span, "trigger");
        if (t.from.kind != StageKind::Process && t.from.kind != StageKind::Create) {
            out_.error("E_TRIG_SRC",
                       "trigger source " + t.from.str() + " must be a process or create stage",
                       t.span);
        }
        if (t.to.kind == StageKind::Transfer || t.to.kind == StageKind::Receive) {
            out_.error("E_TRIG_DST",
                       "trigger target " + t.to.str() +
                           " must be a create, release or process stage",
                       t.span);
        }
        if (from_ok && to_ok) {
            for (const FlowEdge& f : model_.flows) {
                if (f.from == t.from && f.to == t.to) {
                    out_.error("E_TRIG_DUP",
                               "trigger " + t.from.str() + " -> " + t.to.str() +
                                   " duplicates solid flow '" + f.id + "'",
                               t.span);
                    break;
                }
            }
        }
        if (t.guard) check_guard(*t.guard, t.span);
        for (const CounterAction& a : t.actions) {
            if (model_.find_counter(a.counter) == nullptr) {
                out_.error("E_GUARD", "action " + to_string(a) + " names undeclared counter",
                           t.span);
            }
        }
    }

    void check_guard(const Guard& guard, const SourceSpan& span) {
        for (const GuardTerm& term : guard.terms) {
            if (const auto* a = std::get_if<AttrCompare>(&term.atom)) {
                if (!model_.declares_attr(a->attr)) {
                    out_.error("E_GUARD", "guard reads undeclared attribute '" + a->attr + "'",
                               span);
                }
            } else if (const auto* c = std::get_if<CounterCompare>(&term.atom)) {
                if (model_.find_counter(c->counter) == nullptr) {
                    out_.error("E_GUARD", "guard reads undeclared counter '" + c->counter + "'",
                               span);
                } else if (c->value.kind != Literal::Kind::Integer) {
                    out_.error("E_GUARD",
                               "counter '" + c->counter + "' compared with a non-integer literal",
                               span);
                }
            }
        }
    }

    void check_branches() {
        // (stage, label, enters-machine) -> edges
        // Exact duplicates are E_DUP's business, so each target counts once.
        std::map<std::tuple<StageRef, std::string, bool>, std::vector<const FlowEdge*>> groups;
        for (const FlowEdge& f : model_.flows) {
            auto& group = groups[{f.from, f.label, edge_enters_machine(f)}];
            const bool seen = std::any_of(group.begin(), group.end(),
                                          [&](const FlowEdge* e) { return e->to == f.to; });
            if (!seen) group.push_back(&f);
        }
        for (const auto& [key, edges] : groups) {
            if (edges.size() < 2) continue;
            std::string targets;
            for (const FlowEdge* e : edges) {
                if (!targets.empty()) targets += ", ";
                targets += e->to.str();
            }
            out_.error("E_BRANCH",
                       "stage " + std::get<0>(key).str() + " has " +
                           std::to_string(edges.size()) + " outgoing '" + std::get<1>(key) +
                           "' flows in the same direction (" + targets + ")",
                       edges[1]->span);
        }
    }

    void check_reachability() {
        std::set<StageRef> touched;
        for (const FlowEdge& f : model_.flows) {
            touched.insert(f.from);
            touched.insert(f.to);
        }
        for (const TriggerEdge& t : model_.triggers) {
            touched.insert(t.from);
            touched.insert(t.to);
        }
        for (const Thimac* t : model_.all_thimacs()) {
            for (StageKind kind : t->stages) {
                const StageRef ref{t->path, kind};
                if (!touched.count(ref)) {
                    out_.warning("W_UNREACH", "stage " + ref.str() + " has no incident flow or trigger",
                                 t->span);
                }
            }
        }
    }

    const StaticModel& model_;
    Diagnostics out_;
};

}  // namespace

Diagnostics validate(const StaticModel& model) { return Validator(model).run(); }

}  // namespace thimac
