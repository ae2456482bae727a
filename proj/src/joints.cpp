#include "thimac/joints.hpp"

#include <set>

#include "thimac/validate.hpp"

namespace thimac {

JoinResult join_models(const StaticModel& a, const StaticModel& b,
                       const std::vector<Joint>& joints) {
    JoinResult out;
    if (joints.empty()) {
        out.diagnostics.error("J001", "no joints given");
        return out;
    }
    std::set<std::string> names;
    for (const Thimac& t : a.roots) names.insert(t.name);
    for (const Thimac& t : b.roots) {
        if (names.count(t.name))
            out.diagnostics.error("J002", "both parts declare a root thimac '" + t.name + "'", t.span);
    }
    for (const Joint& j : joints) {
        if (!a.resolves(j.from))
            out.diagnostics.error("J001", "joint source " + j.from.str() + " is not in the first part");
        if (!b.resolves(j.to))
            out.diagnostics.error("J001", "joint target " + j.to.str() + " is not in the second part");
        if (j.kind == Joint::Kind::Flow) {
            if (j.from.kind != StageKind::Transfer || j.to.kind != StageKind::Transfer)
                out.diagnostics.error("J001", "flow joint " + j.from.str() + " -> " + j.to.str() +
                                                  " must connect two transfer stages");
            if (j.label.empty()) out.diagnostics.error("J001", "flow joint needs a label");
        } else {
            const bool src = j.from.kind == StageKind::Process || j.from.kind == StageKind::Create;
            const bool dst = j.to.kind == StageKind::Create || j.to.kind == StageKind::Release ||
                             j.to.kind == StageKind::Process;
            if (!src || !dst)
                out.diagnostics.error("J001", "trigger joint " + j.from.str() + " -> " + j.to.str() +
                                                  " has an illegal shape");
        }
    }
    if (out.diagnostics.has_errors()) return out;

    StaticModel merged = a;
    for (const Thimac& t : b.roots) merged.roots.push_back(t);
    for (const FlowEdge& f : b.flows) {
        FlowEdge copy = f;
        copy.id = next_flow_id(merged, f.label);
        merged.flows.push_back(copy);
    }
    for (const TriggerEdge& t : b.triggers) {
        TriggerEdge copy = t;
        copy.id = next_trigger_id(merged);
        merged.triggers.push_back(copy);
    }
    merged.counters.insert(merged.counters.end(), b.counters.begin(), b.counters.end());
    merged.guards.insert(merged.guards.end(), b.guards.begin(), b.guards.end());
    merged.attrs.insert(merged.attrs.end(), b.attrs.begin(), b.attrs.end());

    for (const Joint& j : joints) {
        if (j.kind == Joint::Kind::Flow) {
            auto r = add_flow(merged, j.label, j.from, j.to);
            if (!r.ok()) out.diagnostics.add(r.error());
        } else {
            auto r = add_trigger(merged, j.from, j.to, j.guard, j.actions);
            if (!r.ok()) out.diagnostics.add(r.error());
        }
    }
    out.diagnostics.append(validate(merged));
    out.diagnostics.sort();
    if (!out.diagnostics.has_errors()) out.model = std::move(merged);
    return out;
}

}  // namespace thimac
