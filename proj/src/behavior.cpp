#include "thimac/behavior.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

namespace thimac {

std::vector<std::string> Chronology::vertices() const {
    std::vector<std::string> out;
    auto add = [&](const std::string& id) {
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    };
    for (const auto& [from, to] : edges) {
        add(from);
        add(to);
    }
    return out;
}

BindResult bind_events(const StaticModel& model, const std::vector<EventDecl>& decls) {
    BindResult out;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < decls.size(); ++i) {
        const EventDecl& d = decls[i];
        if (!ids.insert(d.id).second) {
            out.diagnostics.error("B003", "duplicate event '" + d.id + "'", d.span);
            continue;
        }
        if (d.region.empty()) {
            out.diagnostics.error("B004", "event '" + d.id + "' has an empty region", d.span);
            continue;
        }
        bool resolved = true;
        for (const StageRef& ref : d.region) {
            if (!model.resolves(ref)) {
                out.diagnostics.error("B001",
                                      "event '" + d.id + "': stage " + ref.str() + " does not resolve",
                                      d.span);
                resolved = false;
            }
        }
        if (!resolved) continue;

        BoundEvent ev{d.id, d.description, {}, i};
        for (const StageRef& ref : d.region) ev.paths.insert(ref.str());

        std::map<std::string, std::vector<std::string>> adj;
        auto link = [&](const StageRef& a, const StageRef& b) {
            const auto sa = a.str();
            const auto sb = b.str();
            if (!ev.paths.count(sa) || !ev.paths.count(sb)) return;
            adj[sa].push_back(sb);
            adj[sb].push_back(sa);
        };
        for (const FlowEdge& f : model.flows) link(f.from, f.to);
        for (const TriggerEdge& t : model.triggers) link(t.from, t.to);

        std::set<std::string> seen{*ev.paths.begin()};
        std::vector<std::string> stack{*ev.paths.begin()};
        while (!stack.empty()) {
            const auto at = stack.back();
            stack.pop_back();
            for (const auto& next : adj[at]) {
                if (seen.insert(next).second) stack.push_back(next);
            }
        }
        if (seen.size() != ev.paths.size()) {
            std::string unreached;
            for (const auto& p : ev.paths) {
                if (seen.count(p)) continue;
                if (!unreached.empty()) unreached += ", ";
                unreached += p;
            }
            out.diagnostics.error("B002",
                                  "event '" + d.id + "' region is disconnected (" + unreached +
                                      " not connected to " + *ev.paths.begin() + ")",
                                  d.span);
            continue;
        }
        out.events.push_back(std::move(ev));
    }
    out.diagnostics.sort();
    return out;
}

Diagnostics check_chronology_structure(const Chronology& chronology,
                                       const std::vector<EventDecl>& decls) {
    Diagnostics out;
    std::set<std::string> declared;
    for (const EventDecl& d : decls) declared.insert(d.id);
    auto span_of = [&](std::size_t i) {
        return i < chronology.spans.size() ? chronology.spans[i] : SourceSpan{};
    };
    for (std::size_t i = 0; i < chronology.edges.size(); ++i) {
        for (const auto* id : {&chronology.edges[i].first, &chronology.edges[i].second}) {
            if (!declared.count(*id))
                out.error("C003", "chronology names undeclared event '" + *id + "'", span_of(i));
        }
    }

    // Kahn's algorithm; whatever is left over sits on a cycle.
    const auto vertices = chronology.vertices();
    std::map<std::string, int> indegree;
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& v : vertices) indegree[v] = 0;
    for (const auto& [from, to] : chronology.edges) {
        succ[from].push_back(to);
        ++indegree[to];
    }
    std::vector<std::string> ready;
    for (const auto& v : vertices) {
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        const auto v = ready.back();
        ready.pop_back();
        ++removed;
        for (const auto& w : succ[v]) {
            if (--indegree[w] == 0) ready.push_back(w);
        }
    }
    if (removed != vertices.size()) {
        std::string members;
        for (const auto& v : vertices) {
            if (indegree[v] == 0) continue;
            if (!members.empty()) members += ", ";
            members += v;
        }
        out.error("C002", "chronology has a cycle through " + members, span_of(0));
    }
    out.sort();
    return out;
}

std::vector<EventOccurrence> project(const Trace& trace, const std::vector<BoundEvent>& events) {
    std::vector<EventOccurrence> done;
    std::map<std::pair<std::size_t, std::uint64_t>, EventOccurrence> open;
    std::map<std::string, std::size_t> order;
    for (const BoundEvent& e : events) order[e.id] = e.index;

    for (std::size_t i = 0; i < trace.size(); ++i) {
        const MicroEvent& m = trace[i];
        if (!is_positional(m.action)) continue;
        for (std::size_t k = 0; k < events.size(); ++k) {
            const auto key = std::make_pair(k, m.token);
            auto it = open.find(key);
            if (events[k].paths.count(m.path)) {
                if (it == open.end()) {
                    open[key] = {events[k].id, m.tick, m.tick, m.token, {i}};
                } else {
                    it->second.end = m.tick;
                    it->second.indices.push_back(i);
                }
            } else if (it != open.end()) {
                done.push_back(std::move(it->second));
                open.erase(it);
            }
        }
    }
    for (auto& [key, occ] : open) done.push_back(std::move(occ));

    std::sort(done.begin(), done.end(), [&](const EventOccurrence& a, const EventOccurrence& b) {
        return std::tuple(a.start, order[a.event], a.indices.front()) <
               std::tuple(b.start, order[b.event], b.indices.front());
    });
    return done;
}

Result<ConformanceReport> check_chronology(const std::vector<EventOccurrence>& occurrences,
                                           const Chronology& chronology) {
    const auto vertices = chronology.vertices();
    for (const EventOccurrence& o : occurrences) {
        if (std::find(vertices.begin(), vertices.end(), o.event) == vertices.end()) {
            return Diagnostic{Severity::Error, "C001",
                              "event '" + o.event + "' does not appear in the chronology", {}};
        }
    }
    ConformanceReport report;
    report.occurrences = occurrences;
    for (const EventOccurrence& o : occurrences) {
        for (const auto& [before, after] : chronology.edges) {
            if (after != o.event) continue;
            const bool satisfied =
                std::any_of(occurrences.begin(), occurrences.end(), [&](const EventOccurrence& p) {
                    return p.event == before && p.start <= o.start;
                });
            if (!satisfied) report.violations.push_back({o.event, o.start, before});
        }
    }
    report.verdict = report.violations.empty() ? Verdict::Conforms : Verdict::Violates;
    return report;
}

std::string format_report(const ConformanceReport& report) {
    std::ostringstream out;
    out << "verdict=" << (report.verdict == Verdict::Conforms ? "CONFORMS" : "VIOLATES") << '\n';
    for (const EventOccurrence& o : report.occurrences) {
        out << "occurrence event=" << o.event << " start=" << o.start << " end=" << o.end << '\n';
    }
    for (const Violation& v : report.violations) {
        out << "violation event=" << v.event << " tick=" << v.tick << " missing=" << v.missing
            << '\n';
    }
    return out.str();
}

}  // namespace thimac
