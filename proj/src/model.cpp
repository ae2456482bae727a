#include "thimac/model.hpp"

#include <algorithm>
#include <functional>

namespace thimac {

std::string_view to_string(StageKind kind) {
    switch (kind) {
        case StageKind::Create: return "create";
        case StageKind::Process: return "process";
        case StageKind::Release: return "release";
        case StageKind::Transfer: return "transfer";
        case StageKind::Receive: return "receive";
    }
    return "?";
}

std::optional<StageKind> parse_stage_kind(std::string_view text) {
    for (StageKind kind : kAllStageKinds) {
        if (to_string(kind) == text) return kind;
    }
    return std::nullopt;
}

bool allowed_adjacency(StageKind from, StageKind to, bool same_thimac) {
    using K = StageKind;
    if (!same_thimac) return from == K::Transfer && to == K::Transfer;
    switch (from) {
        case K::Transfer: return to == K::Receive;
        case K::Receive: return to == K::Process || to == K::Release;
        case K::Create: return to == K::Process || to == K::Release;
        case K::Process: return to == K::Release;
        case K::Release: return to == K::Transfer;
    }
    return false;
}

std::string StageRef::str() const {
    std::string out = thimac_path;
    out += '.';
    out += to_string(kind);
    return out;
}

std::optional<StageRef> parse_stage_ref(std::string_view text) {
    const auto dot = text.rfind('.');
    if (dot == std::string_view::npos || dot == 0) return std::nullopt;
    auto kind = parse_stage_kind(text.substr(dot + 1));
    if (!kind) return std::nullopt;
    return StageRef{std::string(text.substr(0, dot)), *kind};
}

std::string_view to_string(CompareOp op) {
    switch (op) {
        case CompareOp::Eq: return "==";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
        case CompareOp::Gt: return ">";
        case CompareOp::Ge: return ">=";
    }
    return "?";
}

std::string to_string(const Literal& literal) {
    if (literal.kind != Literal::Kind::String) return literal.text;
    std::string out = "\"";
    for (char c : literal.text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string to_string(const Guard& guard) {
    std::string out;
    for (std::size_t i = 0; i < guard.terms.size(); ++i) {
        const GuardTerm& term = guard.terms[i];
        if (i > 0) out += " and ";
        if (term.negated) out += "not ";
        if (const auto* a = std::get_if<AttrCompare>(&term.atom)) {
            out += "attr(" + a->attr + ") " + std::string(to_string(a->op)) + " " +
                   to_string(a->value);
        } else if (const auto* c = std::get_if<CounterCompare>(&term.atom)) {
            out += "counter(" + c->counter + ") " + std::string(to_string(c->op)) + " " +
                   to_string(c->value);
        } else {
            out += "outcome(" + std::get<OutcomeRef>(term.atom).name + ")";
        }
    }
    return out;
}

std::string to_string(const CounterAction& action) {
    return (action.op == CounterAction::Op::Increment ? "inc(" : "reset(") + action.counter + ")";
}

bool Thimac::has_stage(StageKind kind) const {
    return std::find(stages.begin(), stages.end(), kind) != stages.end();
}

namespace {

template <typename Level>
auto find_in(Level& level, std::string_view path) -> decltype(&level.front()) {
    std::size_t start = 0;
    auto* current = &level;
    decltype(&level.front()) found = nullptr;
    while (start <= path.size()) {
        const auto dot = path.find('.', start);
        const auto segment =
            path.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        found = nullptr;
        for (auto& t : *current) {
            if (t.name == segment) {
                found = &t;
                break;
            }
        }
        if (!found) return nullptr;
        if (dot == std::string_view::npos) return found;
        current = &found->children;
        start = dot + 1;
    }
    return nullptr;
}

void assign_paths_rec(Thimac& t, const std::string& parent) {
    t.path = parent.empty() ? t.name : parent + "." + t.name;
    for (auto& child : t.children) assign_paths_rec(child, t.path);
}

}  // namespace

const Thimac* StaticModel::find_thimac(std::string_view path) const {
    return find_in(roots, path);
}

Thimac* StaticModel::find_thimac(std::string_view path) { return find_in(roots, path); }

bool StaticModel::resolves(const StageRef& ref) const {
    const Thimac* t = find_thimac(ref.thimac_path);
    return t != nullptr && t->has_stage(ref.kind);
}

const CounterDecl* StaticModel::find_counter(std::string_view counter) const {
    auto it = std::find_if(counters.begin(), counters.end(),
                           [&](const CounterDecl& c) { return c.name == counter; });
    return it == counters.end() ? nullptr : &*it;
}

const GuardDef* StaticModel::find_guard(std::string_view guard) const {
    auto it = std::find_if(guards.begin(), guards.end(),
                           [&](const GuardDef& g) { return g.name == guard; });
    return it == guards.end() ? nullptr : &*it;
}

bool StaticModel::declares_attr(std::string_view attr) const {
    if (std::any_of(attrs.begin(), attrs.end(), [&](const AttrDecl& a) { return a.name == attr; }))
        return true;
    for (const Thimac* t : all_thimacs()) {
        for (const Generator& g : t->generators) {
            if (g.attr == attr) return true;
        }
    }
    return false;
}

std::vector<const Thimac*> StaticModel::all_thimacs() const {
    std::vector<const Thimac*> out;
    std::function<void(const Thimac&)> visit = [&](const Thimac& t) {
        out.push_back(&t);
        for (const auto& child : t.children) visit(child);
    };
    for (const auto& root : roots) visit(root);
    return out;
}

std::vector<StageRef> StaticModel::all_stages() const {
    std::vector<StageRef> out;
    for (const Thimac* t : all_thimacs()) {
        for (StageKind kind : t->stages) out.push_back({t->path, kind});
    }
    return out;
}

void assign_paths(StaticModel& model) {
    for (auto& root : model.roots) assign_paths_rec(root, "");
}

Thimac make_thimac(std::string name, std::vector<StageKind> stages, std::vector<Thimac> children) {
    Thimac t;
    t.name = std::move(name);
    t.path = t.name;
    t.stages = std::move(stages);
    t.children = std::move(children);
    for (auto& child : t.children) assign_paths_rec(child, t.path);
    return t;
}

bool path_within(std::string_view path, std::string_view ancestor) {
    if (path == ancestor) return true;
    return path.size() > ancestor.size() && path.substr(0, ancestor.size()) == ancestor &&
           path[ancestor.size()] == '.';
}

std::string parent_path(std::string_view path) {
    const auto dot = path.rfind('.');
    return dot == std::string_view::npos ? std::string() : std::string(path.substr(0, dot));
}

bool edge_enters_machine(const FlowEdge& edge) {
    return path_within(edge.to.thimac_path, edge.from.thimac_path);
}

bool edge_arrives_from_inside(const FlowEdge& edge) {
    return path_within(edge.from.thimac_path, edge.to.thimac_path);
}

std::string next_flow_id(const StaticModel& model, std::string_view label) {
    const auto n = std::count_if(model.flows.begin(), model.flows.end(),
                                 [&](const FlowEdge& f) { return f.label == label; });
    return std::string(label) + "#" + std::to_string(n + 1);
}

std::string next_trigger_id(const StaticModel& model) {
    return "trigger#" + std::to_string(model.triggers.size() + 1);
}

Result<FlowEdge> add_flow(StaticModel& model, std::string label, StageRef from, StageRef to) {
    for (const StageRef* ref : {&from, &to}) {
        if (!model.resolves(*ref)) {
            return Diagnostic{Severity::Error, "E_REF",
                              "stage '" + ref->str() + "' does not resolve", {}};
        }
    }
    const bool same = from.thimac_path == to.thimac_path;
    if (!allowed_adjacency(from.kind, to.kind, same)) {
        return Diagnostic{Severity::Error, "E_ADJ",
                          "flow '" + label + "' from " + from.str() + " to " + to.str() +
                              " is not a legal stage transition",
                          {}};
    }
    for (const FlowEdge& f : model.flows) {
        if (f.label == label && f.from == from && f.to == to) {
            return Diagnostic{Severity::Error, "E_DUP",
                              "duplicate flow '" + label + "' from " + from.str() + " to " +
                                  to.str(),
                              {}};
        }
    }
    FlowEdge edge{next_flow_id(model, label), std::move(label), std::move(from), std::move(to), {}};
    model.flows.push_back(edge);
    return edge;
}

Result<TriggerEdge> add_trigger(StaticModel& model, StageRef from, StageRef to,
                                std::optional<Guard> guard, std::vector<CounterAction> actions) {
    for (const StageRef* ref : {&from, &to}) {
        if (!model.resolves(*ref)) {
            return Diagnostic{Severity::Error, "E_REF",
                              "stage '" + ref->str() + "' does not resolve", {}};
        }
    }
    if (from.kind != StageKind::Process && from.kind != StageKind::Create) {
        return Diagnostic{Severity::Error, "E_TRIG_SRC",
                          "trigger source " + from.str() + " must be a process or create stage",
                          {}};
    }
    if (to.kind == StageKind::Transfer || to.kind == StageKind::Receive) {
        return Diagnostic{Severity::Error, "E_TRIG_DST",
                          "trigger target " + to.str() +
                              " must be a create, release or process stage",
                          {}};
    }
    for (const FlowEdge& f : model.flows) {
        if (f.from == from && f.to == to) {
            return Diagnostic{Severity::Error, "E_TRIG_DUP",
                              "trigger " + from.str() + " -> " + to.str() +
                                  " duplicates solid flow '" + f.id + "'",
                              {}};
        }
    }
    TriggerEdge edge{next_trigger_id(model), std::move(from), std::move(to), std::move(guard),
                     std::move(actions), {}};
    model.triggers.push_back(edge);
    return edge;
}

}  // namespace thimac
