#include "thimac/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>

namespace thimac {

namespace {

struct SimError {
    Diagnostic diagnostic;
};

[[noreturn]] void sim_error(const std::string& code, const std::string& message,
                            SourceSpan span = {}) {
    throw SimError{{Severity::Error, code, message, std::move(span)}};
}

std::optional<std::int64_t> as_int(std::string_view text) {
    std::int64_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc() || ptr != end) return std::nullopt;
    return v;
}

// "DD-MM-YYYY" -> "YYYYMMDD" so plain string order is date order.
std::optional<std::string> date_key(std::string_view text) {
    if (text.size() != 10 || text[2] != '-' || text[5] != '-') return std::nullopt;
    for (std::size_t i : {0, 1, 3, 4, 6, 7, 8, 9}) {
        if (text[i] < '0' || text[i] > '9') return std::nullopt;
    }
    return std::string(text.substr(6, 4)) + std::string(text.substr(3, 2)) +
           std::string(text.substr(0, 2));
}

template <typename T>
bool apply_op(const T& lhs, CompareOp op, const T& rhs) {
    switch (op) {
        case CompareOp::Eq: return lhs == rhs;
        case CompareOp::Ne: return lhs != rhs;
        case CompareOp::Lt: return lhs < rhs;
        case CompareOp::Le: return lhs <= rhs;
        case CompareOp::Gt: return lhs > rhs;
        case CompareOp::Ge: return lhs >= rhs;
    }
    return false;
}

bool compare_value(const std::string& lhs, CompareOp op, const Literal& rhs) {
    if (rhs.kind == Literal::Kind::Integer) {
        auto l = as_int(lhs);
        auto r = as_int(rhs.text);
        if (l && r) return apply_op(*l, op, *r);
    }
    if (rhs.kind == Literal::Kind::Date) {
        auto l = date_key(lhs);
        auto r = date_key(rhs.text);
        if (l && r) return apply_op(*l, op, *r);
    }
    return apply_op(lhs, op, rhs.text);
}

bool is_trigger_source(StageKind kind) {
    return kind == StageKind::Process || kind == StageKind::Create;
}

std::string last_segment(const std::string& path) {
    const auto dot = path.rfind('.');
    return dot == std::string::npos ? path : path.substr(dot + 1);
}

class Engine {
public:
    Engine(const StaticModel& model, const Scenario& scenario)
        : model_(model), scenario_(scenario) {}

    SimResult run() {
        try {
            check_references();
            for (const CounterDecl& c : model_.counters) result_.counters[c.name] = c.initial;
            compute_releasable();
            std::vector<const Injection*> pending;
            for (const Injection& inj : scenario_.injections) pending.push_back(&inj);
            std::stable_sort(pending.begin(), pending.end(),
                             [](const Injection* a, const Injection* b) { return a->tick < b->tick; });
            std::size_t next = 0;
            for (tick_ = 0; tick_ < scenario_.max_ticks; ++tick_) {
                if (!anything_movable() && next == pending.size()) break;
                entered_.clear();
                entries_.clear();
                while (next < pending.size() && pending[next]->tick == tick_) inject(*pending[next++]);
                advance();
                fire_triggers();
            }
        } catch (const SimError& e) {
            result_.diagnostics.add(e.diagnostic);
        }
        result_.end_tick = tick_;
        return std::move(result_);
    }

private:
    void check_references() {
        if (scenario_.max_ticks < 1) sim_error("E_SIM_REF", "max_ticks must be at least 1");
        for (const Injection& inj : scenario_.injections) {
            if (!model_.resolves(inj.at))
                sim_error("E_SIM_REF", "injection point " + inj.at.str() + " does not resolve",
                          inj.span);
            if (inj.at.kind != StageKind::Create && inj.at.kind != StageKind::Transfer)
                sim_error("E_SIM_REF",
                          "injection point " + inj.at.str() + " must be a create or transfer stage",
                          inj.span);
            const bool known = std::any_of(model_.flows.begin(), model_.flows.end(),
                                           [&](const FlowEdge& f) { return f.label == inj.flow; });
            if (!known) sim_error("E_SIM_REF", "no flow is labelled '" + inj.flow + "'", inj.span);
        }
        for (const auto& [key, values] : scenario_.outcomes) {
            if (!model_.resolves(key.first))
                sim_error("E_SIM_REF", "outcome stage " + key.first.str() + " does not resolve");
        }
    }

    void compute_releasable() {
        for (const TriggerEdge& t : model_.triggers) {
            if (t.to.kind == StageKind::Release) {
                for (const auto& label : outgoing_labels(t.to)) releasable_.insert(label);
            } else if (t.to.kind == StageKind::Process) {
                for (const auto& label : incident_labels(t.to)) releasable_.insert(label);
            }
        }
    }

    std::set<std::string> outgoing_labels(const StageRef& stage) const {
        std::set<std::string> out;
        for (const FlowEdge& f : model_.flows) {
            if (f.from == stage) out.insert(f.label);
        }
        return out;
    }

    std::set<std::string> incident_labels(const StageRef& stage) const {
        std::set<std::string> out;
        for (const FlowEdge& f : model_.flows) {
            if (f.from == stage || f.to == stage) out.insert(f.label);
        }
        return out;
    }

    bool anything_movable() const {
        return std::any_of(result_.tokens.begin(), result_.tokens.end(),
                           [](const Token& t) { return t.state == Token::State::Live; });
    }

    void emit(const Token& t, const std::string& path, Action action) {
        result_.trace.push_back({tick_, t.id, t.flow, path, action, {}, 0});
    }

    Attrs instance_attrs(const StageRef& at, std::uint64_t id, Attrs base) {
        const Thimac* owner = model_.find_thimac(at.thimac_path);
        if (owner == nullptr || owner->generators.empty()) return base;
        auto generated = generate_instance(owner->generators, instance_seed(scenario_.seed, id));
        if (!generated.ok()) {
            sim_error(generated.error().code, generated.error().message, generated.error().span);
        }
        for (auto& [k, v] : *generated) base.emplace(k, v);
        return base;
    }

    std::optional<std::size_t> next_edge(const Token& t) const {
        bool outward = false;
        if (t.at.kind == StageKind::Transfer && t.arrived_by) {
            outward = edge_arrives_from_inside(model_.flows[*t.arrived_by]);
        }
        for (std::size_t i = 0; i < model_.flows.size(); ++i) {
            const FlowEdge& f = model_.flows[i];
            if (f.from != t.at || f.label != t.flow) continue;
            if (t.at.kind == StageKind::Transfer && edge_enters_machine(f) == outward) continue;
            return i;
        }
        return std::nullopt;
    }

    // Called whenever a token lands on a stage.
    void arrived(std::uint64_t id) {
        Token& t = result_.tokens[id];
        entered_.insert(id);
        if (is_trigger_source(t.at.kind)) entries_.push_back({id, t.at});
        if (next_edge(t)) return;
        if (releasable_.count(t.flow)) {
            t.state = Token::State::Parked;
            emit(t, t.at.str(), Action::Park);
        } else {
            t.state = Token::State::Consumed;
            emit(t, t.at.str(), Action::Consume);
        }
    }

    void inject(const Injection& inj) {
        Token t;
        t.id = result_.tokens.size();
        t.flow = inj.flow;
        t.at = inj.at;
        t.attrs = instance_attrs(inj.at, t.id, inj.attrs);
        result_.tokens.push_back(t);
        emit(t, t.at.str(), inj.at.kind == StageKind::Create ? Action::Create : Action::Enter);
        arrived(t.id);
    }

    void advance() {
        const std::size_t count = result_.tokens.size();
        for (std::size_t id = 0; id < count; ++id) {
            Token& t = result_.tokens[id];
            if (t.state != Token::State::Live || entered_.count(id)) continue;
            auto edge = next_edge(t);
            if (!edge) continue;
            emit(t, t.at.str(), Action::Exit);
            t.at = model_.flows[*edge].to;
            t.arrived_by = edge;
            emit(t, t.at.str(), Action::Enter);
            arrived(id);
        }
    }

    using Memo = std::map<std::string, bool>;

    void fire_triggers() {
        std::stable_sort(entries_.begin(), entries_.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::deque<std::pair<std::uint64_t, StageRef>> work(entries_.begin(), entries_.end());
        entries_.clear();
        std::size_t firings = 0;
        while (!work.empty()) {
            const auto [id, stage] = work.front();
            work.pop_front();
            Memo memo;
            for (const TriggerEdge& trig : model_.triggers) {
                if (trig.from != stage) continue;
                if (trig.guard && !holds(*trig.guard, id, stage, memo, 0)) continue;
                if (++firings > kMaxFiringsPerTick) {
                    sim_error("E_SIM_CASCADE", "more than " + std::to_string(kMaxFiringsPerTick) +
                                                   " trigger firings in tick " +
                                                   std::to_string(tick_));
                }
                const std::string target = trig.to.str();
                emit(result_.tokens[id], target, Action::TriggerFire);
                for (const CounterAction& a : trig.actions) run_action(a, id, target);
                effect(trig, id);
                // Effects append to entries_; they are evaluated after this pass.
                for (auto& e : entries_) work.push_back(e);
                entries_.clear();
            }
        }
    }

    void run_action(const CounterAction& a, std::uint64_t id, const std::string& path) {
        const CounterDecl* decl = model_.find_counter(a.counter);
        if (decl == nullptr) sim_error("E_SIM_REF", "unknown counter '" + a.counter + "'");
        auto& value = result_.counters[a.counter];
        value = a.op == CounterAction::Op::Increment ? value + 1 : decl->initial;
        const Token& t = result_.tokens[id];
        result_.trace.push_back({tick_, t.id, t.flow, path, Action::CounterSet, a.counter, value});
    }

    void effect(const TriggerEdge& trig, std::uint64_t trigger_id) {
        switch (trig.to.kind) {
            case StageKind::Create: return spawn(trig.to, trigger_id);
            case StageKind::Release: return relocate(trig.to, outgoing_labels(trig.to));
            case StageKind::Process: return relocate(trig.to, incident_labels(trig.to));
            default: return;
        }
    }

    void spawn(const StageRef& at, std::uint64_t parent) {
        Token t;
        t.id = result_.tokens.size();
        t.flow = last_segment(at.thimac_path);
        for (const FlowEdge& f : model_.flows) {
            if (f.from == at) {
                t.flow = f.label;
                break;
            }
        }
        t.at = at;
        const Thimac* owner = model_.find_thimac(at.thimac_path);
        t.attrs = owner != nullptr && !owner->generators.empty()
                      ? instance_attrs(at, t.id, {})
                      : result_.tokens[parent].attrs;
        result_.tokens.push_back(t);
        emit(t, at.str(), Action::Spawn);
        arrived(t.id);
    }

    // Oldest parked token carrying one of `labels`, searched in the target
    // thimac first and then in each enclosing thimac.
    void relocate(const StageRef& target, const std::set<std::string>& labels) {
        std::string scope = target.thimac_path;
        while (!scope.empty()) {
            for (Token& t : result_.tokens) {
                if (t.state != Token::State::Parked || !labels.count(t.flow)) continue;
                if (!path_within(t.at.thimac_path, scope)) continue;
                emit(t, t.at.str(), Action::Unpark);
                t.state = Token::State::Live;
                t.at = target;
                t.arrived_by.reset();
                emit(t, t.at.str(), Action::Enter);
                arrived(t.id);
                return;
            }
            scope = parent_path(scope);
        }
    }

    bool holds(const Guard& guard, std::uint64_t id, const StageRef& stage, Memo& memo, int depth) {
        for (const GuardTerm& term : guard.terms) {
            bool value = false;
            if (const auto* a = std::get_if<AttrCompare>(&term.atom)) {
                const Attrs& attrs = result_.tokens[id].attrs;
                auto it = attrs.find(a->attr);
                if (it == attrs.end()) {
                    sim_error("E_SIM_OUTCOME", "token " + std::to_string(id) +
                                                   " carries no attribute '" + a->attr + "'");
                }
                value = compare_value(it->second, a->op, a->value);
            } else if (const auto* c = std::get_if<CounterCompare>(&term.atom)) {
                value = compare_value(std::to_string(result_.counters[c->counter]), c->op, c->value);
            } else {
                value = outcome(std::get<OutcomeRef>(term.atom).name, id, stage, memo, depth);
            }
            if (term.negated) value = !value;
            if (!value) return false;
        }
        return true;
    }

    bool outcome(const std::string& name, std::uint64_t id, const StageRef& stage, Memo& memo,
                 int depth) {
        if (auto it = memo.find(name); it != memo.end()) return it->second;
        bool value = false;
        const auto key = std::make_pair(stage, name);
        auto table = scenario_.outcomes.find(key);
        auto& used = outcome_used_[key];
        if (table != scenario_.outcomes.end() && used < table->second.size()) {
            value = table->second[used++];
        } else if (const GuardDef* def = model_.find_guard(name)) {
            if (depth > 32) sim_error("E_SIM_OUTCOME", "guard '" + name + "' refers to itself");
            value = holds(def->expr, id, stage, memo, depth + 1);
        } else {
            sim_error("E_SIM_OUTCOME", "no value for outcome '" + name + "' at " + stage.str() +
                                           " in tick " + std::to_string(tick_));
        }
        memo[name] = value;
        return value;
    }

    const StaticModel& model_;
    const Scenario& scenario_;
    SimResult result_;
    std::int64_t tick_ = 0;
    std::set<std::uint64_t> entered_;
    std::vector<std::pair<std::uint64_t, StageRef>> entries_;
    std::set<std::string> releasable_;
    std::map<std::pair<StageRef, std::string>, std::size_t> outcome_used_;
};

}  // namespace

SimResult simulate(const StaticModel& model, const Scenario& scenario) {
    return Engine(model, scenario).run();
}

}  // namespace thimac
