#pragma once

// Static structure of a thinging-machine model: nested thimacs, each owning a
// subset of the five generic stages, connected by solid flow edges and dashed
// trigger edges.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "thimac/diagnostics.hpp"

namespace thimac {

/// Arrival and acceptance are represented by the single RECEIVE stage.
enum class StageKind : std::uint8_t { Create, Process, Release, Transfer, Receive };

inline constexpr std::array<StageKind, 5> kAllStageKinds = {
    StageKind::Create, StageKind::Process, StageKind::Release, StageKind::Transfer,
    StageKind::Receive};

[[nodiscard]] std::string_view to_string(StageKind kind);
[[nodiscard]] std::optional<StageKind> parse_stage_kind(std::string_view text);

/// Legal solid-edge pairs. Within one thimac a thing moves
/// transfer->receive->process/release, create->process/release,
/// process->release, release->transfer. Across thimacs it only moves
/// transfer->transfer.
[[nodiscard]] bool allowed_adjacency(StageKind from, StageKind to, bool same_thimac);

struct StageRef {
    std::string thimac_path;
    StageKind kind = StageKind::Create;

    /// "ATM.CardReader.process"
    [[nodiscard]] std::string str() const;

    friend auto operator<=>(const StageRef&, const StageRef&) = default;
};

/// Splits "A.B.kind" into a StageRef; nullopt when the last segment is not a
/// stage kind or the path part is empty.
[[nodiscard]] std::optional<StageRef> parse_stage_ref(std::string_view text);

/// A literal on the right-hand side of a guard comparison. Dates use the
/// zero-padded "DD-MM-YYYY" form.
struct Literal {
    enum class Kind { Integer, String, Date };
    Kind kind = Kind::Integer;
    std::string text;

    friend bool operator==(const Literal&, const Literal&) = default;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

[[nodiscard]] std::string_view to_string(CompareOp op);

struct AttrCompare {
    std::string attr;
    CompareOp op = CompareOp::Eq;
    Literal value;
    friend bool operator==(const AttrCompare&, const AttrCompare&) = default;
};

struct CounterCompare {
    std::string counter;
    CompareOp op = CompareOp::Eq;
    Literal value;
    friend bool operator==(const CounterCompare&, const CounterCompare&) = default;
};

/// Looks up a named outcome: first in the scenario's outcome table, then in
/// a model-level `guard` definition of the same name.
struct OutcomeRef {
    std::string name;
    friend bool operator==(const OutcomeRef&, const OutcomeRef&) = default;
};

struct GuardTerm {
    bool negated = false;
    std::variant<AttrCompare, CounterCompare, OutcomeRef> atom;
    friend bool operator==(const GuardTerm&, const GuardTerm&) = default;
};

/// Conjunction of (possibly negated) atoms.
struct Guard {
    std::vector<GuardTerm> terms;
    friend bool operator==(const Guard&, const Guard&) = default;
};

[[nodiscard]] std::string to_string(const Literal& literal);
[[nodiscard]] std::string to_string(const Guard& guard);

struct CounterAction {
    enum class Op { Increment, Reset };
    Op op = Op::Increment;
    std::string counter;
    friend bool operator==(const CounterAction&, const CounterAction&) = default;
};

[[nodiscard]] std::string to_string(const CounterAction& action);

/// Attribute generator attached to a thimac, e.g. `generate day = range(1, 31);`.
struct Generator {
    std::string attr;
    std::string kind;
    std::vector<std::int64_t> args;
    SourceSpan span;

    friend bool operator==(const Generator& a, const Generator& b) {
        return a.attr == b.attr && a.kind == b.kind && a.args == b.args;
    }
};

struct Thimac {
    std::string name;
    std::string path;
    std::vector<StageKind> stages;  // declaration order
    std::vector<Thimac> children;
    std::vector<Generator> generators;
    SourceSpan span;

    [[nodiscard]] bool has_stage(StageKind kind) const;

    friend bool operator==(const Thimac& a, const Thimac& b) {
        return a.name == b.name && a.path == b.path && a.stages == b.stages &&
               a.children == b.children && a.generators == b.generators;
    }
};

struct FlowEdge {
    std::string id;
    std::string label;
    StageRef from;
    StageRef to;
    SourceSpan span;

    [[nodiscard]] bool same_thimac() const { return from.thimac_path == to.thimac_path; }

    friend bool operator==(const FlowEdge& a, const FlowEdge& b) {
        return a.id == b.id && a.label == b.label && a.from == b.from && a.to == b.to;
    }
};

struct TriggerEdge {
    std::string id;
    StageRef from;
    StageRef to;
    std::optional<Guard> guard;
    std::vector<CounterAction> actions;
    SourceSpan span;

    friend bool operator==(const TriggerEdge& a, const TriggerEdge& b) {
        return a.id == b.id && a.from == b.from && a.to == b.to && a.guard == b.guard &&
               a.actions == b.actions;
    }
};

struct CounterDecl {
    std::string name;
    std::int64_t initial = 0;
    std::string owner_path;  // empty for model-level counters
    SourceSpan span;

    friend bool operator==(const CounterDecl& a, const CounterDecl& b) {
        return a.name == b.name && a.initial == b.initial && a.owner_path == b.owner_path;
    }
};

struct GuardDef {
    std::string name;
    Guard expr;
    std::string owner_path;
    SourceSpan span;

    friend bool operator==(const GuardDef& a, const GuardDef& b) {
        return a.name == b.name && a.expr == b.expr && a.owner_path == b.owner_path;
    }
};

/// Declares an attribute name that guards may read through `attr(name)`.
struct AttrDecl {
    std::string name;
    std::string owner_path;
    SourceSpan span;

    friend bool operator==(const AttrDecl& a, const AttrDecl& b) {
        return a.name == b.name && a.owner_path == b.owner_path;
    }
};

class StaticModel {
public:
    std::string name;
    std::vector<Thimac> roots;
    std::vector<FlowEdge> flows;
    std::vector<TriggerEdge> triggers;
    std::vector<CounterDecl> counters;
    std::vector<GuardDef> guards;
    std::vector<AttrDecl> attrs;

    [[nodiscard]] const Thimac* find_thimac(std::string_view path) const;
    [[nodiscard]] Thimac* find_thimac(std::string_view path);
    [[nodiscard]] bool resolves(const StageRef& ref) const;

    [[nodiscard]] const CounterDecl* find_counter(std::string_view name) const;
    [[nodiscard]] const GuardDef* find_guard(std::string_view name) const;
    [[nodiscard]] bool declares_attr(std::string_view name) const;

    /// Depth-first, declaration order.
    [[nodiscard]] std::vector<const Thimac*> all_thimacs() const;
    /// Every declared stage, thimacs in depth-first order, stages in
    /// declaration order.
    [[nodiscard]] std::vector<StageRef> all_stages() const;

    friend bool operator==(const StaticModel&, const StaticModel&) = default;
};

/// Recomputes every thimac path from the names (root paths are the bare
/// name, children are "parent.name").
void assign_paths(StaticModel& model);

[[nodiscard]] Thimac make_thimac(std::string name, std::vector<StageKind> stages,
                                 std::vector<Thimac> children = {});

/// True when `path` names `ancestor` itself or one of its descendants.
[[nodiscard]] bool path_within(std::string_view path, std::string_view ancestor);

/// Parent path of "A.B.C" is "A.B"; a root has an empty parent.
[[nodiscard]] std::string parent_path(std::string_view path);

/// A transfer stage is the machine boundary. An edge out of it either enters
/// the machine (target in the same thimac or a nested one) or leaves it.
/// Edges out of any other stage always stay inside.
[[nodiscard]] bool edge_enters_machine(const FlowEdge& edge);

/// Whether a thing that arrived over `edge` came from inside the target's
/// machine (so it continues outward at a transfer stage).
[[nodiscard]] bool edge_arrives_from_inside(const FlowEdge& edge);

/// Appends a solid edge. Rejects unresolved endpoints (E_REF), illegal stage
/// pairs (E_ADJ) and exact duplicates (E_DUP).
Result<FlowEdge> add_flow(StaticModel& model, std::string label, StageRef from, StageRef to);

/// Appends a dashed edge. Sources must be PROCESS or CREATE (E_TRIG_SRC),
/// targets CREATE, RELEASE or PROCESS (E_TRIG_DST).
Result<TriggerEdge> add_trigger(StaticModel& model, StageRef from, StageRef to,
                                std::optional<Guard> guard = std::nullopt,
                                std::vector<CounterAction> actions = {});

/// Deterministic id of the next flow edge with `label`: "<label>#<ordinal>".
[[nodiscard]] std::string next_flow_id(const StaticModel& model, std::string_view label);
[[nodiscard]] std::string next_trigger_id(const StaticModel& model);

}  // namespace thimac
