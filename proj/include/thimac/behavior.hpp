#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/events.hpp"
#include "thimac/model.hpp"
#include "thimac/trace.hpp"

namespace thimac {

struct BoundEvent {
    std::string id;
    std::string description;
    std::set<std::string> paths;  // member stage paths
    std::size_t index = 0;        // declaration order
};

struct BindResult {
    std::vector<BoundEvent> events;
    Diagnostics diagnostics;
};

/// Resolves every region and checks that it is weakly connected through the
/// flows and triggers that stay inside it. B001 unresolved stage, B002
/// disconnected region, B003 duplicate id, B004 empty region.
[[nodiscard]] BindResult bind_events(const StaticModel& model, const std::vector<EventDecl>& decls);

/// C002 when the precedence relation has a cycle, C003 when an edge names an
/// event that is not declared.
[[nodiscard]] Diagnostics check_chronology_structure(const Chronology& chronology,
                                                     const std::vector<EventDecl>& decls);

struct EventOccurrence {
    std::string event;
    std::int64_t start = 0;
    std::int64_t end = 0;
    std::uint64_t token = 0;
    std::vector<std::size_t> indices;  // into the projected trace

    friend bool operator==(const EventOccurrence&, const EventOccurrence&) = default;
};

/// One occurrence per uninterrupted stay of a token inside an event region.
/// Only positional micro-events count. Ordered by start tick, then event
/// declaration order, then first trace index.
[[nodiscard]] std::vector<EventOccurrence> project(const Trace& trace,
                                                   const std::vector<BoundEvent>& events);

enum class Verdict { Conforms, Violates };

struct Violation {
    std::string event;
    std::int64_t tick = 0;
    std::string missing;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ConformanceReport {
    std::vector<EventOccurrence> occurrences;
    std::vector<Violation> violations;
    Verdict verdict = Verdict::Conforms;
};

/// For every occurrence of E and every edge D -> E, some occurrence of D must
/// start no later than it. C001 when an occurrence's event is not a vertex of
/// the chronology.
Result<ConformanceReport> check_chronology(const std::vector<EventOccurrence>& occurrences,
                                           const Chronology& chronology);

/// `verdict=...`, then `occurrence event= start= end=` lines, then
/// `violation event= tick= missing=` lines.
[[nodiscard]] std::string format_report(const ConformanceReport& report);

}  // namespace thimac
