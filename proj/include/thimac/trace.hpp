#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thimac {

enum class Action : std::uint8_t {
    Create,
    Enter,
    Exit,
    Spawn,
    Park,
    Unpark,
    Consume,
    TriggerFire,
    CounterSet,
};

[[nodiscard]] std::string_view to_string(Action action);
[[nodiscard]] std::optional<Action> parse_action(std::string_view text);

/// Actions that place a token at (or remove it from) the stage named by the
/// micro-event's path.
[[nodiscard]] bool is_positional(Action action);

struct MicroEvent {
    std::int64_t tick = 0;
    std::uint64_t token = 0;
    std::string flow;
    std::string path;  // "ATM.CardReader.process"
    Action action = Action::Enter;
    std::string counter;      // counter-set only
    std::int64_t value = 0;   // counter-set only

    friend bool operator==(const MicroEvent&, const MicroEvent&) = default;
};

using Trace = std::vector<MicroEvent>;

/// `tick=<n> token=<id> flow=<label> path=<path> action=<action>`, plus
/// ` counter=<name> value=<v>` for counter-set. No newline.
[[nodiscard]] std::string format_event(const MicroEvent& event);

/// One line per micro-event, each newline-terminated. Returns false when the
/// stream reports a failure.
bool write_trace(const Trace& trace, std::ostream& sink);
[[nodiscard]] std::string trace_text(const Trace& trace);

/// Inverse of format_event; nullopt on malformed lines.
[[nodiscard]] std::optional<MicroEvent> parse_event(std::string_view line);

}  // namespace thimac
