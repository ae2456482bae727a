#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/generator.hpp"
#include "thimac/model.hpp"
#include "thimac/scenario.hpp"
#include "thimac/trace.hpp"

namespace thimac {

struct Token {
    enum class State { Live, Parked, Consumed };

    std::uint64_t id = 0;
    std::string flow;
    Attrs attrs;
    StageRef at;
    State state = State::Live;
    std::optional<std::size_t> arrived_by;  // index into model.flows
};

struct SimResult {
    Trace trace;
    Diagnostics diagnostics;          // E_SIM_* errors; the trace stops there
    std::vector<Token> tokens;        // final state, by id
    std::map<std::string, std::int64_t> counters;
    std::int64_t end_tick = 0;        // first tick that did not run

    [[nodiscard]] bool ok() const { return !diagnostics.has_errors(); }
};

/// Synchronous tick loop. Every tick:
///  1. scheduled injections enter, in scenario order;
///  2. each live token that did not enter its stage this tick follows the
///     single outgoing flow of its label (at a transfer stage, only flows in
///     the direction it is travelling count), in ascending id order;
///  3. triggers of every process or create stage entered this tick are
///     evaluated in declaration order; effects may cascade within the tick.
/// A token without a continuation parks when some release or process
/// trigger could pick it up again and is consumed otherwise. The run ends
/// when nothing can move and no injection is pending, or at max_ticks.
[[nodiscard]] SimResult simulate(const StaticModel& model, const Scenario& scenario);

/// Upper bound on trigger firings within a single tick (E_SIM_CASCADE).
inline constexpr std::size_t kMaxFiringsPerTick = 10000;

}  // namespace thimac
