#pragma once

// Composition of two separately designed model parts at declared points of
// contact.

#include <optional>
#include <string>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/model.hpp"

namespace thimac {

struct Joint {
    enum class Kind { Flow, Trigger };
    Kind kind = Kind::Trigger;
    StageRef from;  // in the first model
    StageRef to;    // in the second model
    std::string label;            // flow joints only
    std::optional<Guard> guard;   // trigger joints only
    std::vector<CounterAction> actions;
};

struct JoinResult {
    std::optional<StaticModel> model;
    Diagnostics diagnostics;
};

/// Merges `b` into a copy of `a` (keeping a's name) and adds one edge per
/// joint. Flow joints connect a transfer stage of `a` to a transfer stage of
/// `b`; trigger joints follow the usual trigger source/target rules. J001 for
/// an empty joint list, an unresolved endpoint or an illegal shape, J002 when
/// root names collide. The merged model is validated and its errors are
/// returned instead of a model.
[[nodiscard]] JoinResult join_models(const StaticModel& a, const StaticModel& b,
                                     const std::vector<Joint>& joints);

}  // namespace thimac
