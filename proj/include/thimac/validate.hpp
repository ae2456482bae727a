#pragma once

#include "thimac/diagnostics.hpp"
#include "thimac/model.hpp"

namespace thimac {

/// Structural legality check. Reports, sorted:
///   E_NAME      duplicate sibling (or root) names
///   E_EMPTY     leaf thimac without stages
///   E_STAGE     stage kind declared twice in one thimac
///   E_REF       flow/trigger endpoint that does not resolve
///   E_ADJ       flow between stages outside the adjacency tables
///   E_DUP       identical (label, from, to) flows
///   E_TRIG_SRC  trigger from a stage other than process/create
///   E_TRIG_DST  trigger into a transfer/receive stage
///   E_TRIG_DUP  trigger parallel to a solid flow
///   E_BRANCH    two same-label flows leaving a stage in the same direction
///   E_GUARD     guard or action naming an undeclared counter or attribute
///   E_GEN_SPEC  malformed generator
///   W_UNREACH   stage without any incident flow or trigger (warning)
[[nodiscard]] Diagnostics validate(const StaticModel& model);

}  // namespace thimac
