#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thimac/events.hpp"
#include "thimac/model.hpp"

namespace thimac {

/// Canonical `.tm` text: 2-space indent, one declaration per line. Inside a
/// thimac: stages, attrs, counters, generators, guards, child thimacs. At
/// model level: attrs, counters, guards, root thimacs, then every flow,
/// trigger, event and the chronology. Consecutive edges of one label that
/// continue each other are printed as one multi-hop flow. Comments are not
/// preserved.
[[nodiscard]] std::string print_canonical(const StaticModel& model,
                                          const std::vector<EventDecl>& events = {},
                                          const std::optional<Chronology>& chronology = {});

}  // namespace thimac
