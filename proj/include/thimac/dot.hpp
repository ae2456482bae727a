#pragma once

#include <set>
#include <string>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/events.hpp"
#include "thimac/model.hpp"

namespace thimac {

enum class RankDir { LR, TB };

struct RenderOptions {
    bool show_events = false;
    RankDir rankdir = RankDir::LR;
    std::set<std::string> highlight;  // event ids; requires show_events
};

/// One digraph. Thimacs become nested `cluster_<path>` subgraphs, stages
/// become nodes named by their full path and labelled with the kind. Flows
/// are solid edges labelled with the flow name, triggers dashed edges
/// labelled with the guard. Counters are note-shaped nodes inside their
/// owner's cluster. With show_events every event gets a comment block
/// listing its member stages. R001 unknown highlighted event, R002 highlight
/// without show_events.
Result<std::string> to_dot(const StaticModel& model, const std::vector<EventDecl>& events,
                           const RenderOptions& options = {});

}  // namespace thimac
