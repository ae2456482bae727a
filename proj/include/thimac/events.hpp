#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/model.hpp"

namespace thimac {

/// A named region of the static model over which an event happens.
struct EventDecl {
    std::string id;
    std::string description;
    std::vector<StageRef> region;
    SourceSpan span;

    friend bool operator==(const EventDecl& a, const EventDecl& b) {
        return a.id == b.id && a.description == b.description && a.region == b.region;
    }
};

/// Precedence pairs between events ("before -> after"), in declaration order.
struct Chronology {
    std::vector<std::pair<std::string, std::string>> edges;
    std::vector<SourceSpan> spans;  // parallel to edges when parsed

    /// Event ids mentioned by any edge, first-mention order.
    [[nodiscard]] std::vector<std::string> vertices() const;

    friend bool operator==(const Chronology& a, const Chronology& b) { return a.edges == b.edges; }
};

}  // namespace thimac
