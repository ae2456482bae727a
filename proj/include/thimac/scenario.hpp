#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/generator.hpp"
#include "thimac/model.hpp"

namespace thimac {

struct Injection {
    std::int64_t tick = 0;
    std::string flow;
    StageRef at;
    Attrs attrs;
    SourceSpan span;
};

/// (stage whose triggers ask, outcome name) -> answers, consumed in order.
using OutcomeTable = std::map<std::pair<StageRef, std::string>, std::vector<bool>>;

struct Scenario {
    std::vector<Injection> injections;
    OutcomeTable outcomes;
    std::int64_t max_ticks = 1000;
    std::uint64_t seed = 0;
};

struct ScenarioParse {
    Scenario scenario;
    Diagnostics diagnostics;  // S001 for malformed lines
};

/// Line-based format, `#` comments:
///   inject <flow> at <path.stage> tick=<n> [attr k=v]...
///   outcome <path.stage>.<name> = true|false[,true|false]...
///   maxticks <n>
///   seed <n>
/// Repeated outcome lines for one key append.
[[nodiscard]] ScenarioParse parse_scenario(std::string_view text, const std::string& file_name);

}  // namespace thimac
