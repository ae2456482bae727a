#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thimac/diagnostics.hpp"
#include "thimac/events.hpp"
#include "thimac/model.hpp"

namespace thimac {

struct ParseResult {
    std::optional<StaticModel> model;  // absent iff diagnostics has P-errors
    std::vector<EventDecl> events;
    std::optional<Chronology> chronology;
    Diagnostics diagnostics;
};

/// Parses one `.tm` source:
///
///   model      := "model" IDENT "{" item* "}"
///   item       := thimac | flow | trigger | counter | guarddef | event | chrono
///               | attrdecl | generator
///   thimac     := "thimac" IDENT "{" ("stages" ":" kindlist ";")? item* "}"
///   flow       := "flow" IDENT ":" stageref ("->" stageref)+ ";"
///   trigger    := "trigger" stageref "->" stageref ("when" gexpr)?
///                 ("do" action ("," action)*)? ";"
///   counter    := "counter" IDENT "=" INT ";"
///   guarddef   := "guard" IDENT "=" gexpr ";"
///   gexpr      := gatom ("and" gatom)*
///   gatom      := "not" gatom | ("attr"|"counter") "(" IDENT ")" OP literal
///               | "outcome" "(" IDENT ")"
///   action     := ("inc"|"reset") "(" IDENT ")"
///   stageref   := IDENT ("." IDENT)* "." KIND
///   event      := "event" IDENT STRING "region" "{" stageref ("," stageref)* "}"
///   chrono     := "chronology" "{" (IDENT "->" IDENT ";")* "}"
///   attrdecl   := "attr" IDENT ("," IDENT)* ";"
///   generator  := "generate" IDENT "=" IDENT "(" INT ("," INT)* ")" ";"   (thimac only)
///
/// Stage references are absolute paths. Flows, triggers, events and the
/// chronology may appear at any nesting level; counters, guards and attrs
/// are owned by the enclosing thimac. A multi-hop flow becomes one edge per
/// hop, ids "<label>#<n>". Errors: P001 lexical, P002 unexpected token,
/// P003 duplicate declaration; after an error the parser skips to the next
/// ';' or '}' and continues.
[[nodiscard]] ParseResult parse(std::string_view text, const std::string& file_name);

}  // namespace thimac
