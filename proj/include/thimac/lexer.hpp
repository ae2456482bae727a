#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thimac/diagnostics.hpp"

namespace thimac {

enum class TokenKind {
    Ident,
    Int,
    Date,    // DD-MM-YYYY
    String,  // value holds the unescaped text
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semicolon,
    Comma,
    Dot,
    Arrow,
    Assign,
    Minus,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    End,
};

[[nodiscard]] const char* describe(TokenKind kind);

struct LexToken {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceSpan span;
};

struct LexResult {
    std::vector<LexToken> tokens;  // always terminated by an End token
    Diagnostics diagnostics;    // P001 entries
};

/// Splits `.tm` source into tokens. `#` starts a comment running to end of
/// line; CR is treated as whitespace. Columns count UTF-8 code points.
/// Invalid characters are reported as P001 and skipped.
[[nodiscard]] LexResult lex(std::string_view source, const std::string& file_name);

}  // namespace thimac
