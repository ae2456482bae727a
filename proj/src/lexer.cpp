#include "thimac/lexer.hpp"

#include <cctype>

namespace thimac {

const char* describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::Ident: return "identifier";
        case TokenKind::Int: return "integer";
        case TokenKind::Date: return "date";
        case TokenKind::String: return "string";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::Assign: return "'='";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Eq: return "'=='";
        case TokenKind::Ne: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    LexResult run() {
        while (true) {
            skip_trivia();
            if (at_end()) break;
            scan_token();
        }
        LexToken end;
        end.kind = TokenKind::End;
        end.span = {file_, line_, col_, line_, col_};
        out_.tokens.push_back(end);
        return std::move(out_);
    }

private:
    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
            last_col_ = 0;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            last_col_ = col_;
            ++col_;
        }
    }

    void skip_trivia() {
        while (!at_end()) {
            const char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (!at_end() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void emit(TokenKind kind, std::string text, int line, int col) {
        out_.tokens.push_back({kind, std::move(text), {file_, line, col, line_, last_col_}});
    }

    void scan_token() {
        const int line = line_;
        const int col = col_;
        const std::size_t start = pos_;
        const char c = peek();

        if (is_ident_start(c)) {
            while (!at_end() && is_ident_char(peek())) advance();
            emit(TokenKind::Ident, std::string(src_.substr(start, pos_ - start)), line, col);
            return;
        }
        if (is_digit(c)) {
            if (looks_like_date()) {
                for (int i = 0; i < 10; ++i) advance();
                emit(TokenKind::Date, std::string(src_.substr(start, 10)), line, col);
                return;
            }
            while (!at_end() && is_digit(peek())) advance();
            emit(TokenKind::Int, std::string(src_.substr(start, pos_ - start)), line, col);
            return;
        }
        if (c == '"') {
            scan_string(line, col);
            return;
        }

        auto single = [&](TokenKind kind) {
            advance();
            emit(kind, std::string(1, c), line, col);
        };
        auto pair = [&](TokenKind kind, const char* text) {
            advance();
            advance();
            emit(kind, text, line, col);
        };
        switch (c) {
            case '{': return single(TokenKind::LBrace);
            case '}': return single(TokenKind::RBrace);
            case '(': return single(TokenKind::LParen);
            case ')': return single(TokenKind::RParen);
            case ':': return single(TokenKind::Colon);
            case ';': return single(TokenKind::Semicolon);
            case ',': return single(TokenKind::Comma);
            case '.': return single(TokenKind::Dot);
            case '-':
                if (peek(1) == '>') return pair(TokenKind::Arrow, "->");
                return single(TokenKind::Minus);
            case '=':
                if (peek(1) == '=') return pair(TokenKind::Eq, "==");
                return single(TokenKind::Assign);
            case '!':
                if (peek(1) == '=') return pair(TokenKind::Ne, "!=");
                break;
            case '<':
                if (peek(1) == '=') return pair(TokenKind::Le, "<=");
                return single(TokenKind::Lt);
            case '>':
                if (peek(1) == '=') return pair(TokenKind::Ge, ">=");
                return single(TokenKind::Gt);
            default: break;
        }

        // Consume one whole code point so the column stays meaningful.
        advance();
        while (!at_end() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) advance();
        out_.diagnostics.error("P001",
                               "unexpected character '" +
                                   std::string(src_.substr(start, pos_ - start)) + "'",
                               {file_, line, col, line, col});
    }

    bool looks_like_date() const {
        static constexpr const char* shape = "dd-dd-dddd";
        for (std::size_t i = 0; i < 10; ++i) {
            const char want = shape[i];
            const char got = peek(i);
            if (want == 'd' ? !is_digit(got) : got != want) return false;
        }
        return !is_ident_char(peek(10));
    }

    void scan_string(int line, int col) {
        advance();  // opening quote
        std::string value;
        while (true) {
            if (at_end() || peek() == '\n') {
                out_.diagnostics.error("P001", "unterminated string literal",
                                       {file_, line, col, line_, last_col_});
                return;
            }
            const char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                const int esc_line = line_;
                const int esc_col = col_;
                advance();
                const char e = peek();
                if (at_end()) continue;
                advance();
                switch (e) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    default:
                        out_.diagnostics.error("P001",
                                               std::string("unknown escape sequence '\\") + e + "'",
                                               {file_, esc_line, esc_col, esc_line, esc_col + 1});
                }
                continue;
            }
            value += c;
            advance();
        }
        emit(TokenKind::String, std::move(value), line, col);
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    int last_col_ = 0;
    LexResult out_;
};

}  // namespace

LexResult lex(std::string_view source, const std::string& file_name) {
    return Lexer(source, file_name).run();
}

}  // namespace thimac
