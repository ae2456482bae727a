#include "thimac/parser.hpp"

#include <charconv>
#include <initializer_list>
#include <set>

#include "thimac/lexer.hpp"

namespace thimac {

namespace {

struct SyntaxError {};

SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
    return {a.file, a.start_line, a.start_col, b.end_line, b.end_col};
}

class Parser {
public:
    Parser(std::vector<LexToken> tokens, Diagnostics& diags)
        : tokens_(std::move(tokens)), diags_(diags) {}

    ParseResult run() {
        ParseResult result;
        StaticModel model;
        try {
            expect_keyword("model");
            model.name = expect(TokenKind::Ident).text;
            expect(TokenKind::LBrace);
        } catch (const SyntaxError&) {
            result.diagnostics = std::move(diags_);
            return result;
        }
        model_ = &model;
        parse_items(nullptr);
        try {
            expect(TokenKind::RBrace);
            expect(TokenKind::End);
        } catch (const SyntaxError&) {
        }

        result.events = std::move(events_);
        if (has_chronology_) result.chronology = std::move(chronology_);
        bool parse_errors = false;
        for (const Diagnostic& d : diags_) {
            if (d.severity == Severity::Error && !d.code.empty() && d.code[0] == 'P')
                parse_errors = true;
        }
        if (!parse_errors) result.model = std::move(model);
        result.diagnostics = std::move(diags_);
        return result;
    }

private:
    // ---- token helpers ----------------------------------------------------

    const LexToken& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }
    const LexToken& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }
    bool check(TokenKind kind) const { return peek().kind == kind; }
    bool check_keyword(std::string_view word) const {
        return peek().kind == TokenKind::Ident && peek().text == word;
    }
    const LexToken& next() {
        const LexToken& t = tokens_[pos_];
        if (t.kind != TokenKind::End) ++pos_;
        return t;
    }
    bool accept(TokenKind kind) {
        if (!check(kind)) return false;
        next();
        return true;
    }
    bool accept_keyword(std::string_view word) {
        if (!check_keyword(word)) return false;
        next();
        return true;
    }

    [[noreturn]] void unexpected(std::initializer_list<std::string> expected,
                                 const std::string& note = {}) {
        const LexToken& t = peek();
        std::string found = t.kind == TokenKind::End ? "end of input"
                            : t.kind == TokenKind::String
                                ? "string"
                                : "'" + t.text + "'";
        std::string msg = "unexpected " + found + ", expected ";
        if (expected.size() > 1) msg += "one of: ";
        bool first = true;
        for (const auto& e : expected) {
            if (!first) msg += ", ";
            msg += e;
            first = false;
        }
        if (!note.empty()) msg += " (" + note + ")";
        diags_.error("P002", msg, t.span);
        throw SyntaxError{};
    }

    const LexToken& expect(TokenKind kind) {
        if (!check(kind)) unexpected({describe(kind)});
        return next();
    }
    const LexToken& expect_keyword(std::string_view word) {
        if (!check_keyword(word)) unexpected({"'" + std::string(word) + "'"});
        return next();
    }

    std::int64_t expect_int() {
        const LexToken& t = expect(TokenKind::Int);
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
            diags_.error("P002", "integer '" + t.text + "' is out of range", t.span);
            throw SyntaxError{};
        }
        return value;
    }

    /// Skips to just past the next ';' at this nesting level, or to just past
    /// a '}' that closes a block opened while skipping. Stops before a '}' that
    /// closes the enclosing block.
    void synchronize() {
        int depth = 0;
        while (!check(TokenKind::End)) {
            if (check(TokenKind::LBrace)) {
                ++depth;
            } else if (check(TokenKind::RBrace)) {
                if (depth == 0) return;
                --depth;
                if (depth == 0) {
                    next();
                    return;
                }
            } else if (check(TokenKind::Semicolon) && depth == 0) {
                next();
                return;
            }
            next();
        }
    }

    // ---- items -------------------------------------------------------------

    std::string owner_path(const Thimac* owner) const { return owner ? owner->path : ""; }

    void parse_items(Thimac* owner) {
        while (!check(TokenKind::RBrace) && !check(TokenKind::End)) {
            const std::size_t before = pos_;
            try {
                parse_item(owner);
            } catch (const SyntaxError&) {
                synchronize();
                if (pos_ == before) next();
            }
        }
    }

    void parse_item(Thimac* owner) {
        const LexToken& head = peek();
        if (head.kind == TokenKind::Ident) {
            const std::string& word = head.text;
            if (word == "thimac") return parse_thimac(owner);
            if (word == "flow") return parse_flow();
            if (word == "trigger") return parse_trigger();
            if (word == "counter") return parse_counter(owner);
            if (word == "guard") return parse_guard(owner);
            if (word == "event") return parse_event();
            if (word == "chronology") return parse_chronology();
            if (word == "attr") return parse_attr(owner);
            if (word == "generate") {
                if (owner == nullptr)
                    unexpected({"an item"}, "generators must be declared inside a thimac");
                return parse_generator(*owner);
            }
            if (word == "stages") {
                if (owner == nullptr) unexpected({"an item"}, "stages belong inside a thimac");
                return parse_stages(*owner);
            }
            if (word == "memory") {
                unexpected({"an item"}, "memory relations are not supported");
            }
        }
        unexpected({"'thimac'", "'flow'", "'trigger'", "'counter'", "'guard'", "'event'",
                    "'chronology'", "'attr'", "'generate'", "'}'"});
    }

    void parse_thimac(Thimac* owner) {
        const LexToken& kw = next();
        const LexToken& name = expect(TokenKind::Ident);
        Thimac t;
        t.name = name.text;
        t.path = owner ? owner->path + "." + t.name : t.name;
        t.span = join(kw.span, name.span);
        expect(TokenKind::LBrace);

        std::vector<Thimac>& level = owner ? owner->children : model_->roots;
        level.push_back(std::move(t));
        // The reference stays valid: nested items only append to the new
        // thimac's own children, never to `level`.
        Thimac& self = level.back();
        stages_seen_.erase(self.path);
        parse_items(&self);
        expect(TokenKind::RBrace);
    }

    void parse_stages(Thimac& owner) {
        const LexToken& kw = next();
        expect(TokenKind::Colon);
        std::vector<StageKind> kinds;
        std::vector<SourceSpan> spans;
        do {
            const LexToken& t = expect(TokenKind::Ident);
            auto kind = parse_stage_kind(t.text);
            if (!kind) {
                diags_.error("P002",
                             "unexpected '" + t.text +
                                 "', expected a stage kind (create, process, release, transfer, "
                                 "receive)",
                             t.span);
                throw SyntaxError{};
            }
            kinds.push_back(*kind);
            spans.push_back(t.span);
        } while (accept(TokenKind::Comma));
        expect(TokenKind::Semicolon);

        if (!stages_seen_.insert(owner.path).second) {
            diags_.error("P003", "thimac '" + owner.path + "' already declares its stages",
                         join(kw.span, previous().span));
            return;
        }
        std::set<StageKind> seen;
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            if (!seen.insert(kinds[i]).second) {
                diags_.error("P003",
                             "stage '" + std::string(to_string(kinds[i])) +
                                 "' listed twice for thimac '" + owner.path + "'",
                             spans[i]);
                continue;
            }
            owner.stages.push_back(kinds[i]);
        }
    }

    StageRef parse_stage_ref() {
        const LexToken& first = expect(TokenKind::Ident);
        std::vector<std::string> segments{first.text};
        while (accept(TokenKind::Dot)) segments.push_back(expect(TokenKind::Ident).text);
        if (segments.size() < 2) {
            pos_--;  // point at the identifier that should have been a path
            unexpected({"'.'"}, "a stage reference ends in .create/.process/.release/"
                                ".transfer/.receive");
        }
        auto kind = parse_stage_kind(segments.back());
        if (!kind) {
            pos_--;
            unexpected({"a stage kind"}, "the last segment of a stage reference is its kind");
        }
        StageRef ref;
        ref.kind = *kind;
        for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
            if (i) ref.thimac_path += '.';
            ref.thimac_path += segments[i];
        }
        return ref;
    }

    void parse_flow() {
        const LexToken& kw = next();
        const std::string label = expect(TokenKind::Ident).text;
        expect(TokenKind::Colon);
        std::vector<StageRef> chain{parse_stage_ref()};
        do {
            expect(TokenKind::Arrow);
            chain.push_back(parse_stage_ref());
        } while (check(TokenKind::Arrow));
        expect(TokenKind::Semicolon);
        const SourceSpan span = join(kw.span, previous().span);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            FlowEdge edge;
            edge.id = next_flow_id(*model_, label);
            edge.label = label;
            edge.from = chain[i];
            edge.to = chain[i + 1];
            edge.span = span;
            model_->flows.push_back(std::move(edge));
        }
    }

    Literal parse_literal() {
        Literal lit;
        if (check(TokenKind::String)) {
            lit.kind = Literal::Kind::String;
            lit.text = next().text;
        } else if (check(TokenKind::Date)) {
            lit.kind = Literal::Kind::Date;
            lit.text = next().text;
        } else if (check(TokenKind::Int) || check(TokenKind::Minus)) {
            const bool negative = accept(TokenKind::Minus);
            lit.kind = Literal::Kind::Integer;
            lit.text = (negative ? "-" : "") + std::to_string(expect_int());
        } else {
            unexpected({"integer", "date", "string"});
        }
        return lit;
    }

    CompareOp parse_op() {
        switch (peek().kind) {
            case TokenKind::Eq: next(); return CompareOp::Eq;
            case TokenKind::Ne: next(); return CompareOp::Ne;
            case TokenKind::Lt: next(); return CompareOp::Lt;
            case TokenKind::Le: next(); return CompareOp::Le;
            case TokenKind::Gt: next(); return CompareOp::Gt;
            case TokenKind::Ge: next(); return CompareOp::Ge;
            default: unexpected({"'=='", "'!='", "'<'", "'<='", "'>'", "'>='"});
        }
    }

    GuardTerm parse_guard_atom() {
        GuardTerm term;
        while (accept_keyword("not")) term.negated = !term.negated;
        if (accept_keyword("attr")) {
            expect(TokenKind::LParen);
            AttrCompare a;
            a.attr = expect(TokenKind::Ident).text;
            expect(TokenKind::RParen);
            a.op = parse_op();
            a.value = parse_literal();
            term.atom = std::move(a);
        } else if (accept_keyword("counter")) {
            expect(TokenKind::LParen);
            CounterCompare c;
            c.counter = expect(TokenKind::Ident).text;
            expect(TokenKind::RParen);
            c.op = parse_op();
            c.value = parse_literal();
            term.atom = std::move(c);
        } else if (accept_keyword("outcome")) {
            expect(TokenKind::LParen);
            term.atom = OutcomeRef{expect(TokenKind::Ident).text};
            expect(TokenKind::RParen);
        } else {
            unexpected({"'attr'", "'counter'", "'outcome'", "'not'"});
        }
        return term;
    }

    Guard parse_guard_expr() {
        Guard guard;
        guard.terms.push_back(parse_guard_atom());
        while (accept_keyword("and")) guard.terms.push_back(parse_guard_atom());
        return guard;
    }

    void parse_trigger() {
        const LexToken& kw = next();
        TriggerEdge edge;
        edge.from = parse_stage_ref();
        expect(TokenKind::Arrow);
        edge.to = parse_stage_ref();
        if (accept_keyword("when")) edge.guard = parse_guard_expr();
        if (accept_keyword("do")) {
            do {
                CounterAction action;
                if (accept_keyword("inc")) {
                    action.op = CounterAction::Op::Increment;
                } else if (accept_keyword("reset")) {
                    action.op = CounterAction::Op::Reset;
                } else {
                    unexpected({"'inc'", "'reset'"});
                }
                expect(TokenKind::LParen);
                action.counter = expect(TokenKind::Ident).text;
                expect(TokenKind::RParen);
                edge.actions.push_back(std::move(action));
            } while (accept(TokenKind::Comma));
        }
        if (!check(TokenKind::Semicolon)) {
            if (!edge.guard && edge.actions.empty())
                unexpected({"'when'", "'do'", "';'"});
            if (edge.actions.empty()) unexpected({"'and'", "'do'", "';'"});
            unexpected({"','", "';'"});
        }
        next();
        edge.span = join(kw.span, previous().span);
        edge.id = next_trigger_id(*model_);
        model_->triggers.push_back(std::move(edge));
    }

    void parse_counter(const Thimac* owner) {
        const LexToken& kw = next();
        const LexToken& name = expect(TokenKind::Ident);
        expect(TokenKind::Assign);
        const std::int64_t initial = expect_int();
        expect(TokenKind::Semicolon);
        if (model_->find_counter(name.text)) {
            diags_.error("P003", "counter '" + name.text + "' is already declared", name.span);
            return;
        }
        model_->counters.push_back(
            {name.text, initial, owner_path(owner), join(kw.span, previous().span)});
    }

    void parse_guard(const Thimac* owner) {
        const LexToken& kw = next();
        const LexToken& name = expect(TokenKind::Ident);
        expect(TokenKind::Assign);
        Guard expr = parse_guard_expr();
        expect(TokenKind::Semicolon);
        if (model_->find_guard(name.text)) {
            diags_.error("P003", "guard '" + name.text + "' is already declared", name.span);
            return;
        }
        model_->guards.push_back(
            {name.text, std::move(expr), owner_path(owner), join(kw.span, previous().span)});
    }

    void parse_attr(const Thimac* owner) {
        next();
        std::vector<LexToken> names{expect(TokenKind::Ident)};
        while (accept(TokenKind::Comma)) names.push_back(expect(TokenKind::Ident));
        expect(TokenKind::Semicolon);
        for (const LexToken& n : names) {
            bool dup = false;
            for (const AttrDecl& a : model_->attrs) dup = dup || a.name == n.text;
            if (dup) {
                diags_.error("P003", "attribute '" + n.text + "' is already declared", n.span);
                continue;
            }
            model_->attrs.push_back({n.text, owner_path(owner), n.span});
        }
    }

    void parse_generator(Thimac& owner) {
        const LexToken& kw = next();
        const LexToken& name = expect(TokenKind::Ident);
        expect(TokenKind::Assign);
        Generator g;
        g.attr = name.text;
        g.kind = expect(TokenKind::Ident).text;
        expect(TokenKind::LParen);
        g.args.push_back(expect_int());
        while (accept(TokenKind::Comma)) g.args.push_back(expect_int());
        expect(TokenKind::RParen);
        expect(TokenKind::Semicolon);
        g.span = join(kw.span, previous().span);
        for (const Generator& other : owner.generators) {
            if (other.attr == g.attr) {
                diags_.error("P003",
                             "thimac '" + owner.path + "' already generates '" + g.attr + "'",
                             name.span);
                return;
            }
        }
        owner.generators.push_back(std::move(g));
    }

    void parse_event() {
        const LexToken& kw = next();
        EventDecl ev;
        ev.id = expect(TokenKind::Ident).text;
        ev.description = expect(TokenKind::String).text;
        expect_keyword("region");
        expect(TokenKind::LBrace);
        ev.region.push_back(parse_stage_ref());
        while (accept(TokenKind::Comma)) ev.region.push_back(parse_stage_ref());
        expect(TokenKind::RBrace);
        ev.span = join(kw.span, previous().span);
        events_.push_back(std::move(ev));
    }

    void parse_chronology() {
        next();
        expect(TokenKind::LBrace);
        has_chronology_ = true;
        while (!check(TokenKind::RBrace) && !check(TokenKind::End)) {
            const std::size_t before = pos_;
            try {
                const LexToken& from = expect(TokenKind::Ident);
                expect(TokenKind::Arrow);
                const LexToken& to = expect(TokenKind::Ident);
                expect(TokenKind::Semicolon);
                chronology_.edges.emplace_back(from.text, to.text);
                chronology_.spans.push_back(join(from.span, previous().span));
            } catch (const SyntaxError&) {
                synchronize();
                if (pos_ == before) next();
            }
        }
        expect(TokenKind::RBrace);
    }

    std::vector<LexToken> tokens_;
    std::size_t pos_ = 0;
    Diagnostics& diags_;
    StaticModel* model_ = nullptr;
    std::vector<EventDecl> events_;
    Chronology chronology_;
    bool has_chronology_ = false;
    std::set<std::string> stages_seen_;
};

}  // namespace

ParseResult parse(std::string_view text, const std::string& file_name) {
    LexResult lexed = lex(text, file_name);
    Diagnostics diags = std::move(lexed.diagnostics);
    ParseResult result = Parser(std::move(lexed.tokens), diags).run();
    result.diagnostics.sort();
    return result;
}

}  // namespace thimac
