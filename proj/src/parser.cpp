#include "hoarith/parser.hpp"

#include <cctype>
#include <optional>
#include <vector>

namespace hoarith {

Var NameTable::intern(const std::string& name) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) return it->second;
    // x<k> denotes index k directly.
    if (name.size() > 1 && name[0] == 'x' &&
        name.find_first_not_of("0123456789", 1) == std::string::npos) {
        std::uint32_t idx = static_cast<std::uint32_t>(std::stoul(name.substr(1)));
        Var v{idx};
        used_.insert(idx);
        by_name_.emplace(name, v);
        by_var_.emplace(v, name);
        return v;
    }
    std::uint32_t idx = 0;
    while (used_.count(idx)) ++idx;
    Var v{idx};
    used_.insert(idx);
    by_name_.emplace(name, v);
    by_var_.emplace(v, name);
    return v;
}

std::string NameTable::name_of(Var v) const {
    auto it = by_var_.find(v);
    if (it != by_var_.end()) return it->second;
    return "x" + std::to_string(v.index);
}

namespace {

enum class Tok {
    Ident, Number,
    KwIf, KwThen, KwElse, KwFi, KwWhile, KwDo, KwOd, KwForall, KwExists,
    Assign, Semi, Less, LessEq, EqSym, Tilde, Arrow, Iff, AndSym, OrSym,
    Plus, Star, LParen, RParen, Dot, End
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

const char* tok_name(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "numeral";
    case Tok::KwIf: return "'if'";
    case Tok::KwThen: return "'then'";
    case Tok::KwElse: return "'else'";
    case Tok::KwFi: return "'fi'";
    case Tok::KwWhile: return "'while'";
    case Tok::KwDo: return "'do'";
    case Tok::KwOd: return "'od'";
    case Tok::KwForall: return "'forall'";
    case Tok::KwExists: return "'exists'";
    case Tok::Assign: return "':='";
    case Tok::Semi: return "';'";
    case Tok::Less: return "'<'";
    case Tok::LessEq: return "'<='";
    case Tok::EqSym: return "'='";
    case Tok::Tilde: return "'~'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::AndSym: return "'/\\'";
    case Tok::OrSym: return "'\\/'";
    case Tok::Plus: return "'+'";
    case Tok::Star: return "'*'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Dot: return "'.'";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok k, std::string t, int l, int c) { out.push_back({k, std::move(t), l, c}); };
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') { ++line; col = 1; ++i; continue; }
        if (std::isspace(static_cast<unsigned char>(c))) { ++col; ++i; continue; }
        int l = line, co = col;
        auto two = [&](char a, char b) {
            return c == a && i + 1 < text.size() && text[i + 1] == b;
        };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            std::string word(text.substr(i, j - i));
            Tok k = Tok::Ident;
            if (word == "if") k = Tok::KwIf;
            else if (word == "then") k = Tok::KwThen;
            else if (word == "else") k = Tok::KwElse;
            else if (word == "fi") k = Tok::KwFi;
            else if (word == "while") k = Tok::KwWhile;
            else if (word == "do") k = Tok::KwDo;
            else if (word == "od") k = Tok::KwOd;
            else if (word == "forall") k = Tok::KwForall;
            else if (word == "exists") k = Tok::KwExists;
            push(k, word, l, co);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            push(Tok::Number, std::string(text.substr(i, j - i)), l, co);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (two(':', '=')) { push(Tok::Assign, ":=", l, co); i += 2; col += 2; continue; }
        if (c == '<' && i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
            push(Tok::Iff, "<->", l, co); i += 3; col += 3; continue;
        }
        if (two('<', '=')) { push(Tok::LessEq, "<=", l, co); i += 2; col += 2; continue; }
        if (two('-', '>')) { push(Tok::Arrow, "->", l, co); i += 2; col += 2; continue; }
        if (two('/', '\\')) { push(Tok::AndSym, "/\\", l, co); i += 2; col += 2; continue; }
        if (two('\\', '/')) { push(Tok::OrSym, "\\/", l, co); i += 2; col += 2; continue; }
        switch (c) {
        case ';': push(Tok::Semi, ";", l, co); break;
        case '<': push(Tok::Less, "<", l, co); break;
        case '=': push(Tok::EqSym, "=", l, co); break;
        case '~': push(Tok::Tilde, "~", l, co); break;
        case '+': push(Tok::Plus, "+", l, co); break;
        case '*': push(Tok::Star, "*", l, co); break;
        case '(': push(Tok::LParen, "(", l, co); break;
        case ')': push(Tok::RParen, ")", l, co); break;
        case '.': push(Tok::Dot, ".", l, co); break;
        default:
            throw ParseError(std::string("unexpected character '") + c + "'", l, co, "token");
        }
        ++i;
        ++col;
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, NameTable* names)
        : toks_(lex(text)), names_(names) {
        if (!names_) {
            owned_.emplace();
            names_ = &*owned_;
        }
        // Reserve explicitly indexed variables before bare identifiers are
        // interned, so the interning order is independent of position.
        for (const auto& t : toks_) {
            if (t.kind == Tok::Ident && t.text.size() > 1 && t.text[0] == 'x' &&
                t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
                names_->reserve_index(
                    static_cast<std::uint32_t>(std::stoul(t.text.substr(1))));
            }
        }
    }

    StmtPtr program() {
        StmtPtr s = statement();
        if (peek().kind == Tok::Semi) {
            advance();
            return stmt::seq(s, program());
        }
        return s;
    }

    FormulaPtr formula() { return formula_iff(); }

    BExprPtr guard() {
        FormulaPtr f = formula();
        return to_bexpr(f);
    }

    ExprPtr expression_top() { return expression(); }

    void expect_end() {
        if (peek().kind != Tok::End) fail("end of input");
    }

private:
    const Token& peek(std::size_t k = 0) const {
        return toks_[std::min(pos_ + k, toks_.size() - 1)];
    }
    const Token& advance() { return toks_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw ParseError("syntax error at line " + std::to_string(t.line) + ", column " +
                             std::to_string(t.col) + ": expected " + expected + ", found " +
                             tok_name(t.kind),
                         t.line, t.col, expected);
    }

    void expect(Tok k) {
        if (peek().kind != k) fail(tok_name(k));
        advance();
    }

    Var variable() {
        if (peek().kind != Tok::Ident) fail("variable");
        return names_->intern(advance().text);
    }

    // -- arithmetic expressions --

    ExprPtr expression() {
        ExprPtr e = term();
        while (peek().kind == Tok::Plus) {
            advance();
            e = expr::add(e, term());
        }
        return e;
    }

    ExprPtr term() {
        ExprPtr e = factor();
        while (peek().kind == Tok::Star) {
            advance();
            e = expr::mul(e, factor());
        }
        return e;
    }

    ExprPtr factor() {
        switch (peek().kind) {
        case Tok::Number: return expr::num(nat_from_string(advance().text));
        case Tok::Ident: return expr::var(variable());
        case Tok::LParen: {
            advance();
            ExprPtr e = expression();
            expect(Tok::RParen);
            return e;
        }
        default: fail("expression");
        }
    }

    // -- formulas --

    FormulaPtr formula_iff() {
        FormulaPtr f = formula_imp();
        while (peek().kind == Tok::Iff) {
            advance();
            f = fml::iff(f, formula_imp());
        }
        return f;
    }

    FormulaPtr formula_imp() {
        FormulaPtr f = formula_or();
        if (peek().kind == Tok::Arrow) {
            advance();
            return fml::imp(f, formula_imp());  // right-assoc
        }
        return f;
    }

    FormulaPtr formula_or() {
        FormulaPtr f = formula_and();
        while (peek().kind == Tok::OrSym) {
            advance();
            f = fml::f_or(f, formula_and());
        }
        return f;
    }

    FormulaPtr formula_and() {
        FormulaPtr f = formula_unary();
        while (peek().kind == Tok::AndSym) {
            advance();
            f = fml::fand(f, formula_unary());
        }
        return f;
    }

    FormulaPtr formula_unary() {
        switch (peek().kind) {
        case Tok::Tilde:
            advance();
            return fml::fnot(formula_unary());
        case Tok::KwForall: {
            advance();
            Var v = variable();
            if (peek().kind == Tok::Less) {  // bounded form: forall v < t. f
                advance();
                ExprPtr limit = expression();
                expect(Tok::Dot);
                return fml::bforall(v, limit, formula());
            }
            expect(Tok::Dot);
            return fml::forall(v, formula());  // scope extends maximally
        }
        case Tok::KwExists: {
            advance();
            Var v = variable();
            expect(Tok::Dot);
            return fml::exists(v, formula());
        }
        default: return formula_atom();
        }
    }

    FormulaPtr formula_atom() {
        // Try a comparison first; on failure reparse as a parenthesized formula.
        std::size_t save = pos_;
        try {
            ExprPtr a = expression();
            switch (peek().kind) {
            case Tok::Less: advance(); return fml::less(a, expression());
            case Tok::EqSym: advance(); return fml::eq(a, expression());
            case Tok::LessEq: {
                advance();
                ExprPtr b = expression();
                // a <= b  ~>  ~(b < a)
                return fml::fnot(fml::less(b, a));
            }
            default: fail("comparison operator");
            }
        } catch (const ParseError&) {
            if (toks_[save].kind != Tok::LParen) throw;
            pos_ = save;
        }
        expect(Tok::LParen);
        FormulaPtr f = formula();
        expect(Tok::RParen);
        return f;
    }

    // Quantifier-free formulas convert to guards.
    BExprPtr to_bexpr(const FormulaPtr& f) {
        switch (f->kind) {
        case FormulaKind::Atom: return f->atom;
        case FormulaKind::Not: return bexpr::bnot(to_bexpr(f->f1));
        case FormulaKind::Imp: return bexpr::imp(to_bexpr(f->f1), to_bexpr(f->f2));
        case FormulaKind::And: return bexpr::band(to_bexpr(f->f1), to_bexpr(f->f2));
        case FormulaKind::Or: return bexpr::bor(to_bexpr(f->f1), to_bexpr(f->f2));
        case FormulaKind::Iff: {
            BExprPtr a = to_bexpr(f->f1), b = to_bexpr(f->f2);
            return bexpr::band(bexpr::imp(a, b), bexpr::imp(b, a));
        }
        default:
            throw ParseError("quantifier not allowed in a guard", peek().line, peek().col,
                             "quantifier-free expression");
        }
    }

    // -- statements --

    StmtPtr statement() {
        switch (peek().kind) {
        case Tok::KwIf: {
            advance();
            BExprPtr b = guard();
            expect(Tok::KwThen);
            StmtPtr t = program();
            expect(Tok::KwElse);
            StmtPtr e = program();
            expect(Tok::KwFi);
            return stmt::ifte(b, t, e);
        }
        case Tok::KwWhile: {
            advance();
            BExprPtr b = guard();
            expect(Tok::KwDo);
            StmtPtr body = program();
            expect(Tok::KwOd);
            return stmt::wloop(b, body);
        }
        case Tok::Ident: {
            Var x = variable();
            expect(Tok::Assign);
            return stmt::assign(x, expression());
        }
        default: fail("statement");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    NameTable* names_;
    std::optional<NameTable> owned_;
};

} // namespace

StmtPtr parse_program(std::string_view text, NameTable* names) {
    Parser p(text, names);
    StmtPtr s = p.program();
    p.expect_end();
    return s;
}

FormulaPtr parse_formula(std::string_view text, NameTable* names) {
    Parser p(text, names);
    FormulaPtr f = p.formula();
    p.expect_end();
    return f;
}

BExprPtr parse_bexpr(std::string_view text, NameTable* names) {
    Parser p(text, names);
    BExprPtr b = p.guard();
    p.expect_end();
    return b;
}

ExprPtr parse_expr(std::string_view text, NameTable* names) {
    Parser p(text, names);
    ExprPtr e = p.expression_top();
    p.expect_end();
    return e;
}

} // namespace hoarith
