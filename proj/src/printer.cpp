#include "hoarith/printer.hpp"

#include <json.hpp>

#include <sstream>

namespace hoarith {

namespace {

std::string vname(Var v, const NameTable* names) {
    return names ? names->name_of(v) : "x" + std::to_string(v.index);
}

// Expression precedence: atom 3, * 2, + 1.
void print_expr(std::ostream& os, const ExprPtr& e, int need, const NameTable* names) {
    int prec;
    switch (e->kind) {
    case ExprKind::Zero:
    case ExprKind::One:
    case ExprKind::Numeral:
    case ExprKind::Variable: prec = 3; break;
    case ExprKind::Mul: prec = 2; break;
    case ExprKind::Add: prec = 1; break;
    default: prec = 3; break;
    }
    bool paren = prec < need;
    if (paren) os << '(';
    switch (e->kind) {
    case ExprKind::Zero: os << '0'; break;
    case ExprKind::One: os << '1'; break;
    case ExprKind::Numeral: os << nat_to_string(e->value); break;
    case ExprKind::Variable: os << vname(e->var, names); break;
    case ExprKind::Add:
        print_expr(os, e->lhs, 1, names);
        os << " + ";
        print_expr(os, e->rhs, 2, names);
        break;
    case ExprKind::Mul:
        print_expr(os, e->lhs, 2, names);
        os << " * ";
        print_expr(os, e->rhs, 3, names);
        break;
    }
    if (paren) os << ')';
}

// Formula precedence: atom 6, ~ 5, /\ 4, \/ 3, -> 2 (right), <-> 1,
// quantifiers 0 (maximal scope: no parens needed in rightmost position,
// but we wrap them whenever they appear as an operand).
void print_bexpr(std::ostream& os, const BExprPtr& b, int need, const NameTable* names);

void print_bexpr(std::ostream& os, const BExprPtr& b, int need, const NameTable* names) {
    int prec;
    switch (b->kind) {
    case BExprKind::Less:
    case BExprKind::Eq: prec = 6; break;
    case BExprKind::Not: prec = 5; break;
    case BExprKind::And: prec = 4; break;
    case BExprKind::Or: prec = 3; break;
    case BExprKind::Imp: prec = 2; break;
    default: prec = 6; break;
    }
    bool paren = prec < need;
    if (paren) os << '(';
    switch (b->kind) {
    case BExprKind::Less:
        print_expr(os, b->el, 0, names);
        os << " < ";
        print_expr(os, b->er, 0, names);
        break;
    case BExprKind::Eq:
        print_expr(os, b->el, 0, names);
        os << " = ";
        print_expr(os, b->er, 0, names);
        break;
    case BExprKind::Not:
        os << '~';
        print_bexpr(os, b->bl, 5, names);
        break;
    case BExprKind::And:
        print_bexpr(os, b->bl, 4, names);
        os << " /\\ ";
        print_bexpr(os, b->br, 5, names);
        break;
    case BExprKind::Or:
        print_bexpr(os, b->bl, 3, names);
        os << " \\/ ";
        print_bexpr(os, b->br, 4, names);
        break;
    case BExprKind::Imp:
        print_bexpr(os, b->bl, 3, names);
        os << " -> ";
        print_bexpr(os, b->br, 2, names);
        break;
    }
    if (paren) os << ')';
}

void print_formula(std::ostream& os, const FormulaPtr& f, int need, const NameTable* names) {
    int prec;
    switch (f->kind) {
    case FormulaKind::Atom: prec = 6; break;
    case FormulaKind::Not: prec = 5; break;
    case FormulaKind::And: prec = 4; break;
    case FormulaKind::Or: prec = 3; break;
    case FormulaKind::Imp: prec = 2; break;
    case FormulaKind::Iff: prec = 1; break;
    default: prec = 0; break;  // quantifiers
    }
    bool paren = prec < need;
    if (paren) os << '(';
    switch (f->kind) {
    case FormulaKind::Atom: print_bexpr(os, f->atom, need <= 6 ? 0 : need, names); break;
    case FormulaKind::Not:
        os << '~';
        print_formula(os, f->f1, 5, names);
        break;
    case FormulaKind::And:
        print_formula(os, f->f1, 4, names);
        os << " /\\ ";
        print_formula(os, f->f2, 5, names);
        break;
    case FormulaKind::Or:
        print_formula(os, f->f1, 3, names);
        os << " \\/ ";
        print_formula(os, f->f2, 4, names);
        break;
    case FormulaKind::Imp:
        print_formula(os, f->f1, 3, names);
        os << " -> ";
        print_formula(os, f->f2, 2, names);
        break;
    case FormulaKind::Iff:
        print_formula(os, f->f1, 2, names);
        os << " <-> ";
        print_formula(os, f->f2, 2, names);
        break;
    case FormulaKind::Forall:
        os << "forall " << vname(f->binder, names) << ". ";
        print_formula(os, f->f1, 0, names);
        break;
    case FormulaKind::Exists:
        os << "exists " << vname(f->binder, names) << ". ";
        print_formula(os, f->f1, 0, names);
        break;
    case FormulaKind::BoundedForall:
        os << "forall " << vname(f->binder, names) << " < ";
        print_expr(os, f->limit, 0, names);
        os << ". ";
        print_formula(os, f->f1, 0, names);
        break;
    }
    if (paren) os << ')';
}

void print_stmt(std::ostream& os, const StmtPtr& s, const NameTable* names) {
    switch (s->kind) {
    case StmtKind::Assign:
        os << vname(s->target, names) << " := ";
        print_expr(os, s->value, 0, names);
        break;
    case StmtKind::Seq:
        print_stmt(os, s->s1, names);
        os << "; ";
        print_stmt(os, s->s2, names);
        break;
    case StmtKind::If:
        os << "if ";
        print_bexpr(os, s->guard, 0, names);
        os << " then ";
        print_stmt(os, s->s1, names);
        os << " else ";
        print_stmt(os, s->s2, names);
        os << " fi";
        break;
    case StmtKind::While:
        os << "while ";
        print_bexpr(os, s->guard, 0, names);
        os << " do ";
        print_stmt(os, s->s1, names);
        os << " od";
        break;
    }
}

} // namespace

std::string to_text(const ExprPtr& e, const NameTable* names) {
    std::ostringstream os;
    print_expr(os, e, 0, names);
    return os.str();
}

std::string to_text(const BExprPtr& b, const NameTable* names) {
    std::ostringstream os;
    print_bexpr(os, b, 0, names);
    return os.str();
}

std::string to_text(const FormulaPtr& f, const NameTable* names) {
    std::ostringstream os;
    print_formula(os, f, 0, names);
    return os.str();
}

std::string to_text(const StmtPtr& s, const NameTable* names) {
    std::ostringstream os;
    print_stmt(os, s, names);
    return os.str();
}

// ---- s-expressions ----

namespace {

void sexpr_expr(std::ostream& os, const ExprPtr& e, const NameTable* names) {
    switch (e->kind) {
    case ExprKind::Zero: os << '0'; break;
    case ExprKind::One: os << '1'; break;
    case ExprKind::Numeral: os << nat_to_string(e->value); break;
    case ExprKind::Variable: os << vname(e->var, names); break;
    case ExprKind::Add:
        os << "(+ ";
        sexpr_expr(os, e->lhs, names);
        os << ' ';
        sexpr_expr(os, e->rhs, names);
        os << ')';
        break;
    case ExprKind::Mul:
        os << "(* ";
        sexpr_expr(os, e->lhs, names);
        os << ' ';
        sexpr_expr(os, e->rhs, names);
        os << ')';
        break;
    }
}

void sexpr_bexpr(std::ostream& os, const BExprPtr& b, const NameTable* names) {
    auto bin_e = [&](const char* op) {
        os << '(' << op << ' ';
        sexpr_expr(os, b->el, names);
        os << ' ';
        sexpr_expr(os, b->er, names);
        os << ')';
    };
    auto bin_b = [&](const char* op) {
        os << '(' << op << ' ';
        sexpr_bexpr(os, b->bl, names);
        os << ' ';
        sexpr_bexpr(os, b->br, names);
        os << ')';
    };
    switch (b->kind) {
    case BExprKind::Less: bin_e("<"); break;
    case BExprKind::Eq: bin_e("="); break;
    case BExprKind::Not:
        os << "(not ";
        sexpr_bexpr(os, b->bl, names);
        os << ')';
        break;
    case BExprKind::Imp: bin_b("imp"); break;
    case BExprKind::And: bin_b("and"); break;
    case BExprKind::Or: bin_b("or"); break;
    }
}

void sexpr_formula(std::ostream& os, const FormulaPtr& f, const NameTable* names) {
    auto bin = [&](const char* op) {
        os << '(' << op << ' ';
        sexpr_formula(os, f->f1, names);
        os << ' ';
        sexpr_formula(os, f->f2, names);
        os << ')';
    };
    switch (f->kind) {
    case FormulaKind::Atom: sexpr_bexpr(os, f->atom, names); break;
    case FormulaKind::Not:
        os << "(not ";
        sexpr_formula(os, f->f1, names);
        os << ')';
        break;
    case FormulaKind::Imp: bin("imp"); break;
    case FormulaKind::And: bin("and"); break;
    case FormulaKind::Or: bin("or"); break;
    case FormulaKind::Iff: bin("iff"); break;
    case FormulaKind::Forall:
        os << "(forall " << vname(f->binder, names) << ' ';
        sexpr_formula(os, f->f1, names);
        os << ')';
        break;
    case FormulaKind::Exists:
        os << "(exists " << vname(f->binder, names) << ' ';
        sexpr_formula(os, f->f1, names);
        os << ')';
        break;
    case FormulaKind::BoundedForall:
        os << "(forall< " << vname(f->binder, names) << ' ';
        sexpr_expr(os, f->limit, names);
        os << ' ';
        sexpr_formula(os, f->f1, names);
        os << ')';
        break;
    }
}

void sexpr_stmt(std::ostream& os, const StmtPtr& s, const NameTable* names) {
    switch (s->kind) {
    case StmtKind::Assign:
        os << "(assign " << vname(s->target, names) << ' ';
        sexpr_expr(os, s->value, names);
        os << ')';
        break;
    case StmtKind::Seq:
        os << "(seq ";
        sexpr_stmt(os, s->s1, names);
        os << ' ';
        sexpr_stmt(os, s->s2, names);
        os << ')';
        break;
    case StmtKind::If:
        os << "(if ";
        sexpr_bexpr(os, s->guard, names);
        os << ' ';
        sexpr_stmt(os, s->s1, names);
        os << ' ';
        sexpr_stmt(os, s->s2, names);
        os << ')';
        break;
    case StmtKind::While:
        os << "(while ";
        sexpr_bexpr(os, s->guard, names);
        os << ' ';
        sexpr_stmt(os, s->s1, names);
        os << ')';
        break;
    }
}

} // namespace

std::string to_sexpr(const ExprPtr& e, const NameTable* names) {
    std::ostringstream os;
    sexpr_expr(os, e, names);
    return os.str();
}

std::string to_sexpr(const FormulaPtr& f, const NameTable* names) {
    std::ostringstream os;
    sexpr_formula(os, f, names);
    return os.str();
}

std::string to_sexpr(const StmtPtr& s, const NameTable* names) {
    std::ostringstream os;
    sexpr_stmt(os, s, names);
    return os.str();
}

// ---- JSON ----

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json json_expr(const ExprPtr& e, const NameTable* names) {
    switch (e->kind) {
    case ExprKind::Zero: return {{"node", "zero"}};
    case ExprKind::One: return {{"node", "one"}};
    case ExprKind::Numeral: return {{"node", "numeral"}, {"value", nat_to_string(e->value)}};
    case ExprKind::Variable:
        return {{"node", "var"}, {"index", e->var.index}, {"name", vname(e->var, names)}};
    case ExprKind::Add:
        return {{"node", "add"}, {"lhs", json_expr(e->lhs, names)}, {"rhs", json_expr(e->rhs, names)}};
    case ExprKind::Mul:
        return {{"node", "mul"}, {"lhs", json_expr(e->lhs, names)}, {"rhs", json_expr(e->rhs, names)}};
    }
    return {};
}

ordered_json json_bexpr(const BExprPtr& b, const NameTable* names) {
    switch (b->kind) {
    case BExprKind::Less:
        return {{"node", "less"}, {"lhs", json_expr(b->el, names)}, {"rhs", json_expr(b->er, names)}};
    case BExprKind::Eq:
        return {{"node", "eq"}, {"lhs", json_expr(b->el, names)}, {"rhs", json_expr(b->er, names)}};
    case BExprKind::Not: return {{"node", "not"}, {"arg", json_bexpr(b->bl, names)}};
    case BExprKind::Imp:
        return {{"node", "imp"}, {"lhs", json_bexpr(b->bl, names)}, {"rhs", json_bexpr(b->br, names)}};
    case BExprKind::And:
        return {{"node", "and"}, {"lhs", json_bexpr(b->bl, names)}, {"rhs", json_bexpr(b->br, names)}};
    case BExprKind::Or:
        return {{"node", "or"}, {"lhs", json_bexpr(b->bl, names)}, {"rhs", json_bexpr(b->br, names)}};
    }
    return {};
}

ordered_json json_formula(const FormulaPtr& f, const NameTable* names) {
    switch (f->kind) {
    case FormulaKind::Atom: return {{"node", "atom"}, {"arg", json_bexpr(f->atom, names)}};
    case FormulaKind::Not: return {{"node", "not"}, {"arg", json_formula(f->f1, names)}};
    case FormulaKind::Imp:
        return {{"node", "imp"}, {"lhs", json_formula(f->f1, names)}, {"rhs", json_formula(f->f2, names)}};
    case FormulaKind::And:
        return {{"node", "and"}, {"lhs", json_formula(f->f1, names)}, {"rhs", json_formula(f->f2, names)}};
    case FormulaKind::Or:
        return {{"node", "or"}, {"lhs", json_formula(f->f1, names)}, {"rhs", json_formula(f->f2, names)}};
    case FormulaKind::Iff:
        return {{"node", "iff"}, {"lhs", json_formula(f->f1, names)}, {"rhs", json_formula(f->f2, names)}};
    case FormulaKind::Forall:
        return {{"node", "forall"}, {"var", vname(f->binder, names)}, {"body", json_formula(f->f1, names)}};
    case FormulaKind::Exists:
        return {{"node", "exists"}, {"var", vname(f->binder, names)}, {"body", json_formula(f->f1, names)}};
    case FormulaKind::BoundedForall:
        return {{"node", "bforall"},
                {"var", vname(f->binder, names)},
                {"limit", json_expr(f->limit, names)},
                {"body", json_formula(f->f1, names)}};
    }
    return {};
}

ordered_json json_stmt(const StmtPtr& s, const NameTable* names) {
    switch (s->kind) {
    case StmtKind::Assign:
        return {{"node", "assign"}, {"var", vname(s->target, names)}, {"value", json_expr(s->value, names)}};
    case StmtKind::Seq:
        return {{"node", "seq"}, {"first", json_stmt(s->s1, names)}, {"second", json_stmt(s->s2, names)}};
    case StmtKind::If:
        return {{"node", "if"},
                {"guard", json_bexpr(s->guard, names)},
                {"then", json_stmt(s->s1, names)},
                {"else", json_stmt(s->s2, names)}};
    case StmtKind::While:
        return {{"node", "while"}, {"guard", json_bexpr(s->guard, names)}, {"body", json_stmt(s->s1, names)}};
    }
    return {};
}

} // namespace

std::string to_json(const ExprPtr& e, const NameTable* names) { return json_expr(e, names).dump(); }
std::string to_json(const FormulaPtr& f, const NameTable* names) { return json_formula(f, names).dump(); }
std::string to_json(const StmtPtr& s, const NameTable* names) { return json_stmt(s, names).dump(); }

// ---- SMT-LIB ----

namespace {

void smt_expr(std::ostream& os, const ExprPtr& e, const NameTable* names) {
    switch (e->kind) {
    case ExprKind::Zero: os << '0'; break;
    case ExprKind::One: os << '1'; break;
    case ExprKind::Numeral: os << nat_to_string(e->value); break;
    case ExprKind::Variable: os << vname(e->var, names); break;
    case ExprKind::Add:
        os << "(+ ";
        smt_expr(os, e->lhs, names);
        os << ' ';
        smt_expr(os, e->rhs, names);
        os << ')';
        break;
    case ExprKind::Mul:
        os << "(* ";
        smt_expr(os, e->lhs, names);
        os << ' ';
        smt_expr(os, e->rhs, names);
        os << ')';
        break;
    }
}

void smt_bexpr(std::ostream& os, const BExprPtr& b, const NameTable* names) {
    auto bin_e = [&](const char* op) {
        os << '(' << op << ' ';
        smt_expr(os, b->el, names);
        os << ' ';
        smt_expr(os, b->er, names);
        os << ')';
    };
    auto bin_b = [&](const char* op) {
        os << '(' << op << ' ';
        smt_bexpr(os, b->bl, names);
        os << ' ';
        smt_bexpr(os, b->br, names);
        os << ')';
    };
    switch (b->kind) {
    case BExprKind::Less: bin_e("<"); break;
    case BExprKind::Eq: bin_e("="); break;
    case BExprKind::Not:
        os << "(not ";
        smt_bexpr(os, b->bl, names);
        os << ')';
        break;
    case BExprKind::Imp: bin_b("=>"); break;
    case BExprKind::And: bin_b("and"); break;
    case BExprKind::Or: bin_b("or"); break;
    }
}

void smt_formula(std::ostream& os, const FormulaPtr& f, const NameTable* names) {
    auto bin = [&](const char* op) {
        os << '(' << op << ' ';
        smt_formula(os, f->f1, names);
        os << ' ';
        smt_formula(os, f->f2, names);
        os << ')';
    };
    switch (f->kind) {
    case FormulaKind::Atom: smt_bexpr(os, f->atom, names); break;
    case FormulaKind::Not:
        os << "(not ";
        smt_formula(os, f->f1, names);
        os << ')';
        break;
    case FormulaKind::Imp: bin("=>"); break;
    case FormulaKind::And: bin("and"); break;
    case FormulaKind::Or: bin("or"); break;
    case FormulaKind::Iff: bin("="); break;
    case FormulaKind::Forall: {
        std::string v = vname(f->binder, names);
        os << "(forall ((" << v << " Int)) (=> (>= " << v << " 0) ";
        smt_formula(os, f->f1, names);
        os << "))";
        break;
    }
    case FormulaKind::Exists: {
        std::string v = vname(f->binder, names);
        os << "(exists ((" << v << " Int)) (and (>= " << v << " 0) ";
        smt_formula(os, f->f1, names);
        os << "))";
        break;
    }
    case FormulaKind::BoundedForall: {
        std::string v = vname(f->binder, names);
        os << "(forall ((" << v << " Int)) (=> (and (>= " << v << " 0) (< " << v << ' ';
        smt_expr(os, f->limit, names);
        os << ")) ";
        smt_formula(os, f->f1, names);
        os << "))";
        break;
    }
    }
}

} // namespace

std::string formula_to_smt2_term(const FormulaPtr& f, const NameTable* names) {
    std::ostringstream os;
    smt_formula(os, f, names);
    return os.str();
}

std::string formula_to_smt2(const FormulaPtr& f, const NameTable* names) {
    std::ostringstream os;
    os << "(set-logic NIA)\n";
    for (Var v : free_vars(f)) {
        std::string n = vname(v, names);
        os << "(declare-const " << n << " Int)\n";
        os << "(assert (>= " << n << " 0))\n";
    }
    os << "(assert " << formula_to_smt2_term(f, names) << ")\n";
    os << "(check-sat)\n";
    return os.str();
}

} // namespace hoarith
