#include "hoarith/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace hoarith {

namespace expr {

ExprPtr zero() {
    static const ExprPtr z = std::make_shared<Expr>(Expr{ExprKind::Zero, 0, {}, nullptr, nullptr});
    return z;
}

ExprPtr one() {
    static const ExprPtr o = std::make_shared<Expr>(Expr{ExprKind::One, 0, {}, nullptr, nullptr});
    return o;
}

ExprPtr num(const Nat& k) {
    if (k == 0) return zero();
    if (k == 1) return one();
    return std::make_shared<Expr>(Expr{ExprKind::Numeral, k, {}, nullptr, nullptr});
}

ExprPtr var(Var v) {
    return std::make_shared<Expr>(Expr{ExprKind::Variable, 0, v, nullptr, nullptr});
}

ExprPtr add(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{ExprKind::Add, 0, {}, std::move(a), std::move(b)});
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{ExprKind::Mul, 0, {}, std::move(a), std::move(b)});
}

} // namespace expr

namespace bexpr {

static BExprPtr mk(BExprKind k, ExprPtr el, ExprPtr er, BExprPtr bl, BExprPtr br) {
    return std::make_shared<BExpr>(BExpr{k, std::move(el), std::move(er), std::move(bl), std::move(br)});
}

BExprPtr less(ExprPtr a, ExprPtr b) { return mk(BExprKind::Less, std::move(a), std::move(b), nullptr, nullptr); }
BExprPtr eq(ExprPtr a, ExprPtr b) { return mk(BExprKind::Eq, std::move(a), std::move(b), nullptr, nullptr); }
BExprPtr bnot(BExprPtr a) { return mk(BExprKind::Not, nullptr, nullptr, std::move(a), nullptr); }
BExprPtr imp(BExprPtr a, BExprPtr b) { return mk(BExprKind::Imp, nullptr, nullptr, std::move(a), std::move(b)); }
BExprPtr band(BExprPtr a, BExprPtr b) { return mk(BExprKind::And, nullptr, nullptr, std::move(a), std::move(b)); }
BExprPtr bor(BExprPtr a, BExprPtr b) { return mk(BExprKind::Or, nullptr, nullptr, std::move(a), std::move(b)); }

} // namespace bexpr

namespace fml {

static FormulaPtr mk(FormulaKind k, BExprPtr atom, Var binder, ExprPtr limit,
                     FormulaPtr f1, FormulaPtr f2) {
    return std::make_shared<Formula>(
        Formula{k, std::move(atom), binder, std::move(limit), std::move(f1), std::move(f2)});
}

// Atoms are kept canonical: only comparisons stay as Atom nodes, boolean
// structure inside a guard becomes formula structure.
FormulaPtr atom(BExprPtr b) {
    switch (b->kind) {
    case BExprKind::Less:
    case BExprKind::Eq:
        return mk(FormulaKind::Atom, std::move(b), {}, nullptr, nullptr, nullptr);
    case BExprKind::Not: return fnot(atom(b->bl));
    case BExprKind::Imp: return imp(atom(b->bl), atom(b->br));
    case BExprKind::And: return fand(atom(b->bl), atom(b->br));
    case BExprKind::Or: return f_or(atom(b->bl), atom(b->br));
    }
    throw std::logic_error("unreachable");
}
FormulaPtr less(ExprPtr a, ExprPtr b) { return atom(bexpr::less(std::move(a), std::move(b))); }
FormulaPtr eq(ExprPtr a, ExprPtr b) { return atom(bexpr::eq(std::move(a), std::move(b))); }
FormulaPtr fnot(FormulaPtr a) { return mk(FormulaKind::Not, nullptr, {}, nullptr, std::move(a), nullptr); }
FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::Imp, nullptr, {}, nullptr, std::move(a), std::move(b)); }
FormulaPtr fand(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::And, nullptr, {}, nullptr, std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::Or, nullptr, {}, nullptr, std::move(a), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return mk(FormulaKind::Iff, nullptr, {}, nullptr, std::move(a), std::move(b)); }
FormulaPtr forall(Var v, FormulaPtr body) { return mk(FormulaKind::Forall, nullptr, v, nullptr, std::move(body), nullptr); }
FormulaPtr exists(Var v, FormulaPtr body) { return mk(FormulaKind::Exists, nullptr, v, nullptr, std::move(body), nullptr); }

FormulaPtr bforall(Var v, ExprPtr limit, FormulaPtr body) {
    std::set<Var> fv = free_vars(limit);
    if (fv.count(v))
        throw std::invalid_argument("bounded forall: binder occurs in its own bound");
    return mk(FormulaKind::BoundedForall, nullptr, v, std::move(limit), std::move(body), nullptr);
}

} // namespace fml

namespace stmt {

StmtPtr assign(Var x, ExprPtr e) {
    return std::make_shared<Stmt>(Stmt{StmtKind::Assign, x, std::move(e), nullptr, nullptr, nullptr});
}
StmtPtr seq(StmtPtr a, StmtPtr b) {
    return std::make_shared<Stmt>(Stmt{StmtKind::Seq, {}, nullptr, nullptr, std::move(a), std::move(b)});
}
StmtPtr ifte(BExprPtr b, StmtPtr t, StmtPtr e) {
    return std::make_shared<Stmt>(Stmt{StmtKind::If, {}, nullptr, std::move(b), std::move(t), std::move(e)});
}
StmtPtr wloop(BExprPtr b, StmtPtr body) {
    return std::make_shared<Stmt>(Stmt{StmtKind::While, {}, nullptr, std::move(b), std::move(body), nullptr});
}

} // namespace stmt

// ---- equality ----

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprKind::Zero:
    case ExprKind::One: return true;
    case ExprKind::Numeral: return a->value == b->value;
    case ExprKind::Variable: return a->var == b->var;
    case ExprKind::Add:
    case ExprKind::Mul: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

bool equal(const BExprPtr& a, const BExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case BExprKind::Less:
    case BExprKind::Eq: return equal(a->el, b->el) && equal(a->er, b->er);
    case BExprKind::Not: return equal(a->bl, b->bl);
    case BExprKind::Imp:
    case BExprKind::And:
    case BExprKind::Or: return equal(a->bl, b->bl) && equal(a->br, b->br);
    }
    return false;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case FormulaKind::Atom: return equal(a->atom, b->atom);
    case FormulaKind::Not: return equal(a->f1, b->f1);
    case FormulaKind::Imp:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff: return equal(a->f1, b->f1) && equal(a->f2, b->f2);
    case FormulaKind::Forall:
    case FormulaKind::Exists: return a->binder == b->binder && equal(a->f1, b->f1);
    case FormulaKind::BoundedForall:
        return a->binder == b->binder && equal(a->limit, b->limit) && equal(a->f1, b->f1);
    }
    return false;
}

bool equal(const StmtPtr& a, const StmtPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case StmtKind::Assign: return a->target == b->target && equal(a->value, b->value);
    case StmtKind::Seq: return equal(a->s1, b->s1) && equal(a->s2, b->s2);
    case StmtKind::If:
        return equal(a->guard, b->guard) && equal(a->s1, b->s1) && equal(a->s2, b->s2);
    case StmtKind::While: return equal(a->guard, b->guard) && equal(a->s1, b->s1);
    }
    return false;
}

// ---- alpha equivalence ----

namespace {

using RenameMap = std::map<Var, std::uint32_t>;

bool aeq_expr(const ExprPtr& a, const ExprPtr& b, const RenameMap& ma, const RenameMap& mb) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprKind::Zero:
    case ExprKind::One: return true;
    case ExprKind::Numeral: return a->value == b->value;
    case ExprKind::Variable: {
        auto ia = ma.find(a->var), ib = mb.find(b->var);
        if ((ia != ma.end()) != (ib != mb.end())) return false;
        if (ia != ma.end()) return ia->second == ib->second;
        return a->var == b->var;
    }
    case ExprKind::Add:
    case ExprKind::Mul:
        return aeq_expr(a->lhs, b->lhs, ma, mb) && aeq_expr(a->rhs, b->rhs, ma, mb);
    }
    return false;
}

bool aeq_bexpr(const BExprPtr& a, const BExprPtr& b, const RenameMap& ma, const RenameMap& mb) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case BExprKind::Less:
    case BExprKind::Eq:
        return aeq_expr(a->el, b->el, ma, mb) && aeq_expr(a->er, b->er, ma, mb);
    case BExprKind::Not: return aeq_bexpr(a->bl, b->bl, ma, mb);
    case BExprKind::Imp:
    case BExprKind::And:
    case BExprKind::Or:
        return aeq_bexpr(a->bl, b->bl, ma, mb) && aeq_bexpr(a->br, b->br, ma, mb);
    }
    return false;
}

bool aeq_formula(const FormulaPtr& a, const FormulaPtr& b, RenameMap& ma, RenameMap& mb,
                 std::uint32_t depth) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case FormulaKind::Atom: return aeq_bexpr(a->atom, b->atom, ma, mb);
    case FormulaKind::Not: return aeq_formula(a->f1, b->f1, ma, mb, depth);
    case FormulaKind::Imp:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff:
        return aeq_formula(a->f1, b->f1, ma, mb, depth) &&
               aeq_formula(a->f2, b->f2, ma, mb, depth);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::BoundedForall: {
        if (a->kind == FormulaKind::BoundedForall &&
            !aeq_expr(a->limit, b->limit, ma, mb))
            return false;
        auto olda = ma.find(a->binder) == ma.end()
                        ? std::optional<std::uint32_t>{}
                        : std::optional<std::uint32_t>{ma[a->binder]};
        auto oldb = mb.find(b->binder) == mb.end()
                        ? std::optional<std::uint32_t>{}
                        : std::optional<std::uint32_t>{mb[b->binder]};
        ma[a->binder] = depth;
        mb[b->binder] = depth;
        bool ok = aeq_formula(a->f1, b->f1, ma, mb, depth + 1);
        if (olda) ma[a->binder] = *olda; else ma.erase(a->binder);
        if (oldb) mb[b->binder] = *oldb; else mb.erase(b->binder);
        return ok;
    }
    }
    return false;
}

} // namespace

bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) {
    RenameMap ma, mb;
    return aeq_formula(a, b, ma, mb, 0);
}

// ---- free variables ----

void collect_free_vars(const ExprPtr& e, std::set<Var>& out) {
    if (!e) return;
    switch (e->kind) {
    case ExprKind::Variable: out.insert(e->var); break;
    case ExprKind::Add:
    case ExprKind::Mul:
        collect_free_vars(e->lhs, out);
        collect_free_vars(e->rhs, out);
        break;
    default: break;
    }
}

void collect_free_vars(const BExprPtr& b, std::set<Var>& out) {
    if (!b) return;
    switch (b->kind) {
    case BExprKind::Less:
    case BExprKind::Eq:
        collect_free_vars(b->el, out);
        collect_free_vars(b->er, out);
        break;
    case BExprKind::Not: collect_free_vars(b->bl, out); break;
    case BExprKind::Imp:
    case BExprKind::And:
    case BExprKind::Or:
        collect_free_vars(b->bl, out);
        collect_free_vars(b->br, out);
        break;
    }
}

void collect_free_vars(const FormulaPtr& f, std::set<Var>& out) {
    if (!f) return;
    switch (f->kind) {
    case FormulaKind::Atom: collect_free_vars(f->atom, out); break;
    case FormulaKind::Not: collect_free_vars(f->f1, out); break;
    case FormulaKind::Imp:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff:
        collect_free_vars(f->f1, out);
        collect_free_vars(f->f2, out);
        break;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::BoundedForall: {
        if (f->limit) collect_free_vars(f->limit, out);
        std::set<Var> body;
        collect_free_vars(f->f1, body);
        body.erase(f->binder);
        out.insert(body.begin(), body.end());
        break;
    }
    }
}

std::set<Var> free_vars(const ExprPtr& e) { std::set<Var> s; collect_free_vars(e, s); return s; }
std::set<Var> free_vars(const BExprPtr& b) { std::set<Var> s; collect_free_vars(b, s); return s; }
std::set<Var> free_vars(const FormulaPtr& f) { std::set<Var> s; collect_free_vars(f, s); return s; }

// ---- max index ----

namespace {

void max_idx(const ExprPtr& e, std::uint32_t& m, bool& any) {
    if (!e) return;
    if (e->kind == ExprKind::Variable) {
        m = std::max(m, e->var.index);
        any = true;
    }
    max_idx(e->lhs, m, any);
    max_idx(e->rhs, m, any);
}

void max_idx(const BExprPtr& b, std::uint32_t& m, bool& any) {
    if (!b) return;
    max_idx(b->el, m, any);
    max_idx(b->er, m, any);
    max_idx(b->bl, m, any);
    max_idx(b->br, m, any);
}

void max_idx(const FormulaPtr& f, std::uint32_t& m, bool& any) {
    if (!f) return;
    max_idx(f->atom, m, any);
    max_idx(f->limit, m, any);
    if (f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists ||
        f->kind == FormulaKind::BoundedForall) {
        m = std::max(m, f->binder.index);
        any = true;
    }
    max_idx(f->f1, m, any);
    max_idx(f->f2, m, any);
}

void max_idx(const StmtPtr& s, std::uint32_t& m, bool& any) {
    if (!s) return;
    if (s->kind == StmtKind::Assign) {
        m = std::max(m, s->target.index);
        any = true;
    }
    max_idx(s->value, m, any);
    max_idx(s->guard, m, any);
    max_idx(s->s1, m, any);
    max_idx(s->s2, m, any);
}

} // namespace

std::uint32_t max_var_index(const ExprPtr& e, bool& has_any) {
    std::uint32_t m = 0; has_any = false; max_idx(e, m, has_any); return m;
}
std::uint32_t max_var_index(const FormulaPtr& f, bool& has_any) {
    std::uint32_t m = 0; has_any = false; max_idx(f, m, has_any); return m;
}
std::uint32_t max_var_index(const StmtPtr& s, bool& has_any) {
    std::uint32_t m = 0; has_any = false; max_idx(s, m, has_any); return m;
}

std::vector<Var> program_vars(const StmtPtr& s) {
    std::set<Var> acc;
    struct Walk {
        std::set<Var>& acc;
        void operator()(const StmtPtr& s) {
            if (!s) return;
            if (s->kind == StmtKind::Assign) {
                acc.insert(s->target);
                collect_free_vars(s->value, acc);
            }
            if (s->guard) collect_free_vars(s->guard, acc);
            (*this)(s->s1);
            (*this)(s->s2);
        }
    } walk{acc};
    walk(s);
    return std::vector<Var>(acc.begin(), acc.end());
}

std::vector<Var> fresh_vars(const std::set<Var>& avoid, std::size_t n) {
    std::uint32_t start = 0;
    if (!avoid.empty()) start = avoid.rbegin()->index + 1;
    std::vector<Var> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(Var{static_cast<std::uint32_t>(start + i)});
    return out;
}

FreshPool pool_above(std::initializer_list<FormulaPtr> fs,
                     std::initializer_list<StmtPtr> ss,
                     const std::vector<Var>& extra) {
    std::uint32_t m = 0;
    bool any = false;
    for (const auto& f : fs) {
        bool a = false;
        std::uint32_t k = max_var_index(f, a);
        if (a) { m = std::max(m, k); any = true; }
    }
    for (const auto& s : ss) {
        bool a = false;
        std::uint32_t k = max_var_index(s, a);
        if (a) { m = std::max(m, k); any = true; }
    }
    for (Var v : extra) { m = std::max(m, v.index); any = true; }
    return FreshPool(any ? m + 1 : 0);
}

// ---- substitution ----

ExprPtr substitute(const ExprPtr& e, const Subst& sigma) {
    if (!e || sigma.empty()) return e;
    switch (e->kind) {
    case ExprKind::Zero:
    case ExprKind::One:
    case ExprKind::Numeral: return e;
    case ExprKind::Variable: {
        auto it = sigma.find(e->var);
        return it == sigma.end() ? e : it->second;
    }
    case ExprKind::Add: return expr::add(substitute(e->lhs, sigma), substitute(e->rhs, sigma));
    case ExprKind::Mul: return expr::mul(substitute(e->lhs, sigma), substitute(e->rhs, sigma));
    }
    return e;
}

BExprPtr substitute(const BExprPtr& b, const Subst& sigma) {
    if (!b || sigma.empty()) return b;
    switch (b->kind) {
    case BExprKind::Less: return bexpr::less(substitute(b->el, sigma), substitute(b->er, sigma));
    case BExprKind::Eq: return bexpr::eq(substitute(b->el, sigma), substitute(b->er, sigma));
    case BExprKind::Not: return bexpr::bnot(substitute(b->bl, sigma));
    case BExprKind::Imp: return bexpr::imp(substitute(b->bl, sigma), substitute(b->br, sigma));
    case BExprKind::And: return bexpr::band(substitute(b->bl, sigma), substitute(b->br, sigma));
    case BExprKind::Or: return bexpr::bor(substitute(b->bl, sigma), substitute(b->br, sigma));
    }
    return b;
}

namespace {

// Restrict sigma to the free variables of f; drop identity entries.
Subst relevant(const Subst& sigma, const FormulaPtr& f) {
    std::set<Var> fv = free_vars(f);
    Subst out;
    for (const auto& [v, e] : sigma) {
        if (!fv.count(v)) continue;
        if (e->kind == ExprKind::Variable && e->var == v) continue;
        out.emplace(v, e);
    }
    return out;
}

} // namespace

FormulaPtr substitute(const FormulaPtr& f, const Subst& sigma0) {
    if (!f) return f;
    Subst sigma = relevant(sigma0, f);
    if (sigma.empty()) return f;
    switch (f->kind) {
    case FormulaKind::Atom: return fml::atom(substitute(f->atom, sigma));
    case FormulaKind::Not: return fml::fnot(substitute(f->f1, sigma));
    case FormulaKind::Imp: return fml::imp(substitute(f->f1, sigma), substitute(f->f2, sigma));
    case FormulaKind::And: return fml::fand(substitute(f->f1, sigma), substitute(f->f2, sigma));
    case FormulaKind::Or: return fml::f_or(substitute(f->f1, sigma), substitute(f->f2, sigma));
    case FormulaKind::Iff: return fml::iff(substitute(f->f1, sigma), substitute(f->f2, sigma));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::BoundedForall: {
        Var v = f->binder;
        Subst inner = sigma;
        inner.erase(v);
        ExprPtr limit = f->limit ? substitute(f->limit, inner) : nullptr;
        // Capture check: does any replacement introduce v under this binder?
        bool captured = false;
        for (const auto& [from, to] : inner) {
            (void)from;
            if (free_vars(to).count(v)) { captured = true; break; }
        }
        FormulaPtr body = f->f1;
        if (captured) {
            bool any = false;
            std::uint32_t m = max_var_index(body, any);
            for (const auto& [from, to] : inner) {
                (void)from;
                bool a = false;
                std::uint32_t k = max_var_index(to, a);
                if (a) { m = std::max(m, k); any = true; }
            }
            Var nv{any ? m + 1 : 0};
            body = substitute(body, Subst{{v, expr::var(nv)}});
            v = nv;
        }
        body = substitute(body, inner);
        switch (f->kind) {
        case FormulaKind::Forall: return fml::forall(v, body);
        case FormulaKind::Exists: return fml::exists(v, body);
        default: return fml::bforall(v, limit, body);
        }
    }
    }
    return f;
}

Subst rename_map(const std::vector<Var>& xs, const std::vector<Var>& ys) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("rename_map: length mismatch");
    Subst out;
    for (std::size_t i = 0; i < xs.size(); ++i) out.emplace(xs[i], expr::var(ys[i]));
    return out;
}

// ---- strict-L normalization ----

namespace {

ExprPtr strictify_expr(const ExprPtr& e) {
    if (!e) return e;
    switch (e->kind) {
    case ExprKind::Zero:
    case ExprKind::One:
    case ExprKind::Variable: return e;
    case ExprKind::Numeral: {
        // 1+...+1, left-nested.
        ExprPtr acc = expr::one();
        for (Nat i = 1; i < e->value; ++i) acc = expr::add(acc, expr::one());
        return acc;
    }
    case ExprKind::Add: return expr::add(strictify_expr(e->lhs), strictify_expr(e->rhs));
    case ExprKind::Mul: return expr::mul(strictify_expr(e->lhs), strictify_expr(e->rhs));
    }
    return e;
}

BExprPtr strictify_bexpr(const BExprPtr& b) {
    if (!b) return b;
    switch (b->kind) {
    case BExprKind::Less: return bexpr::less(strictify_expr(b->el), strictify_expr(b->er));
    case BExprKind::Eq: return bexpr::eq(strictify_expr(b->el), strictify_expr(b->er));
    case BExprKind::Not: return bexpr::bnot(strictify_bexpr(b->bl));
    case BExprKind::Imp: return bexpr::imp(strictify_bexpr(b->bl), strictify_bexpr(b->br));
    case BExprKind::And: {
        // a /\ b  ~>  ~(a -> ~b)
        auto a = strictify_bexpr(b->bl), c = strictify_bexpr(b->br);
        return bexpr::bnot(bexpr::imp(a, bexpr::bnot(c)));
    }
    case BExprKind::Or: {
        // a \/ b  ~>  ~a -> b
        auto a = strictify_bexpr(b->bl), c = strictify_bexpr(b->br);
        return bexpr::imp(bexpr::bnot(a), c);
    }
    }
    return b;
}

} // namespace

FormulaPtr strictify(const FormulaPtr& f) {
    if (!f) return f;
    switch (f->kind) {
    case FormulaKind::Atom: return fml::atom(strictify_bexpr(f->atom));
    case FormulaKind::Not: return fml::fnot(strictify(f->f1));
    case FormulaKind::Imp: return fml::imp(strictify(f->f1), strictify(f->f2));
    case FormulaKind::And:
        return fml::fnot(fml::imp(strictify(f->f1), fml::fnot(strictify(f->f2))));
    case FormulaKind::Or:
        return fml::imp(fml::fnot(strictify(f->f1)), strictify(f->f2));
    case FormulaKind::Iff: {
        auto a = strictify(f->f1), b = strictify(f->f2);
        auto both = fml::imp(fml::imp(a, b), fml::fnot(fml::imp(b, a)));
        return fml::fnot(both);
    }
    case FormulaKind::Forall: return fml::forall(f->binder, strictify(f->f1));
    case FormulaKind::Exists:
        return fml::fnot(fml::forall(f->binder, fml::fnot(strictify(f->f1))));
    case FormulaKind::BoundedForall:
        return fml::forall(f->binder,
                           fml::imp(fml::atom(bexpr::less(expr::var(f->binder),
                                                          strictify_expr(f->limit))),
                                    strictify(f->f1)));
    }
    return f;
}

BExprPtr eliminate_eq(const BExprPtr& b) {
    if (!b) return b;
    switch (b->kind) {
    case BExprKind::Less: return b;
    case BExprKind::Eq:
        return bexpr::band(bexpr::bnot(bexpr::less(b->el, b->er)),
                           bexpr::bnot(bexpr::less(b->er, b->el)));
    case BExprKind::Not: return bexpr::bnot(eliminate_eq(b->bl));
    case BExprKind::Imp: return bexpr::imp(eliminate_eq(b->bl), eliminate_eq(b->br));
    case BExprKind::And: return bexpr::band(eliminate_eq(b->bl), eliminate_eq(b->br));
    case BExprKind::Or: return bexpr::bor(eliminate_eq(b->bl), eliminate_eq(b->br));
    }
    return b;
}

FormulaPtr eliminate_eq(const FormulaPtr& f) {
    if (!f) return f;
    switch (f->kind) {
    case FormulaKind::Atom: return fml::atom(eliminate_eq(f->atom));
    case FormulaKind::Not: return fml::fnot(eliminate_eq(f->f1));
    case FormulaKind::Imp: return fml::imp(eliminate_eq(f->f1), eliminate_eq(f->f2));
    case FormulaKind::And: return fml::fand(eliminate_eq(f->f1), eliminate_eq(f->f2));
    case FormulaKind::Or: return fml::f_or(eliminate_eq(f->f1), eliminate_eq(f->f2));
    case FormulaKind::Iff: return fml::iff(eliminate_eq(f->f1), eliminate_eq(f->f2));
    case FormulaKind::Forall: return fml::forall(f->binder, eliminate_eq(f->f1));
    case FormulaKind::Exists: return fml::exists(f->binder, eliminate_eq(f->f1));
    case FormulaKind::BoundedForall:
        return fml::bforall(f->binder, f->limit, eliminate_eq(f->f1));
    }
    return f;
}

} // namespace hoarith
