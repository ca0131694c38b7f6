#include "hoarith/sp.hpp"

#include "hoarith/arith_sem.hpp"
#include "hoarith/coding.hpp"

#include <algorithm>
#include <stdexcept>

namespace hoarith {

namespace {

FormulaPtr conj_all(const std::vector<FormulaPtr>& fs) {
    FormulaPtr out = nullptr;
    for (const auto& f : fs) out = out ? fml::fand(out, f) : f;
    return out;
}

FormulaPtr exists_all(const std::vector<Var>& vs, FormulaPtr body) {
    for (std::size_t i = vs.size(); i-- > 0;) body = fml::exists(vs[i], body);
    return body;
}

std::size_t slot_of(Var v, const std::vector<Var>& xs) {
    auto it = std::find(xs.begin(), xs.end(), v);
    if (it == xs.end()) throw std::invalid_argument("sp: assigned variable outside xs");
    return static_cast<std::size_t>(it - xs.begin());
}

FormulaPtr tuple_eq(const std::vector<Var>& as, const std::vector<Var>& bs) {
    std::vector<FormulaPtr> parts;
    for (std::size_t i = 0; i < as.size(); ++i)
        parts.push_back(fml::eq(expr::var(as[i]), expr::var(bs[i])));
    return conj_all(parts);
}

} // namespace

FormulaPtr loop_invariant(const FormulaPtr& p, const BExprPtr& guard,
                          const StmtPtr& body, const std::vector<Var>& xs,
                          FreshPool& pool) {
    Var i = pool.fresh();
    Var w = pool.fresh();
    // p holds at the decoded start tuple
    std::vector<Var> u0 = pool.fresh_n(xs.size());
    FormulaPtr started = exists_all(
        u0, fml::fand(elem_tuple_formula(expr::var(w), expr::zero(), u0, pool),
                      substitute(p, rename_map(xs, u0))));
    // each step satisfies the body's strongest postcondition from its
    // predecessor tuple, taken under the guard
    Var j = pool.fresh();
    std::vector<Var> us = pool.fresh_n(xs.size());
    std::vector<Var> vs = pool.fresh_n(xs.size());
    FormulaPtr pre_j = fml::fand(tuple_eq(xs, us), fml::atom(guard));
    FormulaPtr post_j = substitute(sp_formula(pre_j, body, xs, pool), rename_map(xs, vs));
    std::vector<Var> inner = us;
    inner.insert(inner.end(), vs.begin(), vs.end());
    FormulaPtr step = conj_all({
        elem_tuple_formula(expr::var(w), expr::var(j), us, pool),
        elem_tuple_formula(expr::var(w), expr::add(expr::var(j), expr::one()), vs, pool),
        post_j,
    });
    FormulaPtr stepped = fml::bforall(j, expr::var(i), exists_all(inner, step));
    // the current state is the decoded end tuple
    FormulaPtr ended = elem_tuple_formula(expr::var(w), expr::var(i), xs, pool);
    return fml::exists(i, fml::exists(w, conj_all({started, stepped, ended})));
}

FormulaPtr sp_formula(const FormulaPtr& p, const StmtPtr& S,
                      const std::vector<Var>& xs, FreshPool& pool) {
    switch (S->kind) {
    case StmtKind::Assign: {
        std::size_t i = slot_of(S->target, xs);
        std::vector<Var> us = pool.fresh_n(xs.size());
        Subst before = rename_map(xs, us);
        std::vector<FormulaPtr> parts;
        parts.push_back(substitute(p, before));
        parts.push_back(fml::eq(expr::var(xs[i]), substitute(S->value, before)));
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (j != i) parts.push_back(fml::eq(expr::var(xs[j]), expr::var(us[j])));
        return exists_all(us, conj_all(parts));
    }
    case StmtKind::Seq:
        return sp_formula(sp_formula(p, S->s1, xs, pool), S->s2, xs, pool);
    case StmtKind::If: {
        FormulaPtr b = fml::atom(S->guard);
        FormulaPtr t = sp_formula(fml::fand(p, b), S->s1, xs, pool);
        FormulaPtr e = sp_formula(fml::fand(p, fml::fnot(b)), S->s2, xs, pool);
        return fml::f_or(t, e);
    }
    case StmtKind::While:
        return fml::fand(loop_invariant(p, S->guard, S->s1, xs, pool),
                         fml::fnot(fml::atom(S->guard)));
    }
    throw std::logic_error("unreachable");
}

namespace {

FreshPool pool_for(const FormulaPtr& p, const StmtPtr& S, const std::vector<Var>& xs) {
    for (Var v : program_vars(S))
        if (std::find(xs.begin(), xs.end(), v) == xs.end())
            throw std::invalid_argument("sp: program variable outside xs");
    if (xs.empty()) throw std::invalid_argument("sp: empty variable tuple");
    return pool_above({p}, {S}, xs);
}

} // namespace

FormulaPtr sp(const FormulaPtr& p, const StmtPtr& S, const std::vector<Var>& xs) {
    FreshPool pool = pool_for(p, S, xs);
    return sp_formula(p, S, xs, pool);
}

FormulaPtr separation_rhs(const FormulaPtr& p, const StmtPtr& S,
                          const std::vector<Var>& xs) {
    FreshPool pool = pool_for(p, S, xs);
    std::vector<Var> ys = pool.fresh_n(xs.size());
    std::vector<Var> us = pool.fresh_n(xs.size());
    FormulaPtr a = alpha_formula(S, xs, ys, pool);
    // run the relation from the renamed start tuple into the current state
    Subst swap;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        swap[xs[k]] = expr::var(us[k]);
        swap[ys[k]] = expr::var(xs[k]);
    }
    FormulaPtr a_at = substitute(a, swap);
    FormulaPtr p_at = substitute(p, rename_map(xs, us));
    return exists_all(us, fml::fand(p_at, a_at));
}

} // namespace hoarith
