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
    if (it == xs.end()) throw std::invalid_argument("alpha: assigned variable outside xs");
    return static_cast<std::size_t>(it - xs.begin());
}

} // namespace

FormulaPtr alpha_formula(const StmtPtr& S, const std::vector<Var>& xs,
                         const std::vector<Var>& ys, FreshPool& pool) {
    switch (S->kind) {
    case StmtKind::Assign: {
        std::size_t i = slot_of(S->target, xs);
        std::vector<FormulaPtr> parts;
        parts.push_back(fml::eq(expr::var(ys[i]), S->value));
        for (std::size_t j = 0; j < xs.size(); ++j)
            if (j != i) parts.push_back(fml::eq(expr::var(ys[j]), expr::var(xs[j])));
        return conj_all(parts);
    }
    case StmtKind::Seq: {
        std::vector<Var> zs = pool.fresh_n(xs.size());
        FormulaPtr a1 = alpha_formula(S->s1, xs, zs, pool);
        // alpha of the second piece reads its input from the middle tuple
        FormulaPtr a2 = substitute(alpha_formula(S->s2, xs, ys, pool), rename_map(xs, zs));
        return exists_all(zs, fml::fand(a1, a2));
    }
    case StmtKind::If: {
        FormulaPtr b = fml::atom(S->guard);
        FormulaPtr a1 = alpha_formula(S->s1, xs, ys, pool);
        FormulaPtr a2 = alpha_formula(S->s2, xs, ys, pool);
        return fml::f_or(fml::fand(b, a1), fml::fand(fml::fnot(b), a2));
    }
    case StmtKind::While: {
        Var i = pool.fresh();
        Var w = pool.fresh();
        // x = (w)_0
        FormulaPtr first = elem_tuple_formula(expr::var(w), expr::zero(), xs, pool);
        // forall j < i: b((w)_j) and the body maps (w)_j to (w)_{j+1}
        Var j = pool.fresh();
        std::vector<Var> us = pool.fresh_n(xs.size());
        std::vector<Var> vs = pool.fresh_n(xs.size());
        BExprPtr guard_u = substitute(S->guard, rename_map(xs, us));
        FormulaPtr body_a =
            substitute(alpha_formula(S->s1, xs, vs, pool), rename_map(xs, us));
        FormulaPtr step = conj_all({
            elem_tuple_formula(expr::var(w), expr::var(j), us, pool),
            elem_tuple_formula(expr::var(w), expr::add(expr::var(j), expr::one()), vs, pool),
            fml::atom(guard_u),
            body_a,
        });
        std::vector<Var> inner = us;
        inner.insert(inner.end(), vs.begin(), vs.end());
        FormulaPtr stepped = fml::bforall(j, expr::var(i), exists_all(inner, step));
        // y = (w)_i and the guard fails at y
        FormulaPtr last = elem_tuple_formula(expr::var(w), expr::var(i), ys, pool);
        FormulaPtr stopped = fml::fnot(fml::atom(substitute(S->guard, rename_map(xs, ys))));
        FormulaPtr matrix = conj_all({first, stepped, last});
        return fml::fand(fml::exists(i, fml::exists(w, matrix)), stopped);
    }
    }
    throw std::logic_error("unreachable");
}

AlphaResult alpha(const StmtPtr& S, const std::vector<Var>& xs,
                  const std::vector<Var>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("alpha: tuples must be nonempty and of equal size");
    for (Var y : ys)
        if (std::find(xs.begin(), xs.end(), y) != xs.end())
            throw std::invalid_argument("alpha: xs and ys must be disjoint");
    for (Var p : program_vars(S))
        if (std::find(xs.begin(), xs.end(), p) == xs.end())
            throw std::invalid_argument("alpha: program variable outside xs");
    FreshPool pool = pool_above({}, {S}, [&] {
        std::vector<Var> all = xs;
        all.insert(all.end(), ys.begin(), ys.end());
        return all;
    }());
    return {alpha_formula(S, xs, ys, pool), xs, ys};
}

FormulaPtr alpha_component(const StmtPtr& S, const std::vector<Var>& xs,
                           const std::vector<Var>& ys, std::size_t k) {
    if (k >= ys.size()) throw std::invalid_argument("alpha_component: bad slot");
    AlphaResult r = alpha(S, xs, ys);
    FormulaPtr f = r.formula;
    for (std::size_t j = ys.size(); j-- > 0;)
        if (j != k) f = fml::exists(ys[j], f);
    return f;
}

} // namespace hoarith
