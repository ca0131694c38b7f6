#ifndef HOARITH_ARITH_SEM_HPP
#define HOARITH_ARITH_SEM_HPP

#include "hoarith/syntax.hpp"

#include <vector>

namespace hoarith {

struct AlphaResult {
    FormulaPtr formula;
    std::vector<Var> in_vars, out_vars;
};

// The formula alpha_S(xs, ys) defining the input/output relation of S.
// Requires: |xs| = |ys|, xs and ys disjoint, every program variable of S in
// xs and none in ys. Loops are arithmetized through an iteration count, a
// sequence code for the loop-top states, and existential decode variables
// for the coded tuples; the result is a Sigma_1 formula.
AlphaResult alpha(const StmtPtr& S, const std::vector<Var>& xs,
                  const std::vector<Var>& ys);

// Same with an explicit supply of bound variables; the pool must sit above
// every index in S, xs and ys.
FormulaPtr alpha_formula(const StmtPtr& S, const std::vector<Var>& xs,
                         const std::vector<Var>& ys, FreshPool& pool);

// Graph of the single output slot k: all other outputs projected away.
FormulaPtr alpha_component(const StmtPtr& S, const std::vector<Var>& xs,
                           const std::vector<Var>& ys, std::size_t k);

} // namespace hoarith

#endif
