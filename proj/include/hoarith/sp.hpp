#ifndef HOARITH_SP_HPP
#define HOARITH_SP_HPP

#include "hoarith/syntax.hpp"

#include <vector>

namespace hoarith {

// Strongest postcondition of p over S, as a formula in the program
// variables xs. Loops yield the invariant-style formula below conjoined
// with the negated guard. Requires every program variable of S in xs, and
// builds deterministically: equal inputs give syntactically equal output.
FormulaPtr sp(const FormulaPtr& p, const StmtPtr& S, const std::vector<Var>& xs);

// Same with an explicit bound-variable supply; the pool must sit above
// every index in p, S and xs.
FormulaPtr sp_formula(const FormulaPtr& p, const StmtPtr& S,
                      const std::vector<Var>& xs, FreshPool& pool);

// The iteration formula for `while b do S0 od` from p: there are an
// iteration count and a coded state sequence starting in p, stepping
// through the body's strongest postconditions, and ending at xs.
FormulaPtr loop_invariant(const FormulaPtr& p, const BExprPtr& guard,
                          const StmtPtr& body, const std::vector<Var>& xs,
                          FreshPool& pool);

// The relational route to the same predicate: some p-state is mapped to xs
// by the program relation. Logically equivalent to sp(p, S, xs).
FormulaPtr separation_rhs(const FormulaPtr& p, const StmtPtr& S,
                          const std::vector<Var>& xs);

} // namespace hoarith

#endif
