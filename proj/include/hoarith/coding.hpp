#ifndef HOARITH_CODING_HPP
#define HOARITH_CODING_HPP

#include "hoarith/nat.hpp"
#include "hoarith/syntax.hpp"

#include <utility>
#include <vector>

namespace hoarith {

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + x, a bijection N^2 -> N.
Nat pair_nat(const Nat& x, const Nat& y);
std::pair<Nat, Nat> unpair_nat(const Nat& z);

// Right-nested tuples: <a0, <a1, ... >>; a 1-tuple is its own code.
Nat tuple_encode(const std::vector<Nat>& xs);
std::vector<Nat> tuple_decode(const Nat& code, std::size_t n);

// Goedel beta(s, t, i) = s mod (1 + (i+1)t).
Nat beta(const Nat& s, const Nat& t, const Nat& i);

// A code w with seq_elem(w, i) == xs[i] for all i < xs.size(); built via
// CRT with t a multiple of lcm(1..len) exceeding every element.
Nat seq_encode(const std::vector<Nat>& xs);
Nat seq_elem(const Nat& w, const Nat& i);

// The first count elements at once; a remainder tree over the moduli, far
// cheaper than count separate seq_elem calls on a large code.
std::vector<Nat> seq_decode(const Nat& w, std::size_t count);

// ---- defining formulas ----
// Each builder takes a FreshPool for its internal bound variables; every
// variable mentioned by the arguments must lie below pool.next_index().

// z = <x,y>, rendered multiplication-free of division:
// (x+y)*((x+y)+1) + 2*x = 2*z.
FormulaPtr pair_formula(const ExprPtr& x, const ExprPtr& y, const ExprPtr& z);

// y = beta(s,t,i):  exists q (s = q*(1+(i+1)*t) + y  /\  y < 1+(i+1)*t).
FormulaPtr beta_formula(const ExprPtr& s, const ExprPtr& t, const ExprPtr& i,
                        const ExprPtr& y, FreshPool& pool);

// c = seq_elem(w, idx):  exists s,t (w = <s,t> /\ c = beta(s,t,idx)).
FormulaPtr elem_formula(const ExprPtr& w, const ExprPtr& idx, const ExprPtr& c,
                        FreshPool& pool);

// c codes the tuple (us...) right-nested.
FormulaPtr tuple_decode_formula(const ExprPtr& c, const std::vector<Var>& us,
                                FreshPool& pool);

// (us...) is the tuple stored at position idx of sequence w:
// exists c (elem_formula(w, idx, c) /\ tuple_decode_formula(c, us)).
FormulaPtr elem_tuple_formula(const ExprPtr& w, const ExprPtr& idx,
                              const std::vector<Var>& us, FreshPool& pool);

} // namespace hoarith

#endif
