#ifndef HOARITH_EVAL_HPP
#define HOARITH_EVAL_HPP

#include "hoarith/interp.hpp"
#include "hoarith/nat.hpp"
#include "hoarith/syntax.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace hoarith {

// Three-valued verdict. True/False are sound claims about truth over the
// naturals; Unknown carries no claim.
enum class Verdict { True, False, Unknown };

const char* verdict_name(Verdict v);

Verdict k_not(Verdict a);
Verdict k_and(Verdict a, Verdict b);
Verdict k_or(Verdict a, Verdict b);
Verdict k_imp(Verdict a, Verdict b);
Verdict k_iff(Verdict a, Verdict b);

// Sound bounded evaluation. Atoms and connectives are exact; bounded
// universals are swept exactly over [0, limit); an unbounded forall is
// refuted by a counterexample <= bound and otherwise Unknown; an unbounded
// exists-block is solved by pinning variables forced by equations, deriving
// finite domains from monotone comparisons against evaluable sides, and
// sweeping, with a small witness search as fallback. All definite verdicts
// are sound, and raising the bound never flips a definite verdict.
Verdict eval_formula(const FormulaPtr& f, const State& w, const Nat& bound);

// Execution witness for one terminating run, mirroring the statement shape.
// States are restricted to the declared variable tuple xs. Loop nodes carry
// the iteration count and a sequence code whose entries are the tuple codes
// of the successive loop-top states.
struct WitnessTree {
    StmtKind kind;
    std::vector<Nat> in_state, out_state;
    std::shared_ptr<const WitnessTree> t1, t2;  // Seq children; If: taken branch in t1
    bool branch_then = false;                   // If
    Nat iter_count;                             // While
    Nat seq_code;                               // While
    std::vector<std::shared_ptr<const WitnessTree>> steps;  // While body runs
};
using WitnessPtr = std::shared_ptr<const WitnessTree>;

// Exact witness-guided check that running S from inputs a over xs yields
// outputs c. True comes with a fully verified tree (the loop-node matrix is
// rechecked with exact arithmetic on the constructed codes, witness values
// are not subject to any bound); False means the run terminated elsewhere;
// Unknown means the fuel ran out. Requires program_vars(S) within xs.
std::pair<Verdict, WitnessPtr> check_alpha_witness(const StmtPtr& S,
                                                   const std::vector<Var>& xs,
                                                   const std::vector<Nat>& a,
                                                   const std::vector<Nat>& c,
                                                   unsigned long long fuel);

} // namespace hoarith

#endif
