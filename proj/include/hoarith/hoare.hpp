#ifndef HOARITH_HOARE_HPP
#define HOARITH_HOARE_HPP

#include "hoarith/eval.hpp"
#include "hoarith/parser.hpp"
#include "hoarith/syntax.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hoarith {

// Derivation trees for the Hoare system: assignment axiom, composition,
// conditional, iteration, consequence. The conclusion of every node is
// determined by its children; consequence nodes carry the two implications
// whose universal closures must be theorems.
enum class DKind { AssignAxiom, Comp, Cond, Iter, Conseq };

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
    DKind kind;
    // AssignAxiom: concludes { post(e/x) } x := e { post }
    FormulaPtr post;
    Var target{};
    ExprPtr value;
    // Comp: children plus the middle assertion; Cond: then/else; Iter: body
    DerivPtr d1, d2;
    FormulaPtr mid;
    // Conseq: strengthen the precondition / weaken the postcondition
    FormulaPtr new_pre, new_post;
};

DerivPtr d_assign(FormulaPtr post, Var x, ExprPtr e);
DerivPtr d_comp(DerivPtr left, DerivPtr right, FormulaPtr mid);
DerivPtr d_cond(DerivPtr then_d, DerivPtr else_d);
DerivPtr d_iter(DerivPtr body_d);
DerivPtr d_conseq(FormulaPtr pre, DerivPtr inner, FormulaPtr post);

// Structural failure during conclusion computation; path addresses the node
// (root = "", children by .l/.r/.t/.e/.b/.i).
struct DerivError : std::runtime_error {
    std::string path;
    DerivError(const std::string& msg, std::string path_)
        : std::runtime_error(msg), path(std::move(path_)) {}
};

// The triple a (structurally well-formed) derivation concludes. The guards
// of conditional and iteration conclusions are reconstructed from the
// And-shaped child preconditions. Throws DerivError when the tree breaks a
// rule's shape.
Triple conclusion_of(const DerivPtr& d);

struct Obligation {
    FormulaPtr formula;  // universally closed
    std::string origin;  // node path of the Conseq that produced it
};

enum class CheckStatus { Valid, Invalid, ValidModuloObligations };

struct CheckResult {
    CheckStatus status;
    std::string reason;                // Invalid only
    std::vector<Obligation> residual;  // ValidModuloObligations only
    std::optional<Triple> conclusion;
};

// Rule conformance exactly; consequence obligations first discharged by a
// small sound syntactic argument, otherwise evaluated (after universal
// closure) at oracle_bound: False refutes the derivation, Unknown is kept.
CheckResult check_derivation(const DerivPtr& d, const Nat& oracle_bound);

// All consequence obligations of the tree, discharged or not.
std::vector<Obligation> collect_obligations(const DerivPtr& d);

// Derivation of {p} S { sp(p,S) }; the final postcondition is syntactically
// the formula sp(p, S, xs) builds.
DerivPtr generate_sp_derivation(const FormulaPtr& p, const StmtPtr& S,
                                const std::vector<Var>& xs);

struct TripleVerdict {
    Verdict verdict;
    std::optional<State> counterexample;
};

// Semantic sweep: every xs-state with values <= box whose precondition
// holds must land in a state where the postcondition is not refuted.
TripleVerdict check_triple_bounded(const Triple& t, const std::vector<Var>& xs,
                                   const Nat& box, unsigned long long fuel,
                                   const Nat& bound);

// Peano axioms: the six closed base schemas, and the induction instance for
// (phi, x), universally closed over the remaining free variables.
std::vector<FormulaPtr> pa_base_axioms();
FormulaPtr instantiate_induction(const FormulaPtr& phi, Var x);

// Universal closure over all free variables, in ascending index order.
FormulaPtr universal_closure(const FormulaPtr& f);

// JSON round-trip for derivation files; formulas appear as surface text.
std::string derivation_to_json(const DerivPtr& d, const NameTable* names = nullptr);
DerivPtr derivation_from_json(const std::string& text, NameTable* names = nullptr);

// SMT-LIB script asserting the negated obligation, origin in a comment.
std::string obligation_to_smt2(const Obligation& o, const NameTable* names = nullptr);

} // namespace hoarith

#endif
