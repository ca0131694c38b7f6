#ifndef HOARITH_SYNTAX_HPP
#define HOARITH_SYNTAX_HPP

#include "hoarith/nat.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace hoarith {

// A number variable x_k. Two variables are equal iff their indices are.
struct Var {
    std::uint32_t index = 0;

    friend bool operator==(Var a, Var b) { return a.index == b.index; }
    friend bool operator!=(Var a, Var b) { return a.index != b.index; }
    friend bool operator<(Var a, Var b) { return a.index < b.index; }
};

struct Expr;
struct BExpr;
struct Formula;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using BExprPtr = std::shared_ptr<const BExpr>;
using FormulaPtr = std::shared_ptr<const Formula>;
using StmtPtr = std::shared_ptr<const Stmt>;

// Terms of L = {+, *, <, 0, 1}. Numeral(k) abbreviates 1+...+1 (k ones);
// Numeral(0) and Numeral(1) are canonicalized to Zero / One by the builders.
enum class ExprKind { Zero, One, Numeral, Variable, Add, Mul };

struct Expr {
    ExprKind kind;
    Nat value;      // Numeral
    Var var;        // Variable
    ExprPtr lhs, rhs;
};

// Quantifier-free boolean expressions: program guards and formula atoms.
// And/Or are definable from Not/Imp and kept as tagged sugar.
enum class BExprKind { Less, Eq, Not, Imp, And, Or };

struct BExpr {
    BExprKind kind;
    ExprPtr el, er;   // Less, Eq
    BExprPtr bl, br;  // connectives
};

// First-order formulas. Atom wraps a quantifier-free boolean expression.
// And/Or/Iff/Exists/BoundedForall are sugar nodes; free-variable computation
// and evaluation treat them as their expansions.
// BoundedForall(v, t, f) expands to forall v (v < t -> f); v must not be
// free in t.
enum class FormulaKind { Atom, Not, Imp, And, Or, Iff, Forall, Exists, BoundedForall };

struct Formula {
    FormulaKind kind;
    BExprPtr atom;
    Var binder;
    ExprPtr limit;      // BoundedForall
    FormulaPtr f1, f2;  // body lives in f1 for quantifiers
};

// While-programs.
enum class StmtKind { Assign, Seq, If, While };

struct Stmt {
    StmtKind kind;
    Var target;      // Assign
    ExprPtr value;   // Assign
    BExprPtr guard;  // If, While
    StmtPtr s1, s2;  // Seq: both; If: then/else; While: body in s1
};

struct Triple {
    FormulaPtr pre;
    StmtPtr prog;
    FormulaPtr post;
};

// ---- builders ----

namespace expr {
ExprPtr zero();
ExprPtr one();
ExprPtr num(const Nat& k);
ExprPtr var(Var v);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
} // namespace expr

namespace bexpr {
BExprPtr less(ExprPtr a, ExprPtr b);
BExprPtr eq(ExprPtr a, ExprPtr b);
BExprPtr bnot(BExprPtr a);
BExprPtr imp(BExprPtr a, BExprPtr b);
BExprPtr band(BExprPtr a, BExprPtr b);
BExprPtr bor(BExprPtr a, BExprPtr b);
} // namespace bexpr

namespace fml {
FormulaPtr atom(BExprPtr b);
FormulaPtr less(ExprPtr a, ExprPtr b);
FormulaPtr eq(ExprPtr a, ExprPtr b);
FormulaPtr fnot(FormulaPtr a);
FormulaPtr imp(FormulaPtr a, FormulaPtr b);
FormulaPtr fand(FormulaPtr a, FormulaPtr b);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(Var v, FormulaPtr body);
FormulaPtr exists(Var v, FormulaPtr body);
FormulaPtr bforall(Var v, ExprPtr limit, FormulaPtr body);
} // namespace fml

namespace stmt {
StmtPtr assign(Var x, ExprPtr e);
StmtPtr seq(StmtPtr a, StmtPtr b);
StmtPtr ifte(BExprPtr b, StmtPtr t, StmtPtr e);
StmtPtr wloop(BExprPtr b, StmtPtr body);
} // namespace stmt

// ---- structural equality ----

bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const BExprPtr& a, const BExprPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const StmtPtr& a, const StmtPtr& b);

// Equality up to renaming of bound variables.
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);

// ---- variables ----

void collect_free_vars(const ExprPtr& e, std::set<Var>& out);
void collect_free_vars(const BExprPtr& b, std::set<Var>& out);
void collect_free_vars(const FormulaPtr& f, std::set<Var>& out);
std::set<Var> free_vars(const ExprPtr& e);
std::set<Var> free_vars(const BExprPtr& b);
std::set<Var> free_vars(const FormulaPtr& f);

// Largest variable index occurring anywhere (free or bound); 0 if none.
// has_any reports whether any variable occurs at all.
std::uint32_t max_var_index(const ExprPtr& e, bool& has_any);
std::uint32_t max_var_index(const FormulaPtr& f, bool& has_any);
std::uint32_t max_var_index(const StmtPtr& s, bool& has_any);

// All variables occurring in S, in ascending index order.
std::vector<Var> program_vars(const StmtPtr& s);

// n distinct variables with indices strictly above every index in avoid.
std::vector<Var> fresh_vars(const std::set<Var>& avoid, std::size_t n);

// Deterministic supply of variables above a starting index.
class FreshPool {
public:
    explicit FreshPool(std::uint32_t first) : next_(first) {}
    Var fresh() { return Var{next_++}; }
    std::vector<Var> fresh_n(std::size_t n) {
        std::vector<Var> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i) out.push_back(fresh());
        return out;
    }
    std::uint32_t next_index() const { return next_; }

private:
    std::uint32_t next_;
};

// Seed a pool above every index occurring in the given pieces.
FreshPool pool_above(std::initializer_list<FormulaPtr> fs,
                     std::initializer_list<StmtPtr> ss,
                     const std::vector<Var>& extra);

// ---- substitution ----

using Subst = std::map<Var, ExprPtr>;

ExprPtr substitute(const ExprPtr& e, const Subst& sigma);
BExprPtr substitute(const BExprPtr& b, const Subst& sigma);

// Simultaneous capture-avoiding substitution; bound variables are renamed to
// fresh indices when a substituted expression would be captured.
FormulaPtr substitute(const FormulaPtr& f, const Subst& sigma);

// Map each xs[i] to ys[i] as a variable-for-variable substitution.
Subst rename_map(const std::vector<Var>& xs, const std::vector<Var>& ys);

// ---- normalization to strict L ----

// Expand all sugar: And/Or/Iff via Not/Imp, Exists via ~forall~,
// BoundedForall via forall v (v < t -> f), numerals via 1+...+1.
FormulaPtr strictify(const FormulaPtr& f);

// Replace equality atoms by the < detour: a=b  ~>  ~(a<b) /\ ~(b<a).
BExprPtr eliminate_eq(const BExprPtr& b);
FormulaPtr eliminate_eq(const FormulaPtr& f);

} // namespace hoarith

#endif
