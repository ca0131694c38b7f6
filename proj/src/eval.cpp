#include "hoarith/eval.hpp"

#include "hoarith/coding.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace hoarith {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

Verdict k_not(Verdict a) {
    if (a == Verdict::True) return Verdict::False;
    if (a == Verdict::False) return Verdict::True;
    return Verdict::Unknown;
}

Verdict k_and(Verdict a, Verdict b) {
    if (a == Verdict::False || b == Verdict::False) return Verdict::False;
    if (a == Verdict::True && b == Verdict::True) return Verdict::True;
    return Verdict::Unknown;
}

Verdict k_or(Verdict a, Verdict b) { return k_not(k_and(k_not(a), k_not(b))); }
Verdict k_imp(Verdict a, Verdict b) { return k_or(k_not(a), b); }
Verdict k_iff(Verdict a, Verdict b) { return k_and(k_imp(a, b), k_imp(b, a)); }

namespace {

// Effort knobs. All are bound-independent so that definite verdicts never
// depend on them in a direction that could flip when `bound` grows.
constexpr unsigned long kSweepProductCap = 200000;
constexpr unsigned long kBoundedSweepCap = 100000;
// Counterexample radius for unbounded quantifiers. Capping at
// min(bound, radius) keeps the candidate set nondecreasing in `bound`, so a
// definite verdict can never flip when the bound grows; missing a large
// counterexample only costs an Unknown.
constexpr unsigned long kForallSweepCap = 16;
// Total-grid cap for a chain of nested unbounded universals.
constexpr unsigned long kForallStatesCap = 6000;
constexpr int kOrSplitBudget = 6;  // up to 2^6 subproblems per block
constexpr int kFallbackMaxVars = 3;

bool has_quantifier_raw(const FormulaPtr& f);

bool has_quantifier(const FormulaPtr& f) {
    static std::unordered_map<const Formula*, std::pair<FormulaPtr, bool>> cache;
    if (auto it = cache.find(f.get()); it != cache.end()) return it->second.second;
    return cache.emplace(f.get(), std::make_pair(f, has_quantifier_raw(f)))
        .first->second.second;
}

bool has_quantifier_raw(const FormulaPtr& f) {
    switch (f->kind) {
    case FormulaKind::Atom: return false;
    case FormulaKind::Not: return has_quantifier(f->f1);
    case FormulaKind::Imp:
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Iff:
        return has_quantifier(f->f1) || has_quantifier(f->f2);
    default: return true;
    }
}

// ---- existential blocks ----

struct Block {
    std::vector<Var> vars;        // all fresh, pairwise distinct
    std::vector<FormulaPtr> conjs;
};

void gather_into(const FormulaPtr& f, FreshPool& pool, Block& b) {
    switch (f->kind) {
    case FormulaKind::Exists: {
        // Binders are always renamed fresh so hoisting over siblings is safe.
        Var nv = pool.fresh();
        Subst sigma{{f->binder, expr::var(nv)}};
        b.vars.push_back(nv);
        gather_into(substitute(f->f1, sigma), pool, b);
        break;
    }
    case FormulaKind::And:
        gather_into(f->f1, pool, b);
        gather_into(f->f2, pool, b);
        break;
    default:
        b.conjs.push_back(f);
    }
}

std::pair<std::uint32_t, bool> max_idx_of(const FormulaPtr& f) {
    static std::unordered_map<const Formula*,
                              std::pair<FormulaPtr, std::pair<std::uint32_t, bool>>> cache;
    if (auto it = cache.find(f.get()); it != cache.end()) return it->second.second;
    bool h = false;
    std::uint32_t m = max_var_index(f, h);
    return cache.emplace(f.get(), std::make_pair(f, std::make_pair(m, h)))
        .first->second.second;
}

std::uint32_t first_index_above(const std::vector<Var>& vars,
                                const std::vector<FormulaPtr>& fs) {
    std::uint32_t top = 0;
    bool any = false;
    for (Var v : vars) { top = std::max(top, v.index + 1); any = true; }
    for (const auto& f : fs) {
        auto [m, h] = max_idx_of(f);
        if (h) { top = std::max(top, m + 1); any = true; }
    }
    return any ? top : 0;
}

Block make_block(std::vector<Var> vars, const std::vector<FormulaPtr>& conjs) {
    FreshPool pool(first_index_above(vars, conjs));
    Block b;
    b.vars = std::move(vars);
    for (const auto& c : conjs) gather_into(c, pool, b);
    return b;
}

// The cached entry keeps the formula alive so the pointer key can never be
// reused by a later allocation.
const Block& block_of_exists(const FormulaPtr& f) {
    static std::unordered_map<const Formula*, std::pair<FormulaPtr, Block>> cache;
    auto it = cache.find(f.get());
    if (it != cache.end()) return it->second.second;
    return cache.emplace(f.get(), std::make_pair(f, make_block({}, {f})))
        .first->second.second;
}

// Free-variable sets of the same nodes are consulted at every swept state;
// returning a cached reference avoids one tree allocation per query. The
// entry keeps the node alive so its address can never be reused.
const std::set<Var>& fv(const ExprPtr& e) {
    static std::unordered_map<const Expr*, std::pair<ExprPtr, std::set<Var>>> cache;
    if (auto it = cache.find(e.get()); it != cache.end()) return it->second.second;
    return cache.emplace(e.get(), std::make_pair(e, free_vars(e))).first->second.second;
}

const std::set<Var>& fv(const FormulaPtr& f) {
    static std::unordered_map<const Formula*, std::pair<FormulaPtr, std::set<Var>>> cache;
    if (auto it = cache.find(f.get()); it != cache.end()) return it->second.second;
    return cache.emplace(f.get(), std::make_pair(f, free_vars(f))).first->second.second;
}

std::set<Var> block_vars_in(const ExprPtr& t, const std::set<Var>& block) {
    std::set<Var> out;
    for (Var v : fv(t))
        if (block.count(v)) out.insert(v);
    return out;
}

std::set<Var> block_vars_in(const FormulaPtr& f, const std::set<Var>& block) {
    std::set<Var> out;
    for (Var v : fv(f))
        if (block.count(v)) out.insert(v);
    return out;
}

// A block variable occurring in no conjunct ranges over a vacuous exists and
// can be discarded; keeping it would only block refutation.
void drop_unused_vars(Block& b) {
    std::set<Var> used;
    for (const auto& c : b.conjs)
        for (Var v : fv(c)) used.insert(v);
    std::erase_if(b.vars, [&](Var v) { return !used.count(v); });
}

// True when the conjunct is an equation with a bare block variable on one
// side, i.e. the shape the pin fixpoint consumes.
bool pin_shaped_conj(const FormulaPtr& c, const std::set<Var>& block) {
    if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Eq) return false;
    const auto& a = c->atom;
    return (a->el->kind == ExprKind::Variable && block.count(a->el->var)) ||
           (a->er->kind == ExprKind::Variable && block.count(a->er->var));
}

bool is_two(const ExprPtr& e) {
    return e->kind == ExprKind::Numeral && e->value == 2;
}

// ---- inverse-function pin rules ----
// The coding layer states z = <x,y> as (x+y)*((x+y)+1) + 2*x = 2*z and
// y = beta(...) as s = q*m + y with y < m alongside. Both determine their
// unknowns uniquely (Cantor pairing is a bijection; Euclidean division is
// unique), so a known side pins the unknowns exactly, no search needed.

struct PairAtom {
    ExprPtr x, y, z;
};

std::optional<PairAtom> match_pair_atom_raw(const BExprPtr& a) {
    if (a->kind != BExprKind::Eq) return std::nullopt;
    for (int ori = 0; ori < 2; ++ori) {
        const ExprPtr& poly = ori ? a->er : a->el;
        const ExprPtr& twoz = ori ? a->el : a->er;
        if (twoz->kind != ExprKind::Mul || !is_two(twoz->lhs)) continue;
        if (poly->kind != ExprKind::Add) continue;
        const ExprPtr& sq = poly->lhs;    // S*(S+1)
        const ExprPtr& twox = poly->rhs;  // 2*X
        if (sq->kind != ExprKind::Mul || twox->kind != ExprKind::Mul) continue;
        if (!is_two(twox->lhs)) continue;
        const ExprPtr& S = sq->lhs;
        const ExprPtr& Sp1 = sq->rhs;
        if (Sp1->kind != ExprKind::Add || Sp1->rhs->kind != ExprKind::One) continue;
        if (!equal(Sp1->lhs, S) || S->kind != ExprKind::Add) continue;
        if (!equal(S->lhs, twox->rhs)) continue;
        return PairAtom{S->lhs, S->rhs, twoz->rhs};
    }
    return std::nullopt;
}

struct DivAtom {
    ExprPtr s, q, mod, y;  // s = q*mod + y
};

std::optional<DivAtom> match_div_atom_raw(const BExprPtr& a) {
    if (a->kind != BExprKind::Eq) return std::nullopt;
    for (int ori = 0; ori < 2; ++ori) {
        const ExprPtr& s = ori ? a->er : a->el;
        const ExprPtr& rhs = ori ? a->el : a->er;
        if (rhs->kind != ExprKind::Add) continue;
        const ExprPtr& qm = rhs->lhs;
        if (qm->kind != ExprKind::Mul) continue;
        return DivAtom{s, qm->lhs, qm->rhs, rhs->rhs};
    }
    return std::nullopt;
}

// The fixpoints re-match the same atoms at every swept state; memoize by
// node, keeping the atom alive so its address cannot be reused.
const std::optional<PairAtom>& match_pair_atom(const BExprPtr& a) {
    static std::unordered_map<const BExpr*, std::pair<BExprPtr, std::optional<PairAtom>>> cache;
    if (auto it = cache.find(a.get()); it != cache.end()) return it->second.second;
    return cache.emplace(a.get(), std::make_pair(a, match_pair_atom_raw(a)))
        .first->second.second;
}

const std::optional<DivAtom>& match_div_atom(const BExprPtr& a) {
    static std::unordered_map<const BExpr*, std::pair<BExprPtr, std::optional<DivAtom>>> cache;
    if (auto it = cache.find(a.get()); it != cache.end()) return it->second.second;
    return cache.emplace(a.get(), std::make_pair(a, match_div_atom_raw(a)))
        .first->second.second;
}

// Does some conjunct state open < limit (the uniqueness side condition of
// the division shape)?
bool has_less_sibling(const std::vector<FormulaPtr>& conjs, const ExprPtr& open,
                      const ExprPtr& limit) {
    for (const auto& c : conjs) {
        if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Less) continue;
        if (equal(c->atom->el, open) && equal(c->atom->er, limit)) return true;
    }
    return false;
}

bool is_bare_block(const ExprPtr& e, const std::set<Var>& block) {
    return e->kind == ExprKind::Variable && block.count(e->var);
}

// ---- static polarity: which definite verdicts a formula can produce ----
// Over-approximation: pol.t / pol.f may be true spuriously, never false
// spuriously. Used to skip counterexample searches that cannot succeed.

struct Pol {
    bool t, f;
};

Pol polarity(const FormulaPtr& f);
Verdict eval_rec(const FormulaPtr& f, const State& w, const Nat& bound);

// Mirrors the dynamic solver's refutation conditions: a block can come out
// False only when every block variable is pinned or domain-bounded, or a
// variable is pinned twice, or a conjunct whose block variables are all
// determined fails.
Pol block_polarity(const std::vector<Var>& vars, const std::vector<FormulaPtr>& conjs,
                   int splits) {
    Block b = make_block(vars, conjs);
    drop_unused_vars(b);
    for (std::size_t k = 0; k < b.conjs.size(); ++k) {
        if (b.conjs[k]->kind == FormulaKind::Or && splits > 0) {
            auto left = b.conjs, right = b.conjs;
            left[k] = b.conjs[k]->f1;
            right[k] = b.conjs[k]->f2;
            Pol pl = block_polarity(b.vars, left, splits - 1);
            Pol pr = block_polarity(b.vars, right, splits - 1);
            return {pl.t || pr.t, pl.f && pr.f};
        }
    }
    std::set<Var> block(b.vars.begin(), b.vars.end());

    // Which variables the solver's pin fixpoint can determine: a bare block
    // variable equated with a side whose block variables are all pinned.
    std::set<Var> pinned;
    auto settled = [&](const ExprPtr& t) {
        for (Var v : block_vars_in(t, block))
            if (!pinned.count(v)) return false;
        return true;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        auto pin = [&](const ExprPtr& e) {
            if (is_bare_block(e, block) && pinned.insert(e->var).second) changed = true;
        };
        for (const auto& c : b.conjs) {
            if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Eq) continue;
            const auto& a = c->atom;
            for (const ExprPtr* side : {&a->el, &a->er}) {
                const ExprPtr& other = (side == &a->el) ? a->er : a->el;
                if ((*side)->kind != ExprKind::Variable) continue;
                Var u = (*side)->var;
                if (!block.count(u) || !settled(other)) continue;
                if (free_vars(other).count(u)) continue;
                if (pinned.insert(u).second) changed = true;
            }
            if (auto pa = match_pair_atom(a); pa && settled(pa->z)) {
                pin(pa->x);
                pin(pa->y);
            }
            if (auto da = match_div_atom(a); da && settled(da->s) && settled(da->mod)) {
                bool qs = settled(da->q), ys = settled(da->y);
                if (ys && !qs) pin(da->q);
                else if (qs && !ys) pin(da->y);
                else if (!qs && !ys && is_bare_block(da->q, block) &&
                         is_bare_block(da->y, block) && !(da->q->var == da->y->var) &&
                         has_less_sibling(b.conjs, da->y, da->mod)) {
                    pin(da->q);
                    pin(da->y);
                }
            }
        }
    }

    // Conflict accounting and direct pattern refutations, both mirroring the
    // solver: a pin source only counts if its firing condition holds, and a
    // division/pairing shape with a known non-witness side can refute alone.
    std::map<std::uint32_t, int> pin_shaped;
    auto count_pin = [&](const ExprPtr& e) {
        if (is_bare_block(e, block)) ++pin_shaped[e->var.index];
    };
    bool patternFalse = false;
    for (const auto& c : b.conjs) {
        if (c->kind != FormulaKind::Atom || c->atom->kind != BExprKind::Eq) continue;
        const auto& a = c->atom;
        if (a->el->kind == ExprKind::Variable && block.count(a->el->var) && settled(a->er))
            ++pin_shaped[a->el->var.index];
        if (a->er->kind == ExprKind::Variable && block.count(a->er->var) && settled(a->el) &&
            !(a->el->kind == ExprKind::Variable && a->el->var == a->er->var))
            ++pin_shaped[a->er->var.index];
        if (auto pa = match_pair_atom(a); pa && settled(pa->z)) {
            count_pin(pa->x);
            count_pin(pa->y);
            if (settled(pa->x) || settled(pa->y)) patternFalse = true;
        }
        if (auto da = match_div_atom(a); da && settled(da->s) && settled(da->mod)) {
            bool qs = settled(da->q), ys = settled(da->y);
            if (qs || ys) patternFalse = true;
            count_pin(da->q);
            count_pin(da->y);
        }
    }

    // Domain derivation mirror: comparisons with a pinned-or-outer ground
    // side bound their open-side variables. A derivation whose open side
    // could already exceed the ground side at all-zeros refutes by itself.
    std::set<Var> det = pinned;
    bool emptyPossible = false;
    auto consider = [&](const ExprPtr& ground, const ExprPtr& open, bool isEq) {
        if (!settled(ground)) return;
        std::set<Var> ov = block_vars_in(open, block);
        for (Var v : pinned) ov.erase(v);
        if (ov.empty()) return;
        det.insert(ov.begin(), ov.end());
        for (Var v : free_vars(open))
            if (!ov.count(v)) { emptyPossible = true; return; }
        // Both sides are monotone, so all-zeros gives their minima.
        Nat z0 = eval_expr(open, State());
        Nat c0 = eval_expr(ground, State());
        if (isEq ? z0 > c0 : z0 >= c0) emptyPossible = true;
    };
    for (const auto& c : b.conjs) {
        if (c->kind != FormulaKind::Atom) continue;
        const auto& a = c->atom;
        if (a->kind == BExprKind::Eq) {
            consider(a->el, a->er, true);
            consider(a->er, a->el, true);
        } else if (a->kind == BExprKind::Less) {
            consider(a->er, a->el, false);
        }
    }

    bool canTrue = true, anyConjFalse = false, pinnedConjFalse = false;
    for (const auto& c : b.conjs) {
        Pol p = polarity(c);
        // A closed quantifier-free conjunct has a fixed truth value; if it is
        // true it can never contribute a refutation.
        if (p.f && !has_quantifier(c) && free_vars(c).empty() &&
            eval_rec(c, State{}, 0) == Verdict::True)
            p.f = false;
        canTrue = canTrue && p.t;
        anyConjFalse = anyConjFalse || p.f;
        // The solver evaluates outright any conjunct whose block variables
        // are all pinned; pin-shaped equations are true by construction.
        if (p.f && !pin_shaped_conj(c, block)) {
            bool sub = true;
            for (Var v : block_vars_in(c, block))
                if (!pinned.count(v)) { sub = false; break; }
            if (sub) pinnedConjFalse = true;
        }
    }
    bool allDet = true;
    for (Var v : b.vars)
        if (!det.count(v)) { allDet = false; break; }
    bool pinConflict = false;
    for (auto& [idx, n] : pin_shaped)
        if (n >= 2) pinConflict = true;
    bool canFalse = (allDet && anyConjFalse) || pinConflict || pinnedConjFalse ||
                    emptyPossible || patternFalse;
    return {canTrue, canFalse};
}

Pol polarity(const FormulaPtr& f) {
    // Entries hold the formula so freed nodes cannot alias cached keys.
    static std::unordered_map<const Formula*, std::pair<FormulaPtr, Pol>> cache;
    auto it = cache.find(f.get());
    if (it != cache.end()) return it->second.second;
    Pol r{true, true};
    switch (f->kind) {
    case FormulaKind::Atom: r = {true, true}; break;
    case FormulaKind::Not: {
        Pol p = polarity(f->f1);
        r = {p.f, p.t};
        break;
    }
    case FormulaKind::And: {
        Pol a = polarity(f->f1), b = polarity(f->f2);
        r = {a.t && b.t, a.f || b.f};
        break;
    }
    case FormulaKind::Or: {
        Pol a = polarity(f->f1), b = polarity(f->f2);
        r = {a.t || b.t, a.f && b.f};
        break;
    }
    case FormulaKind::Imp: {
        Pol a = polarity(f->f1), b = polarity(f->f2);
        r = {a.f || b.t, a.t && b.f};
        break;
    }
    case FormulaKind::Iff: {
        Pol a = polarity(f->f1), b = polarity(f->f2);
        r = {(a.t && b.t) || (a.f && b.f), (a.t && b.f) || (a.f && b.t)};
        break;
    }
    case FormulaKind::Forall: {
        // The evaluator only ever refutes an unbounded forall.
        Pol p = polarity(f->f1);
        r = {false, p.f};
        break;
    }
    case FormulaKind::BoundedForall: {
        Pol p = polarity(f->f1);
        r = {true, p.f};
        break;
    }
    case FormulaKind::Exists: {
        const Block& b = block_of_exists(f);
        r = block_polarity(b.vars, b.conjs, kOrSplitBudget);
        break;
    }
    }
    cache.emplace(f.get(), std::make_pair(f, r));
    return r;
}

// ---- evaluation ----

Verdict eval_rec(const FormulaPtr& f, const State& w, const Nat& bound);

Verdict solve_block(const std::vector<Var>& vars, const std::vector<FormulaPtr>& conjs,
                    const State& s, const Nat& bound, int splits);

// Kleene conjunction of the conjuncts under st; quantifier-free conjuncts
// are tried first so refutations stay cheap.
Verdict eval_matrix(const std::vector<const FormulaPtr*>& order, const State& st,
                    const Nat& bound) {
    bool unknown = false;
    for (const FormulaPtr* c : order) {
        Verdict v = eval_rec(*c, st, bound);
        if (v == Verdict::False) return Verdict::False;
        if (v == Verdict::Unknown) unknown = true;
    }
    return unknown ? Verdict::Unknown : Verdict::True;
}

// Everything about a block that does not depend on the outer state: the
// flattened block, the evaluation order, and per-conjunct shape analysis.
// Sweeps re-solve the same block at thousands of states, so this is computed
// once per distinct block rather than once per call.
struct CRec {
    const FormulaPtr* c;
    const BExprPtr* atom;  // null unless the conjunct is an atom
    const PairAtom* pa;
    const DivAtom* da;
    bool lessSib;  // da only: some conjunct states y < mod
};

struct Plan {
    Block b;
    std::vector<const FormulaPtr*> order;  // quantifier-free conjuncts first
    std::vector<CRec> recs;
};

void finish_plan(Plan& pl) {
    drop_unused_vars(pl.b);
    for (const auto& c : pl.b.conjs)
        if (!has_quantifier(c)) pl.order.push_back(&c);
    for (const auto& c : pl.b.conjs)
        if (has_quantifier(c)) pl.order.push_back(&c);
    pl.recs.reserve(pl.b.conjs.size());
    for (const auto& c : pl.b.conjs) {
        CRec r{&c, nullptr, nullptr, nullptr, false};
        if (c->kind == FormulaKind::Atom) {
            r.atom = &c->atom;
            if (c->atom->kind == BExprKind::Eq) {
                if (const auto& pa = match_pair_atom(c->atom)) r.pa = &*pa;
                if (const auto& da = match_div_atom(c->atom)) {
                    r.da = &*da;
                    r.lessSib = has_less_sibling(pl.b.conjs, da->y, da->mod);
                }
            }
        }
        pl.recs.push_back(r);
    }
}

Verdict solve_plan(const Plan& pl, const State& s, const Nat& bound, int splits);

Verdict solve_block(const std::vector<Var>& vars0, const std::vector<FormulaPtr>& conjs0,
                    const State& s, const Nat& bound, int splits) {
    Plan pl;
    pl.b = make_block(vars0, conjs0);
    finish_plan(pl);
    return solve_plan(pl, s, bound, splits);
}

// The plan lives behind a unique_ptr so the conjunct pointers inside recs
// stay valid; the entry keeps the formula alive against address reuse.
const Plan& plan_of_exists(const FormulaPtr& f) {
    static std::unordered_map<const Formula*,
                              std::pair<FormulaPtr, std::unique_ptr<Plan>>> cache;
    if (auto it = cache.find(f.get()); it != cache.end()) return *it->second.second;
    auto pl = std::make_unique<Plan>();
    pl->b = make_block({}, {f});
    finish_plan(*pl);
    return *cache.emplace(f.get(), std::make_pair(f, std::move(pl))).first->second.second;
}

Verdict solve_plan(const Plan& pl, const State& s, const Nat& bound, int splits) {
    const Block& b = pl.b;
    const std::vector<CRec>& recs = pl.recs;
    const std::vector<const FormulaPtr*>& order = pl.order;

    // A disjunctive conjunct distributes over the block: solve both halves.
    for (std::size_t k = 0; k < b.conjs.size(); ++k) {
        if (b.conjs[k]->kind == FormulaKind::Or && splits > 0) {
            auto left = b.conjs, right = b.conjs;
            left[k] = b.conjs[k]->f1;
            right[k] = b.conjs[k]->f2;
            Verdict vl = solve_block(b.vars, left, s, bound, splits - 1);
            if (vl == Verdict::True) return Verdict::True;
            Verdict vr = solve_block(b.vars, right, s, bound, splits - 1);
            return k_or(vl, vr);
        }
    }

    std::set<Var> block(b.vars.begin(), b.vars.end());
    std::set<Var> pinned;
    State ext = s;
    auto evaluable = [&](const ExprPtr& t) {
        for (Var v : fv(t))
            if (block.count(v) && !pinned.count(v)) return false;
        return true;
    };

    std::vector<Var> rest;
    std::map<std::uint32_t, Nat> dom;  // inclusive upper bound

    // Pin variables forced by equations, to a fixpoint. A conflict between
    // two forced values refutes the whole block, and so does a division or
    // pairing shape that admits no solution at all. Domain derivation below
    // can force further pins (an equation whose only open variable has a
    // single candidate value), so the two phases alternate to a fixpoint.
    bool changed = true;
    // False when the forced value contradicts an earlier one.
    auto pin_to = [&](const ExprPtr& e, const Nat& val) -> bool {
        if (evaluable(e)) return eval_expr(e, ext) == val;
        if (e->kind == ExprKind::Variable && block.count(e->var)) {
            ext.set(e->var, val);
            pinned.insert(e->var);
            changed = true;
        }
        return true;  // composite open side: nothing to conclude
    };
    for (;;) {
    while (changed) {
        changed = false;
        for (const CRec& r : recs) {
            if (!r.atom || (*r.atom)->kind != BExprKind::Eq) continue;
            const auto& a = *r.atom;
            for (const ExprPtr* side : {&a->el, &a->er}) {
                const ExprPtr& other = (side == &a->el) ? a->er : a->el;
                if ((*side)->kind != ExprKind::Variable) continue;
                Var u = (*side)->var;
                if (!block.count(u) || !evaluable(other)) continue;
                if (fv(other).count(u)) continue;
                Nat val = eval_expr(other, ext);
                if (pinned.count(u)) {
                    if (ext.get(u) != val) return Verdict::False;
                } else {
                    ext.set(u, val);
                    pinned.insert(u);
                    changed = true;
                }
            }
            // z = <x,y>: the pairing bijection inverts a known z exactly.
            if (r.pa && evaluable(r.pa->z)) {
                auto [xv, yv] = unpair_nat(eval_expr(r.pa->z, ext));
                if (!pin_to(r.pa->x, xv) || !pin_to(r.pa->y, yv)) return Verdict::False;
            }
            // s = q*m + y: Euclidean division determines the unknowns when
            // s and m are known and either side or the y<m bound fixes them.
            if (r.da && evaluable(r.da->s) && evaluable(r.da->mod)) {
                const DivAtom& da = *r.da;
                Nat sv = eval_expr(da.s, ext), mv = eval_expr(da.mod, ext);
                if (mv > 0) {
                    bool qe = evaluable(da.q), ye = evaluable(da.y);
                    if (ye && !qe) {
                        Nat yv = eval_expr(da.y, ext);
                        if (sv < yv || (sv - yv) % mv != 0) return Verdict::False;
                        if (!pin_to(da.q, (sv - yv) / mv)) return Verdict::False;
                    } else if (qe && !ye) {
                        Nat qv = eval_expr(da.q, ext);
                        if (sv < qv * mv) return Verdict::False;
                        if (!pin_to(da.y, sv - qv * mv)) return Verdict::False;
                    } else if (!qe && !ye && is_bare_block(da.q, block) &&
                               is_bare_block(da.y, block) &&
                               !(da.q->var == da.y->var) && r.lessSib) {
                        if (!pin_to(da.q, sv / mv) || !pin_to(da.y, sv % mv))
                            return Verdict::False;
                    }
                }
            }
        }
    }

    // A conjunct whose block variables are all pinned must hold outright
    // under the forced values.
    for (const auto& c : b.conjs) {
        bool fixed = true;
        for (Var v : fv(c))
            if (block.count(v) && !pinned.count(v)) { fixed = false; break; }
        if (fixed && eval_rec(c, ext, bound) == Verdict::False) return Verdict::False;
    }

    rest.clear();
    for (Var v : b.vars)
        if (!pinned.count(v)) rest.push_back(v);
    if (rest.empty()) return eval_matrix(order, ext, bound);

    // Derive complete finite domains from monotone comparisons whose other
    // side already evaluates. Setting sibling unknowns to 0 gives a sound
    // lower bound of the open side, so values past the bound cannot satisfy
    // the atom under any assignment.
    dom.clear();
    bool emptyDomain = false;
    std::map<std::uint32_t, Nat> exact;  // forced by a single-candidate Eq
    auto note_dom = [&](Var u, const Nat& hi) {
        auto it = dom.find(u.index);
        if (it == dom.end() || hi < it->second) dom[u.index] = hi;
    };
    bool exactConflict = false;
    auto note_exact = [&](Var u, const Nat& val) {
        auto [it, fresh] = exact.emplace(u.index, val);
        if (!fresh && it->second != val) exactConflict = true;
    };
    auto derive = [&](const ExprPtr& ground, const ExprPtr& open, bool isEq) {
        if (!evaluable(ground)) return;
        std::set<Var> openVars;
        for (Var v : fv(open))
            if (block.count(v) && !pinned.count(v)) openVars.insert(v);
        if (openVars.empty()) return;
        Nat c = eval_expr(ground, ext);
        for (Var u : openVars) {
            State st = ext;
            for (Var o : openVars)
                if (o != u) st.set(o, 0);
            auto g = [&](const Nat& v) {
                st.set(u, v);
                return eval_expr(open, st);
            };
            auto beyond = [&](const Nat& gv) { return isEq ? gv > c : gv >= c; };
            if (beyond(g(0))) { emptyDomain = true; return; }
            Nat hiB = 1;
            int iters = 0;
            while (!beyond(g(hiB)) && iters < 300) { hiB *= 2; ++iters; }
            if (iters >= 300) continue;  // the open side does not grow in u
            Nat lo = hiB / 2, hi = hiB;  // g(lo) <= c-ish, g(hi) beyond
            while (lo + 1 < hi) {
                Nat mid = (lo + hi) / 2;
                if (beyond(g(mid))) hi = mid; else lo = mid;
            }
            note_dom(u, hi - 1);
            if (isEq && openVars.size() == 1) {
                // g is the exact value of the open side, nondecreasing in u:
                // solutions of g(u) = c form an interval we can bisect out.
                Nat llo = 0, lhi = hi;  // g(llo) <= c (checked above), g(lhi) > c
                while (llo + 1 < lhi) {
                    Nat mid = (llo + lhi) / 2;
                    if (g(mid) >= c) lhi = mid; else llo = mid;
                }
                Nat first = g(0) >= c ? Nat(0) : lhi;  // least u with g(u) >= c
                if (g(first) != c) { emptyDomain = true; return; }
                if (first == hi - 1) note_exact(u, first);
            }
        }
    };
    for (const CRec& r : recs) {
        if (!r.atom) continue;
        const auto& a = *r.atom;
        if (a->kind == BExprKind::Eq) {
            derive(a->el, a->er, true);
            derive(a->er, a->el, true);
        } else if (a->kind == BExprKind::Less) {
            derive(a->er, a->el, false);
        }
        if (emptyDomain || exactConflict) return Verdict::False;
    }

    // Promote forced values to pins and rerun the equation fixpoint; stop
    // once nothing new is forced.
    bool pinnedNew = false;
    for (const auto& [idx, val] : exact) {
        Var u{idx};
        if (pinned.count(u)) continue;
        ext.set(u, val);
        pinned.insert(u);
        pinnedNew = true;
    }
    if (!pinnedNew) break;
    changed = true;
    }  // alternation fixpoint

    bool allDomained = true;
    Nat product = 1;
    for (Var v : rest) {
        auto it = dom.find(v.index);
        if (it == dom.end()) { allDomained = false; break; }
        product *= it->second + 1;
        if (product > kSweepProductCap) { allDomained = false; break; }
    }

    if (allDomained) {
        // Exhaustive sweep: sound True and sound False.
        std::vector<Nat> cur(rest.size(), 0);
        bool unknown = false;
        while (true) {
            State st = ext;
            for (std::size_t i = 0; i < rest.size(); ++i) st.set(rest[i], cur[i]);
            Verdict v = eval_matrix(order, st, bound);
            if (v == Verdict::True) return Verdict::True;
            if (v == Verdict::Unknown) unknown = true;
            std::size_t i = 0;
            for (; i < rest.size(); ++i) {
                if (cur[i] < dom[rest[i].index]) { ++cur[i]; break; }
                cur[i] = 0;
            }
            if (i == rest.size()) break;
        }
        return unknown ? Verdict::Unknown : Verdict::False;
    }

    // Fallback small witness search; can only upgrade Unknown to True.
    if (rest.size() <= static_cast<std::size_t>(kFallbackMaxVars)) {
        Nat radius = rest.size() <= 2 ? 24 : 8;
        if (bound < radius) radius = bound;
        std::vector<Nat> cur(rest.size(), 0);
        while (true) {
            State st = ext;
            for (std::size_t i = 0; i < rest.size(); ++i) st.set(rest[i], cur[i]);
            if (eval_matrix(order, st, bound) == Verdict::True) return Verdict::True;
            std::size_t i = 0;
            for (; i < rest.size(); ++i) {
                Nat cap = radius;
                auto it = dom.find(rest[i].index);
                if (it != dom.end() && it->second < cap) cap = it->second;
                if (cur[i] < cap) { ++cur[i]; break; }
                cur[i] = 0;
            }
            if (i == rest.size()) break;
        }
    }
    return Verdict::Unknown;
}

Verdict eval_rec(const FormulaPtr& f, const State& w, const Nat& bound) {
    switch (f->kind) {
    case FormulaKind::Atom:
        return holds(f->atom, w) ? Verdict::True : Verdict::False;
    case FormulaKind::Not:
        return k_not(eval_rec(f->f1, w, bound));
    case FormulaKind::And: {
        // Cheap side first so a definite False short-circuits.
        const FormulaPtr& a = (has_quantifier(f->f1) && !has_quantifier(f->f2)) ? f->f2 : f->f1;
        const FormulaPtr& b = (&a == &f->f1) ? f->f2 : f->f1;
        Verdict va = eval_rec(a, w, bound);
        if (va == Verdict::False) return Verdict::False;
        return k_and(va, eval_rec(b, w, bound));
    }
    case FormulaKind::Or: {
        const FormulaPtr& a = (has_quantifier(f->f1) && !has_quantifier(f->f2)) ? f->f2 : f->f1;
        const FormulaPtr& b = (&a == &f->f1) ? f->f2 : f->f1;
        Verdict va = eval_rec(a, w, bound);
        if (va == Verdict::True) return Verdict::True;
        return k_or(va, eval_rec(b, w, bound));
    }
    case FormulaKind::Imp: {
        Verdict va = eval_rec(f->f1, w, bound);
        if (va == Verdict::False) return Verdict::True;
        return k_imp(va, eval_rec(f->f2, w, bound));
    }
    case FormulaKind::Iff:
        return k_iff(eval_rec(f->f1, w, bound), eval_rec(f->f2, w, bound));
    case FormulaKind::BoundedForall: {
        Nat limit = eval_expr(f->limit, w);
        if (limit <= kBoundedSweepCap) {
            bool unknown = false;
            for (Nat v = 0; v < limit; ++v) {
                Verdict r = eval_rec(f->f1, w.with(f->binder, v), bound);
                if (r == Verdict::False) return Verdict::False;
                if (r == Verdict::Unknown) unknown = true;
            }
            return unknown ? Verdict::Unknown : Verdict::True;
        }
        // Range too large to sweep: only counterexamples are sound.
        Nat stop = limit - 1 < bound ? limit - 1 : bound;
        if (stop > kForallSweepCap) stop = kForallSweepCap;
        if (polarity(f->f1).f)
            for (Nat v = 0; v <= stop; ++v)
                if (eval_rec(f->f1, w.with(f->binder, v), bound) == Verdict::False)
                    return Verdict::False;
        return Verdict::Unknown;
    }
    case FormulaKind::Forall: {
        // A chain of unbounded universals is swept jointly, with a radius
        // that shrinks as the chain deepens so the grid stays tractable.
        // Radius and depth depend only on the formula, never on `bound`, so
        // the candidate grid still grows monotonically with the bound.
        std::vector<Var> chain;
        FormulaPtr body = f;
        while (body->kind == FormulaKind::Forall) {
            chain.push_back(body->binder);
            body = body->f1;
        }
        if (!polarity(body).f) return Verdict::Unknown;
        auto grid = [&](unsigned long rr) {
            unsigned long g = 1;
            for (std::size_t i = 0; i < chain.size(); ++i) {
                g *= rr + 1;
                if (g > kForallStatesCap) break;
            }
            return g;
        };
        unsigned long r = kForallSweepCap;
        while (r > 3 && grid(r) > kForallStatesCap) --r;
        Nat stop = bound < r ? bound : Nat(r);
        std::vector<Nat> cur(chain.size(), 0);
        while (true) {
            State st = w;
            for (std::size_t i = 0; i < chain.size(); ++i) st.set(chain[i], cur[i]);
            if (eval_rec(body, st, bound) == Verdict::False) return Verdict::False;
            std::size_t i = 0;
            for (; i < chain.size(); ++i) {
                if (cur[i] < stop) { ++cur[i]; break; }
                cur[i] = 0;
            }
            if (i == chain.size()) break;
        }
        return Verdict::Unknown;
    }
    case FormulaKind::Exists:
        return solve_plan(plan_of_exists(f), w, bound, kOrSplitBudget);
    }
    throw std::logic_error("unreachable");
}

} // namespace

Verdict eval_formula(const FormulaPtr& f, const State& w, const Nat& bound) {
    return eval_rec(f, w, bound);
}

// ---- witness checking ----

namespace {

std::vector<Nat> restrict_state(const State& s, const std::vector<Var>& xs) {
    std::vector<Nat> out;
    out.reserve(xs.size());
    for (Var v : xs) out.push_back(s.get(v));
    return out;
}

State state_of(const std::vector<Var>& xs, const std::vector<Nat>& vals) {
    State s;
    for (std::size_t i = 0; i < xs.size(); ++i) s.set(xs[i], vals[i]);
    return s;
}

// Builds the witness while executing; returns nullptr when fuel runs out.
std::shared_ptr<const WitnessTree> build_witness(const StmtPtr& S, const std::vector<Var>& xs,
                                                 State& s, unsigned long long fuel,
                                                 unsigned long long& steps) {
    auto node = std::make_shared<WitnessTree>();
    node->kind = S->kind;
    node->in_state = restrict_state(s, xs);
    switch (S->kind) {
    case StmtKind::Assign:
        s.set(S->target, eval_expr(S->value, s));
        break;
    case StmtKind::Seq: {
        auto t1 = build_witness(S->s1, xs, s, fuel, steps);
        if (!t1) return nullptr;
        auto t2 = build_witness(S->s2, xs, s, fuel, steps);
        if (!t2) return nullptr;
        node->t1 = t1;
        node->t2 = t2;
        break;
    }
    case StmtKind::If: {
        node->branch_then = holds(S->guard, s);
        auto t = build_witness(node->branch_then ? S->s1 : S->s2, xs, s, fuel, steps);
        if (!t) return nullptr;
        node->t1 = t;
        break;
    }
    case StmtKind::While: {
        std::vector<Nat> trace_codes;
        trace_codes.push_back(tuple_encode(restrict_state(s, xs)));
        while (holds(S->guard, s)) {
            if (steps >= fuel) return nullptr;
            ++steps;
            auto t = build_witness(S->s1, xs, s, fuel, steps);
            if (!t) return nullptr;
            node->steps.push_back(t);
            trace_codes.push_back(tuple_encode(restrict_state(s, xs)));
        }
        node->iter_count = node->steps.size();
        node->seq_code = seq_encode(trace_codes);
        break;
    }
    }
    node->out_state = restrict_state(s, xs);
    return node;
}

// Recheck the matrix with exact arithmetic on the stored codes.
bool verify_witness(const StmtPtr& S, const std::vector<Var>& xs, const WitnessTree& n) {
    if (n.kind != S->kind) return false;
    State in = state_of(xs, n.in_state);
    switch (S->kind) {
    case StmtKind::Assign: {
        State out = in;
        out.set(S->target, eval_expr(S->value, in));
        return n.out_state == restrict_state(out, xs);
    }
    case StmtKind::Seq:
        return n.t1 && n.t2 && n.t1->in_state == n.in_state &&
               n.t1->out_state == n.t2->in_state && n.t2->out_state == n.out_state &&
               verify_witness(S->s1, xs, *n.t1) && verify_witness(S->s2, xs, *n.t2);
    case StmtKind::If:
        return n.t1 && n.branch_then == holds(S->guard, in) &&
               n.t1->in_state == n.in_state && n.t1->out_state == n.out_state &&
               verify_witness(n.branch_then ? S->s1 : S->s2, xs, *n.t1);
    case StmtKind::While: {
        if (!nat_fits_ulong(n.iter_count)) return false;
        unsigned long i = n.iter_count.get_ui();
        if (n.steps.size() != i) return false;
        // Decode the whole trace at once; element-by-element extraction
        // would redo huge divisions per index.
        std::vector<Nat> elems = seq_decode(n.seq_code, i + 1);
        std::vector<Nat> prev;
        for (unsigned long j = 0; j <= i; ++j) {
            std::vector<Nat> here = tuple_decode(elems[j], xs.size());
            if (j == 0 && here != n.in_state) return false;
            if (j == i && here != n.out_state) return false;
            if (j > 0) {
                const auto& step = n.steps[j - 1];
                if (!holds(S->guard, state_of(xs, prev))) return false;
                if (step->in_state != prev || step->out_state != here) return false;
                if (!verify_witness(S->s1, xs, *step)) return false;
            }
            prev = std::move(here);
        }
        return !holds(S->guard, state_of(xs, n.out_state));
    }
    }
    return false;
}

} // namespace

std::pair<Verdict, WitnessPtr> check_alpha_witness(const StmtPtr& S,
                                                   const std::vector<Var>& xs,
                                                   const std::vector<Nat>& a,
                                                   const std::vector<Nat>& c,
                                                   unsigned long long fuel) {
    if (a.size() != xs.size() || c.size() != xs.size())
        throw std::invalid_argument("check_alpha_witness: arity mismatch");
    for (Var v : program_vars(S))
        if (std::find(xs.begin(), xs.end(), v) == xs.end())
            throw std::invalid_argument("check_alpha_witness: program variable outside xs");
    State s = state_of(xs, a);
    unsigned long long steps = 0;
    auto tree = build_witness(S, xs, s, fuel, steps);
    if (!tree) return {Verdict::Unknown, nullptr};
    if (tree->out_state != c) return {Verdict::False, nullptr};
    if (!verify_witness(S, xs, *tree))
        throw std::logic_error("check_alpha_witness: constructed witness failed verification");
    return {Verdict::True, tree};
}

} // namespace hoarith
