#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoarith/coding.hpp"
#include "hoarith/eval.hpp"
#include "hoarith/parser.hpp"
#include "hoarith/printer.hpp"

#include <random>

using namespace hoarith;

namespace {

Verdict ev(const char* text, const Nat& bound = 64) {
    return eval_formula(parse_formula(text), State(), bound);
}

} // namespace

TEST_CASE("kleene connectives") {
    Verdict T = Verdict::True, F = Verdict::False, U = Verdict::Unknown;
    CHECK(k_not(T) == F);
    CHECK(k_not(U) == U);
    CHECK(k_and(T, U) == U);
    CHECK(k_and(F, U) == F);
    CHECK(k_or(T, U) == T);
    CHECK(k_or(F, U) == U);
    CHECK(k_imp(F, U) == T);
    CHECK(k_imp(U, T) == T);
    CHECK(k_imp(T, U) == U);
    CHECK(k_iff(U, U) == U);
    CHECK(k_iff(F, F) == T);
}

TEST_CASE("atoms and connectives are exact") {
    CHECK(ev("1 + 1 = 2") == Verdict::True);
    CHECK(ev("2 * 2 < 4") == Verdict::False);
    CHECK(ev("~ 0 = 1 /\\ 0 < 1") == Verdict::True);
    CHECK(ev("0 = 1 \\/ 1 < 0") == Verdict::False);
    CHECK(ev("0 = 1 -> 5 = 7") == Verdict::True);
    State s;
    s.set(Var{0}, 9);
    CHECK(eval_formula(parse_formula("x0 * x0 = 81"), s, 8) == Verdict::True);
}

TEST_CASE("bounded universals sweep exactly, whatever the bound") {
    // the limit may exceed the evaluation bound; the sweep is still exact
    CHECK(ev("forall x0 < 1000. x0 < 1000", 8) == Verdict::True);
    CHECK(ev("forall x0 < 1000. x0 < 999", 8) == Verdict::False);
    CHECK(ev("forall x0 < 0. 0 = 1", 8) == Verdict::True);  // empty range
}

TEST_CASE("unbounded forall refutes within the bound, else Unknown") {
    CHECK(ev("forall x0. x0 < 5", 64) == Verdict::False);
    CHECK(ev("forall x0. x0 < 5", 3) == Verdict::Unknown);   // cex is 5 > 3
    CHECK(ev("forall x0. 0 < x0 + 1", 512) == Verdict::Unknown);  // true but unprovable here
}

TEST_CASE("existential blocks solve by pinning and domains") {
    CHECK(ev("exists x0. x0 + x0 = 6") == Verdict::True);
    CHECK(ev("exists x0. x0 + x0 = 7") == Verdict::False);
    CHECK(ev("exists x0. exists x1. x0 = 2 /\\ x1 = x0 + 1 /\\ x1 * x1 = 9") == Verdict::True);
    CHECK(ev("exists x0. x0 < 3 /\\ x0 * x0 = 5") == Verdict::False);
    State s;
    s.set(Var{0}, 12);
    FormulaPtr even = parse_formula("exists x1. x1 + x1 = x0");
    CHECK(eval_formula(even, s, 8) == Verdict::True);
    s.set(Var{0}, 13);
    CHECK(eval_formula(even, s, 8) == Verdict::False);
}

// ---- random Delta0 sentences against an exhaustive oracle ----

namespace {

struct Gen {
    std::mt19937 rng;
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    // Terms over the variables currently in scope; values stay small because
    // every scoped variable ranges below a small limit.
    ExprPtr term(const std::vector<Var>& scope, int depth) {
        int top = depth <= 0 || scope.empty() ? (scope.empty() ? 0 : 1) : 3;
        switch (pick(0, top)) {
        case 0: return expr::num(pick(0, 4));
        case 1: return expr::var(scope[pick(0, (int)scope.size() - 1)]);
        case 2: return expr::add(term(scope, depth - 1), term(scope, depth - 1));
        default: return expr::mul(term(scope, depth - 1), term(scope, depth - 1));
        }
    }

    // Limits are kept tiny so the oracle's full expansion stays cheap.
    ExprPtr limit(const std::vector<Var>& scope) {
        if (!scope.empty() && pick(0, 2) == 0) {
            ExprPtr v = expr::var(scope[pick(0, (int)scope.size() - 1)]);
            return pick(0, 1) ? expr::add(std::move(v), expr::one()) : std::move(v);
        }
        return expr::num(pick(0, 4));
    }

    FormulaPtr delta0(std::vector<Var>& scope, int depth) {
        int top = depth <= 0 ? 1 : 7;
        switch (pick(0, top)) {
        case 0: return fml::eq(term(scope, 1), term(scope, 1));
        case 1: return fml::less(term(scope, 1), term(scope, 1));
        case 2: return fml::fnot(delta0(scope, depth - 1));
        case 3: return fml::imp(delta0(scope, depth - 1), delta0(scope, depth - 1));
        case 4: return fml::fand(delta0(scope, depth - 1), delta0(scope, depth - 1));
        case 5: return fml::f_or(delta0(scope, depth - 1), delta0(scope, depth - 1));
        default: {
            // bounded forall; a bounded exists is its dual
            Var v{static_cast<std::uint32_t>(scope.size())};
            ExprPtr t = limit(scope);
            scope.push_back(v);
            FormulaPtr body = delta0(scope, depth - 1);
            scope.pop_back();
            FormulaPtr q = fml::bforall(v, std::move(t), std::move(body));
            return pick(0, 6) == 6 ? fml::fnot(fml::fnot(q)) : q;
        }
        }
    }
};

bool oracle(const FormulaPtr& f, State& s);

bool oracle(const FormulaPtr& f, State& s) {
    switch (f->kind) {
    case FormulaKind::Atom: return holds(f->atom, s);
    case FormulaKind::Not: return !oracle(f->f1, s);
    case FormulaKind::Imp: return !oracle(f->f1, s) || oracle(f->f2, s);
    case FormulaKind::And: return oracle(f->f1, s) && oracle(f->f2, s);
    case FormulaKind::Or: return oracle(f->f1, s) || oracle(f->f2, s);
    case FormulaKind::Iff: return oracle(f->f1, s) == oracle(f->f2, s);
    case FormulaKind::BoundedForall: {
        Nat lim = eval_expr(f->limit, s);
        Nat saved = s.get(f->binder);
        bool ok = true;
        for (Nat i = 0; i < lim && ok; ++i) {
            s.set(f->binder, i);
            ok = oracle(f->f1, s);
        }
        s.set(f->binder, saved);
        return ok;
    }
    default: throw std::logic_error("oracle: not Delta0");
    }
}

} // namespace

TEST_CASE("500 random closed Delta0 sentences: no Unknown, oracle agreement") {
    Gen g{std::mt19937(41)};
    for (int it = 0; it < 500; ++it) {
        std::vector<Var> scope;
        FormulaPtr f = g.delta0(scope, 4);
        State s;
        Verdict want = oracle(f, s) ? Verdict::True : Verdict::False;
        for (Nat bound : {Nat(8), Nat(64), Nat(512)}) {
            CHECK(eval_formula(f, State(), bound) == want);
        }
    }
}

TEST_CASE("definite verdicts survive bound doubling") {
    // sentences with unbounded quantifiers; Unknown may sharpen as the bound
    // grows but a definite verdict must never change
    Gen g{std::mt19937(43)};
    for (int it = 0; it < 500; ++it) {
        std::vector<Var> scope;
        FormulaPtr core = g.delta0(scope, 3);
        Var u{static_cast<std::uint32_t>(scope.size())};
        scope.push_back(u);
        FormulaPtr body = g.delta0(scope, 2);
        FormulaPtr f = g.pick(0, 1) ? fml::forall(u, fml::imp(std::move(core), body))
                                    : fml::exists(u, fml::fand(std::move(core), body));
        Verdict prev = Verdict::Unknown;
        for (Nat bound : {Nat(8), Nat(64), Nat(512)}) {
            Verdict v = eval_formula(f, State(), bound);
            if (prev != Verdict::Unknown) CHECK(v == prev);
            prev = v;
        }
    }
}

// ---- execution witnesses ----

TEST_CASE("witness for the counting loop records the trace") {
    StmtPtr p = parse_program("x1 := 0; while x1 < x0 do x1 := x1 + 1 od");
    std::vector<Var> xs{Var{0}, Var{1}};
    auto [v, w] = check_alpha_witness(p, xs, {3, 9}, {3, 3}, 1000);
    REQUIRE(v == Verdict::True);
    REQUIRE(w);
    CHECK(w->kind == StmtKind::Seq);
    const WitnessTree& loop = *w->t2;
    CHECK(loop.kind == StmtKind::While);
    CHECK(loop.iter_count == 3);
    CHECK(loop.steps.size() == 3);
    // the sequence code lists the loop-top tuples (3,0),(3,1),(3,2),(3,3)
    for (unsigned long i = 0; i <= 3; ++i) {
        Nat code = seq_elem(loop.seq_code, i);
        CHECK(tuple_decode(code, 2) == std::vector<Nat>{3, i});
    }
}

TEST_CASE("witness checker verdicts") {
    StmtPtr p = parse_program("x1 := 0; while x1 < x0 do x1 := x1 + 1 od");
    std::vector<Var> xs{Var{0}, Var{1}};
    CHECK(check_alpha_witness(p, xs, {5, 0}, {5, 5}, 100).first == Verdict::True);
    CHECK(check_alpha_witness(p, xs, {5, 0}, {5, 4}, 100).first == Verdict::False);
    CHECK(check_alpha_witness(p, xs, {5, 0}, {5, 5}, 3).first == Verdict::Unknown);
    StmtPtr div = parse_program("while 0 < x0 + 1 do x1 := x1 + 1 od");
    CHECK(check_alpha_witness(div, xs, {0, 0}, {0, 0}, 500).first == Verdict::Unknown);
}

TEST_CASE("branch witnesses record the taken side") {
    StmtPtr p = parse_program("if x0 < x1 then x2 := x0 else x2 := x1 fi");
    std::vector<Var> xs{Var{0}, Var{1}, Var{2}};
    auto [v, w] = check_alpha_witness(p, xs, {2, 5, 0}, {2, 5, 2}, 10);
    REQUIRE(v == Verdict::True);
    CHECK(w->branch_then);
    auto [v2, w2] = check_alpha_witness(p, xs, {5, 2, 0}, {5, 2, 2}, 10);
    REQUIRE(v2 == Verdict::True);
    CHECK(!w2->branch_then);
}
