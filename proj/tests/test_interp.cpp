#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "hoarith/interp.hpp"
#include "hoarith/parser.hpp"

using namespace hoarith;

namespace {

State st(std::initializer_list<std::pair<int, int>> kv) {
    State s;
    for (auto [i, n] : kv) s.set(Var{static_cast<std::uint32_t>(i)}, n);
    return s;
}

} // namespace

TEST_CASE("expression evaluation") {
    State s = st({{0, 3}});
    CHECK(eval_expr(parse_expr("(x0 + 1) * x0"), s) == 12);
    CHECK(eval_expr(parse_expr("0"), s) == 0);
    CHECK(eval_expr(parse_expr("1 + 1 + 1"), s) == 3);
    CHECK(eval_expr(parse_expr("x1"), s) == 0);  // absent variables read 0
}

TEST_CASE("guard evaluation") {
    State s = st({{0, 2}, {1, 5}});
    CHECK(holds(parse_bexpr("x0 < x1"), s));
    CHECK(!holds(parse_bexpr("x1 < x0"), s));
    CHECK(holds(parse_bexpr("~ x0 = x1"), s));
    CHECK(holds(parse_bexpr("x0 = 2 /\\ x1 = 5"), s));
    CHECK(holds(parse_bexpr("x0 = 3 -> x1 = 0"), s));
}

TEST_CASE("straight-line execution") {
    StmtPtr p = parse_program("x2 := x0; x0 := x1; x1 := x2");
    ExecOutcome o = exec(p, st({{0, 3}, {1, 5}}), 10);
    REQUIRE(o.terminated);
    CHECK(o.state.get(Var{0}) == 5);
    CHECK(o.state.get(Var{1}) == 3);
    CHECK(o.steps == 0);  // no loop entries
}

TEST_CASE("the counting loop computes the identity") {
    StmtPtr p = parse_program("x1 := 0; while x1 < x0 do x1 := x1 + 1 od");
    for (unsigned long x = 0; x <= 50; ++x) {
        auto r = run_function(p, {Var{0}, Var{1}}, {x, 5}, 1000);
        REQUIRE(r.has_value());
        CHECK((*r)[0] == x);
        CHECK((*r)[1] == x);
    }
}

TEST_CASE("fuel counts loop-body entries and is monotone") {
    StmtPtr p = parse_program("x1 := 0; while x1 < x0 do x1 := x1 + 1 od");
    State s = st({{0, 7}});
    ExecOutcome tight = exec(p, s, 7);
    REQUIRE(tight.terminated);
    CHECK(tight.steps == 7);
    CHECK(!exec(p, s, 6).terminated);
    // more fuel changes nothing once the run terminates
    ExecOutcome loose = exec(p, s, 10000);
    CHECK(loose.state == tight.state);
    CHECK(loose.steps == tight.steps);
}

TEST_CASE("a diverging loop exhausts any fuel") {
    StmtPtr p = parse_program("while 0 < x0 + 1 do x1 := x1 + 1 od");
    CHECK(!exec(p, State(), 1000).terminated);
    CHECK(!run_function(p, {Var{0}, Var{1}}, {0, 0}, 1000).has_value());
}

TEST_CASE("while unrolling: one guarded body pass then the same loop") {
    StmtPtr loop = parse_program("while x1 < x0 do x1 := x1 + x1 + 1 od");
    StmtPtr unrolled = parse_program(
        "if x1 < x0 then x1 := x1 + x1 + 1; while x1 < x0 do x1 := x1 + x1 + 1 od "
        "else x2 := x2 fi");
    for (unsigned long a = 0; a <= 10; ++a)
        for (unsigned long b = 0; b <= 10; ++b) {
            State s = st({{0, (int)a}, {1, (int)b}});
            ExecOutcome u = exec(loop, s, 100), w = exec(unrolled, s, 101);
            REQUIRE(u.terminated);
            REQUIRE(w.terminated);
            CHECK(u.state == w.state);
        }
}

TEST_CASE("loop_trace lists the loop-top states") {
    StmtPtr p = parse_program("x1 := 0; while x1 < x0 do x1 := x1 + 1 od");
    const StmtPtr& loop = p->s2;
    std::vector<State> tr = loop_trace(p, loop, st({{0, 3}}), 100);
    REQUIRE(tr.size() == 4);  // guard tested at x1 = 0,1,2,3
    for (std::size_t j = 0; j < tr.size(); ++j) CHECK(tr[j].get(Var{1}) == j);
    CHECK(loop_trace(p, loop, st({{0, 3}}), 2).empty());  // out of fuel
}

TEST_CASE("corpus programs compute their intended functions") {
    auto get = [](const char* name) {
        for (const auto& e : corpus())
            if (std::string(name) == e.name) return corpus_program(e);
        REQUIRE(false);
        return StmtPtr();
    };
    auto run2 = [](const StmtPtr& p, unsigned long a, unsigned long b) {
        std::vector<Var> xs = program_vars(p);
        std::vector<Nat> in(xs.size(), 0);
        in[0] = a;
        in[1] = b;
        return run_function(p, xs, in, 10000);
    };
    StmtPtr add = get("add_incr"), mult = get("mult_add"), sub = get("trunc_sub");
    StmtPtr gcd = get("gcd_sub"), nested = get("mult_nested");
    for (unsigned long a = 0; a <= 8; ++a)
        for (unsigned long b = 0; b <= 8; ++b) {
            CHECK((*run2(add, a, b))[0] == a + b);
            CHECK((*run2(mult, a, b))[2] == a * b);
            CHECK((*run2(sub, a, b))[2] == (a > b ? a - b : 0));
            CHECK((*run2(nested, a, b))[2] == a * b);
            auto g = run2(gcd, a, b);
            if ((a == 0) != (b == 0)) {
                CHECK(!g.has_value());  // diverges when exactly one input is 0
            } else {
                unsigned long x = a, y = b;
                while (y) { unsigned long t = x % y; x = y; y = t; }
                CHECK((*g)[0] == x);
            }
        }
}
