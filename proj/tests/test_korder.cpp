#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hoarith/korder.hpp"

#include <random>
#include <vector>

using namespace hoarith;

namespace {

struct Gen {
    std::mt19937 rng;
    long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

    KElem elem() {
        if (pick(0, 1)) return KElem::std_elem(Nat(pick(0, 1000)));
        long num = pick(-20, 20), den = pick(1, 20);
        return KElem::nonstd(mpq_class(num, den), mpz_class(pick(-1000, 1000)));
    }
};

bool leq(const KElem& u, const KElem& v) { return k_less(u, v) || k_eq(u, v); }

} // namespace

TEST_CASE("comparator basics") {
    CHECK(k_less(KElem::std_elem(5), KElem::nonstd(mpq_class(0), mpz_class(-3))));
    CHECK(k_less(KElem::nonstd(mpq_class(1, 2), 7), KElem::nonstd(mpq_class(1, 2), 8)));
    CHECK(!k_less(KElem::std_elem(3), KElem::std_elem(3)));
    // canonical rationals: 2/4 is the same copy as 1/2
    CHECK(k_eq(KElem::nonstd(mpq_class(2, 4), 0), KElem::nonstd(mpq_class(1, 2), 0)));
}

TEST_CASE("strict total order laws on 10000 random pairs and triples") {
    Gen g{std::mt19937(71)};
    for (int it = 0; it < 10000; ++it) {
        KElem a = g.elem(), b = g.elem(), c = g.elem();
        // irreflexivity and asymmetry
        CHECK(!k_less(a, a));
        CHECK(!(k_less(a, b) && k_less(b, a)));
        // trichotomy
        CHECK((k_less(a, b) || k_less(b, a) || k_eq(a, b)));
        CHECK(!(k_eq(a, b) && (k_less(a, b) || k_less(b, a))));
        // transitivity
        if (k_less(a, b) && k_less(b, c)) CHECK(k_less(a, c));
    }
}

TEST_CASE("the naturals form an initial segment") {
    Gen g{std::mt19937(73)};
    for (int it = 0; it < 10000; ++it) {
        KElem a = g.elem(), b = g.elem();
        if (a.std_part && !b.std_part) CHECK(k_less(a, b));
        if (!a.std_part && b.std_part) CHECK(!k_less(a, b));
    }
}

TEST_CASE("successor and predecessor witness discreteness") {
    Gen g{std::mt19937(79)};
    for (int it = 0; it < 10000; ++it) {
        KElem u = g.elem();
        KElem s = k_successor(u);
        CHECK(k_less(u, s));
        // nothing strictly between u and its successor
        KElem v = g.elem();
        CHECK(!(k_less(u, v) && k_less(v, s)));
        auto p = k_predecessor(s);
        REQUIRE(p.has_value());
        CHECK(k_eq(*p, u));
    }
    CHECK(!k_predecessor(KElem::std_elem(0)).has_value());
}

TEST_CASE("no least element above the naturals") {
    Gen g{std::mt19937(83)};
    for (int it = 0; it < 1000; ++it) {
        KElem u = g.elem();
        if (u.std_part) continue;
        auto p = k_predecessor(u);
        REQUIRE(p.has_value());
        CHECK(!p->std_part);
        CHECK(k_less(*p, u));
    }
}

TEST_CASE("printing and parsing round trip") {
    Gen g{std::mt19937(89)};
    for (int it = 0; it < 1000; ++it) {
        KElem u = g.elem();
        CHECK(k_eq(k_parse(k_print(u)), u));
    }
    CHECK(k_print(KElem::std_elem(17)) == "17");
    CHECK(k_print(KElem::nonstd(mpq_class(1, 2), -3)) == "(1/2, -3)");
    CHECK(k_eq(k_parse(" ( -2/6 ,  4 ) "), KElem::nonstd(mpq_class(-1, 3), 4)));
    CHECK_THROWS_AS(k_parse(""), std::invalid_argument);
    CHECK_THROWS_AS(k_parse("(1/2"), std::invalid_argument);
    CHECK_THROWS_AS(k_parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(k_parse("(x, 1)"), std::invalid_argument);
}
