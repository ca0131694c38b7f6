#ifndef TESTS_CORPUS_HPP
#define TESTS_CORPUS_HPP

// Shared program corpus for the test suites. Programs use indexed variable
// names (x0, x1, ...) so parsing needs no name table and the variable tuple
// is just program_vars. Boxes are per-slot inclusive input limits chosen to
// keep full sweeps fast; diverging inputs (gcd with exactly one zero) are
// expected to exhaust fuel and both the interpreter and the witness checker
// must agree on that.

#include "hoarith/interp.hpp"
#include "hoarith/parser.hpp"
#include "hoarith/syntax.hpp"

#include <string>
#include <vector>

struct CorpusEntry {
    const char* name;
    const char* text;
    unsigned long box;  // inputs range over [0, box] per variable slot
};

// Loop-free entries come first; pairs drawn from them have decidable
// strongest postconditions everywhere, which the separation suite needs.
inline const std::vector<CorpusEntry>& corpus() {
    static const std::vector<CorpusEntry> entries = {
        {"inc_chain", "x0 := x0 + 1; x1 := x0 * 2; x0 := x1 + x0", 8},
        {"swap", "x2 := x0; x0 := x1; x1 := x2", 6},
        {"min_cond", "if x0 < x1 then x2 := x0 else x2 := x1 fi", 6},
        {"shift_chain", "x1 := x0 + x1; x0 := 0; x0 := x1 * x1", 6},
        {"add_incr", "x2 := 0; while x2 < x1 do x0 := x0 + 1; x2 := x2 + 1 od", 8},
        {"mult_add",
         "x2 := 0; x3 := 0; while x3 < x0 do x2 := x2 + x1; x3 := x3 + 1 od", 5},
        {"trunc_sub", "x2 := 0; while x2 + x1 < x0 do x2 := x2 + 1 od", 8},
        {"gcd_sub",
         "while ~ x0 = x1 do"
         "  if x1 < x0 then"
         "    x2 := 0; while x2 + x1 < x0 do x2 := x2 + 1 od; x0 := x2"
         "  else"
         "    x2 := 0; while x2 + x0 < x1 do x2 := x2 + 1 od; x1 := x2"
         "  fi "
         "od", 7},
        {"mult_nested",
         "x2 := 0; x3 := 0;"
         "while x3 < x0 do"
         "  x4 := 0; while x4 < x1 do x2 := x2 + 1; x4 := x4 + 1 od;"
         "  x3 := x3 + 1 "
         "od", 4},
        {"count_up", "x1 := 0; while x1 < x0 do x1 := x1 + 1 od", 12},
    };
    return entries;
}

inline hoarith::StmtPtr corpus_program(const CorpusEntry& e) {
    return hoarith::parse_program(e.text);
}

// All input tuples with each slot in [0, box].
inline std::vector<std::vector<hoarith::Nat>> box_states(std::size_t arity,
                                                         unsigned long box) {
    std::vector<std::vector<hoarith::Nat>> out;
    std::vector<hoarith::Nat> cur(arity, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < arity; ++i) {
            if (cur[i] < box) { ++cur[i]; break; }
            cur[i] = 0;
        }
        if (i == arity) break;
    }
    return out;
}

#endif
