#ifndef HOARITH_KORDER_HPP
#define HOARITH_KORDER_HPP

#include "hoarith/nat.hpp"

#include <optional>
#include <string>

namespace hoarith {

// Element of the order type of a countable nonstandard model: the naturals
// followed by rational-indexed copies of the integers. Only the order is
// computable; there is deliberately no arithmetic on these.
struct KElem {
    bool std_part;   // Std(n) when true, NonStd(q, a) otherwise
    Nat n;           // Std
    mpq_class q;     // NonStd, kept canonical
    mpz_class a;     // NonStd

    static KElem std_elem(Nat n_) { return {true, std::move(n_), 0, 0}; }
    static KElem nonstd(mpq_class q_, mpz_class a_) {
        q_.canonicalize();
        return {false, 0, std::move(q_), std::move(a_)};
    }
};

bool k_eq(const KElem& u, const KElem& v);

// Std first, by magnitude; NonStd after every Std, lexicographically by
// (q, a).
bool k_less(const KElem& u, const KElem& v);

KElem k_successor(const KElem& u);
std::optional<KElem> k_predecessor(const KElem& u);

// Textual form: `n` or `(p/q, a)`, e.g. `(1/2, -3)`.
std::string k_print(const KElem& u);
KElem k_parse(const std::string& text);

} // namespace hoarith

#endif
