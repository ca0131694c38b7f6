#ifndef HOARITH_NAT_HPP
#define HOARITH_NAT_HPP

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace hoarith {

// Natural numbers. Values are kept nonnegative by construction; the
// interpreter and the coding functions need arbitrary precision (sequence
// codes overflow any fixed width immediately).
using Nat = mpz_class;

inline Nat nat_of(unsigned long v) { return Nat(v); }

inline Nat nat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty numeral");
    for (char c : s)
        if (c < '0' || c > '9') throw std::invalid_argument("bad numeral: " + s);
    return Nat(s, 10);
}

inline std::string nat_to_string(const Nat& n) { return n.get_str(10); }

// Fits-in-ulong guard for loop counters.
inline bool nat_fits_ulong(const Nat& n) { return n.fits_ulong_p(); }

} // namespace hoarith

#endif
