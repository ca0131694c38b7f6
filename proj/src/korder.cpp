#include "hoarith/korder.hpp"

#include <stdexcept>

namespace hoarith {

bool k_eq(const KElem& u, const KElem& v) {
    if (u.std_part != v.std_part) return false;
    return u.std_part ? u.n == v.n : (u.q == v.q && u.a == v.a);
}

bool k_less(const KElem& u, const KElem& v) {
    if (u.std_part && v.std_part) return u.n < v.n;
    if (u.std_part != v.std_part) return u.std_part;  // the naturals come first
    if (u.q != v.q) return u.q < v.q;
    return u.a < v.a;
}

KElem k_successor(const KElem& u) {
    if (u.std_part) return KElem::std_elem(u.n + 1);
    return KElem::nonstd(u.q, u.a + 1);
}

std::optional<KElem> k_predecessor(const KElem& u) {
    if (u.std_part) {
        if (u.n == 0) return std::nullopt;
        return KElem::std_elem(u.n - 1);
    }
    return KElem::nonstd(u.q, u.a - 1);
}

std::string k_print(const KElem& u) {
    if (u.std_part) return u.n.get_str(10);
    return "(" + u.q.get_str(10) + ", " + u.a.get_str(10) + ")";
}

KElem k_parse(const std::string& text) {
    std::size_t b = text.find_first_not_of(" \t");
    std::size_t e = text.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty order element");
    std::string s = text.substr(b, e - b + 1);
    if (s.front() != '(') {
        for (char c : s)
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad natural: " + s);
        return KElem::std_elem(Nat(s, 10));
    }
    if (s.back() != ')') throw std::invalid_argument("unbalanced order element: " + s);
    std::string inner = s.substr(1, s.size() - 2);
    std::size_t comma = inner.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("expected '(q, a)': " + s);
    auto strip = [](std::string t) {
        std::size_t b2 = t.find_first_not_of(" \t");
        std::size_t e2 = t.find_last_not_of(" \t");
        if (b2 == std::string::npos) throw std::invalid_argument("empty component");
        return t.substr(b2, e2 - b2 + 1);
    };
    std::string qs = strip(inner.substr(0, comma));
    std::string as = strip(inner.substr(comma + 1));
    mpq_class q;
    if (q.set_str(qs, 10) != 0) throw std::invalid_argument("bad rational: " + qs);
    mpz_class a;
    if (a.set_str(as, 10) != 0) throw std::invalid_argument("bad integer: " + as);
    return KElem::nonstd(q, a);
}

} // namespace hoarith
