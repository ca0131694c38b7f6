#include "hoarith/coding.hpp"

#include <map>
#include <stdexcept>

namespace hoarith {

Nat pair_nat(const Nat& x, const Nat& y) {
    Nat s = x + y;
    return s * (s + 1) / 2 + x;
}

std::pair<Nat, Nat> unpair_nat(const Nat& z) {
    // w = floor((sqrt(8z+1)-1)/2) is the diagonal index.
    Nat w = (sqrt(8 * z + 1) - 1) / 2;
    Nat t = w * (w + 1) / 2;
    Nat x = z - t;
    return {x, w - x};
}

Nat tuple_encode(const std::vector<Nat>& xs) {
    if (xs.empty()) throw std::invalid_argument("tuple_encode: empty tuple");
    Nat code = xs.back();
    for (std::size_t i = xs.size() - 1; i-- > 0;) code = pair_nat(xs[i], code);
    return code;
}

std::vector<Nat> tuple_decode(const Nat& code, std::size_t n) {
    if (n == 0) throw std::invalid_argument("tuple_decode: empty tuple");
    std::vector<Nat> out;
    Nat rest = code;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        auto [head, tail] = unpair_nat(rest);
        out.push_back(head);
        rest = tail;
    }
    out.push_back(rest);
    return out;
}

Nat beta(const Nat& s, const Nat& t, const Nat& i) {
    return s % (1 + (i + 1) * t);
}

namespace {

// x == r1 (mod p1) and x == r2 (mod p2), coprime moduli; balanced combining
// keeps the CRT quasi-linear in the total modulus size.
std::pair<Nat, Nat> crt_combine(std::pair<Nat, Nat> a, std::pair<Nat, Nat> b) {
    auto& [r1, p1] = a;
    auto& [r2, p2] = b;
    Nat red = p1 % p2, inv;
    if (mpz_invert(inv.get_mpz_t(), red.get_mpz_t(), p2.get_mpz_t()) == 0)
        throw std::logic_error("seq_encode: moduli not coprime");
    Nat delta = ((r2 - r1 % p2) % p2 + p2) % p2;
    return {r1 + p1 * (delta * inv % p2), p1 * p2};
}

std::pair<Nat, Nat> crt_tree(const std::vector<Nat>& rs, const std::vector<Nat>& ms,
                             std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return {rs[lo] % ms[lo], ms[lo]};
    std::size_t mid = lo + (hi - lo) / 2;
    return crt_combine(crt_tree(rs, ms, lo, mid), crt_tree(rs, ms, mid, hi));
}

std::vector<Nat> beta_moduli(const Nat& t, std::size_t count) {
    std::vector<Nat> ms;
    ms.reserve(count);
    for (std::size_t i = 0; i < count; ++i) ms.push_back(1 + Nat(i + 1) * t);
    return ms;
}

} // namespace

Nat seq_encode(const std::vector<Nat>& xs) {
    // Long traces re-encode the same prefix states often (e.g. sweeping a
    // box of inputs); the construction is deterministic, so memoize.
    static std::map<std::vector<Nat>, Nat> memo;
    if (auto it = memo.find(xs); it != memo.end()) return it->second;
    // t must exceed every element and be divisible by every k < length:
    // then any common divisor of 1+(i+1)t and 1+(j+1)t divides (j-i), is
    // coprime to t, hence divides a number below the length that t absorbs,
    // so the moduli are pairwise coprime and each larger than its element.
    // The smallest such multiple of lcm(1..len) keeps t near max(xs), where
    // a factorial of max(xs) would be astronomically large.
    Nat L = 1;
    for (unsigned long k = 2; k < xs.size(); ++k)
        mpz_lcm_ui(L.get_mpz_t(), L.get_mpz_t(), k);
    Nat mx = 0;
    for (const Nat& x : xs)
        if (x > mx) mx = x;
    Nat t = L * ((mx + L) / L);
    // CRT: s == xs[i]  (mod 1+(i+1)t).
    Nat s = xs.empty() ? Nat(0) : crt_tree(xs, beta_moduli(t, xs.size()), 0, xs.size()).first;
    Nat w = pair_nat(s, t);
    memo.emplace(xs, w);
    return w;
}

std::vector<Nat> seq_decode(const Nat& w, std::size_t count) {
    if (count == 0) return {};
    static std::map<std::pair<Nat, std::size_t>, std::vector<Nat>> memo;
    auto key = std::make_pair(w, count);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    auto [s, t] = unpair_nat(w);
    // Product tree up, remainders down: each level costs one pass over the
    // combined modulus size instead of one full division per element.
    std::vector<std::vector<Nat>> tree{beta_moduli(t, count)};
    while (tree.back().size() > 1) {
        const auto& prev = tree.back();
        std::vector<Nat> next;
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2)
            next.push_back(prev[i] * prev[i + 1]);
        if (prev.size() % 2) next.push_back(prev.back());
        tree.push_back(std::move(next));
    }
    std::vector<Nat> rem{s % tree.back()[0]};
    for (std::size_t lvl = tree.size() - 1; lvl-- > 0;) {
        std::vector<Nat> down(tree[lvl].size());
        for (std::size_t i = 0; i < tree[lvl].size(); ++i)
            down[i] = rem[i / 2] % tree[lvl][i];
        rem = std::move(down);
    }
    memo.emplace(std::move(key), rem);
    return rem;
}

Nat seq_elem(const Nat& w, const Nat& i) {
    auto [s, t] = unpair_nat(w);
    return beta(s, t, i);
}

// ---- defining formulas ----

namespace {

void require_below(const ExprPtr& e, const FreshPool& pool, const char* who) {
    for (Var v : free_vars(e))
        if (v.index >= pool.next_index())
            throw std::invalid_argument(std::string(who) + ": argument variable clashes with fresh pool");
}

} // namespace

FormulaPtr pair_formula(const ExprPtr& x, const ExprPtr& y, const ExprPtr& z) {
    using namespace expr;
    ExprPtr s = add(x, y);
    ExprPtr two = num(2);
    // (x+y)*((x+y)+1) + 2*x = 2*z avoids division by two.
    return fml::eq(add(mul(s, add(s, one())), mul(two, x)), mul(two, z));
}

FormulaPtr beta_formula(const ExprPtr& s, const ExprPtr& t, const ExprPtr& i,
                        const ExprPtr& y, FreshPool& pool) {
    using namespace expr;
    require_below(s, pool, "beta_formula");
    require_below(t, pool, "beta_formula");
    require_below(i, pool, "beta_formula");
    require_below(y, pool, "beta_formula");
    Var q = pool.fresh();
    ExprPtr mod = add(one(), mul(add(i, one()), t));
    FormulaPtr body = fml::fand(fml::eq(s, add(mul(var(q), mod), y)),
                                fml::less(y, mod));
    return fml::exists(q, body);
}

FormulaPtr elem_formula(const ExprPtr& w, const ExprPtr& idx, const ExprPtr& c,
                        FreshPool& pool) {
    require_below(w, pool, "elem_formula");
    require_below(idx, pool, "elem_formula");
    require_below(c, pool, "elem_formula");
    Var s = pool.fresh();
    Var t = pool.fresh();
    FormulaPtr body = fml::fand(pair_formula(expr::var(s), expr::var(t), w),
                                beta_formula(expr::var(s), expr::var(t), idx, c, pool));
    return fml::exists(s, fml::exists(t, body));
}

FormulaPtr tuple_decode_formula(const ExprPtr& c, const std::vector<Var>& us,
                                FreshPool& pool) {
    if (us.empty()) throw std::invalid_argument("tuple_decode_formula: empty tuple");
    require_below(c, pool, "tuple_decode_formula");
    for (Var u : us) require_below(expr::var(u), pool, "tuple_decode_formula");
    if (us.size() == 1) return fml::eq(c, expr::var(us[0]));
    // <u0, rest> = c, peeling one component per fresh rest variable.
    FormulaPtr out = nullptr;
    ExprPtr cur = c;
    std::vector<std::pair<Var, FormulaPtr>> layers;
    for (std::size_t i = 0; i + 1 < us.size(); ++i) {
        bool last = i + 2 == us.size();
        ExprPtr tail;
        Var r{};
        if (last) {
            tail = expr::var(us[i + 1]);
        } else {
            r = pool.fresh();
            tail = expr::var(r);
        }
        FormulaPtr step = pair_formula(expr::var(us[i]), tail, cur);
        out = out ? fml::fand(out, step) : step;
        if (!last) layers.emplace_back(r, nullptr);
        cur = tail;
    }
    for (std::size_t i = layers.size(); i-- > 0;) out = fml::exists(layers[i].first, out);
    return out;
}

FormulaPtr elem_tuple_formula(const ExprPtr& w, const ExprPtr& idx,
                              const std::vector<Var>& us, FreshPool& pool) {
    if (us.size() == 1) return elem_formula(w, idx, expr::var(us[0]), pool);
    Var c = pool.fresh();
    FormulaPtr body = fml::fand(elem_formula(w, idx, expr::var(c), pool),
                                tuple_decode_formula(expr::var(c), us, pool));
    return fml::exists(c, body);
}

} // namespace hoarith
