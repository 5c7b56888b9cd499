#include "favres/params.hpp"

#include <limits>
#include <sstream>
#include <utility>

namespace favres {

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Params::Params(Int p_, int g_, int m_, Int threshold)
    : p(p_), g(g_), m(m_), delta_threshold(threshold) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (g < 1 || g > 20) throw std::invalid_argument("g must be in [1, 20]");
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (delta_threshold < 2) throw std::invalid_argument("delta_threshold must be >= 2");
    Int acc = 1;
    for (int i = 0; i < m; ++i) {
        acc = checked_mul(acc, p);
        if (acc > (Int(1) << 31)) throw std::invalid_argument("p^m too large (max 2^31)");
    }
    pm = acc;
    step = 2 * (pm / p);
}

Int mul_mod(Int a, Int b, Int mod) {
    __int128 r = (__int128)normalize_mod(a, mod) * normalize_mod(b, mod);
    return (Int)(r % mod);
}

Int add_mod(Int a, Int b, Int mod) {
    return normalize_mod(normalize_mod(a, mod) + normalize_mod(b, mod), mod);
}

Int normalize_mod(Int a, Int mod) {
    Int r = a % mod;
    return r < 0 ? r + mod : r;
}

Int inv_mod(Int a, Int mod) {
    Int t = 0, new_t = 1, r = mod, new_r = normalize_mod(a, mod);
    while (new_r != 0) {
        Int q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw std::domain_error("inv_mod: not a unit");
    return normalize_mod(t, mod);
}

int p_valuation(Int a, Int p, int m) {
    Int pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    a = normalize_mod(a, pm);
    if (a == 0) return m;
    int v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

Int checked_mul(Int a, Int b) {
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow (mul)");
    return out;
}

Int checked_add(Int a, Int b) {
    Int out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow (add)");
    return out;
}

Rational64::Rational64(Int n, Int d) : num(n), den(d) {
    if (den <= 0) throw std::invalid_argument("Rational64: denominator must be positive");
}

bool rat_less(const Rational64& a, const Rational64& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
}

bool rat_greater(const Rational64& a, const Rational64& b) {
    return rat_less(b, a);
}

std::string tuple_to_string(const Tuple& t) {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) os << ',';
        os << t[i];
    }
    os << ')';
    return os.str();
}

} // namespace favres
