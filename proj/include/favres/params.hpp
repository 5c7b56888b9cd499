#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace favres {

using Int = std::int64_t;
using Tuple = std::vector<Int>; // one entry per embedding axis

/// Thrown when a bounded search runs out of budget before finding a witness.
struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal consistency assumption fails (a bug, not bad input).
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// Global arithmetic context: prime p, number of axes g, coefficient
/// precision m (ring Z/p^m) and the threshold defining the positivity cone.
struct Params {
    Int p = 3;
    int g = 1;
    int m = 1;
    Int delta_threshold = 5;

    // derived
    Int step = 0; // 2*p^(m-1): the least positive admissible vanishing order
    Int pm = 0;   // p^m: coefficient modulus

    Params() = default;
    Params(Int p_, int g_, int m_, Int threshold);

    bool operator==(const Params&) const = default;

    /// Next axis clockwise: axes are cyclic, 0-based.
    int next(int i) const { return (i + 1) % g; }
    int prev(int i) const { return (i + g - 1) % g; }
};

bool is_prime(Int n);

/// a*b mod 2^63-safe via 128-bit intermediate.
Int mul_mod(Int a, Int b, Int mod);
Int add_mod(Int a, Int b, Int mod);
/// Canonical representative in [0, mod).
Int normalize_mod(Int a, Int mod);
/// Multiplicative inverse of a unit; throws std::domain_error otherwise.
Int inv_mod(Int a, Int mod);
/// Largest e with p^e | a (for a != 0 mod p^m); v(0) = m by convention.
int p_valuation(Int a, Int p, int m);

Int checked_mul(Int a, Int b);
Int checked_add(Int a, Int b);

/// Exact fraction used for the cylinder predicate; den > 0.
struct Rational64 {
    Int num = 0;
    Int den = 1;
    Rational64() = default;
    Rational64(Int n, Int d);
    bool operator==(const Rational64&) const = default;
};

// exact comparisons via 128-bit cross multiplication
bool rat_less(const Rational64& a, const Rational64& b);
bool rat_greater(const Rational64& a, const Rational64& b);

std::string tuple_to_string(const Tuple& t);

} // namespace favres
