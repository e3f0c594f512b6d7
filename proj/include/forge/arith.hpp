#pragma once

// Integer quaternion arithmetic, four-square representation enumeration, and
// the modular number theory used to reduce quaternions into PGL2(q).

#include <algorithm>
#include <cstdint>
#include <vector>

#include "forge/errors.hpp"

namespace forge::arith {

using std::int64_t;

// Moduli are capped so that a product of two reduced residues fits in int64.
inline constexpr int64_t kMaxModulus = (int64_t{1} << 31) - 1;

inline int64_t mod_reduce(int64_t x, int64_t q) {
    int64_t r = x % q;
    return r < 0 ? r + q : r;
}

inline int64_t mod_mul(int64_t a, int64_t b, int64_t q) {
    return (a * b) % q;
}

inline int64_t mod_pow(int64_t base, int64_t exp, int64_t q) {
    int64_t acc = 1 % q;
    base = mod_reduce(base, q);
    while (exp > 0) {
        if (exp & 1) acc = mod_mul(acc, base, q);
        base = mod_mul(base, base, q);
        exp >>= 1;
    }
    return acc;
}

// Extended Euclid.  Throws if gcd(a, q) != 1.
inline int64_t mod_inv(int64_t a, int64_t q) {
    a = mod_reduce(a, q);
    int64_t r0 = q, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t quot = r0 / r1;
        r0 -= quot * r1;
        std::swap(r0, r1);
        s0 -= quot * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw DomainError("mod_inv: element not invertible");
    return mod_reduce(s0, q);
}

inline bool is_prime(int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

/// Residue mod q: value in [0, q), q an odd prime (2 tolerated for identity
/// arithmetic).  Inverses exist iff value != 0.
class Residue {
  public:
    Residue(int64_t value, int64_t modulus) : q_(modulus) {
        if (modulus < 2 || modulus > kMaxModulus)
            throw DomainError("Residue: modulus out of range");
        v_ = mod_reduce(value, modulus);
    }

    int64_t value() const { return v_; }
    int64_t modulus() const { return q_; }

    Residue operator+(const Residue& o) const { return with(v_ + o.check(q_)); }
    Residue operator-(const Residue& o) const { return with(v_ - o.check(q_)); }
    Residue operator*(const Residue& o) const { return with(mod_mul(v_, o.check(q_), q_)); }
    Residue operator-() const { return with(-v_); }
    Residue inverse() const { return with(mod_inv(v_, q_)); }
    Residue pow(int64_t e) const { return with(mod_pow(v_, e, q_)); }

    bool operator==(const Residue& o) const = default;

  private:
    Residue with(int64_t raw) const { return Residue(raw, q_); }
    int64_t check(int64_t q) const {
        if (q_ != q) throw ModulusMismatch("Residue: mixed moduli");
        return v_;
    }
    int64_t v_;
    int64_t q_;
};

/// Lipschitz quaternion x0 + x1*i + x2*j + x3*k with integer coefficients.
struct Quaternion {
    int64_t x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
        return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
                a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
                a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
                a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
    }

    Quaternion conjugate() const { return {x0, -x1, -x2, -x3}; }
    int64_t norm() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }

    bool operator==(const Quaternion&) const = default;
    auto operator<=>(const Quaternion&) const = default;
};

/// All four-square representations of an odd prime p = 1 (mod 4) with
/// x0 > 0 odd.  Exactly p+1 of them; closed under quaternion conjugation.
struct SolutionSet {
    int64_t p = 0;
    std::vector<Quaternion> members;
};

/// Number of integer 4-tuples whose squares sum to n:
/// 8 * (sum of divisors of n not divisible by 4).
inline int64_t r4_count(int64_t n) {
    if (n < 1) throw DomainError("r4_count: n must be positive");
    int64_t sum = 0;
    for (int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d % 4 != 0) sum += d;
        int64_t e = n / d;
        if (e != d && e % 4 != 0) sum += e;
    }
    return 8 * sum;
}

inline std::vector<Quaternion> four_square_tuples_brute(int64_t n) {
    std::vector<Quaternion> out;
    int64_t s = 0;
    while ((s + 1) * (s + 1) <= n) ++s;
    for (int64_t a = -s; a <= s; ++a)
        for (int64_t b = -s; b <= s; ++b) {
            if (a * a + b * b > n) continue;
            for (int64_t c = -s; c <= s; ++c) {
                int64_t rem = n - a * a - b * b - c * c;
                if (rem < 0) continue;
                int64_t d = 0;
                while (d * d < rem) ++d;
                if (d * d != rem) continue;
                out.push_back({a, b, c, d});
                if (d != 0) out.push_back({a, b, c, -d});
            }
        }
    return out;
}

inline SolutionSet enumerate_S(int64_t p) {
    if (!is_prime(p)) throw DomainError("enumerate_S: p must be prime");
    if (p % 4 != 1) throw DomainError("enumerate_S: p must be 1 mod 4");
    SolutionSet set;
    set.p = p;
    int64_t s = 0;
    while ((s + 1) * (s + 1) <= p) ++s;
    for (int64_t x0 = 1; x0 <= s; x0 += 2)
        for (int64_t x1 = -s; x1 <= s; ++x1)
            for (int64_t x2 = -s; x2 <= s; ++x2) {
                int64_t rem = p - x0 * x0 - x1 * x1 - x2 * x2;
                if (rem < 0) continue;
                int64_t x3 = 0;
                while (x3 * x3 < rem) ++x3;
                if (x3 * x3 != rem) continue;
                set.members.push_back({x0, x1, x2, x3});
                if (x3 != 0) set.members.push_back({x0, x1, x2, -x3});
            }
    std::sort(set.members.begin(), set.members.end());
    if (static_cast<int64_t>(set.members.size()) != p + 1)
        throw StructuralError("enumerate_S: member count != p+1");
    return set;
}

/// Legendre symbol (a/q) by the Euler criterion, in {-1, 0, +1}.
inline int legendre(int64_t a, int64_t q) {
    if (q < 3 || q % 2 == 0) throw DomainError("legendre: q must be an odd prime");
    int64_t r = mod_reduce(a, q);
    if (r == 0) return 0;
    int64_t e = mod_pow(r, (q - 1) / 2, q);
    return e == 1 ? 1 : -1;
}

/// The canonical square root of -1 mod q (the smaller of the two roots).
/// Requires q prime, q = 1 (mod 4).
inline Residue sqrt_minus_one(int64_t q) {
    if (!is_prime(q) || q % 4 != 1)
        throw DomainError("sqrt_minus_one: q must be a prime = 1 mod 4");
    // g^((q-1)/4) is a root for any non-residue g.
    for (int64_t g = 2; g < q; ++g) {
        if (legendre(g, q) != -1) continue;
        int64_t eps = mod_pow(g, (q - 1) / 4, q);
        return Residue(std::min(eps, q - eps), q);
    }
    throw StructuralError("sqrt_minus_one: no non-residue found");
}

} // namespace forge::arith
