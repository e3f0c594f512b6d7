#pragma once

// Canonical 2x2 projective matrices over Z/q and the group law of PGL2(q).
//
// A projective class is represented by the unique scalar multiple whose first
// nonzero entry in scan order (a, b, c, d) equals 1, so equality of group
// elements is plain field-wise equality.

#include <cstdint>
#include <vector>

#include "forge/arith.hpp"
#include "forge/errors.hpp"

namespace forge::projective {

using std::int64_t;
using std::uint64_t;

struct ProjMat {
    int64_t a = 1, b = 0, c = 0, d = 1; // row-major [[a, b], [c, d]]
    int64_t q = 2;

    bool operator==(const ProjMat&) const = default;
    auto operator<=>(const ProjMat&) const = default;
};

inline int64_t det_mod(const ProjMat& m) {
    return arith::mod_reduce(m.a * m.d - m.b * m.c, m.q);
}

inline ProjMat canonicalize(int64_t a, int64_t b, int64_t c, int64_t d, int64_t q) {
    if (q < 2 || q > arith::kMaxModulus)
        throw DomainError("canonicalize: modulus out of range");
    a = arith::mod_reduce(a, q);
    b = arith::mod_reduce(b, q);
    c = arith::mod_reduce(c, q);
    d = arith::mod_reduce(d, q);
    if (arith::mod_reduce(a * d - b * c, q) == 0)
        throw SingularMatrix("canonicalize: det = 0 mod q");
    int64_t lead = a != 0 ? a : b != 0 ? b : c != 0 ? c : d;
    int64_t s = arith::mod_inv(lead, q);
    return {arith::mod_mul(a, s, q), arith::mod_mul(b, s, q),
            arith::mod_mul(c, s, q), arith::mod_mul(d, s, q), q};
}

inline ProjMat identity(int64_t q) {
    return {1 % q, 0, 0, 1 % q, q};
}

inline ProjMat compose(const ProjMat& m1, const ProjMat& m2) {
    if (m1.q != m2.q) throw ModulusMismatch("compose: mixed moduli");
    int64_t q = m1.q;
    return canonicalize(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                        m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d, q);
}

// Adjugate; one inversion happens inside canonicalize.
inline ProjMat inverse(const ProjMat& m) {
    return canonicalize(m.d, -m.b, -m.c, m.a, m.q);
}

/// All elements of PGL2(q) in lexicographic order of the canonical entry
/// tuple (a, b, c, d).  Count is q(q-1)(q+1).
inline std::vector<ProjMat> pgl2_elements(int64_t q, int64_t cap = 5'000'000) {
    if (!arith::is_prime(q)) throw DomainError("pgl2_elements: q must be prime");
    int64_t count = q * (q - 1) * (q + 1);
    if (count > cap) throw CapExceeded("pgl2_elements: group order exceeds cap");
    std::vector<ProjMat> out;
    out.reserve(static_cast<size_t>(count));
    // a = 0 forces b = 1 and c != 0 (else singular).
    for (int64_t c = 1; c < q; ++c)
        for (int64_t d = 0; d < q; ++d)
            out.push_back({0, 1, c, d, q});
    // a = 1: any (b, c), then d != b*c.
    for (int64_t b = 0; b < q; ++b)
        for (int64_t c = 0; c < q; ++c) {
            int64_t bc = arith::mod_reduce(b * c, q);
            for (int64_t d = 0; d < q; ++d)
                if (d != bc) out.push_back({1, b, c, d, q});
        }
    if (static_cast<int64_t>(out.size()) != count)
        throw StructuralError("pgl2_elements: enumeration count mismatch");
    return out;
}

enum class DetClass { Square, NonSquare };

/// Quadratic-residue class of det of the canonical representative.  Rescaling
/// by s multiplies det by s^2, so the class is well defined on PGL2, and it
/// is constant on PSL2 cosets.
inline DetClass psl2_class(const ProjMat& m) {
    return arith::legendre(det_mod(m), m.q) == 1 ? DetClass::Square
                                                 : DetClass::NonSquare;
}

/// Packs a canonical matrix into 4x16 bits for hashing.  Requires q < 2^16.
inline uint64_t pack(const ProjMat& m) {
    return (static_cast<uint64_t>(m.a) << 48) | (static_cast<uint64_t>(m.b) << 32) |
           (static_cast<uint64_t>(m.c) << 16) | static_cast<uint64_t>(m.d);
}

} // namespace forge::projective
