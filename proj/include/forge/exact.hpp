#pragma once

// Exact integer/rational linear algebra: eigenvalue-counting (inertia)
// certificates by symmetric elimination over Q, Smith normal form, and
// abelianization of finite presentations.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "forge/errors.hpp"

namespace forge::spectral {

struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational of(long long n, long long d = 1) {
        if (d == 0) throw DomainError("Rational: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        long long g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return {n, d};
    }

    bool operator==(const Rational&) const = default;
};

/// Exact counts of eigenvalues of an integer symmetric matrix that are
/// greater than / equal to / less than `shift`.
struct InertiaCertificate {
    Rational shift;
    int n_pos = 0, n_zero = 0, n_neg = 0;
    std::string method;
};

using IntMatrix = std::vector<std::vector<long long>>;

/// Inertia of A - shift*I by symmetric congruence elimination over Q
/// (1x1 diagonal pivots, 2x2 antidiagonal pivots when the diagonal
/// vanishes).  Exact arithmetic throughout.
inline InertiaCertificate inertia(const IntMatrix& A, Rational shift, int exact_cap = 512) {
    const int n = static_cast<int>(A.size());
    if (n > exact_cap) throw CapExceeded("inertia: matrix dimension exceeds exact cap");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw DomainError("inertia: matrix not square");
        for (int j = 0; j < i; ++j)
            if (A[i][j] != A[j][i]) throw DomainError("inertia: matrix not symmetric");
    }

    // Work on den*A - num*I, which has the same inertia as A - shift*I.
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            m[i][j] = mpq_class(A[i][j]) * shift.den;
            if (i == j) m[i][j] -= shift.num;
        }

    InertiaCertificate cert{shift, 0, 0, 0, "symmetric-elimination-exact"};
    std::vector<int> alive(n);
    for (int i = 0; i < n; ++i) alive[i] = i;

    while (!alive.empty()) {
        int rpos = -1;
        for (size_t t = 0; t < alive.size(); ++t)
            if (sgn(m[alive[t]][alive[t]]) != 0) {
                rpos = static_cast<int>(t);
                break;
            }
        if (rpos >= 0) {
            int r = alive[rpos];
            (sgn(m[r][r]) > 0 ? cert.n_pos : cert.n_neg)++;
            alive.erase(alive.begin() + rpos);
            for (int i : alive) {
                if (sgn(m[i][r]) == 0) continue;
                mpq_class f = m[i][r] / m[r][r];
                for (int j : alive)
                    if (sgn(m[r][j]) != 0) m[i][j] -= f * m[r][j];
            }
            continue;
        }
        // All remaining diagonal entries vanish: look for an off-diagonal
        // pivot [[0, a], [a, 0]], contributing one positive and one negative
        // eigenvalue.
        int ppos = -1, spos = -1;
        for (size_t t = 0; t < alive.size() && ppos < 0; ++t)
            for (size_t u = t + 1; u < alive.size(); ++u)
                if (sgn(m[alive[t]][alive[u]]) != 0) {
                    ppos = static_cast<int>(t);
                    spos = static_cast<int>(u);
                    break;
                }
        if (ppos < 0) {
            cert.n_zero += static_cast<int>(alive.size());
            break;
        }
        int r = alive[ppos], s = alive[spos];
        ++cert.n_pos;
        ++cert.n_neg;
        alive.erase(alive.begin() + spos);
        alive.erase(alive.begin() + ppos);
        const mpq_class a = m[r][s];
        std::vector<mpq_class> x, y;
        x.reserve(alive.size());
        y.reserve(alive.size());
        for (int i : alive) {
            x.push_back(m[i][r]);
            y.push_back(m[i][s]);
        }
        for (size_t ii = 0; ii < alive.size(); ++ii) {
            if (sgn(x[ii]) == 0 && sgn(y[ii]) == 0) continue;
            for (size_t jj = 0; jj < alive.size(); ++jj)
                m[alive[ii]][alive[jj]] -= (x[ii] * y[jj] + y[ii] * x[jj]) / a;
        }
    }

    if (cert.n_pos + cert.n_zero + cert.n_neg != n)
        throw StructuralError("inertia: counts do not sum to n");
    return cert;
}

using ZMatrix = std::vector<std::vector<mpz_class>>;

namespace detail {

inline void row_submul(std::vector<mpz_class>& dst, const mpz_class& q,
                       const std::vector<mpz_class>& src) {
    for (size_t j = 0; j < dst.size(); ++j) dst[j] -= q * src[j];
}

} // namespace detail

/// Invariant factors d_1 | d_2 | ... of an integer matrix (full diagonal of
/// the Smith normal form, including trailing 1s/0s up to min(rows, cols)).
inline std::vector<mpz_class> smith_normal_form(ZMatrix m, size_t cap = 2000) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    if (rows > cap || cols > cap) throw CapExceeded("smith_normal_form: dimension exceeds cap");
    for (const auto& r : m)
        if (r.size() != cols) throw DomainError("smith_normal_form: ragged matrix");

    const size_t steps = std::min(rows, cols);
    size_t t = 0;
    for (; t < steps; ++t) {
        // Smallest-magnitude nonzero pivot in the trailing submatrix.
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (sgn(m[i][j]) != 0 &&
                    (pi == rows || cmp(abs(m[i][j]), abs(m[pi][pj])) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(m[t], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

        while (true) {
            // Clear column t with row operations.
            for (size_t i = t + 1; i < rows; ++i)
                while (sgn(m[i][t]) != 0) {
                    mpz_class q = m[i][t] / m[t][t];
                    detail::row_submul(m[i], q, m[t]);
                    if (sgn(m[i][t]) != 0) std::swap(m[i], m[t]);
                }
            // Clear row t with column operations (may disturb column t via
            // swaps, hence the recheck below).
            for (size_t j = t + 1; j < cols; ++j)
                while (sgn(m[t][j]) != 0) {
                    mpz_class q = m[t][j] / m[t][t];
                    for (size_t i = 0; i < rows; ++i) m[i][j] -= q * m[i][t];
                    if (sgn(m[t][j]) != 0)
                        for (size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][t]);
                }
            bool clean = true;
            for (size_t i = t + 1; i < rows && clean; ++i)
                if (sgn(m[i][t]) != 0) clean = false;
            if (!clean) continue;

            // Divisibility pass: the pivot must divide the whole submatrix.
            size_t bad = rows;
            for (size_t i = t + 1; i < rows && bad == rows; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (sgn(m[i][j] % m[t][t]) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == rows) break;
            for (size_t j = 0; j < cols; ++j) m[t][j] += m[bad][j];
        }
    }

    std::vector<mpz_class> diag(steps, 0);
    for (size_t i = 0; i < t; ++i) diag[i] = abs(m[i][i]);
    return diag;
}

inline std::vector<mpz_class> smith_normal_form(const std::vector<std::vector<long long>>& m,
                                                size_t cap = 2000) {
    ZMatrix z(m.size());
    for (size_t i = 0; i < m.size(); ++i) z[i].assign(m[i].begin(), m[i].end());
    return smith_normal_form(std::move(z), cap);
}

/// Finite presentation with relators in syllable form.
struct Presentation {
    using Syllable = std::pair<int, long long>; // (generator index, nonzero exponent)
    using Word = std::vector<Syllable>;

    int generator_count = 0;
    std::vector<Word> relators;

    void validate() const {
        for (const auto& w : relators)
            for (const auto& [g, e] : w) {
                if (g < 0 || g >= generator_count)
                    throw DomainError("Presentation: generator index out of range");
                if (e == 0) throw DomainError("Presentation: zero exponent");
            }
    }
};

struct Abelianization {
    int free_rank = 0;
    std::vector<mpz_class> torsion; // invariant factors > 1, in divisibility order
};

/// H1 of the presented group: Smith normal form of the relator exponent
/// matrix.  Relator rows are folded into a small row basis first, so huge
/// relator lists stay within the SNF cap.
inline Abelianization abelianization(const Presentation& pres) {
    pres.validate();
    const int g = pres.generator_count;
    ZMatrix basis;
    for (const auto& w : pres.relators) {
        std::vector<mpz_class> row(g, 0);
        for (const auto& [gen, e] : w) row[gen] += e;
        // Gaussian fold over Z: reduce against existing rows by leading column.
        for (auto& b : basis) {
            size_t lead = 0;
            while (lead < b.size() && sgn(b[lead]) == 0) ++lead;
            if (lead == b.size()) continue;
            while (sgn(row[lead]) != 0) {
                mpz_class q = row[lead] / b[lead];
                for (int j = 0; j < g; ++j) row[j] -= q * b[j];
                if (sgn(row[lead]) != 0) std::swap(row, b);
            }
        }
        bool nonzero = false;
        for (const auto& v : row)
            if (sgn(v) != 0) nonzero = true;
        if (nonzero) {
            basis.push_back(std::move(row));
            // Keep rows sorted by leading column so folding stays triangular.
            std::sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) {
                size_t la = 0, lb = 0;
                while (la < a.size() && sgn(a[la]) == 0) ++la;
                while (lb < b.size() && sgn(b[lb]) == 0) ++lb;
                return la < lb;
            });
        }
    }

    Abelianization ab;
    if (basis.empty()) {
        ab.free_rank = g;
        return ab;
    }
    auto factors = smith_normal_form(std::move(basis));
    int rank = 0;
    for (const auto& d : factors)
        if (sgn(d) != 0) ++rank;
    ab.free_rank = g - rank;
    for (const auto& d : factors)
        if (cmp(d, 1) > 0) ab.torsion.push_back(d);
    return ab;
}

} // namespace forge::spectral
