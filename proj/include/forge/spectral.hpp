#pragma once

// Floating spectral analysis of multigraphs (full symmetric eigensolve with
// residual-based error bounds) and the certification layer on top of the
// exact inertia routine: expansiveness (lambda_1 > 1/2) and the Ramanujan
// bound, decided exactly within the caps and honestly tiered above them.

#include <cblas.h>
#include <lapacke.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forge/errors.hpp"
#include "forge/exact.hpp"
#include "forge/graph.hpp"

namespace forge::spectral {

inline IntMatrix adjacency_matrix(const graphs::MultiGraph& g) {
    IntMatrix a(g.n, std::vector<long long>(g.n, 0));
    for (const auto& e : g.edges) {
        if (e.u == e.v) {
            a[e.u][e.u] += 2 * e.mult; // loops contribute 2
        } else {
            a[e.u][e.v] += e.mult;
            a[e.v][e.u] += e.mult;
        }
    }
    return a;
}

struct SpectrumReport {
    std::vector<double> eigenvalues; // descending
    double error_bound = 0.0;        // uniform eta
    std::optional<int> k;            // regularity, when the graph is regular
};

/// Full adjacency spectrum by LAPACK's divide-and-conquer symmetric solver,
/// with eta = max_i ||A v_i - theta_i v_i|| / ||v_i||.
inline SpectrumReport adjacency_spectrum(const graphs::MultiGraph& g, double tol = 1e-9,
                                         int dense_cap = 4096) {
    const int n = g.n;
    if (n > dense_cap) throw CapExceeded("adjacency_spectrum: vertex count exceeds dense cap");
    if (n == 0) return {{}, 0.0, std::nullopt};

    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (const auto& e : g.edges) {
        if (e.u == e.v) {
            a[static_cast<size_t>(e.u) * n + e.u] += 2.0 * e.mult;
        } else {
            a[static_cast<size_t>(e.u) * n + e.v] += e.mult;
            a[static_cast<size_t>(e.v) * n + e.u] += e.mult;
        }
    }
    std::vector<double> a0 = a; // dsyevd overwrites with eigenvectors
    std::vector<double> w(n);
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, w.data());
    if (info != 0) throw StructuralError("adjacency_spectrum: dsyevd failed");

    // R = A*V - V*diag(w); eta from per-column residuals.
    std::vector<double> r(static_cast<size_t>(n) * n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            r[static_cast<size_t>(j) * n + i] = -w[j] * a[static_cast<size_t>(j) * n + i];
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, a0.data(), n, a.data(),
                n, 1.0, r.data(), n);
    double eta = 0.0;
    for (int j = 0; j < n; ++j) {
        double rn = cblas_dnrm2(n, r.data() + static_cast<size_t>(j) * n, 1);
        double vn = cblas_dnrm2(n, a.data() + static_cast<size_t>(j) * n, 1);
        eta = std::max(eta, rn / vn);
    }
    if (eta > tol)
        throw StructuralError("adjacency_spectrum: residual bound exceeds requested tolerance");

    SpectrumReport rep;
    rep.eigenvalues.assign(w.rbegin(), w.rend());
    rep.error_bound = eta;
    rep.k = g.regular_degree();
    return rep;
}

struct Lambda1 {
    double value = 0.0;
    double error_bound = 0.0;
};

/// Smallest positive eigenvalue of the normalized Laplacian I - A/k of a
/// connected k-regular graph, i.e. 1 - mu_2/k with mu_2 the largest
/// adjacency eigenvalue strictly below k.
inline Lambda1 lambda1(const graphs::MultiGraph& g, double tol = 1e-9, int dense_cap = 4096) {
    if (g.n < 2) throw DomainError("lambda1: need at least two vertices");
    if (!graphs::connectivity_and_bipartition(g).connected)
        throw NotConnected("lambda1: graph not connected");
    auto k = g.regular_degree();
    if (!k) throw NotRegular("lambda1: graph not regular");
    auto rep = adjacency_spectrum(g, tol, dense_cap);
    if (std::abs(rep.eigenvalues.front() - *k) > rep.error_bound + 1e-12)
        throw StructuralError("lambda1: top eigenvalue is not k");
    double mu2 = rep.eigenvalues.at(1); // multiplicity of k is 1 on connected input
    return {1.0 - mu2 / *k, rep.error_bound / *k};
}

enum class CertStatus { CertifiedTrue, CertifiedFalse, FloatOnly };

struct Certification {
    CertStatus status = CertStatus::FloatOnly;
    std::string reason;    // for CertifiedFalse
    bool boundary = false; // an eigenvalue sits exactly on the threshold
    std::optional<double> estimate;
    std::optional<double> error_bound;
};

/// Expansive <=> lambda_1 > 1/2 <=> exactly one adjacency eigenvalue >= k/2
/// (namely k) and none equal to k/2.  Decided by exact inertia at shift k/2
/// within the cap; float estimate with bound above it.
inline Certification certify_expansive(const graphs::MultiGraph& g, int exact_cap = 512,
                                       int dense_cap = 4096) {
    if (!graphs::connectivity_and_bipartition(g).connected)
        throw NotConnected("certify_expansive: graph not connected");
    auto k = g.regular_degree();
    if (!k) throw NotRegular("certify_expansive: graph not regular");

    if (g.n <= exact_cap) {
        auto cert = inertia(adjacency_matrix(g), Rational::of(*k, 2), exact_cap);
        if (cert.n_pos == 1 && cert.n_zero == 0) return {CertStatus::CertifiedTrue};
        if (cert.n_pos == 0)
            throw StructuralError("certify_expansive: k not counted above k/2");
        if (cert.n_pos > 1)
            return {CertStatus::CertifiedFalse, "an eigenvalue exceeds k/2 (lambda1 < 1/2)"};
        return {CertStatus::CertifiedFalse,
                "an eigenvalue equals k/2 exactly (lambda1 = 1/2, not > 1/2)", true};
    }
    auto l1 = lambda1(g, 1e-9, dense_cap);
    return {CertStatus::FloatOnly, "", false, l1.value, l1.error_bound};
}

/// Ramanujan <=> every eigenvalue mu with mu^2 > 4(k-1) is extremal (+-k).
/// Exact test: n_pos of inertia(A^2 - 4(k-1) I, 0) equals 2 if bipartite,
/// else 1.  k = 2 is all-boundary and certified true by convention.
inline Certification certify_ramanujan(const graphs::MultiGraph& g, int exact_cap = 512,
                                       int dense_cap = 4096) {
    auto conn = graphs::connectivity_and_bipartition(g);
    if (!conn.connected) throw NotConnected("certify_ramanujan: graph not connected");
    auto k = g.regular_degree();
    if (!k) throw NotRegular("certify_ramanujan: graph not regular");
    if (*k == 2) return {CertStatus::CertifiedTrue};

    if (g.n <= exact_cap) {
        auto a = adjacency_matrix(g);
        const int n = g.n;
        IntMatrix b(n, std::vector<long long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (a[i][l] == 0) continue;
                for (int j = 0; j < n; ++j) b[i][j] += a[i][l] * a[l][j];
            }
        for (int i = 0; i < n; ++i) b[i][i] -= 4 * (*k - 1);
        auto cert = inertia(b, Rational::of(0), exact_cap);
        int expected = conn.bipartition ? 2 : 1;
        if (cert.n_pos == expected) return {CertStatus::CertifiedTrue};
        return {CertStatus::CertifiedFalse,
                std::to_string(cert.n_pos - expected) +
                    " nontrivial eigenvalue(s) outside the Ramanujan interval"};
    }
    auto rep = adjacency_spectrum(g, 1e-9, dense_cap);
    double worst = 0.0;
    for (double mu : rep.eigenvalues) {
        if (std::abs(std::abs(mu) - *k) <= rep.error_bound + 1e-12) continue;
        worst = std::max(worst, std::abs(mu));
    }
    return {CertStatus::FloatOnly, "", false, worst, rep.error_bound};
}

/// 1 - 2 sqrt(k-1)/k > 1/2, decided by integers: k^2 - 16k + 16 > 0.
/// (Ramanujan implies expansive exactly when this holds, so from k = 15 on.)
inline bool ramanujan_implies_expansive(int k) {
    return static_cast<long long>(k) * k - 16LL * k + 16 > 0;
}

} // namespace forge::spectral
