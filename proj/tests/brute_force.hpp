// Test-only reference: explicit Kronecker-product state and loop partial trace.
// Shares nothing with the library beyond std::complex.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace bf {

using cplx = std::complex<double>;
using Vec = std::vector<cplx>;
using Mat = std::vector<std::vector<cplx>>;

inline Vec kron(const Vec& a, const Vec& b) {
    Vec out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
    return out;
}

inline Vec basis(std::size_t dim, std::size_t k) {
    Vec v(dim);
    v[k] = 1.0;
    return v;
}

inline void axpy(cplx a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

// Moon (x) qubit (x) partner; qubit 0 = e, 1 = g; partner 0 = vacuum.
inline Vec three_branch_state(double theta, cplx c_e, const std::vector<cplx>& c_vec) {
    const std::size_t P = c_vec.size() + 1;
    const Vec m1 = basis(2, 0), m2 = basis(2, 1), e = basis(2, 0), g = basis(2, 1);
    Vec psi(4 * P);
    axpy(std::cos(theta) * c_e, kron(m1, kron(e, basis(P, 0))), psi);
    for (std::size_t n = 1; n < P; ++n) axpy(std::cos(theta) * c_vec[n - 1], kron(m1, kron(g, basis(P, n))), psi);
    axpy(std::sin(theta), kron(m2, kron(g, basis(P, 0))), psi);
    return psi;
}

// Reduced density matrix of subsystem `keep` of a 3-party vector with dims d.
inline Mat reduced(const Vec& psi, std::array<std::size_t, 3> d, int keep) {
    const std::size_t dk = d[keep];
    Mat rho(dk, std::vector<cplx>(dk));
    for (std::size_t a = 0; a < d[0]; ++a)
        for (std::size_t b = 0; b < d[1]; ++b)
            for (std::size_t c = 0; c < d[2]; ++c) {
                const std::array<std::size_t, 3> idx{a, b, c};
                for (std::size_t k2 = 0; k2 < dk; ++k2) {
                    auto idx2 = idx;
                    idx2[keep] = k2;
                    const cplx x = psi[(idx[0] * d[1] + idx[1]) * d[2] + idx[2]];
                    const cplx y = psi[(idx2[0] * d[1] + idx2[1]) * d[2] + idx2[2]];
                    rho[idx[keep]][k2] += x * std::conj(y);
                }
            }
    return rho;
}

inline double purity(const Mat& rho) {
    double s = 0.0;
    for (const auto& row : rho)
        for (const auto& x : row) s += std::norm(x);
    return s;
}

inline double schmidt_weight(const Vec& psi, std::array<std::size_t, 3> d, int keep) {
    return 1.0 / purity(reduced(psi, d, keep));
}

// Eigenvalues of a 2x2 Hermitian matrix, descending.
inline std::array<double, 2> eig2(const Mat& r) {
    const double tr = (r[0][0] + r[1][1]).real();
    const double det = (r[0][0] * r[1][1] - r[0][1] * r[1][0]).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

}  // namespace bf
