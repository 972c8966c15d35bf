#pragma once

#include <cstdint>
#include <vector>

#include "soc/matrix.hpp"
#include "soc/symseq.hpp"

namespace soc {

/**
 * Deterministic generator for test and fixture inputs. Backed by the same
 * xorshift64* stream as the norm estimators so results are identical across
 * standard-library implementations.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : u_(seed) {}

    double uniform() { return u_.next(); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * u_.next(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(u_.next() * (hi - lo + 1));
    }
    complexd complex_uniform(double scale) {
        const double re = uniform(-scale, scale);
        const double im = uniform(-scale, scale);
        return {re, im};
    }

private:
    detail::XorShiftUniform u_;
};

/// Upper-triangular with complex entries; eigenvalues sit on the diagonal, so
/// max |diagonal| is an exact spectral-radius oracle.
inline DenseMatrix random_triangular(Rng& rng, std::size_t n, double scale = 1.0) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m(i, j) = rng.complex_uniform(scale);
    return m;
}

inline DenseMatrix random_dense(Rng& rng, std::size_t n, double scale = 1.0) {
    DenseMatrix m(n, n);
    for (auto& z : m.data()) z = rng.complex_uniform(scale);
    return m;
}

namespace detail {

/// Unitary factor from modified Gram-Schmidt on a random complex matrix.
inline DenseMatrix random_unitary(Rng& rng, std::size_t n) {
    DenseMatrix q(n, n);
    for (auto& z : q.data()) {
        z = complexd(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            complexd dot{};
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nrm += std::norm(q(i, j));
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nrm;
    }
    return q;
}

} // namespace detail

/// Normal matrix V D V* with random complex eigenvalues of modulus <= scale.
inline DenseMatrix random_normal_matrix(Rng& rng, std::size_t n, double scale = 1.0) {
    const DenseMatrix v = detail::random_unitary(rng, n);
    std::vector<complexd> eigs(n);
    for (auto& z : eigs) z = rng.complex_uniform(scale / 1.5);
    const DenseMatrix d = DenseMatrix::diagonal(eigs);
    return matmul(matmul(v, d), adjoint(v));
}

/// Reduced polynomial coefficients: c_0 = 0, the rest uniform in [-scale, scale].
inline std::vector<double> random_reduced_poly_coeffs(Rng& rng, int degree, double scale = 1.0) {
    std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int n = 1; n <= degree; ++n) c[static_cast<std::size_t>(n)] = rng.uniform(-scale, scale);
    return c;
}

/// Reduced symmetric sequence with small random integer dims and weights.
inline SymSeq random_reduced_symseq(Rng& rng, int max_degree, int dim_hi = 3,
                                    double weight_hi = 2.0) {
    SymSeq s{max_degree, std::vector<SymSeq::Entry>(static_cast<std::size_t>(max_degree) + 1),
             true};
    for (int n = 1; n <= max_degree; ++n) {
        s.entries[static_cast<std::size_t>(n)] = {BigInt(rng.uniform_int(0, dim_hi)),
                                                  rng.uniform(0.0, weight_hi)};
    }
    return s;
}

} // namespace soc
