#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "soc/capacity.hpp"
#include "soc/errors.hpp"

namespace soc {

using complexd = std::complex<double>;

/**
 * Dense complex matrix in row-major order.
 *
 * Square matrices of this type are the objects of the ambient normed
 * category: endomaps of finite-dimensional complex vector spaces under the
 * operator norm. Values are immutable in spirit; all operations below are
 * pure functions returning fresh matrices. The 0x0 matrix is legal and acts
 * as the zero object (norm 0, spectral radius 0).
 */
class DenseMatrix {
public:
    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, complexd{}) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static DenseMatrix diagonal(const std::vector<complexd>& d) {
        DenseMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    /// 1x1 matrix holding a single scalar.
    static DenseMatrix scalar(complexd v) {
        DenseMatrix m(1, 1);
        m(0, 0) = v;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t entry_count() const { return a_.size(); }
    bool square() const { return rows_ == cols_; }
    bool empty() const { return a_.empty(); }

    complexd& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const complexd& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    const std::vector<complexd>& data() const { return a_; }
    std::vector<complexd>& data() { return a_; }

    bool finite() const {
        for (const complexd& z : a_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complexd> a_;
};

inline void require_square(const DenseMatrix& m, const std::string& what) {
    if (!m.square()) {
        throw shape_error(what + ": matrix must be square, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

inline void require_finite(const DenseMatrix& m, const std::string& what) {
    if (!m.finite()) throw validation_error(what + ": matrix has non-finite entries");
}

inline bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.entry_count(); ++i) {
        if (std::abs(a.data()[i] - b.data()[i]) > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

inline DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw shape_error("add: shape mismatch");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entry_count(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

inline DenseMatrix sub(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw shape_error("sub: shape mismatch");
    }
    DenseMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < out.entry_count(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

inline DenseMatrix scale(complexd t, const DenseMatrix& a) {
    DenseMatrix out = a;
    for (complexd& z : out.data()) z *= t;
    return out;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw shape_error("matmul: inner dimensions differ");
    DenseMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complexd aik = a(i, k);
            if (aik == complexd{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

inline double frobenius_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (const complexd& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Tensor and coproduct structure
// ---------------------------------------------------------------------------

/// Kronecker product a (x) b. Operator norms multiply: ||a(x)b|| = ||a||*||b||.
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    require_finite(a, "kron");
    require_finite(b, "kron");
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    require_entries(rows * cols, "kron");
    DenseMatrix out(rows, cols);
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const complexd v = a(ia, ja);
            if (v == complexd{}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb) {
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
                }
        }
    return out;
}

/// Block-diagonal sum diag(a, b); the coproduct of endomaps. The spectrum is
/// the union, so the spectral radius is the max of the two.
inline DenseMatrix direct_sum(const DenseMatrix& a, const DenseMatrix& b) {
    require_square(a, "direct_sum");
    require_square(b, "direct_sum");
    const std::size_t n = a.rows() + b.rows();
    require_entries(n * n, "direct_sum");
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
    return out;
}

/// n-fold Kronecker power; n = 0 gives the 1x1 identity. `context` is used to
/// name the offending degree in capacity errors.
inline DenseMatrix tensor_power(const DenseMatrix& a, std::size_t n,
                                const std::string& context = "tensor_power") {
    require_square(a, context);
    const std::size_t d = a.rows();
    const std::size_t cap = max_entries();
    // dim = d^n with overflow-safe growth check.
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d != 0 && dim > cap / (d == 0 ? 1 : d)) {
            throw capacity_error(context + ": degree " + std::to_string(n) +
                                 " tensor power exceeds entry cap");
        }
        dim *= d;
    }
    if (dim != 0 && dim > cap / dim) {
        throw capacity_error(context + ": degree " + std::to_string(n) +
                             " tensor power exceeds entry cap");
    }
    DenseMatrix out = DenseMatrix::identity(1);
    for (std::size_t i = 0; i < n; ++i) out = kron(out, a);
    return out;
}

// ---------------------------------------------------------------------------
// Norm and spectral estimates
// ---------------------------------------------------------------------------

struct NormEstimate {
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
};

/// Both estimates for one matrix. Invariant: spectral_radius <= operator_norm
/// up to the iteration tolerance.
struct NormReport {
    double operator_norm = 0.0;
    double spectral_radius = 0.0;
    std::size_t iterations = 0;
    bool converged = true;
};

namespace detail {

// Deterministic uniform doubles in [0,1), independent of the standard
// library's distribution implementations.
class XorShiftUniform {
public:
    explicit XorShiftUniform(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    double next() {
        // xorshift64* step
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return static_cast<double>((x * 0x2545F4914F6CDD1DULL) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

inline std::vector<complexd> unit_start_vector(std::size_t n, std::uint64_t seed) {
    XorShiftUniform u(seed);
    std::vector<complexd> v(n);
    double s = 0.0;
    for (auto& z : v) {
        z = complexd(2.0 * u.next() - 1.0, 2.0 * u.next() - 1.0);
        s += std::norm(z);
    }
    s = std::sqrt(s);
    if (s > 0.0) {
        for (auto& z : v) z /= s;
    }
    return v;
}

inline std::vector<complexd> apply(const DenseMatrix& m, const std::vector<complexd>& v) {
    std::vector<complexd> out(m.rows(), complexd{});
    for (std::size_t i = 0; i < m.rows(); ++i) {
        complexd acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline double l2(const std::vector<complexd>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
}

} // namespace detail

/**
 * Largest singular value by power iteration on a* a with a deterministic
 * start vector. Converges when successive eigenvalue estimates of a* a agree
 * to `tol` relative; `converged` is false when max_iter is hit first.
 */
inline NormEstimate operator_norm(const DenseMatrix& a, double tol = 1e-13,
                                  std::size_t max_iter = 20000) {
    require_square(a, "operator_norm");
    require_finite(a, "operator_norm");
    if (tol <= 0.0) throw contract_violation("operator_norm: tol must be positive");
    if (a.rows() == 0) return {0.0, 0, true};

    const DenseMatrix b = matmul(adjoint(a), a);
    for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
        std::vector<complexd> v =
            detail::unit_start_vector(a.rows(), 0x5eed0000u + attempt);
        double lambda_prev = -1.0;
        for (std::size_t it = 1; it <= max_iter; ++it) {
            std::vector<complexd> w = detail::apply(b, v);
            const double nw = detail::l2(w);
            if (nw == 0.0) break; // v in the kernel of a* a; retry once
            for (auto& z : w) z /= nw;
            v = std::move(w);
            const double lambda = nw;
            if (lambda_prev >= 0.0 &&
                std::abs(lambda - lambda_prev) <= tol * std::max(1.0, lambda)) {
                return {std::sqrt(lambda), it, true};
            }
            lambda_prev = lambda;
        }
        if (lambda_prev >= 0.0) return {std::sqrt(lambda_prev), max_iter, false};
    }
    return {0.0, 1, true}; // a* a annihilated both starts: zero matrix
}

/**
 * Spectral radius lim ||a^(2^k)||^(1/2^k) by repeated squaring with per-step
 * rescaling. Exact zero is detected for nilpotent inputs. On non-convergence
 * within max_iter squarings the last estimate is returned with
 * converged=false; callers must treat that value as lower-confidence.
 */
inline NormEstimate spectral_radius(const DenseMatrix& a, double tol = 1e-10,
                                    std::size_t max_iter = 80) {
    require_square(a, "spectral_radius");
    require_finite(a, "spectral_radius");
    if (a.rows() == 0) return {0.0, 0, true};
    max_iter = std::min<std::size_t>(max_iter, 900);

    DenseMatrix m = a;
    double log_scale = 0.0;  // a^(2^k) = m * exp(log_scale)
    double pow2 = 1.0;
    double est_prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= max_iter; ++k) {
        const double s = frobenius_norm(m);
        if (s == 0.0) return {0.0, k, true};
        DenseMatrix n = scale(1.0 / s, m);
        m = matmul(n, n);
        log_scale = 2.0 * (log_scale + std::log(s));
        pow2 *= 2.0;
        const double nm = frobenius_norm(m);
        if (nm == 0.0) return {0.0, k, true};
        const double est = std::exp((std::log(nm) + log_scale) / pow2);
        if (std::abs(est - est_prev) <= tol * std::max(1.0, est)) {
            return {est, k, true};
        }
        est_prev = est;
    }
    return {est_prev, max_iter, false};
}

inline NormReport norm_report(const DenseMatrix& a, double tol = 1e-10,
                              std::size_t max_iter = 20000) {
    const NormEstimate n = operator_norm(a, std::min(tol, 1e-12), max_iter);
    const NormEstimate r = spectral_radius(a, tol);
    return {n.value, r.value, n.iterations + r.iterations, n.converged && r.converged};
}

/// ||a* a - a a*|| <= tol_factor * ||a||^2, the working definition of
/// normality for validating spectrally controlled inputs.
inline bool is_normal(const DenseMatrix& a, double tol_factor = 1e-8) {
    require_square(a, "is_normal");
    if (a.rows() == 0) return true;
    const DenseMatrix comm = sub(matmul(adjoint(a), a), matmul(a, adjoint(a)));
    const double na = operator_norm(a).value;
    return operator_norm(comm).value <= tol_factor * std::max(na * na, 1e-300);
}

// ---------------------------------------------------------------------------
// Symmetrization
// ---------------------------------------------------------------------------

namespace detail {

/// Index remap on (C^d)^(x n) induced by permuting tensor factors: slot k of
/// the output takes factor perm_inv[k] of the input.
inline std::size_t permute_tensor_index(std::size_t idx, const std::vector<std::size_t>& perm_inv,
                                        std::size_t n, std::size_t d) {
    std::vector<std::size_t> digits(n);
    for (std::size_t j = n; j-- > 0;) {
        digits[j] = idx % d;
        idx /= d;
    }
    std::size_t out = 0;
    for (std::size_t k = 0; k < n; ++k) out = out * d + digits[perm_inv[k]];
    return out;
}

} // namespace detail

/**
 * Group average (1/n!) sum_pi P_pi t P_pi^{-1} over the symmetric group
 * permuting the n tensor factors of (C^d)^(x n). Idempotent projection onto
 * the equivariant part.
 */
inline DenseMatrix symmetrize(const DenseMatrix& t, std::size_t n, std::size_t d,
                              std::size_t factorial_cap = 8) {
    require_square(t, "symmetrize");
    require_finite(t, "symmetrize");
    if (n == 0) throw contract_violation("symmetrize: n must be at least 1");
    if (n > factorial_cap) {
        throw capacity_error("symmetrize: n = " + std::to_string(n) +
                             " exceeds the factorial cap of " + std::to_string(factorial_cap));
    }
    std::size_t dim = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (d != 0 && dim > max_entries() / d) {
            throw capacity_error("symmetrize: d^n exceeds entry cap");
        }
        dim *= d;
    }
    if (t.rows() != dim) {
        throw shape_error("symmetrize: matrix dimension " + std::to_string(t.rows()) +
                          " is not d^n = " + std::to_string(dim));
    }
    if (n == 1) return t;

    DenseMatrix acc(dim, dim);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> perm_inv(n);
    std::vector<std::size_t> row_map(dim);
    std::size_t count = 0;
    do {
        for (std::size_t j = 0; j < n; ++j) perm_inv[perm[j]] = j;
        for (std::size_t r = 0; r < dim; ++r) {
            row_map[r] = detail::permute_tensor_index(r, perm_inv, n, d);
        }
        for (std::size_t r = 0; r < dim; ++r)
            for (std::size_t c = 0; c < dim; ++c) acc(row_map[r], row_map[c]) += t(r, c);
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return scale(1.0 / static_cast<double>(count), acc);
}

} // namespace soc
