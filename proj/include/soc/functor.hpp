#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "soc/errors.hpp"
#include "soc/matrix.hpp"
#include "soc/partitions.hpp"

namespace soc {

/**
 * A power-series endofunctor F(A) = (+)_n c_n * A^(x n), collapsed to its
 * coefficient sequence. Coefficient c_n is the canonically normalized n-th
 * derivative norm carrier: |c_n| is the degree-n derivative norm.
 */
struct PowerSeriesFunctor {
    std::string name;
    std::vector<double> coeffs;  // c_0 .. c_N
    bool reduced = false;

    int truncation() const { return static_cast<int>(coeffs.size()) - 1; }

    double coeff(int n) const {
        if (n < 0 || n >= static_cast<int>(coeffs.size())) return 0.0;
        return coeffs[static_cast<std::size_t>(n)];
    }
};

inline void validate(const PowerSeriesFunctor& f) {
    if (f.coeffs.empty()) throw validation_error("PowerSeriesFunctor: empty coefficient list");
    for (double c : f.coeffs) {
        if (!std::isfinite(c)) throw validation_error("PowerSeriesFunctor: non-finite coefficient");
    }
    if (f.reduced && f.coeffs[0] != 0.0) {
        throw validation_error("PowerSeriesFunctor: reduced functor must have c_0 = 0");
    }
}

enum class FunctorKind {
    identity,
    constant,
    quadratic,
    exponential,
    geometric,
    polynomial,
    factorial,
};

inline const char* to_string(FunctorKind k) {
    switch (k) {
        case FunctorKind::identity: return "identity";
        case FunctorKind::constant: return "constant";
        case FunctorKind::quadratic: return "quadratic";
        case FunctorKind::exponential: return "exponential";
        case FunctorKind::geometric: return "geometric";
        case FunctorKind::polynomial: return "polynomial";
        case FunctorKind::factorial: return "factorial";
    }
    return "?";
}

/**
 * Canonical instances. identity -> c_1 = 1; exponential -> c_n = 1/n!;
 * geometric -> c_n = 1; factorial -> c_n = n! (guarded at N <= 20);
 * polynomial -> the given coefficients zero-padded to N.
 */
inline PowerSeriesFunctor make_canonical(FunctorKind kind, int truncation,
                                         double constant_value = 0.0,
                                         const std::vector<double>& poly_coeffs = {}) {
    if (truncation < 1) throw contract_violation("make_canonical: truncation must be at least 1");
    PowerSeriesFunctor f;
    f.name = to_string(kind);
    f.coeffs.assign(static_cast<std::size_t>(truncation) + 1, 0.0);
    switch (kind) {
        case FunctorKind::identity:
            f.coeffs[1] = 1.0;
            break;
        case FunctorKind::constant:
            f.coeffs[0] = constant_value;
            break;
        case FunctorKind::quadratic:
            if (truncation < 2) throw contract_violation("make_canonical: quadratic needs N >= 2");
            f.coeffs[2] = 1.0;
            break;
        case FunctorKind::exponential: {
            double fact = 1.0;
            f.coeffs[0] = 1.0;
            for (int n = 1; n <= truncation; ++n) {
                fact *= n;
                f.coeffs[static_cast<std::size_t>(n)] = 1.0 / fact;
            }
            break;
        }
        case FunctorKind::geometric:
            std::fill(f.coeffs.begin(), f.coeffs.end(), 1.0);
            break;
        case FunctorKind::polynomial: {
            if (poly_coeffs.empty()) {
                throw contract_violation("make_canonical: polynomial needs coefficients");
            }
            if (static_cast<int>(poly_coeffs.size()) - 1 > truncation) {
                throw contract_violation("make_canonical: polynomial degree exceeds truncation");
            }
            std::copy(poly_coeffs.begin(), poly_coeffs.end(), f.coeffs.begin());
            break;
        }
        case FunctorKind::factorial: {
            if (truncation > 20) {
                throw contract_violation("make_canonical: factorial truncation above 20 overflows");
            }
            double fact = 1.0;
            f.coeffs[0] = 1.0;
            for (int n = 1; n <= truncation; ++n) {
                fact *= n;
                f.coeffs[static_cast<std::size_t>(n)] = fact;
            }
            break;
        }
    }
    f.reduced = f.coeffs[0] == 0.0;
    validate(f);
    return f;
}

/// Copy with the constant term dropped; the reduced version used as an inner
/// composition factor.
inline PowerSeriesFunctor reduce(const PowerSeriesFunctor& f) {
    PowerSeriesFunctor out = f;
    out.coeffs[0] = 0.0;
    out.reduced = true;
    if (out.name.rfind("reduced-", 0) != 0) out.name = "reduced-" + out.name;
    return out;
}

// ---------------------------------------------------------------------------
// Block evaluation
// ---------------------------------------------------------------------------

/**
 * The homogeneous layers of F at a concrete input: layer n is the d^n-dim
 * block c_n * A^(x n), layer 0 the 1x1 scalar c_0. layer_norms holds the
 * computed operator norm of each layer.
 */
struct BlockEvaluation {
    std::size_t base_dim = 0;
    std::vector<DenseMatrix> layers;
    std::vector<double> layer_norms;
};

inline BlockEvaluation evaluate(const PowerSeriesFunctor& f, const DenseMatrix& a, int n_max) {
    validate(f);
    require_square(a, "evaluate");
    require_finite(a, "evaluate");
    if (n_max < 0) throw contract_violation("evaluate: n_max must be nonnegative");

    BlockEvaluation ev;
    ev.base_dim = a.rows();
    for (int n = 0; n <= n_max; ++n) {
        const double c = f.coeff(n);
        DenseMatrix layer =
            n == 0 ? DenseMatrix::scalar(c)
                   : scale(c, tensor_power(a, static_cast<std::size_t>(n),
                                           "evaluate: layer degree " + std::to_string(n)));
        ev.layer_norms.push_back(operator_norm(layer).value);
        ev.layers.push_back(std::move(layer));
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Composition
// ---------------------------------------------------------------------------

namespace detail {

template <class T>
T factorial_as(int n) {
    T out(1);
    for (int i = 2; i <= n; ++i) out *= T(i);
    return out;
}

} // namespace detail

/**
 * Coefficients of the composite series by the set-partition sum
 *
 *   c_n(f o g) = (1/n!) * sum over partitions pi of [n] of
 *                |pi|! c_{|pi|}(f) * prod_{B in pi} |B|! c_{|B|}(g).
 *
 * This normalization makes the result equal the n-th Taylor coefficient of
 * the scalar composition f(g(x)); compose_series_substitution recomputes the
 * same numbers by direct polynomial substitution and the two must agree.
 * Requires g constant-term-free. Generic over the coefficient ring so tests
 * can run it exactly over rationals.
 */
template <class T>
std::vector<T> compose_series_partition_sum(const std::vector<T>& f, const std::vector<T>& g,
                                            int n_max) {
    if (g.empty() || !(g[0] == T(0))) {
        throw contract_violation(
            "compose: inner series must be reduced (zero constant coefficient)");
    }
    if (n_max < 0) throw contract_violation("compose: n_max must be nonnegative");
    if (n_max > kPartitionCap) {
        throw capacity_error("compose: degree " + std::to_string(n_max) +
                             " exceeds the partition enumeration cap");
    }
    auto coeff = [](const std::vector<T>& v, int i) {
        return i >= 0 && i < static_cast<int>(v.size()) ? v[static_cast<std::size_t>(i)] : T(0);
    };
    std::vector<T> out(static_cast<std::size_t>(n_max) + 1, T(0));
    out[0] = coeff(f, 0);  // f(g(0)) = f(0)
    std::vector<int> block_sizes;
    for (int n = 1; n <= n_max; ++n) {
        T acc(0);
        block_sizes.assign(static_cast<std::size_t>(n), 0);
        for_each_set_partition(n, [&](const std::vector<int>& rgs) {
            int k = 0;
            for (std::size_t i = 0; i < rgs.size(); ++i) {
                const int blk = rgs[i];
                if (blk + 1 > k) k = blk + 1;
                block_sizes[static_cast<std::size_t>(blk)] += 1;
            }
            const T ck = coeff(f, k);
            if (!(ck == T(0))) {
                T term = detail::factorial_as<T>(k) * ck;
                for (int j = 0; j < k; ++j) {
                    const int s = block_sizes[static_cast<std::size_t>(j)];
                    term *= detail::factorial_as<T>(s) * coeff(g, s);
                }
                acc += term;
            }
            for (int j = 0; j < k; ++j) block_sizes[static_cast<std::size_t>(j)] = 0;
        });
        out[static_cast<std::size_t>(n)] = acc / detail::factorial_as<T>(n);
    }
    return out;
}

/// Taylor coefficients of f(g(x)) by truncated Horner substitution; the
/// independent route against which the partition sum is checked.
template <class T>
std::vector<T> compose_series_substitution(const std::vector<T>& f, const std::vector<T>& g,
                                           int n_max) {
    if (g.empty() || !(g[0] == T(0))) {
        throw contract_violation(
            "compose oracle: inner series must be reduced (zero constant coefficient)");
    }
    if (n_max < 0) throw contract_violation("compose oracle: n_max must be nonnegative");
    std::vector<T> acc(static_cast<std::size_t>(n_max) + 1, T(0));
    for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) {
        // acc <- acc * g + f_k, truncated at n_max
        std::vector<T> next(static_cast<std::size_t>(n_max) + 1, T(0));
        for (int i = 0; i <= n_max; ++i) {
            if (acc[static_cast<std::size_t>(i)] == T(0)) continue;
            const int jmax = std::min<int>(n_max - i, static_cast<int>(g.size()) - 1);
            for (int j = 0; j <= jmax; ++j) {
                next[static_cast<std::size_t>(i + j)] +=
                    acc[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
            }
        }
        next[0] += f[static_cast<std::size_t>(k)];
        acc = std::move(next);
    }
    return acc;
}

inline std::vector<double> scalar_compose_oracle(const std::vector<double>& f_coeffs,
                                                 const std::vector<double>& g_coeffs, int n_max) {
    return compose_series_substitution<double>(f_coeffs, g_coeffs, n_max);
}

inline PowerSeriesFunctor compose_coeffs(const PowerSeriesFunctor& f, const PowerSeriesFunctor& g,
                                         int n_max) {
    validate(f);
    validate(g);
    PowerSeriesFunctor out;
    out.coeffs = compose_series_partition_sum<double>(f.coeffs, g.coeffs, n_max);
    out.name = "(" + f.name + " o " + g.name + ")";
    out.reduced = out.coeffs[0] == 0.0;
    return out;
}

} // namespace soc
