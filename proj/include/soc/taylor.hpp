#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "soc/errors.hpp"
#include "soc/functor.hpp"
#include "soc/matrix.hpp"

namespace soc {

/// Norm convention for the direct sum of homogeneous layers; the object-level
/// norm is not forced by the theory, so both are exposed and selected
/// per-experiment. layer_sum (the l1 convention) is the default because it
/// reproduces the worked remainder values exactly.
enum class SumConvention { layer_sum, layer_max };

inline const char* to_string(SumConvention c) {
    return c == SumConvention::layer_sum ? "layer_sum" : "layer_max";
}

struct TowerConfig {
    SumConvention convention = SumConvention::layer_sum;
    int n_max = 16;
    int radius_window = 6;
    double tol = 1e-12;
};

inline void validate(const TowerConfig& cfg) {
    if (cfg.radius_window < 2 || cfg.n_max < cfg.radius_window) {
        throw contract_violation("TowerConfig: need n_max >= radius_window >= 2");
    }
    if (!(cfg.tol > 0.0)) throw contract_violation("TowerConfig: tol must be positive");
}

/// Degree-n stage of the tower: coefficients above n zeroed.
inline PowerSeriesFunctor truncate(const PowerSeriesFunctor& f, int n) {
    validate(f);
    PowerSeriesFunctor out = f;
    for (int i = n + 1; i <= out.truncation(); ++i) out.coeffs[static_cast<std::size_t>(i)] = 0.0;
    out.name = f.name + "_P" + std::to_string(std::max(n, 0));
    return out;
}

// ---------------------------------------------------------------------------
// Radius estimation
// ---------------------------------------------------------------------------

struct RadiusEstimate {
    double estimate = std::numeric_limits<double>::infinity();
    bool eventually_zero = false;  // trailing coefficients vanish: polynomial regime
    // Per-degree values 1/|c_n|^(1/n) over the trailing window, ascending n.
    std::vector<std::pair<int, double>> window_values;
};

/// 1/|c_n|^(1/n) via logs; n >= 1, c_n != 0.
inline double per_degree_radius(double coeff, int n) {
    return std::exp(-std::log(std::abs(coeff)) / static_cast<double>(n));
}

/**
 * Finite-truncation surrogate for the reciprocal limsup of |c_n|^(1/n). The
 * trailing window (the last radius_window degrees, clipped to the available
 * degrees >= 1) must consist entirely of nonzero coefficients; otherwise, the
 * series is classified as eventually zero and the estimate is +infinity. On a
 * fully nonzero window, the estimate is taken at the truncation degree and
 * the per-degree values are reported so monotone trends are visible.
 */
inline RadiusEstimate radius_estimate(const PowerSeriesFunctor& f, const TowerConfig& cfg) {
    validate(f);
    validate(cfg);
    const int top = f.truncation();
    RadiusEstimate out;
    if (top < 1) {
        out.eventually_zero = true;
        return out;
    }
    const int lo = std::max(1, top - cfg.radius_window + 1);
    bool all_nonzero = true;
    for (int n = lo; n <= top; ++n) {
        const double c = f.coeff(n);
        if (c == 0.0) {
            all_nonzero = false;
        } else {
            out.window_values.emplace_back(n, per_degree_radius(c, n));
        }
    }
    if (!all_nonzero) {
        out.eventually_zero = true;
        out.estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    out.estimate = out.window_values.back().second;
    return out;
}

// ---------------------------------------------------------------------------
// Remainders
// ---------------------------------------------------------------------------

struct RemainderValue {
    double value = 0.0;
    bool beyond_radius = false;  // r at or past the estimated radius; value still valid as a tail
};

/**
 * Norm of the tail of homogeneous layers past stage n at spectral size r:
 * sum_{k=n+1..N} |c_k| r^k under layer_sum, the max over the same range under
 * layer_max.
 */
inline RemainderValue remainder_norm(const PowerSeriesFunctor& f, int n, double r,
                                     const TowerConfig& cfg) {
    validate(f);
    if (!(r >= 0.0) || !std::isfinite(r)) {
        throw contract_violation("remainder_norm: spectral size r must be finite and >= 0");
    }
    RemainderValue out;
    const RadiusEstimate re = radius_estimate(f, cfg);
    out.beyond_radius = std::isfinite(re.estimate) && r >= re.estimate;

    double acc = 0.0;
    for (int k = n + 1; k <= f.truncation(); ++k) {
        const double c = f.coeff(k);
        if (c == 0.0) continue;
        const double term = std::abs(c) * std::pow(r, k);
        if (cfg.convention == SumConvention::layer_sum) {
            acc += term;
        } else {
            acc = std::max(acc, term);
        }
    }
    out.value = acc;
    return out;
}

// ---------------------------------------------------------------------------
// Convergence experiment
// ---------------------------------------------------------------------------

struct ConvergenceRow {
    int n = 0;
    double remainder = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double c_s = 0.0;          // sum_k |c_k| s^k
    double spectral_size = 0.0;
    double s = 0.0;
};

/**
 * For a normal input with spectral size r < s < (estimated radius), tabulates
 * the actual tail remainder against the bound C_s (r/s)^(n+1) with
 * C_s = sum_k |c_k| s^k, and checks the bound row by row. The truncated C_s
 * must carry a negligible tail (|c_N| s^N < 1e-12 C_s) or the experiment
 * refuses rather than under-report the constant.
 */
inline ConvergenceTable convergence_experiment(const PowerSeriesFunctor& f, const DenseMatrix& a,
                                               double s, const TowerConfig& cfg) {
    validate(f);
    validate(cfg);
    require_square(a, "convergence_experiment");
    require_finite(a, "convergence_experiment");
    if (!is_normal(a)) {
        throw contract_violation("convergence_experiment: input must be normal");
    }
    const double r = spectral_radius(a).value;
    if (!(r < s)) {
        throw contract_violation(
            "convergence_experiment: requires spectral size r < s, got r = " + std::to_string(r) +
            ", s = " + std::to_string(s));
    }
    const RadiusEstimate re = radius_estimate(f, cfg);
    if (!(s < re.estimate)) {
        throw contract_violation(
            "convergence_experiment: requires s strictly below the radius estimate " +
            std::to_string(re.estimate));
    }

    double c_s = 0.0;
    for (int k = 0; k <= f.truncation(); ++k) c_s += std::abs(f.coeff(k)) * std::pow(s, k);
    const double tail = std::abs(f.coeff(f.truncation())) * std::pow(s, f.truncation());
    if (!(tail < 1e-12 * c_s)) {
        throw contract_violation(
            "convergence_experiment: truncation tail too large for a trustworthy constant; "
            "increase the truncation degree");
    }

    ConvergenceTable table;
    table.c_s = c_s;
    table.spectral_size = r;
    table.s = s;
    for (int n = 0; n <= cfg.n_max; ++n) {
        ConvergenceRow row;
        row.n = n;
        row.remainder = remainder_norm(f, n, r, cfg).value;
        row.bound = c_s * std::pow(r / s, n + 1);
        row.ratio = row.bound > 0.0 ? row.remainder / row.bound : 0.0;
        if (row.remainder > row.bound + cfg.tol) {
            throw contract_violation("convergence_experiment: remainder exceeded its bound at n = " +
                                     std::to_string(n) + "; this signals an implementation bug");
        }
        table.rows.push_back(row);
    }
    return table;
}

// ---------------------------------------------------------------------------
// Reconstruction round-trip
// ---------------------------------------------------------------------------

namespace detail {

/// Bjorck-Pereyra solve of the primal Vandermonde system
/// sum_j c_j x_i^j = y_i for distinct nodes x_i.
inline std::vector<double> vandermonde_solve(const std::vector<double>& x,
                                             std::vector<double> y) {
    const int n = static_cast<int>(x.size()) - 1;
    for (int k = 0; k <= n - 1; ++k) {
        for (int i = n; i >= k + 1; --i) {
            y[static_cast<std::size_t>(i)] =
                (y[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i - 1)]) /
                (x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - k - 1)]);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        for (int i = k; i <= n - 1; ++i) {
            y[static_cast<std::size_t>(i)] -=
                x[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(i + 1)];
        }
    }
    return y;
}

/// Gautschi-style bound: cond_inf(V) <= ||V||_inf * max_i prod_{j != i} (1+|x_j|)/|x_i-x_j|.
inline double vandermonde_condition_estimate(const std::vector<double>& x) {
    const std::size_t m = x.size();
    double vinf = 0.0;
    for (double xi : x) {
        double row = 0.0, p = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            row += std::abs(p);
            p *= xi;
        }
        vinf = std::max(vinf, row);
    }
    double inv = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            p *= (1.0 + std::abs(x[j])) / std::abs(x[i] - x[j]);
        }
        inv = std::max(inv, p);
    }
    return vinf * inv;
}

} // namespace detail

/**
 * Recovers c_0..c_{n_max} of the degree-n_max stage of f from scalar probe
 * evaluations: the stage is evaluated at n_max+1 distinct positive 1x1
 * inputs and the Vandermonde system is solved. Probe sets whose condition
 * estimate exceeds 1e12 are rejected.
 */
inline PowerSeriesFunctor reconstruct_roundtrip(const PowerSeriesFunctor& f,
                                                const std::vector<double>& probes, int n_max) {
    validate(f);
    if (n_max < 0) throw contract_violation("reconstruct_roundtrip: n_max must be nonnegative");
    if (static_cast<int>(probes.size()) != n_max + 1) {
        throw contract_violation("reconstruct_roundtrip: need exactly n_max+1 probes");
    }
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (!(probes[i] > 0.0) || !std::isfinite(probes[i])) {
            throw contract_violation("reconstruct_roundtrip: probes must be positive and finite");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (probes[i] == probes[j]) {
                throw contract_violation("reconstruct_roundtrip: probes must be distinct");
            }
        }
    }
    const double cond = detail::vandermonde_condition_estimate(probes);
    if (cond > 1e12) {
        throw conditioning_error("reconstruct_roundtrip: probe set condition estimate " +
                                 std::to_string(cond) + " exceeds 1e12");
    }

    std::vector<double> y(probes.size(), 0.0);
    for (std::size_t i = 0; i < probes.size(); ++i) {
        // Scalar evaluation of the degree-n_max stage at the 1x1 probe.
        double acc = 0.0;
        for (int k = n_max; k >= 0; --k) acc = acc * probes[i] + f.coeff(k);
        y[i] = acc;
    }
    PowerSeriesFunctor out;
    out.coeffs = detail::vandermonde_solve(probes, std::move(y));
    out.name = f.name + "_reconstructed";
    out.reduced = out.coeffs[0] == 0.0;
    return out;
}

} // namespace soc
