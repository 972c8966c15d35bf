#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "soc/capacity.hpp"
#include "soc/errors.hpp"
#include "soc/functor.hpp"
#include "soc/matrix.hpp"
#include "soc/partitions.hpp"

namespace soc {

/**
 * Cross-effects of power-series functors. The arity-k cross-effect at
 * homogeneous degree m is computed two independent ways:
 *
 *   - inclusion-exclusion over input subsets (dimension counting),
 *   - an explicit direct sum over surjections [m] -> [k] (both a dimension
 *     oracle and the concrete block matrix).
 *
 * Alternating sums live only in integer dimension space; the evaluated object
 * is always the explicit block-diagonal sum, which never subtracts.
 */

inline constexpr std::size_t kMaxCrossEffectArity = 12;       // 2^k subsets
inline constexpr std::size_t kMaxSurjectionDegree = 10;       // k^m enumeration
inline constexpr double kNormalityTolFactor = 1e-8;

struct CrossEffectDegree {
    int degree = 0;
    BigInt dim = 0;
    double norm = 0.0;
    double radius = 0.0;
    bool evaluated = false;  // block was materialized and measured
};

struct CrossEffectReport {
    std::size_t arity = 0;
    std::vector<CrossEffectDegree> per_degree;
    double total_norm = 0.0;
    bool negligible = false;
};

/// Per degree m <= n_max: [c_m != 0] * sum_{S subset of [k]} (-1)^(k-|S|) (sum_{i in S} d_i)^m.
inline std::vector<BigInt> cross_effect_dims(const PowerSeriesFunctor& f,
                                             const std::vector<std::size_t>& input_dims,
                                             int n_max) {
    validate(f);
    const std::size_t k = input_dims.size();
    if (k < 1) throw contract_violation("cross_effect_dims: arity must be at least 1");
    for (std::size_t d : input_dims) {
        if (d < 1) throw contract_violation("cross_effect_dims: input dimensions must be >= 1");
    }
    if (k > kMaxCrossEffectArity) {
        throw capacity_error("cross_effect_dims: arity " + std::to_string(k) +
                             " exceeds the subset enumeration cap");
    }
    if (n_max < 0) throw contract_violation("cross_effect_dims: n_max must be nonnegative");

    std::vector<BigInt> dims(static_cast<std::size_t>(n_max) + 1, 0);
    for (int m = 0; m <= n_max; ++m) {
        if (f.coeff(m) == 0.0) continue;
        BigInt acc = 0;
        for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
            std::size_t total = 0;
            int bits = 0;
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (std::size_t{1} << i)) {
                    total += input_dims[i];
                    ++bits;
                }
            }
            BigInt power = 1;  // total^m, with 0^0 = 1
            for (int j = 0; j < m; ++j) power *= static_cast<unsigned long long>(total);
            if ((static_cast<int>(k) - bits) % 2 == 0) {
                acc += power;
            } else {
                acc -= power;
            }
        }
        // The alternating sum counts surjection weights and can never go
        // negative for a power-series functor.
        if (acc < 0) {
            throw error("cross_effect_dims: negative dimension at degree " + std::to_string(m) +
                        "; this signals an implementation bug");
        }
        dims[static_cast<std::size_t>(m)] = acc;
    }
    return dims;
}

namespace detail {

/// Visits all surjections h: [m] -> [k] in lexicographic order of the tuple
/// (h(1),...,h(m)), values 0-based.
template <class F>
void for_each_surjection(int m, int k, F&& visit) {
    if (m < k || k < 1) return;
    double iterations = std::pow(static_cast<double>(k), static_cast<double>(m));
    if (m > static_cast<int>(kMaxSurjectionDegree) || iterations > 4e8) {
        throw capacity_error("surjection enumeration: k^m too large (m = " + std::to_string(m) +
                             ", k = " + std::to_string(k) + ")");
    }
    std::vector<int> h(static_cast<std::size_t>(m), 0);
    while (true) {
        unsigned covered = 0;
        for (int v : h) covered |= 1u << v;
        if (covered == (1u << k) - 1u) visit(const_cast<const std::vector<int>&>(h));
        int i = m - 1;
        while (i >= 0 && h[static_cast<std::size_t>(i)] == k - 1) --i;
        if (i < 0) return;
        h[static_cast<std::size_t>(i)] += 1;
        for (int j = i + 1; j < m; ++j) h[static_cast<std::size_t>(j)] = 0;
    }
}

} // namespace detail

/// Independent oracle: degree-m dimension as [c_m != 0] * sum over surjective
/// h: [m] -> [k] of prod_j d_{h(j)}.
inline std::vector<BigInt> surjection_oracle_dims(const PowerSeriesFunctor& f,
                                                  const std::vector<std::size_t>& input_dims,
                                                  int n_max) {
    validate(f);
    const int k = static_cast<int>(input_dims.size());
    if (k < 1) throw contract_violation("surjection_oracle_dims: arity must be at least 1");
    for (std::size_t d : input_dims) {
        if (d < 1) throw contract_violation("surjection_oracle_dims: input dimensions must be >= 1");
    }
    std::vector<BigInt> dims(static_cast<std::size_t>(n_max) + 1, 0);
    for (int m = 0; m <= n_max; ++m) {
        if (f.coeff(m) == 0.0 || m < k) continue;
        BigInt acc = 0;
        detail::for_each_surjection(m, k, [&](const std::vector<int>& h) {
            BigInt term = 1;
            for (int v : h) term *= static_cast<unsigned long long>(input_dims[static_cast<std::size_t>(v)]);
            acc += term;
        });
        dims[static_cast<std::size_t>(m)] = acc;
    }
    return dims;
}

/**
 * The degree-m block of the arity-k cross-effect: the direct sum over
 * surjections h of c_m * A_{h(1)} (x) ... (x) A_{h(m)}, block-diagonal in
 * lexicographic surjection order. Empty (0x0) when c_m = 0 or m < k.
 */
inline DenseMatrix cross_effect_evaluate(const PowerSeriesFunctor& f,
                                         const std::vector<DenseMatrix>& inputs, int degree) {
    validate(f);
    const int k = static_cast<int>(inputs.size());
    if (k < 1) throw contract_violation("cross_effect_evaluate: arity must be at least 1");
    for (const DenseMatrix& a : inputs) {
        require_square(a, "cross_effect_evaluate");
        require_finite(a, "cross_effect_evaluate");
    }
    const double c = f.coeff(degree);
    if (c == 0.0 || degree < k) return DenseMatrix(0, 0);

    // Pre-compute the total dimension and check capacity before building.
    std::size_t total_dim = 0;
    detail::for_each_surjection(degree, k, [&](const std::vector<int>& h) {
        std::size_t d = 1;
        for (int v : h) d *= inputs[static_cast<std::size_t>(v)].rows();
        total_dim += d;
    });
    require_entries(total_dim * total_dim,
                    "cross_effect_evaluate: degree " + std::to_string(degree));

    DenseMatrix out(total_dim, total_dim);
    std::size_t offset = 0;
    detail::for_each_surjection(degree, k, [&](const std::vector<int>& h) {
        DenseMatrix block = DenseMatrix::identity(1);
        for (int v : h) block = kron(block, inputs[static_cast<std::size_t>(v)]);
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j) {
                out(offset + i, offset + j) = c * block(i, j);
            }
        offset += block.rows();
    });
    return out;
}

/**
 * Dimensions, norms and spectral radii of the cross-effect blocks for every
 * degree up to n_max. Throws capacity_error when a nonzero degree cannot be
 * materialized within the entry cap, since negligibility cannot be certified
 * without its radius.
 */
inline CrossEffectReport build_cross_effect_report(const PowerSeriesFunctor& f,
                                                   const std::vector<DenseMatrix>& inputs,
                                                   int n_max, double tol) {
    std::vector<std::size_t> input_dims;
    input_dims.reserve(inputs.size());
    for (const DenseMatrix& a : inputs) input_dims.push_back(a.rows());
    const std::vector<BigInt> dims = cross_effect_dims(f, input_dims, n_max);

    CrossEffectReport report;
    report.arity = inputs.size();
    report.negligible = true;
    for (int m = 0; m <= n_max; ++m) {
        CrossEffectDegree row;
        row.degree = m;
        row.dim = dims[static_cast<std::size_t>(m)];
        if (row.dim != 0) {
            const DenseMatrix block = cross_effect_evaluate(f, inputs, m);
            row.norm = operator_norm(block).value;
            row.radius = spectral_radius(block).value;
            row.evaluated = true;
            report.total_norm += row.norm;
            if (row.radius > tol) report.negligible = false;
        } else {
            row.evaluated = true;  // the zero block needs no materialization
        }
        report.per_degree.push_back(std::move(row));
    }
    return report;
}

/// True iff every evaluated block's spectral radius is at or below tol.
inline bool is_spectrally_negligible(const CrossEffectReport& report, double tol) {
    for (const CrossEffectDegree& d : report.per_degree) {
        if (!d.evaluated) {
            throw contract_violation(
                "is_spectrally_negligible: report contains unevaluated degrees");
        }
        if (d.radius > tol) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Excision check
// ---------------------------------------------------------------------------

struct ExcisionSample {
    std::size_t index = 0;
    double max_radius = 0.0;
    double max_norm = 0.0;
    double norm_threshold = 0.0;
    bool negligible = false;    // all block radii <= tol
    bool norm_bounded = false;  // all block norms <= tol * (1 + sum ||A_i||)
    bool agree = false;
};

struct ExcisionReport {
    int n = 0;
    double tol = 0.0;
    int degree_cap = 0;
    std::vector<ExcisionSample> samples;
    bool equivalence_holds = false;
};

/**
 * Tests, on concrete normal samples, the biconditional between spectral
 * negligibility of the (n+1)-st cross-effect and smallness of its block
 * norms. Inputs must be normal (the spectrally controlled class); a
 * non-normal input is a contract violation. Degrees are examined from n+1 up
 * to degree_cap (0 = as far as the functor truncation and the entry cap
 * allow).
 */
inline ExcisionReport excision_check(const PowerSeriesFunctor& f, int n,
                                     const std::vector<std::vector<DenseMatrix>>& sample_tuples,
                                     double tol, int degree_cap = 0) {
    validate(f);
    if (n < 0) throw contract_violation("excision_check: n must be nonnegative");
    const int arity = n + 1;

    ExcisionReport report;
    report.n = n;
    report.tol = tol;
    report.equivalence_holds = true;

    for (std::size_t s = 0; s < sample_tuples.size(); ++s) {
        const std::vector<DenseMatrix>& tuple = sample_tuples[s];
        if (static_cast<int>(tuple.size()) != arity) {
            throw contract_violation("excision_check: sample " + std::to_string(s) +
                                     " does not have arity n+1");
        }
        double norm_sum = 0.0;
        for (const DenseMatrix& a : tuple) {
            if (!is_normal(a, kNormalityTolFactor)) {
                throw contract_violation(
                    "excision_check: sample " + std::to_string(s) +
                    " contains a non-normal input; the criterion is stated on the "
                    "normal (spectrally controlled) class");
            }
            norm_sum += operator_norm(a).value;
        }

        // Largest feasible degree for this tuple under the entry cap.
        int top = degree_cap > 0 ? std::min(degree_cap, f.truncation()) : f.truncation();
        ExcisionSample sample;
        sample.index = s;
        sample.norm_threshold = tol * (1.0 + norm_sum);
        sample.negligible = true;
        sample.norm_bounded = true;
        int examined = arity - 1;
        int nonzero_examined = 0;
        bool nonzero_in_range = false;
        for (int m = arity; m <= top; ++m) {
            if (f.coeff(m) == 0.0) {
                examined = m;
                continue;
            }
            nonzero_in_range = true;
            DenseMatrix block;
            try {
                block = cross_effect_evaluate(f, tuple, m);
            } catch (const capacity_error&) {
                break;  // stop at the entry cap; lower degrees already decide the sample
            }
            examined = m;
            ++nonzero_examined;
            if (block.rows() == 0) continue;
            const double nrm = operator_norm(block).value;
            const double rad = spectral_radius(block).value;
            sample.max_norm = std::max(sample.max_norm, nrm);
            sample.max_radius = std::max(sample.max_radius, rad);
            if (rad > tol) sample.negligible = false;
            if (nrm > sample.norm_threshold) sample.norm_bounded = false;
        }
        if (nonzero_in_range && nonzero_examined == 0) {
            throw capacity_error("excision_check: no nonzero degree of cr_" +
                                 std::to_string(arity) + " fits the entry cap for sample " +
                                 std::to_string(s));
        }
        report.degree_cap = std::max(report.degree_cap, examined);
        sample.agree = sample.negligible == sample.norm_bounded;
        if (!sample.agree) report.equivalence_holds = false;
        report.samples.push_back(sample);
    }
    return report;
}

} // namespace soc
