#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "soc/errors.hpp"
#include "soc/partitions.hpp"

namespace soc {

using BigRat = boost::multiprecision::cpp_rational;

/**
 * Symmetric sequence collapsed to per-degree data: an integer dimension and a
 * nonnegative weight per degree n = 0..max_degree. Dimensions carry the
 * combinatorial content; weights carry the norm content. Degrees above
 * max_degree are implicitly zero.
 */
struct SymSeq {
    struct Entry {
        BigInt dim = 0;
        double weight = 0.0;
    };

    int max_degree = 0;
    std::vector<Entry> entries;  // size max_degree + 1
    bool reduced = false;

    const Entry& at(int n) const {
        static const Entry zero{};
        if (n < 0 || n > max_degree) return zero;
        return entries[static_cast<std::size_t>(n)];
    }

    /// dim 1 / weight 1 in every degree 1..N (reduced).
    static SymSeq ones(int max_degree) {
        SymSeq s{max_degree, std::vector<Entry>(static_cast<std::size_t>(max_degree) + 1), true};
        for (int n = 1; n <= max_degree; ++n) s.entries[static_cast<std::size_t>(n)] = {1, 1.0};
        return s;
    }

    /// The plethysm unit: dim 1 / weight 1 in degree 1 only.
    static SymSeq unit(int max_degree) {
        SymSeq s{max_degree, std::vector<Entry>(static_cast<std::size_t>(max_degree) + 1), true};
        if (max_degree >= 1) s.entries[1] = {1, 1.0};
        return s;
    }

    /// Concentrated in a single degree.
    static SymSeq concentrated(int degree, BigInt dim, double weight, int max_degree) {
        SymSeq s{max_degree, std::vector<Entry>(static_cast<std::size_t>(max_degree) + 1),
                 degree != 0};
        if (degree >= 0 && degree <= max_degree) {
            s.entries[static_cast<std::size_t>(degree)] = {std::move(dim), weight};
        }
        return s;
    }
};

inline void validate(const SymSeq& s) {
    if (s.max_degree < 0 || s.entries.size() != static_cast<std::size_t>(s.max_degree) + 1) {
        throw validation_error("SymSeq: entries must cover degrees 0..max_degree");
    }
    for (const auto& e : s.entries) {
        if (e.dim < 0) throw validation_error("SymSeq: dimensions must be nonnegative");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw validation_error("SymSeq: weights must be finite and nonnegative");
        }
    }
    if (s.reduced && (s.entries[0].dim != 0 || s.entries[0].weight != 0.0)) {
        throw validation_error("SymSeq: reduced sequence must have zero entry at degree 0");
    }
}

inline bool is_reduced_data(const SymSeq& s) {
    return s.entries.empty() || (s.entries[0].dim == 0 && s.entries[0].weight == 0.0);
}

inline bool operator==(const SymSeq::Entry& a, const SymSeq::Entry& b) {
    return a.dim == b.dim && a.weight == b.weight;
}

/**
 * Operadic plethysm by the set-partition sum: for every degree n,
 *
 *   dim (a o b)_n = sum over partitions pi of [n] of
 *                   dim a_{|pi|} * prod_{P in pi} dim b_{|P|},
 *
 * and identically for weights. The inner sequence must be reduced (no degree-0
 * component); degree 0 of the result is the degree-0 entry of `a` alone.
 * Enumeration runs in lexicographic restricted-growth order so weighted sums
 * are reproducible.
 */
inline SymSeq plethysm(const SymSeq& a, const SymSeq& b, int n_max) {
    validate(a);
    validate(b);
    if (n_max < 0) throw contract_violation("plethysm: n_max must be nonnegative");
    if (!is_reduced_data(b)) {
        throw contract_violation(
            "plethysm: inner sequence must be reduced (zero degree-0 entry); nullary "
            "components are not supported");
    }
    if (n_max > kPartitionCap) {
        throw capacity_error("plethysm: n_max = " + std::to_string(n_max) +
                             " exceeds the partition enumeration cap");
    }

    SymSeq out{n_max, std::vector<SymSeq::Entry>(static_cast<std::size_t>(n_max) + 1), false};
    out.entries[0] = a.at(0);  // the empty partition has zero blocks
    std::vector<int> block_sizes;
    for (int n = 1; n <= n_max; ++n) {
        BigInt dim_acc = 0;
        double weight_acc = 0.0;
        block_sizes.assign(static_cast<std::size_t>(n), 0);
        for_each_set_partition(n, [&](const std::vector<int>& rgs) {
            int k = 0;
            for (std::size_t i = 0; i < rgs.size(); ++i) {
                const int blk = rgs[i];
                if (blk + 1 > k) k = blk + 1;
                block_sizes[static_cast<std::size_t>(blk)] += 1;
            }
            const SymSeq::Entry& outer = a.at(k);
            if (outer.dim != 0) {
                BigInt term = outer.dim;
                for (int j = 0; j < k; ++j) term *= b.at(block_sizes[static_cast<std::size_t>(j)]).dim;
                dim_acc += term;
            }
            if (outer.weight != 0.0) {
                double term = outer.weight;
                for (int j = 0; j < k; ++j) term *= b.at(block_sizes[static_cast<std::size_t>(j)]).weight;
                weight_acc += term;
            }
            for (int j = 0; j < k; ++j) block_sizes[static_cast<std::size_t>(j)] = 0;
        });
        out.entries[static_cast<std::size_t>(n)] = {dim_acc, weight_acc};
    }
    out.reduced = is_reduced_data(out);
    return out;
}

// ---------------------------------------------------------------------------
// Exponential generating functions: the independent composition oracle
// ---------------------------------------------------------------------------

/// Truncated EGF with coefficients a_n = dim(n)/n! (exact rationals) or
/// weight(n)/n! (doubles). Purely a brute-force oracle for plethysm.
template <class T>
struct Egf {
    int max_degree = 0;
    std::vector<T> coeffs;  // size max_degree + 1
};

namespace detail {

template <class T>
std::vector<T> poly_mul_trunc(const std::vector<T>& p, const std::vector<T>& q, int n_max) {
    std::vector<T> out(static_cast<std::size_t>(n_max) + 1, T(0));
    for (int i = 0; i <= n_max && i < static_cast<int>(p.size()); ++i) {
        if (p[static_cast<std::size_t>(i)] == T(0)) continue;
        const int jmax = std::min<int>(n_max - i, static_cast<int>(q.size()) - 1);
        for (int j = 0; j <= jmax; ++j) {
            out[static_cast<std::size_t>(i + j)] +=
                p[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

} // namespace detail

/**
 * Formal composition outer(inner(x)) truncated at n_max, by Horner-style
 * substitution. Requires inner constant term zero.
 */
template <class T>
Egf<T> egf_compose(const Egf<T>& outer, const Egf<T>& inner, int n_max) {
    if (inner.coeffs.empty() || !(inner.coeffs[0] == T(0))) {
        throw contract_violation("egf_compose: inner constant term must be zero");
    }
    if (n_max < 0) throw contract_violation("egf_compose: n_max must be nonnegative");
    std::vector<T> acc(static_cast<std::size_t>(n_max) + 1, T(0));
    const int top = std::min<int>(outer.max_degree, static_cast<int>(outer.coeffs.size()) - 1);
    for (int k = top; k >= 0; --k) {
        acc = detail::poly_mul_trunc(acc, inner.coeffs, n_max);
        acc[0] += outer.coeffs[static_cast<std::size_t>(k)];
    }
    return Egf<T>{n_max, std::move(acc)};
}

inline Egf<BigRat> egf_from_dims(const SymSeq& s) {
    Egf<BigRat> e{s.max_degree, std::vector<BigRat>(static_cast<std::size_t>(s.max_degree) + 1)};
    BigInt fact = 1;
    for (int n = 0; n <= s.max_degree; ++n) {
        if (n > 0) fact *= n;
        e.coeffs[static_cast<std::size_t>(n)] = BigRat(s.at(n).dim, fact);
    }
    return e;
}

inline Egf<double> egf_from_weights(const SymSeq& s) {
    Egf<double> e{s.max_degree, std::vector<double>(static_cast<std::size_t>(s.max_degree) + 1)};
    double fact = 1.0;
    for (int n = 0; n <= s.max_degree; ++n) {
        if (n > 0) fact *= n;
        e.coeffs[static_cast<std::size_t>(n)] = s.at(n).weight / fact;
    }
    return e;
}

} // namespace soc
