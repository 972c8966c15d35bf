#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "soc/errors.hpp"
#include "soc/functor.hpp"
#include "soc/matrix.hpp"

namespace soc {

/// Exponential envelope |c_n| <= C * rho^n fitted at truncation.
struct GrowthProfile {
    double C = 0.0;
    double rho = 0.0;
    /// The max ratio |c_n|/rho^n landed on the last degree: the fit may
    /// underestimate asymptotic growth.
    bool max_at_truncation = false;
};

/**
 * Tight envelope: rho is the max of |c_n|^(1/n) over n >= 1 and C the max of
 * |c_n|/rho^n. A series with no positive-degree terms gets rho = 0 and
 * C = |c_0|; the all-zero series gets (0, 0).
 */
inline GrowthProfile fit_growth_profile(const PowerSeriesFunctor& f) {
    validate(f);
    GrowthProfile p;
    for (int n = 1; n <= f.truncation(); ++n) {
        const double c = f.coeff(n);
        if (c == 0.0) continue;
        p.rho = std::max(p.rho, std::exp(std::log(std::abs(c)) / n));
    }
    if (p.rho == 0.0) {
        p.C = std::abs(f.coeff(0));
        return p;
    }
    int argmax = 0;
    double rho_pow = 1.0;
    for (int n = 0; n <= f.truncation(); ++n) {
        const double ratio = std::abs(f.coeff(n)) / rho_pow;
        if (ratio > p.C) {
            p.C = ratio;
            argmax = n;
        }
        rho_pow *= p.rho;
    }
    p.max_at_truncation = argmax == f.truncation();
    return p;
}

/// gamma = K_pl * rho_inner * (1 + C_inner * rho_outer), the growth rate
/// bounding the coefficients of the composite; the composite's radius of
/// convergence is at least 1/gamma.
inline double composition_gamma(const GrowthProfile& outer, const GrowthProfile& inner,
                                double k_pl) {
    if (!(k_pl >= 1.0)) throw contract_violation("composition_gamma: k_pl must be >= 1");
    return k_pl * inner.rho * (1.0 + inner.C * outer.rho);
}

struct BinomialCheck {
    double lhs = 0.0;  // sum_{k=1..n} x^k C(n-1, k-1)
    double rhs = 0.0;  // x (1+x)^(n-1)
};

/// The closed form used to collapse the composition count: both sides of
/// sum_k x^k C(n-1,k-1) = x (1+x)^(n-1), evaluated independently.
inline BinomialCheck binomial_identity_check(double x, int n) {
    if (n < 1) throw contract_violation("binomial_identity_check: n must be at least 1");
    BinomialCheck out;
    double binom = 1.0;  // C(n-1, 0)
    double xpow = x;
    for (int k = 1; k <= n; ++k) {
        out.lhs += xpow * binom;
        binom = binom * (n - k) / k;  // C(n-1, k) from C(n-1, k-1)
        xpow *= x;
    }
    out.rhs = x * std::pow(1.0 + x, n - 1);
    return out;
}

// ---------------------------------------------------------------------------
// Admissibility
// ---------------------------------------------------------------------------

enum class PhiKind { linear, exponential, polynomial };

inline const char* to_string(PhiKind k) {
    switch (k) {
        case PhiKind::linear: return "linear";
        case PhiKind::exponential: return "exponential";
        case PhiKind::polynomial: return "polynomial";
    }
    return "?";
}

/// Nondecreasing growth bound Phi(r): C*r, e^(C*r), or sum_k coeffs[k] r^k.
struct Phi {
    PhiKind kind = PhiKind::linear;
    double c = 1.0;
    std::vector<double> coeffs;

    double operator()(double r) const {
        switch (kind) {
            case PhiKind::linear: return c * r;
            case PhiKind::exponential: return std::exp(c * r);
            case PhiKind::polynomial: {
                double acc = 0.0;
                for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
                    acc = acc * r + coeffs[static_cast<std::size_t>(k)];
                }
                return acc;
            }
        }
        return 0.0;
    }
};

struct AdmissibilitySample {
    std::string id;
    double spectral_size = 0.0;
    double lhs = 0.0;  // ||F(A)|| under the layer-sum convention
    double rhs = 0.0;  // Phi(r(A))
    bool pass = false;
};

struct AdmissibilityReport {
    PhiKind phi = PhiKind::linear;
    std::vector<AdmissibilitySample> samples;
    bool all_pass = true;
};

/**
 * Checks ||F(A)|| <= Phi(r(A)) sample by sample on normal inputs, with
 * ||F(A)|| = sum_n |c_n| ||A||^n (layer-sum convention; the layer norm is
 * |c_n| ||A||^n since operator norms multiply across tensor factors). A
 * non-normal input is rejected: off the normal class the norm is not
 * controlled by the spectrum, which is exactly the documented failure mode.
 */
inline AdmissibilityReport admissibility_check(const PowerSeriesFunctor& f,
                                               const std::vector<DenseMatrix>& inputs,
                                               const Phi& phi, double tol = 1e-9) {
    validate(f);
    AdmissibilityReport report;
    report.phi = phi.kind;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        const DenseMatrix& a = inputs[i];
        require_square(a, "admissibility_check");
        require_finite(a, "admissibility_check");
        if (!is_normal(a)) {
            throw contract_violation(
                "admissibility_check: input " + std::to_string(i) +
                " is not normal; spectral control fails off the normal class (a nilpotent "
                "block has spectrum {0} but positive norm)");
        }
        AdmissibilitySample s;
        s.id = "input_" + std::to_string(i);
        const double na = operator_norm(a).value;
        s.spectral_size = spectral_radius(a).value;
        double lhs = 0.0;
        for (int n = 0; n <= f.truncation(); ++n) lhs += std::abs(f.coeff(n)) * std::pow(na, n);
        s.lhs = lhs;
        s.rhs = phi(s.spectral_size);
        s.pass = s.lhs <= s.rhs + tol;
        if (!s.pass) report.all_pass = false;
        report.samples.push_back(std::move(s));
    }
    return report;
}

} // namespace soc
