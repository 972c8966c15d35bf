#include <catch2/catch_amalgamated.hpp>

#include "soc/partitions.hpp"
#include "soc/random.hpp"
#include "soc/symseq.hpp"

using namespace soc;

namespace {

BigInt factorial_big(int n) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

bool dims_equal(const SymSeq& a, const SymSeq& b, int up_to) {
    for (int n = 0; n <= up_to; ++n) {
        if (a.at(n).dim != b.at(n).dim) return false;
    }
    return true;
}

} // namespace

TEST_CASE("plethysm of the ones sequence gives Bell numbers") {
    const SymSeq ones = SymSeq::ones(6);
    const SymSeq composed = plethysm(ones, ones, 6);
    const BigInt expected[] = {0, 1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 6; ++n) {
        REQUIRE(composed.at(n).dim == expected[n]);
    }

    // Cross-checked against the EGF oracle: coefficients times n!.
    const auto egf = egf_compose(egf_from_dims(ones), egf_from_dims(ones), 6);
    for (int n = 1; n <= 6; ++n) {
        REQUIRE(BigRat(composed.at(n).dim, 1) ==
                egf.coeffs[static_cast<std::size_t>(n)] * BigRat(factorial_big(n), 1));
    }
}

TEST_CASE("unit laws") {
    Rng rng(7);
    const SymSeq a = random_reduced_symseq(rng, 6);
    const SymSeq i = SymSeq::unit(6);
    REQUIRE(dims_equal(plethysm(a, i, 6), a, 6));
    REQUIRE(dims_equal(plethysm(i, a, 6), a, 6));
    // Weights obey the unit laws too.
    const SymSeq ai = plethysm(a, i, 6);
    for (int n = 1; n <= 6; ++n) {
        REQUIRE(ai.at(n).weight == Catch::Approx(a.at(n).weight).margin(1e-12));
    }
}

TEST_CASE("quadratic composed with quadratic concentrates in degree 4 with dim 3") {
    const SymSeq quad = SymSeq::concentrated(2, 1, 1.0, 4);
    const SymSeq out = plethysm(quad, quad, 4);
    for (int n = 0; n <= 4; ++n) {
        if (n == 4) {
            REQUIRE(out.at(n).dim == BigInt(3));
        } else {
            REQUIRE(out.at(n).dim == BigInt(0));
        }
    }
}

TEST_CASE("plethysm requires a reduced inner sequence") {
    SymSeq bad = SymSeq::ones(4);
    bad.reduced = false;
    bad.entries[0] = {1, 1.0};
    REQUIRE_THROWS_AS(plethysm(SymSeq::ones(4), bad, 4), contract_violation);
    REQUIRE_THROWS_AS(plethysm(SymSeq::ones(4), SymSeq::ones(4), 13), capacity_error);
}

TEST_CASE("plethysm/EGF agreement on random reduced pairs") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const int deg = 4 + trial % 5;  // 4..8
        const SymSeq a = random_reduced_symseq(rng, deg);
        const SymSeq b = random_reduced_symseq(rng, deg);
        const SymSeq composed = plethysm(a, b, deg);
        const auto egf = egf_compose(egf_from_dims(a), egf_from_dims(b), deg);
        BigInt fact = 1;
        for (int n = 0; n <= deg; ++n) {
            if (n > 0) fact *= n;
            REQUIRE(BigRat(composed.at(n).dim, 1) ==
                    egf.coeffs[static_cast<std::size_t>(n)] * BigRat(fact, 1));
        }
    }
}

TEST_CASE("associativity on integer dims up to degree 7") {
    Rng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        const SymSeq a = random_reduced_symseq(rng, 7);
        const SymSeq b = random_reduced_symseq(rng, 7);
        const SymSeq c = random_reduced_symseq(rng, 7);
        const SymSeq left = plethysm(plethysm(a, b, 7), c, 7);
        const SymSeq right = plethysm(a, plethysm(b, c, 7), 7);
        REQUIRE(dims_equal(left, right, 7));
    }
}

TEST_CASE("degree support bound: supp(a) <= m, supp(b) <= k gives supp <= m*k") {
    const SymSeq a = SymSeq::concentrated(3, 2, 1.0, 3);
    const SymSeq b = SymSeq::concentrated(2, 1, 1.0, 2);
    const SymSeq out = plethysm(a, b, 8);
    for (int n = 0; n <= 8; ++n) {
        if (n > 6) REQUIRE(out.at(n).dim == BigInt(0));
    }
    REQUIRE(out.at(6).dim > 0);
}

TEST_CASE("egf_compose basics") {
    // outer = x: composition returns the inner series unchanged.
    Egf<BigRat> x{3, {BigRat(0), BigRat(1), BigRat(0), BigRat(0)}};
    Egf<BigRat> g{3, {BigRat(0), BigRat(1), BigRat(1, 2), BigRat(1, 6)}};
    const auto out = egf_compose(x, g, 3);
    for (int n = 0; n <= 3; ++n) {
        REQUIRE(out.coeffs[static_cast<std::size_t>(n)] == g.coeffs[static_cast<std::size_t>(n)]);
    }

    // x^2 composed with x^2 = x^4.
    Egf<BigRat> sq{2, {BigRat(0), BigRat(0), BigRat(1)}};
    const auto quartic = egf_compose(sq, sq, 4);
    for (int n = 0; n <= 4; ++n) {
        REQUIRE(quartic.coeffs[static_cast<std::size_t>(n)] == (n == 4 ? BigRat(1) : BigRat(0)));
    }

    // e^x - 1 into itself: Bell numbers after multiplying by n!.
    Egf<BigRat> expm1{5, {}};
    expm1.coeffs.resize(6);
    BigInt fact = 1;
    for (int n = 1; n <= 5; ++n) {
        fact *= n;
        expm1.coeffs[static_cast<std::size_t>(n)] = BigRat(1, fact);
    }
    const auto bell = egf_compose(expm1, expm1, 5);
    const BigInt expected[] = {0, 1, 2, 5, 15, 52};
    fact = 1;
    for (int n = 1; n <= 5; ++n) {
        fact *= n;
        REQUIRE(bell.coeffs[static_cast<std::size_t>(n)] * BigRat(fact, 1) ==
                BigRat(expected[n], 1));
    }

    Egf<BigRat> not_reduced{1, {BigRat(1), BigRat(1)}};
    REQUIRE_THROWS_AS(egf_compose(x, not_reduced, 3), contract_violation);
}

TEST_CASE("weighted plethysm tracks the float-mode EGF oracle") {
    Rng rng(53);
    for (int trial = 0; trial < 10; ++trial) {
        const SymSeq a = random_reduced_symseq(rng, 6);
        const SymSeq b = random_reduced_symseq(rng, 6);
        const SymSeq composed = plethysm(a, b, 6);
        const auto egf = egf_compose(egf_from_weights(a), egf_from_weights(b), 6);
        double fact = 1.0;
        for (int n = 0; n <= 6; ++n) {
            if (n > 0) fact *= n;
            REQUIRE(composed.at(n).weight ==
                    Catch::Approx(egf.coeffs[static_cast<std::size_t>(n)] * fact).margin(1e-9));
        }
    }
}

TEST_CASE("symseq validation") {
    SymSeq s = SymSeq::ones(3);
    s.entries[2].weight = -1.0;
    REQUIRE_THROWS_AS(validate(s), validation_error);
    s.entries[2].weight = 1.0;
    s.reduced = true;
    s.entries[0] = {2, 0.0};
    REQUIRE_THROWS_AS(validate(s), validation_error);
}
