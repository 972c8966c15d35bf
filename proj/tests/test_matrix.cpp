#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <thread>

#include "soc/matrix.hpp"
#include "soc/random.hpp"

using namespace soc;

namespace {

DenseMatrix diag2(double a, double b) {
    return DenseMatrix::diagonal({complexd(a, 0.0), complexd(b, 0.0)});
}

double max_abs_diag(const DenseMatrix& m) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) mx = std::max(mx, std::abs(m(i, i)));
    return mx;
}

} // namespace

TEST_CASE("kron identities and diagonal norms") {
    const DenseMatrix i6 = kron(DenseMatrix::identity(2), DenseMatrix::identity(3));
    REQUIRE(approx_equal(i6, DenseMatrix::identity(6), 0.0));

    const DenseMatrix d = kron(diag2(1.0, 2.0), DenseMatrix::diagonal({complexd(3.0, 0.0)}));
    REQUIRE(d.rows() == 2);
    REQUIRE(d(0, 0) == complexd(3.0, 0.0));
    REQUIRE(d(1, 1) == complexd(6.0, 0.0));
    REQUIRE(operator_norm(d).value == Catch::Approx(6.0).margin(1e-12));
}

TEST_CASE("kron norm multiplies on random pairs") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix a = random_dense(rng, 2);
        const DenseMatrix b = random_dense(rng, 2);
        const double lhs = operator_norm(kron(a, b)).value;
        const double rhs = operator_norm(a).value * operator_norm(b).value;
        REQUIRE(lhs == Catch::Approx(rhs).margin(1e-8));
    }
}

TEST_CASE("kron capacity error above the cap") {
    const DenseMatrix a = DenseMatrix::identity(64);
    const DenseMatrix b = DenseMatrix::identity(64);
    // 4096^2 = 16.7M entries > 1e6
    REQUIRE_THROWS_AS(kron(a, b), capacity_error);
}

TEST_CASE("direct_sum basics") {
    const DenseMatrix z1(1, 1);
    const DenseMatrix z2 = direct_sum(z1, z1);
    REQUIRE(z2.rows() == 2);
    REQUIRE(frobenius_norm(z2) == 0.0);

    const DenseMatrix s = direct_sum(DenseMatrix::diagonal({complexd(0.5, 0)}),
                                     DenseMatrix::diagonal({complexd(0.25, 0)}));
    REQUIRE(spectral_radius(s).value == Catch::Approx(0.5).margin(1e-10));

    REQUIRE_THROWS_AS(direct_sum(DenseMatrix(2, 3), DenseMatrix(2, 2)), shape_error);
}

TEST_CASE("direct_sum radius is the max on random triangular pairs") {
    Rng rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const DenseMatrix a = random_triangular(rng, 3);
        const DenseMatrix b = random_triangular(rng, 4);
        const double expected = std::max(max_abs_diag(a), max_abs_diag(b));
        const double got = spectral_radius(direct_sum(a, b)).value;
        REQUIRE(got == Catch::Approx(expected).margin(1e-8));
    }
}

TEST_CASE("operator norm frozen cases") {
    REQUIRE(operator_norm(diag2(1.0, 2.0)).value == Catch::Approx(2.0).margin(1e-12));

    // Nilpotent Jordan block: singular values are {1, 0}.
    DenseMatrix j(2, 2);
    j(0, 1) = 1.0;
    const NormEstimate n = operator_norm(j);
    REQUIRE(n.value == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(n.converged);

    const NormEstimate z = operator_norm(DenseMatrix(3, 3));
    REQUIRE(z.value == 0.0);
    REQUIRE(z.converged);

    const NormEstimate e = operator_norm(DenseMatrix(0, 0));
    REQUIRE(e.value == 0.0);
    REQUIRE(e.converged);

    REQUIRE_THROWS_AS(operator_norm(DenseMatrix(2, 3)), shape_error);
    REQUIRE_THROWS_AS(operator_norm(diag2(1, 1), 0.0), contract_violation);
}

TEST_CASE("spectral radius frozen cases") {
    REQUIRE(spectral_radius(diag2(0.5, -0.25)).value == Catch::Approx(0.5).margin(1e-9));

    DenseMatrix j(2, 2);
    j(0, 1) = 1.0;
    const NormEstimate r = spectral_radius(j);
    REQUIRE(r.value == 0.0);
    REQUIRE(r.converged);

    REQUIRE(spectral_radius(DenseMatrix(0, 0)).value == 0.0);

    // 1x1
    REQUIRE(spectral_radius(DenseMatrix::scalar(complexd(-0.7, 0.0))).value ==
            Catch::Approx(0.7).margin(1e-10));
}

TEST_CASE("spectral radius scaling law") {
    Rng rng(47);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix a = random_triangular(rng, 4);
        const double ra = spectral_radius(a).value;
        const double rt = spectral_radius(scale(complexd(-3.0, 0.0), a)).value;
        REQUIRE(rt == Catch::Approx(3.0 * ra).margin(1e-6 * std::max(1.0, 3.0 * ra)));
    }
}

TEST_CASE("gelfand matches the diagonal on triangular matrices") {
    Rng rng(59);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix a = random_triangular(rng, 5);
        REQUIRE(spectral_radius(a).value == Catch::Approx(max_abs_diag(a)).margin(1e-6));
    }
}

TEST_CASE("submultiplicativity and the spectral bound") {
    Rng rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix a = random_dense(rng, 3);
        const DenseMatrix b = random_dense(rng, 3);
        const double na = operator_norm(a).value;
        const double nb = operator_norm(b).value;
        REQUIRE(operator_norm(matmul(a, b)).value <= na * nb + 1e-8);
        REQUIRE(spectral_radius(a).value <= na + 1e-8);
    }
}

TEST_CASE("norm_report couples the two estimates") {
    Rng rng(83);
    const DenseMatrix a = random_dense(rng, 4);
    const NormReport rep = norm_report(a);
    REQUIRE(rep.spectral_radius <= rep.operator_norm + 1e-8);
    REQUIRE(rep.converged);
}

TEST_CASE("normality detector") {
    REQUIRE(is_normal(diag2(0.3, 0.5)));
    DenseMatrix j(2, 2);
    j(0, 1) = 1.0;
    REQUIRE_FALSE(is_normal(j));
    Rng rng(97);
    REQUIRE(is_normal(random_normal_matrix(rng, 4)));
}

TEST_CASE("symmetrize basics") {
    Rng rng(101);
    const DenseMatrix a = random_dense(rng, 2);
    const DenseMatrix b = random_dense(rng, 2);

    // n = 1: unchanged.
    REQUIRE(approx_equal(symmetrize(a, 1, 2), a, 0.0));

    // n = 2 on a (x) b: the two-element average.
    const DenseMatrix lhs = symmetrize(kron(a, b), 2, 2);
    const DenseMatrix rhs = scale(0.5, add(kron(a, b), kron(b, a)));
    REQUIRE(approx_equal(lhs, rhs, 1e-12));

    REQUIRE_THROWS_AS(symmetrize(DenseMatrix::identity(3), 2, 2), shape_error);
    REQUIRE_THROWS_AS(symmetrize(DenseMatrix::identity(1), 9, 1), capacity_error);
}

TEST_CASE("symmetrize is an idempotent projection commuting with factor swaps") {
    Rng rng(113);
    const DenseMatrix t = random_dense(rng, 8);  // 2^3
    const DenseMatrix s1 = symmetrize(t, 3, 2);
    const DenseMatrix s2 = symmetrize(s1, 3, 2);
    REQUIRE(approx_equal(s1, s2, 1e-10));

    // Commutes with the transposition of the first two factors,
    // built explicitly as a permutation matrix.
    DenseMatrix p(8, 8);
    for (std::size_t r = 0; r < 8; ++r) {
        const std::size_t d0 = r / 4, d1 = (r / 2) % 2, d2 = r % 2;
        const std::size_t pr = d1 * 4 + d0 * 2 + d2;
        p(pr, r) = 1.0;
    }
    REQUIRE(approx_equal(matmul(p, s1), matmul(s1, p), 1e-10));
}

TEST_CASE("operations are safe to run concurrently") {
    Rng rng(131);
    const DenseMatrix a = random_dense(rng, 4);
    const DenseMatrix b = random_triangular(rng, 4);
    const double na = operator_norm(a).value;
    const double rb = spectral_radius(b).value;

    std::vector<std::thread> workers;
    std::vector<int> bad(8, 0);
    for (int t = 0; t < 8; ++t) {
        workers.emplace_back([&, t] {
            for (int i = 0; i < 25; ++i) {
                if (operator_norm(a).value != na) bad[static_cast<std::size_t>(t)] = 1;
                if (spectral_radius(b).value != rb) bad[static_cast<std::size_t>(t)] = 1;
                if (!approx_equal(kron(a, b), kron(a, b), 0.0)) {
                    bad[static_cast<std::size_t>(t)] = 1;
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (int flag : bad) REQUIRE(flag == 0);
}

TEST_CASE("entry cap override through SOC_MAX_ENTRIES") {
    setenv("SOC_MAX_ENTRIES", "100", 1);
    REQUIRE_THROWS_AS(kron(DenseMatrix::identity(4), DenseMatrix::identity(4)), capacity_error);
    unsetenv("SOC_MAX_ENTRIES");
    REQUIRE_NOTHROW(kron(DenseMatrix::identity(4), DenseMatrix::identity(4)));
}
