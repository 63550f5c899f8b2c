#include <doctest.h>

#include <cmath>
#include <random>

#include "lnsum/errors.hpp"
#include "lnsum/factorize.hpp"
#include "oracles.hpp"

using namespace lnsum;

namespace {

Eigen::MatrixXd random_pd_matrix(int n, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a(i, j) = dist(eng);
    return a.transpose() * a + Eigen::MatrixXd::Identity(n, n);
}

} // namespace

TEST_CASE("smallest eigenvalue") {
    CHECK(check_positive_definite(Eigen::Matrix2d::Identity()) == doctest::Approx(1.0));

    // 2x2 characteristic-polynomial oracle: (tr - sqrt(tr^2 - 4 det)) / 2
    Eigen::Matrix2d cov;
    cov << 26.1471, 11.7554, 11.7554, 13.0736;
    const double tr = cov.trace();
    const double det = cov.determinant();
    const double oracle = 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
    CHECK(oracle == doctest::Approx(6.15970943).epsilon(1e-8));
    CHECK(check_positive_definite(cov) == doctest::Approx(oracle).epsilon(1e-12));

    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 2.0, 2.0, 1.0;
    CHECK(check_positive_definite(indefinite) == doctest::Approx(-1.0));

    Eigen::Matrix2d asym;
    asym << 1.0, 0.5, 0.2, 1.0;
    CHECK_THROWS_AS(check_positive_definite(asym), ValidationError);
}

TEST_CASE("Cholesky of a diagonal matrix takes square roots") {
    const Eigen::MatrixXd L = cholesky_lower(Eigen::Vector2d(4.0, 9.0).asDiagonal());
    CHECK(L(0, 0) == 2.0);
    CHECK(L(1, 1) == 3.0);
    CHECK(L(0, 1) == 0.0);
    CHECK(L(1, 0) == 0.0);
}

TEST_CASE("2x2 Cholesky matches the closed form") {
    const double s1 = 5.1134, s2 = 3.6157, rho = 0.635811;
    Eigen::Matrix2d cov;
    cov << s1 * s1, rho * s1 * s2, rho * s1 * s2, s2 * s2;
    const Eigen::MatrixXd L = cholesky_lower(cov);
    CHECK(std::abs(L(0, 0) - s1) < 1e-12);
    CHECK(std::abs(L(1, 0) - rho * s2) < 1e-12);
    CHECK(std::abs(L(1, 1) - s2 * std::sqrt(1.0 - rho * rho)) < 1e-12);
    CHECK(L(0, 1) == 0.0);
}

TEST_CASE("random PD matrices reconstruct") {
    std::mt19937_64 eng(11);
    const Eigen::MatrixXd cov = random_pd_matrix(4, eng);
    const Eigen::MatrixXd L = cholesky_lower(cov);
    const double rel = (L * L.transpose() - cov).norm() / cov.norm();
    CHECK(rel < 1e-10);
    for (int i = 0; i < 4; ++i)
        CHECK(L(i, i) > 0.0);
}

TEST_CASE("pivot breakdown names the failing pivot") {
    Eigen::Matrix2d indefinite;
    indefinite << 1.0, 2.0, 2.0, 1.0;
    try {
        cholesky_lower(indefinite);
        FAIL("expected FactorizationError");
    } catch (const FactorizationError& e) {
        CHECK(e.pivot == 1);
    }
}

TEST_CASE("decorrelation identity up to n = 6") {
    std::mt19937_64 eng(23);
    for (int n = 2; n <= 6; ++n) {
        const Eigen::MatrixXd cov = random_pd_matrix(n, eng);
        const Eigen::MatrixXd L = cholesky_lower(cov);
        // (1/2) L^-1 cov L^-T should be (1/2) I
        const Eigen::MatrixXd inner =
            L.triangularView<Eigen::Lower>().solve(cov);
        const Eigen::MatrixXd z =
            0.5 * L.triangularView<Eigen::Lower>()
                      .solve(inner.transpose())
                      .transpose();
        const Eigen::MatrixXd target = 0.5 * Eigen::MatrixXd::Identity(n, n);
        CHECK((z - target).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("factorize fills the factor or rejects") {
    NormalSystem sys;
    sys.means = Eigen::Vector2d(0.0, 0.0);
    sys.cov = Eigen::Matrix2d();
    sys.cov << 26.1471, 11.7554, 11.7554, 13.0736;
    factorize(sys);
    REQUIRE(sys.factorized());
    CHECK((sys.chol * sys.chol.transpose() - sys.cov).norm() / sys.cov.norm() < 1e-12);

    NormalSystem bad;
    bad.means = Eigen::Vector2d(0.0, 0.0);
    bad.cov = Eigen::Matrix2d();
    bad.cov << 1.0, 2.0, 2.0, 1.0;
    try {
        factorize(bad);
        FAIL("expected NotPositiveDefiniteError");
    } catch (const NotPositiveDefiniteError& e) {
        CHECK(e.min_eigenvalue == doctest::Approx(-1.0));
    }
}
