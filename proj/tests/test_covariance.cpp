// test_covariance.cpp — sector blocks, squeezers, A values and eigenpairs

#include "support.hpp"
#include "tfd/covariance.hpp"
#include "tfd/errors.hpp"
#include "tfd/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace tfd;
using tfd::test::rel_close;

namespace {

bool close(const Mat2& a, const Mat2& b, double tol)
{
    return std::abs(a.m00 - b.m00) <= tol && std::abs(a.m01 - b.m01) <= tol &&
           std::abs(a.m10 - b.m10) <= tol && std::abs(a.m11 - b.m11) <= tol;
}

} // namespace

TEST_SUITE("covariance") {

TEST_CASE("symplectic form constant")
{
    CHECK(kSymplecticForm.det() == 1.0);
    const Mat2 sq = kSymplecticForm * kSymplecticForm;
    CHECK(close(sq, -1.0 * Mat2::identity(), 0.0));
    // every squeezer preserves it: U Omega U^T = Omega
    const Mat2 u = squeezer_matrix(0.9, Sign::minus, 0.3, 2.0, 4.1);
    CHECK(close(u * kSymplecticForm * u.transpose(), kSymplecticForm, 1e-14));
}

TEST_CASE("vacuum block")
{
    const CovarianceBlock a = vacuum_block(1.0, 1.0);
    CHECK(a.xx == 1.0);
    CHECK(a.xp == 0.0);
    CHECK(a.pp == 1.0);
    const CovarianceBlock b = vacuum_block(0.1, 1.0);
    CHECK(b.xx == doctest::Approx(10.0));
    CHECK(b.pp == doctest::Approx(0.1));
    CHECK(b.det() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(vacuum_block(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(vacuum_block(1.0, -1.0), ParameterError);
}

TEST_CASE("generator matrix")
{
    CHECK(close(k_generator_matrix(0.3, 2.0, 0.0), Mat2{1.0, 0.0, 0.0, -1.0}, 0.0));
    tfd::test::Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        const Mat2 k = k_generator_matrix(rng.log_uniform(1e-2, 1e2), rng.log_uniform(0.1, 10.0), rng.uniform(-100.0, 100.0));
        CHECK(close(k * k, Mat2::identity(), 1e-14));
        CHECK(std::abs(k.trace()) <= 1e-15);
    }
}

TEST_CASE("squeezer matrix")
{
    CHECK(close(squeezer_matrix(0.0, Sign::plus, 0.1, 1.0, 5.0), Mat2::identity(), 0.0));
    const double a = 0.8;
    CHECK(close(squeezer_matrix(a, Sign::plus, 0.1, 1.0, 0.0), Mat2{std::exp(a), 0.0, 0.0, std::exp(-a)}, 1e-15));
    CHECK(squeezer_matrix(a, Sign::minus, 0.2, 3.0, 1.7).det() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(squeezer_matrix(-0.1, Sign::plus, 0.1, 1.0, 0.0), ParameterError);

    // scaled-Taylor exponential of +-alpha K at alpha = 0.7, omega = 0.1, m = 1, t = 3
    const Mat2 up = squeezer_matrix(0.7, Sign::plus, 0.1, 1.0, 3.0);
    const Mat2 down = squeezer_matrix(0.7, Sign::minus, 0.1, 1.0, 3.0);
    CHECK(close(up, Mat2{1.9798716960542162, -2.2417681233754054, -0.022417681233754056, 0.53046631520766085}, 1e-12));
    CHECK(close(down, Mat2{0.53046631520766085, 2.2417681233754054, 0.022417681233754056, 1.9798716960542162}, 1e-12));
}

TEST_CASE("target block")
{
    const CovarianceBlock vac = vacuum_block(0.3, 2.0);
    const CovarianceBlock t0 = target_block(0.0, Sign::plus, 0.3, 2.0, 4.0);
    CHECK(t0.xx == doctest::Approx(vac.xx));
    CHECK(t0.xp == doctest::Approx(0.0));
    CHECK(t0.pp == doctest::Approx(vac.pp));

    const double a = 0.4, w = 0.3, m = 2.0;
    for (Sign s : {Sign::plus, Sign::minus}) {
        const CovarianceBlock b = target_block(a, s, w, m, 0.0);
        CHECK(b.xx == doctest::Approx(std::exp(2.0 * sign_value(s) * a) / (m * w)));
        CHECK(b.xp == 0.0);
        CHECK(b.pp == doctest::Approx(m * w * std::exp(-2.0 * sign_value(s) * a)));
    }

    // U G0 U^T by explicit products at alpha = 0.5, omega = 0.1, m = 2, t = 1.3, minus
    const Mat2 u = squeezer_matrix(0.5, Sign::minus, 0.1, 2.0, 1.3);
    const Mat2 product = u * vacuum_block(0.1, 2.0).matrix() * u.transpose();
    CHECK(close(target_block(0.5, Sign::minus, 0.1, 2.0, 1.3).matrix(), product, 1e-13));
}

TEST_CASE("property: closed-form target equals explicit product and has unit determinant")
{
    tfd::test::Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        // alpha <= 1.5 keeps xx pp below ~1e2, so an absolute 1e-12 on the
        // determinant is within double rounding of the cancellation.
        const double a = rng.uniform(0.0, 1.5);
        const double w = rng.log_uniform(1e-2, 1e1);
        const double m = rng.log_uniform(0.5, 2.0);
        const double t = rng.uniform(0.0, 100.0);
        const Sign s = rng.integer(0, 1) ? Sign::plus : Sign::minus;
        const CovarianceBlock g = target_block(a, s, w, m, t);
        const Mat2 u = squeezer_matrix(a, s, w, m, t);
        const Mat2 p = u * vacuum_block(w, m).matrix() * u.transpose();
        const double scale = std::max({std::abs(p.m00), std::abs(p.m01), std::abs(p.m11), 1.0});
        CHECK(close(g.matrix(), p, 1e-13 * scale));
        CHECK(std::abs(g.det() - 1.0) <= 1e-12);
        const Mat2 rel = relative_block(g, rng.log_uniform(0.1, 10.0), m);
        CHECK(std::abs(rel.det() - 1.0) <= 1e-12);
    }
}

TEST_CASE("relative block")
{
    const Mat2 id = relative_block(vacuum_block(0.7, 3.0), 0.7, 3.0);
    CHECK(close(id, Mat2::identity(), 1e-15));
    CHECK_THROWS_AS(relative_block(vacuum_block(0.7, 3.0), 0.0, 3.0), ParameterError);

    // half-trace of the explicit product at alpha = 0.3, omega = 0.1, omegaR = 1, t = 2, plus
    const Mat2 rel = relative_block(target_block(0.3, Sign::plus, 0.1, 1.0, 2.0), 1.0, 1.0);
    CHECK(std::abs(sector_A(0.3, 0.1, 1.0, Sign::plus, 2.0) - 0.5 * rel.trace()) <= 1e-13 * 0.5 * rel.trace());
}

TEST_CASE("sector values")
{
    // alpha = 0: (wR^2 + w^2)/(2 wR w), independent of t
    const double expect = (1.0 + 0.01) / (2.0 * 0.1);
    for (double t : {0.0, 3.0, 17.0}) {
        CHECK(sector_A(0.0, 0.1, 1.0, Sign::plus, t) == doctest::Approx(expect).epsilon(1e-15));
        CHECK(sector_A(0.0, 0.1, 1.0, Sign::minus, t) == doctest::Approx(expect).epsilon(1e-15));
    }
    // matched reference: cosh(2 alpha)
    for (double t : {0.0, 1.0, 9.0}) {
        CHECK(sector_A(0.6, 0.4, 0.4, Sign::plus, t) == doctest::Approx(std::cosh(1.2)).epsilon(1e-15));
    }
    CHECK(sector_A(0.0, 1.0, 1.0, Sign::plus, 0.0) == 1.0);

    const RelativeSpectrum r = relative_spectrum({0.2, 0.4}, {0.1, 0.05}, {1.0, 2.0}, 3.3);
    CHECK(r.a1p == sector_A(0.2, 0.1, 1.0, Sign::plus, 3.3));
    CHECK(r.a2m == sector_A(0.4, 0.05, 2.0, Sign::minus, 3.3));
}

TEST_CASE("property: sector periodicity and half-period sign swap")
{
    tfd::test::Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        const double a = rng.uniform(0.0, 2.0);
        const double w = rng.log_uniform(1e-2, 1.0);
        const double wr = rng.log_uniform(0.1, 10.0);
        const double t = rng.uniform(0.0, 50.0);
        const double period = 2.0 * std::numbers::pi / w;
        for (Sign s : {Sign::plus, Sign::minus}) {
            const double v = sector_A(a, w, wr, s, t);
            CHECK(std::abs(sector_A(a, w, wr, s, t + period) - v) <= 1e-12 * v);
        }
        const double plus_shifted = sector_A(a, w, wr, Sign::plus, t + std::numbers::pi / w);
        const double minus = sector_A(a, w, wr, Sign::minus, t);
        CHECK(std::abs(plus_shifted - minus) <= 1e-12 * minus);
    }
}

TEST_CASE("property: sector values do not depend on the mass")
{
    tfd::test::Rng rng(19);
    for (int i = 0; i < 300; ++i) {
        const double a = rng.uniform(0.0, 2.0);
        const double w = rng.log_uniform(1e-2, 1.0);
        const double wr = rng.log_uniform(0.1, 10.0);
        const double t = rng.uniform(0.0, 50.0);
        const Sign s = rng.integer(0, 1) ? Sign::plus : Sign::minus;
        const double ref = 0.5 * relative_block(target_block(a, s, w, 1.0, t), wr, 1.0).trace();
        for (double m : {0.5, 2.0, 10.0}) {
            const double v = 0.5 * relative_block(target_block(a, s, w, m, t), wr, m).trace();
            CHECK(std::abs(v - ref) <= 1e-13 * ref);
        }
    }
}

TEST_CASE("relative eigenvalues")
{
    const EigenPair one = relative_eigenvalues(1.0);
    CHECK(one.e_minus == 1.0);
    CHECK(one.e_plus == 1.0);
    const EigenPair q = relative_eigenvalues(1.25);
    CHECK(q.e_minus == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(q.e_plus == doctest::Approx(2.0).epsilon(1e-15));
    const EigenPair h = relative_eigenvalues(std::cosh(1.4));
    CHECK(h.e_plus == doctest::Approx(std::exp(1.4)).epsilon(1e-15));
    CHECK(h.e_minus == doctest::Approx(std::exp(-1.4)).epsilon(1e-15));

    CHECK(relative_eigenvalues(1.0 - 5e-13).e_plus == 1.0);
    CHECK_THROWS_AS(relative_eigenvalues(1.0 - 1e-9), NumericError);
    CHECK_THROWS_AS(clamp_sector_value(0.5), NumericError);

    tfd::test::Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const double a = 1.0 + rng.log_uniform(1e-14, 1e12);
        const EigenPair p = relative_eigenvalues(a);
        CHECK(p.e_minus * p.e_plus == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(p.e_minus <= 1.0);
        CHECK(std::log(p.e_plus) == doctest::Approx(std::acosh(a)).epsilon(1e-12));
    }
}

TEST_CASE("sector blocks agree with the full assembly")
{
    const EvaluationContext ctx = make_context(ModeFrequencies{0.3, 0.02}, ThermalParams{0.7},
                                               ReferenceFrequencies{1.0, 2.0}, 1.0, 1.5);
    const oracle::FullAssembly full = oracle::assemble_full(ctx, 4.2);
    const CovarianceBlock g = target_block(ctx.alphas.alpha1, Sign::plus, 0.3, 1.5, 4.2);
    const Mat2 b = full.target.block(0);
    CHECK(b.m00 == doctest::Approx(g.xx).epsilon(1e-13));
    CHECK(b.m01 == doctest::Approx(g.xp).epsilon(1e-13));
    CHECK(b.m11 == doctest::Approx(g.pp).epsilon(1e-13));
}

}
