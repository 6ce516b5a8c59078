#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qasymp/theta.hpp"

using namespace qasymp;
using std::complex;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

double rel_diff(const LogComplex& a, const LogComplex& b) {
    return a.abs_diff(b) / std::max(b.abs(), 1e-300);
}

double rel_to(const LogComplex& got, oracles::CLD want) {
    complex<double> w(static_cast<double>(want.real()), static_cast<double>(want.imag()));
    return std::abs(got.to_complex() - w) / std::max(std::abs(w), 1e-300);
}
}  // namespace

TEST_CASE("theta_sum special values") {
    TauParam ti({0.0, 1.0});
    CHECK(theta_sum(ThetaIndex(1), {0.0, 0.0}, ti).abs() < 1e-300);

    // theta_3(0|i) = pi^{1/4} / Gamma(3/4)
    double want = std::pow(kPi, 0.25) / std::tgamma(0.75);
    auto t3 = theta_sum(ThetaIndex(3), {0.0, 0.0}, ti);
    CHECK(t3.to_complex().real() == doctest::Approx(want).epsilon(1e-12));
    CHECK(t3.to_complex().real() == doctest::Approx(1.086434).epsilon(1e-6));
    CHECK(rel_to(t3, oracles::theta_direct(3, {0.0L, 0.0L}, {0.0L, 1.0L})) < 1e-13);

    // theta_4(0|i) equals the alternating Gaussian sum and theta_3(1/2|i)
    auto t4 = theta_sum(ThetaIndex(4), {0.0, 0.0}, ti);
    CHECK(rel_to(t4, oracles::theta_direct(4, {0.0L, 0.0L}, {0.0L, 1.0L})) < 1e-13);
    auto t3half = theta_sum(ThetaIndex(3), {0.5, 0.0}, ti);
    CHECK(rel_diff(t4, t3half) < 1e-13);
}

TEST_CASE("theta_product matches theta_sum") {
    TauParam ti({0.0, 1.0});
    CHECK(theta_product(ThetaIndex(2), {0.5, 0.0}, ti).abs() < 1e-300);
    CHECK(rel_diff(theta_product(ThetaIndex(3), {0.0, 0.0}, ti),
                   theta_sum(ThetaIndex(3), {0.0, 0.0}, ti)) < 1e-12);
    TauParam t07({0.0, 0.7});
    CHECK(rel_diff(theta_product(ThetaIndex(4), {0.3, 0.0}, t07),
                   theta_sum(ThetaIndex(4), {0.3, 0.0}, t07)) < 1e-12);
}

TEST_CASE("sum and product forms agree over the grid") {
    for (double nome : {0.05, 0.2, 0.5, 0.75, 0.9}) {
        TauParam tp = TauParam::from_nome(QParam(nome));
        for (double vr : {0.0, 0.13, 0.25, 0.4, 0.55, 0.7, 0.85}) {
            for (double vi : {-0.3, -0.1, 0.0, 0.15, 0.3}) {
                for (int idx = 1; idx <= 4; ++idx) {
                    auto s = theta_sum(ThetaIndex(idx), {vr, vi}, tp);
                    auto p = theta_product(ThetaIndex(idx), {vr, vi}, tp);
                    if (s.abs() < 1e-280) {
                        CHECK(p.abs() < 1e-280);
                    } else {
                        CHECK(rel_diff(p, s) < 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("theta_z conversions") {
    QParam q(0.5);
    auto got = theta_z(ThetaIndex(3), complex<double>(1.0, 0.0), q);
    // sum q^{k^2}: direct
    long double direct = 0.0L;
    for (int k = -40; k <= 40; ++k)
        direct += powl(0.5L, static_cast<long double>(k) * k);
    CHECK(got.to_complex().real() == doctest::Approx(static_cast<double>(direct)).epsilon(1e-13));

    QParam tiny(1e-8);
    CHECK(theta_z(ThetaIndex(4), complex<double>(1.0, 0.0), tiny).to_complex().real() ==
          doctest::Approx(1.0).epsilon(1e-7));

    QParam q2(0.25);
    auto a = theta_z(ThetaIndex(3), complex<double>(2.0, 0.0), q2);
    auto b = theta_z(ThetaIndex(3), complex<double>(0.5, 0.0), q2);
    CHECK(rel_diff(a, b) < 1e-12);
    CHECK_THROWS_AS(theta_z(ThetaIndex(3), complex<double>(0.0, 0.0), q), DomainError);
}

TEST_CASE("inversion symmetry of theta_3 and theta_4 in z") {
    for (double qq : {0.1, 0.4, 0.7}) {
        QParam q(qq);
        for (double zr : {0.3, 1.7, 4.2}) {
            complex<double> z(zr, 0.4);
            for (int idx : {3, 4}) {
                auto a = theta_z(ThetaIndex(idx), z, q);
                auto b = theta_z(ThetaIndex(idx), 1.0 / z, q);
                CHECK(rel_diff(a, b) < 1e-12);
            }
        }
    }
}

TEST_CASE("modular transformation residuals") {
    CHECK(theta_modular_residual(ThetaIndex(3), {0.0, 0.0}, TauParam({0.0, 1.0})) < 1e-12);
    CHECK(theta_modular_residual(ThetaIndex(2), {0.1, 0.0}, TauParam({0.0, 0.5})) < 1e-11);
    CHECK(theta_modular_residual(ThetaIndex(1), {0.0, 0.0}, TauParam({0.0, 2.0})) == 0.0);

    for (double ti : {0.3, 0.6, 1.0, 1.7, 3.0}) {
        for (double vr : {0.0, 0.2, 0.45}) {
            for (int idx = 1; idx <= 4; ++idx) {
                double r =
                    theta_modular_residual(ThetaIndex(idx), {vr, 0.1}, TauParam({0.0, ti}));
                CHECK(r < 1e-10);
            }
        }
    }
    // one off-axis tau
    for (int idx = 1; idx <= 4; ++idx)
        CHECK(theta_modular_residual(ThetaIndex(idx), {0.2, 0.05}, TauParam({0.2, 0.8})) < 1e-10);
}

TEST_CASE("theta envelope bounds") {
    for (double qq : {0.2, 0.5, 0.8}) {
        QParam q(qq);
        for (double lz : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
            for (double ph : {0.0, 1.1, 3.0}) {
                LogComplex z = LogComplex::from_log(lz, ph);
                for (int idx = 1; idx <= 4; ++idx) {
                    auto v = theta_z(ThetaIndex(idx), z, q);
                    CHECK(v.log_mag <= theta_envelope_log(ThetaIndex(idx), lz, q) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("dedekind eta values and transformation") {
    // eta(i) = Gamma(1/4) / (2 pi^{3/4})
    auto eta_i = dedekind_eta(TauParam({0.0, 1.0}));
    double want = std::tgamma(0.25) / (2.0 * std::pow(kPi, 0.75));
    CHECK(eta_i.to_complex().real() == doctest::Approx(want).epsilon(1e-12));
    CHECK(eta_i.to_complex().real() == doctest::Approx(0.768225).epsilon(1e-6));
    // direct product oracle
    {
        oracles::CLD qt = std::exp(oracles::CLD(0.0L, 2.0L) *
                                   oracles::CLD(3.14159265358979323846L) *
                                   oracles::CLD(0.0L, 1.0L));
        oracles::CLD prod = std::exp(oracles::CLD(0.0L, 1.0L) *
                                     oracles::CLD(3.14159265358979323846L) *
                                     oracles::CLD(0.0L, 1.0L) / oracles::CLD(12.0L));
        oracles::CLD qk = qt;
        for (int k = 0; k < 500; ++k) {
            prod *= (oracles::CLD(1.0L) - qk);
            qk *= qt;
        }
        CHECK(rel_to(eta_i, prod) < 1e-13);
    }

    // eta(-1/(2i)) = sqrt(2) eta(2i)
    auto lhs = dedekind_eta(TauParam({0.0, 0.5}));
    auto rhs = dedekind_eta(TauParam({0.0, 2.0}));
    CHECK(lhs.abs() == doctest::Approx(std::sqrt(2.0) * rhs.abs()).epsilon(1e-12));

    // eta(10i): leading factor dominates
    auto big = dedekind_eta(TauParam({0.0, 10.0}));
    CHECK(big.log_mag == doctest::Approx(-10.0 * kPi / 12.0).epsilon(1e-11));

    // transformation residual across the tau grid
    for (double t : {0.3, 0.7, 1.0, 1.5, 2.2, 3.0}) {
        auto l = dedekind_eta(TauParam(complex<double>(0.0, 1.0 / t)));
        auto r = LogComplex::from_complex(
                     std::sqrt(complex<double>(0.0, t) / complex<double>(0.0, 1.0))) *
                 dedekind_eta(TauParam({0.0, t}));
        CHECK(l.abs_diff(r) / r.abs() < 1e-11);
    }
    {
        complex<double> t(0.2, 0.8);
        auto l = dedekind_eta(TauParam(-1.0 / t));
        auto r = LogComplex::from_complex(std::sqrt(t / complex<double>(0.0, 1.0))) *
                 dedekind_eta(TauParam(t));
        CHECK(l.abs_diff(r) / r.abs() < 1e-11);
    }
}

TEST_CASE("eta regime expansions carry certified deviations") {
    // power regime, a = 1/2, gamma = 1
    {
        auto rep = eta_regime_expansion({EtaRegime::Power, 0.5, 1.0}, 100);
        // the two routes agree at binary64 level
        double route_gap = std::fabs(rep.qpoch_value.log_mag - rep.predicted.log_mag -
                                     std::log1p(rep.ratio_dev));
        CHECK(route_gap < 1e-12);
        CHECK(std::fabs(rep.ratio_dev) <= 10.0 * rep.rel_err_rate);
        CHECK(std::fabs(rep.ratio_dev) > 0.0);
    }
    // log regime, gamma = 1, n = 1000
    {
        auto rep = eta_regime_expansion({EtaRegime::LogN, 0.5, 1.0}, 1000);
        double route_gap = std::fabs(rep.qpoch_value.log_mag - rep.predicted.log_mag -
                                     std::log1p(rep.ratio_dev));
        CHECK(route_gap < 1e-12);
        CHECK(std::fabs(rep.ratio_dev) <= 10.0 * rep.rel_err_rate);
    }
    // ratio -> 1 monotonically along the sweep
    double prev = 1.0;
    for (long long n : {16, 64, 256}) {
        auto rep = eta_regime_expansion({EtaRegime::Power, 0.5, 1.0}, n);
        CHECK(std::fabs(rep.ratio_dev) < prev);
        prev = std::fabs(rep.ratio_dev);
    }
    CHECK_THROWS_AS(eta_regime_expansion({EtaRegime::Power, 1.5, 1.0}, 10), DomainError);
    CHECK_THROWS_AS(eta_regime_expansion({EtaRegime::LogN, 0.5, 1.0}, 1), DomainError);
}

TEST_CASE("theta transformed evaluation matches the direct sum") {
    for (double ti : {0.05, 0.3, 1.0}) {
        for (int idx = 1; idx <= 4; ++idx) {
            complex<double> v(0.13, 0.02);
            TauParam tp({0.0, ti});
            auto direct = theta_sum(ThetaIndex(idx), v, tp);
            auto fast = theta_transformed(ThetaIndex(idx), v, tp);
            CHECK(direct.abs_diff(fast) / std::max(fast.abs(), 1e-300) < 1e-10);
        }
    }
}
