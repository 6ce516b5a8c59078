#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qasymp/qseries.hpp"

using namespace qasymp;
using std::complex;

namespace {
double rel_err(const LogComplex& got, std::complex<long double> want) {
    auto g = got.to_complex();
    auto w = std::complex<double>(static_cast<double>(want.real()),
                                  static_cast<double>(want.imag()));
    double denom = std::max(std::abs(w), 1e-300);
    return std::abs(g - w) / denom;
}
}  // namespace

TEST_CASE("LogComplex round trip and canonical zero") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(-690.0, 690.0);  // |v| in [1e-300, 1e300]
    std::uniform_real_distribution<double> ph(-3.1, 3.1);
    for (int i = 0; i < 500; ++i) {
        double lm = mag(rng), p = ph(rng);
        auto v = LogComplex::from_log(lm, p);
        auto back = LogComplex::from_complex(v.to_complex());
        CHECK(std::fabs(back.log_mag - lm) <= 1e-14 * std::max(1.0, std::fabs(lm)));
        CHECK(std::fabs(back.phase - p) <= 1e-13);
        CHECK(v.phase > -LogComplex::pi());
        CHECK(v.phase <= LogComplex::pi());
    }
    LogComplex z = LogComplex::from_complex({0.0, 0.0});
    CHECK(z.is_zero());
    CHECK(z.phase == 0.0);
    CHECK((z * LogComplex::one()).is_zero());
}

TEST_CASE("qpoch_finite examples") {
    QParam q(0.5);
    CHECK(qpoch_finite({123.0, 4.0}, q, 0).to_complex() == complex<double>(1.0, 0.0));
    CHECK(rel_err(qpoch_finite({0.5, 0.0}, q, 2), {0.375L, 0.0L}) < 1e-15);
    auto neg = qpoch_finite({2.0, 0.0}, q, 1);  // 1 - 2 = -1
    CHECK(neg.log_mag == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(neg.phase == doctest::Approx(LogComplex::pi()));
}

TEST_CASE("qpoch_infinite against the direct-product oracle") {
    QParam q(0.5);
    CHECK(qpoch_infinite({0.0, 0.0}, q).value.to_complex() == complex<double>(1.0, 0.0));

    auto euler = qpoch_infinite({0.5, 0.0}, q);
    auto want = oracles::qpoch_product({0.5L, 0.0L}, {0.5L, 0.0L}, 200);
    CHECK(rel_err(euler.value, want) < 1e-14);
    CHECK(euler.value.to_complex().real() == doctest::Approx(0.2887880951).epsilon(1e-9));

    // (-1;0.5)_inf = 2 prod_{k>=1} (1 + 2^-k) = E_{0.5}(1)
    auto e1 = qpoch_infinite({-1.0, 0.0}, q);
    auto want2 = oracles::qpoch_product({-1.0L, 0.0L}, {0.5L, 0.0L}, 200);
    CHECK(rel_err(e1.value, want2) < 1e-14);
}

TEST_CASE("qpoch recurrence and splitting properties") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> qd(0.05, 0.93);
    std::uniform_real_distribution<double> re(-3.0, 3.0);
    std::uniform_int_distribution<int> nd(0, 40);
    for (int i = 0; i < 200; ++i) {
        QParam q(qd(rng));
        complex<double> a(re(rng), re(rng));
        int n = nd(rng);
        auto lhs = qpoch_finite(a, q, n + 1);
        auto factor = LogComplex::from_complex(1.0 - a * std::exp(q.ln_q * n));
        auto rhs = factor * qpoch_finite(a, q, n);
        CHECK(lhs.abs_diff(rhs) <= 1e-13 * std::max(lhs.abs(), 1e-300));

        auto full = qpoch_infinite(a, q).value;
        auto split = qpoch_finite(a, q, n) *
                     qpoch_infinite(a * std::exp(q.ln_q * n), q).value;
        CHECK(full.abs_diff(split) <= 1e-12 * std::max(full.abs(), 1e-300));
    }
}

TEST_CASE("lemma1_bounds plug-in values and hypothesis window") {
    QParam q(0.5);
    auto b = lemma1_bounds({1.0, 0.0}, q, 4);
    CHECK(b.r1_bound == doctest::Approx(0.25));
    CHECK(b.r2_bound == doctest::Approx(0.25));
    CHECK_THROWS_AS(lemma1_bounds({1.0, 0.0}, q, 1), HypothesisViolated);
    CHECK_THROWS_AS(lemma1_bounds({0.0, 0.0}, q, 4), HypothesisViolated);

    // actual remainder at n = 10 stays below the bound
    auto r1 = qpoch_infinite({std::pow(0.5, 10), 0.0}, q).value;
    double bound10 = lemma1_bounds({1.0, 0.0}, q, 10).r1_bound;
    CHECK(bound10 == doctest::Approx(0.00390625));
    CHECK(std::abs(r1.to_complex() - 1.0) <= bound10);
}

TEST_CASE("Lemma 1 certification on random admissible inputs") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> qd(0.05, 0.95);
    std::uniform_real_distribution<double> zd(-4.0, 4.0);
    int done = 0;
    while (done < 200) {
        QParam q(qd(rng));
        complex<double> z(zd(rng), zd(rng));
        if (z == complex<double>(0.0, 0.0)) continue;
        // pick the smallest n meeting Eq. (3)
        int n = 1;
        while (n < 300 && !(std::abs(z) * std::exp(q.ln_q * n) / (1.0 - q.q) < 0.5)) ++n;
        if (n >= 300) continue;
        auto b = lemma1_bounds(z, q, n);
        auto v = qpoch_infinite(z * std::exp(q.ln_q * n), q).value;
        CHECK(std::abs(v.to_complex() - 1.0) <= b.r1_bound);
        CHECK(std::abs(1.0 / v.to_complex() - 1.0) <= b.r2_bound);
        ++done;
    }
}

TEST_CASE("q-binomial theorem partial sums") {
    // sum_k (A;q)_k/(q;q)_k z^k -> (Az;q)_inf/(z;q)_inf for |z| < 1
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> qd(0.1, 0.8);
    std::uniform_real_distribution<double> ad(-2.0, 2.0);
    std::uniform_real_distribution<double> zd(-0.9, 0.9);
    for (int it = 0; it < 40; ++it) {
        QParam q(qd(rng));
        complex<double> A(ad(rng), ad(rng));
        complex<double> z(zd(rng) * 0.7, zd(rng) * 0.7);
        if (std::abs(z) > 0.9) continue;
        complex<double> sum = 0.0, term_a = 1.0, qp = 1.0;
        complex<double> aq = A;
        double qk = 1.0;
        complex<double> zk = 1.0;
        for (int k = 0; k < 2000; ++k) {
            sum += term_a / qp * zk;
            term_a *= (1.0 - aq);
            aq *= q.q;
            qk *= q.q;
            qp *= (1.0 - qk);
            zk *= z;
            if (std::abs(zk) < 1e-18) break;
        }
        auto rhs = (qpoch_infinite(A * z, q).value / qpoch_infinite(z, q).value).to_complex();
        CHECK(std::abs(sum - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("base inequalities hold for k <= 200") {
    for (double qq : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        QParam q(qq);
        auto lp = detail::log_qpoch_prefix(q, 200);
        for (int k = 1; k <= 200; ++k) {
            // (1 - q^k)/(1 - q) >= k q^{k-1}
            double lhs = std::log1p(-std::exp(q.ln_q * k)) - std::log1p(-qq);
            double rhs = std::log(static_cast<double>(k)) + (k - 1) * q.ln_q;
            CHECK(lhs >= rhs - 1e-12);
            // (q;q)_k / (1-q)^k >= k! q^{k(k-1)/2}
            double lhs2 = lp[static_cast<std::size_t>(k)] - k * std::log1p(-qq);
            double rhs2 = std::lgamma(k + 1.0) + 0.5 * k * (k - 1.0) * q.ln_q;
            CHECK(lhs2 >= rhs2 - 1e-12);
        }
    }
}

TEST_CASE("qgamma values and poles") {
    QParam q(0.5);
    CHECK(rel_err(qgamma(1.0, q), {1.0L, 0.0L}) < 1e-13);
    CHECK(rel_err(qgamma(2.0, q), {1.0L, 0.0L}) < 1e-13);
    QParam qq(0.999);
    CHECK(std::abs(qgamma(3.0, qq).to_complex().real() - 2.0) < 0.02);
    CHECK_THROWS_AS(qgamma(0.0, q), PoleError);
    CHECK_THROWS_AS(qgamma(-2.0, q), PoleError);
}

TEST_CASE("qgamma tends to Gamma along q -> 1") {
    for (double nu : {0.5, 1.0, 2.5}) {
        double prev = 1e9;
        for (double qq : {0.9, 0.99, 0.999}) {
            QParam q(qq);
            double qnu1 = std::exp((nu + 1.0) * q.ln_q);
            double lhs = (qpoch_infinite({qnu1, 0.0}, q).value /
                          qpoch_infinite({q.q, 0.0}, q).value)
                             .to_complex()
                             .real() *
                         std::pow(1.0 - qq, nu);
            double diff = std::fabs(lhs - 1.0 / std::tgamma(nu + 1.0));
            CHECK(diff < prev + 1e-12);
            prev = diff;
        }
        CHECK(prev < 5e-3);
    }
}
