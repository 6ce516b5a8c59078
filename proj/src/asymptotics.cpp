#include "qasymp/asymptotics.hpp"

#include <cmath>
#include <functional>

#include "qasymp/qfunctions.hpp"
#include "qasymp/qpolynomials.hpp"
#include "qasymp/theta.hpp"

namespace qasymp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_polynomial_family(Family f) {
    return f == Family::IsmailMasson || f == Family::StieltjesWigert || f == Family::QLaguerre;
}

// tau-side and theta-side fractional parts the case hypothesis prescribes.
struct Decomp {
    long long m = 0;    // -n tau = m + c_n (cases 4-7)
    double c_n = 0.0;   // lambda / beta(+a_n) / beta1(+a_n)
    double d_n = 0.0;   // fractional part of n theta per the case
};

Decomp decompose(const ScalingSpec& spec, const CaseParams& cp, std::int64_t n) {
    Decomp d;
    switch (cp.case_id) {
        case 1: {
            long long m1 = 0;
            d.d_n = detail::residual_near_integer(RealParam(spec.theta), n, 0.0, &m1);
            break;
        }
        case 2:
            d.d_n = cp.lambda;
            break;
        case 3:
            d.d_n = cp.beta + cp.idx.b_n;
            break;
        case 4:
            d.m = cp.idx.m;
            d.c_n = cp.lambda;
            d.d_n = cp.lambda1;
            break;
        case 5:
            d.m = cp.idx.m;
            d.c_n = cp.lambda;
            d.d_n = cp.beta + cp.idx.b_n;
            break;
        case 6:
            d.m = cp.idx.m;
            d.c_n = cp.beta + cp.idx.a_n;
            d.d_n = cp.lambda;
            break;
        case 7:
            d.m = cp.idx.m;
            d.c_n = cp.beta1 + cp.idx.a_n;
            d.d_n = cp.beta2 + cp.idx.b_n;
            break;
        default:
            throw DomainError("CaseParams: case_id must be 1..7");
    }
    return d;
}

void check_hypothesis(const ScalingSpec& spec, const CaseParams& cp, std::int64_t n) {
    const double exact_tol = 1e-12;
    const Family fam = spec.fam.family;
    auto need = [&](bool ok, const char* msg) {
        if (!ok) throw HypothesisViolated(msg);
    };
    double thr = std::pow(static_cast<double>(n), -cp.rho);
    switch (cp.case_id) {
        case 1:
            need(spec.tau > 0.0, "case 1 needs tau > 0");
            return;
        case 2:
            need(spec.tau == 0.0, "case 2 needs tau = 0");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) <= exact_tol,
                 "case 2 needs n theta = m1 + lambda exactly");
            return;
        case 3:
            need(spec.tau == 0.0, "case 3 needs tau = 0");
            need(cp.rho >= 1.0, "case 3 needs rho >= 1");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) < thr,
                 "case 3 needs |b_n| < n^-rho");
            return;
        default:
            break;
    }
    need(spec.tau < 0.0, "cases 4-7 need tau < 0");
    if (fam == Family::IsmailMasson)
        need(spec.tau > -0.5, "Ismail-Masson cases 4-7 need -1/2 < tau < 0");
    if (fam == Family::StieltjesWigert || fam == Family::QLaguerre)
        need(spec.tau > -1.0, "cases 4-7 need -1 < tau < 0");
    need(cp.idx.has_tau_side && cp.idx.m >= 0, "cases 4-7 need -n tau = m + ..., m >= 0");
    switch (cp.case_id) {
        case 4:
            need(std::fabs(cp.idx.a_n) <= exact_tol, "case 4 needs -n tau = m + lambda exactly");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) <= exact_tol,
                 "case 4 needs n theta = m1 + lambda1 exactly");
            break;
        case 5:
            need(cp.rho >= 1.0, "case 5 needs rho >= 1");
            need(std::fabs(cp.idx.a_n) <= exact_tol, "case 5 needs -n tau = m + lambda exactly");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) < thr,
                 "case 5 needs |b_n| < n^-rho");
            break;
        case 6:
            need(cp.rho >= 1.0, "case 6 needs rho >= 1");
            need(std::fabs(cp.idx.a_n) < thr, "case 6 needs |a_n| < n^-rho");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) <= exact_tol,
                 "case 6 needs n theta = m1 + lambda exactly");
            break;
        case 7:
            need(cp.rho > 0.0, "case 7 needs rho > 0");
            need(std::fabs(cp.idx.a_n) < thr, "case 7 needs |a_n| < n^-rho");
            need(cp.idx.has_theta_side && std::fabs(cp.idx.b_n) < thr,
                 "case 7 needs |b_n| < n^-rho");
            break;
        default:
            break;
    }
}

std::complex<double> principal_log(std::complex<double> z) {
    return {std::log(std::abs(z)), std::arg(z)};
}

// sum_{j=-m}^{jmax} exp(w2 j^2 + w1 j) E(j), the recentred normalized series
// shared by all six families for cases 4-7. E(j) are the near-1 Pochhammer
// ratio factors; jmax < 0 means unbounded above (entire families). Terms
// decay like q^{j^2} on both sides of j = 0.
LogComplex recentred_sum(double w2_lnq, std::complex<double> w1, long long m, long long jmax,
                         const std::function<double(long long)>& log_E,
                         const TruncationPolicy& pol) {
    LogAccumulator acc;
    std::int64_t budget = pol.max_terms;
    for (int dir : {+1, -1}) {
        long long j = (dir > 0) ? 0 : -1;
        while (j >= -m && (jmax < 0 || j <= jmax)) {
            if (budget-- <= 0) throw NonConvergent("recentred_sum: max_terms exhausted");
            double jj = static_cast<double>(j);
            double re = w2_lnq * jj * jj + w1.real() * jj + log_E(j);
            double im = w1.imag() * jj;
            acc.add(LogComplex::from_log(re, im));
            // all E(j) <= ~1; stop once the Gaussian envelope is spent
            if (re < acc.peak_log() - 64.0) break;
            j += dir;
        }
    }
    return acc.value();
}

struct NormCore {
    double lnq;
    double c_n;
    std::complex<double> L;  // per-family log of the j-linear factor
};

// the theta_4-style series argument for cases 4-7 of each family:
// exponent coefficients (w2, w1) with w1 = L - 2 c_n ln q style terms
// QExp:       sum exp(lnq (j^2/2 - j c_n) + j L),  L = Log(-z) + 2 pi i d_n
// Ramanujan:  sum exp(lnq (j^2 - 2 j c_n) + j L),  L = Log(-z) + 2 pi i d_n
// QBessel2:   same with L = Log(-z^2) + 2 pi i d_n
// IM:         same with L = Log(-1/z^2) + 2 pi i d_n
// SW, QL:     same with L = Log(-1/z) + 2 pi i d_n

}  // namespace

std::complex<double> ScalingSpec::s(const QParam& q) const {
    switch (fam.family) {
        case Family::QExp:
            return {tau, 2.0 * kPi * theta / q.ln_q};
        case Family::Ramanujan:
            return {2.0 * tau, 2.0 * kPi * theta / q.ln_q};
        case Family::QBessel2:
            return {tau, kPi * theta / q.ln_q};
        case Family::IsmailMasson:
            return {0.5 * (1.0 + 2.0 * tau), kPi * theta / q.ln_q};
        default:
            return {2.0 * tau + 2.0, 2.0 * kPi * theta / q.ln_q};
    }
}

Cutoffs cutoffs(const FamilySpec& fam, std::int64_t n, const QParam& q, double tau) {
    if (n < 2) throw DomainError("cutoffs: n >= 2");
    double q4 = std::exp(4.0 * q.ln_q);
    std::int64_t j_n =
        static_cast<std::int64_t>(std::floor(q4 * std::log(static_cast<double>(n)) / -q.ln_q));
    std::int64_t k_n;
    if (is_polynomial_family(fam.family)) {
        double lead = (fam.family == Family::IsmailMasson) ? (tau + 1.0) : (1.0 + tau);
        k_n = std::min(static_cast<std::int64_t>(std::floor(lead * static_cast<double>(n) / 2.0)),
                       static_cast<std::int64_t>(std::floor(-tau * static_cast<double>(n) / 2.0)));
    } else {
        k_n = static_cast<std::int64_t>(std::floor(-tau * static_cast<double>(n) / 2.0));
    }
    return {j_n, k_n};
}

LogComplex normalized_actual(const ScalingSpec& spec, const CaseParams& cp,
                             std::complex<double> z, const QParam& q, std::int64_t n,
                             const TruncationPolicy& pol) {
    if (z == std::complex<double>(0.0, 0.0)) throw DomainError("normalized_actual: z != 0");
    check_hypothesis(spec, cp, n);
    const Decomp dec = decompose(spec, cp, n);
    const Family fam = spec.fam.family;
    const double nn = static_cast<double>(n);
    const std::complex<double> lz = principal_log(z);
    const std::complex<double> two_pi_i_d(0.0, 2.0 * kPi * dec.d_n);

    if (cp.case_id <= 3) {
        // direct evaluation of the function at the scaled argument
        switch (fam) {
            case Family::QExp: {
                // E_q(-q^{ns+1/2} z), |arg| = q^{n tau + 1/2} |z|
                LogComplex w = LogComplex::from_log(
                    (nn * spec.tau + 0.5) * q.ln_q + lz.real(),
                    lz.imag() + kPi + 2.0 * kPi * dec.d_n);
                return eq_euler(w, q, pol);
            }
            case Family::Ramanujan: {
                LogComplex w = LogComplex::from_log(2.0 * nn * spec.tau * q.ln_q + lz.real(),
                                                    lz.imag() + 2.0 * kPi * dec.d_n);
                return aq_ramanujan(w, q, pol);
            }
            case Family::QBessel2: {
                // sum_k q^{k^2} (-q^{2n tau} z^2 e^{2 pi i n theta})^k /
                //       ((q,q^{nu+1};q)_k); case 3 multiplies (q^{nu+1};q)_inf
                double qnu1 = std::exp((spec.fam.nu + 1.0) * q.ln_q);
                std::complex<double> c1(2.0 * nn * spec.tau * q.ln_q + 2.0 * lz.real(),
                                        2.0 * lz.imag() + kPi + 2.0 * kPi * dec.d_n);
                LogComplex series =
                    detail::peaked_qseries({q.ln_q, 0.0}, c1, q, pol, qnu1).value;
                if (cp.case_id == 1) return series;
                return qpoch_infinite({qnu1, 0.0}, q, pol).value * series;
            }
            default: {
                // finite normalized polynomial sums (theta = 0 rows of the
                // same shape); SW/QL carry the (q;q)_inf factor
                auto lp = detail::log_qpoch_prefix(q, n);
                double l_inf = lp[static_cast<std::size_t>(n)] + detail::log_qpoch_tail(q, n + 1);
                std::complex<double> w1;
                double argpow = (fam == Family::IsmailMasson) ? -2.0 : -1.0;
                w1 = {2.0 * nn * spec.tau * q.ln_q + argpow * lz.real(),
                      argpow * lz.imag() + kPi + 2.0 * kPi * dec.d_n};
                std::function<double(long long)> log_E;
                std::vector<double> lpa;
                if (fam == Family::IsmailMasson) {
                    log_E = [&lp, n](long long k) {
                        return lp[static_cast<std::size_t>(n)] - lp[static_cast<std::size_t>(k)] -
                               lp[static_cast<std::size_t>(n - k)];
                    };
                } else if (fam == Family::StieltjesWigert) {
                    log_E = [&lp, l_inf, n](long long k) {
                        return l_inf - lp[static_cast<std::size_t>(k)] -
                               lp[static_cast<std::size_t>(n - k)];
                    };
                } else {
                    double qa1 = std::exp((spec.fam.alpha + 1.0) * q.ln_q);
                    lpa = detail::log_qpoch_prefix(qa1, q, n);
                    log_E = [&lp, &lpa, l_inf, n](long long k) {
                        return l_inf + lpa[static_cast<std::size_t>(n)] -
                               lp[static_cast<std::size_t>(k)] -
                               lp[static_cast<std::size_t>(n - k)] -
                               lpa[static_cast<std::size_t>(n - k)];
                    };
                }
                return recentred_sum(q.ln_q, w1, 0, n, log_E, pol);
            }
        }
    }

    // cases 4-7: the recentred normalized series, exponents assembled from
    // the exact decomposition so the q^{m(...)} normalization never appears
    // as a large number.
    const long long m = dec.m;
    switch (fam) {
        case Family::QExp: {
            std::complex<double> w1 =
                std::complex<double>(-dec.c_n * q.ln_q, 0.0) +
                std::complex<double>(lz.real(), lz.imag() + kPi) + two_pi_i_d;
            return recentred_sum(
                0.5 * q.ln_q, w1, m, -1,
                [&](long long j) { return detail::log_qpoch_tail(q, m + j + 1); }, pol);
        }
        case Family::Ramanujan: {
            std::complex<double> w1 =
                std::complex<double>(-2.0 * dec.c_n * q.ln_q, 0.0) +
                std::complex<double>(lz.real(), lz.imag() + kPi) + two_pi_i_d;
            return recentred_sum(q.ln_q, w1, m, -1,
                                 [&](long long j) { return detail::log_qpoch_tail(q, m + j + 1); },
                                 pol);
        }
        case Family::QBessel2: {
            double qnu1 = std::exp((spec.fam.nu + 1.0) * q.ln_q);
            QParam qb = q;
            std::complex<double> w1 =
                std::complex<double>(-2.0 * dec.c_n * q.ln_q, 0.0) +
                std::complex<double>(2.0 * lz.real(), 2.0 * lz.imag() + kPi) + two_pi_i_d;
            return recentred_sum(
                q.ln_q, w1, m, -1,
                [&](long long j) {
                    // (q^{m+j+1};q)_inf (q^{nu+1+m+j};q)_inf
                    double t1 = detail::log_qpoch_tail(qb, m + j + 1);
                    double t2 = 0.0;
                    double c = qnu1 * std::exp(q.ln_q * static_cast<double>(m + j));
                    for (int i = 0; i < 100000 && c > 1e-20; ++i, c *= q.q) t2 += std::log1p(-c);
                    return t1 + t2;
                },
                pol);
        }
        default: {
            auto lp = detail::log_qpoch_prefix(q, n);
            double l_inf = lp[static_cast<std::size_t>(n)] + detail::log_qpoch_tail(q, n + 1);
            double argpow = (fam == Family::IsmailMasson) ? -2.0 : -1.0;
            std::complex<double> w1 =
                std::complex<double>(-2.0 * dec.c_n * q.ln_q, 0.0) +
                std::complex<double>(argpow * lz.real(), argpow * lz.imag() + kPi) + two_pi_i_d;
            std::function<double(long long)> log_E;
            std::vector<double> lpa;
            if (fam == Family::IsmailMasson) {
                log_E = [&lp, l_inf, n, m](long long j) {
                    return lp[static_cast<std::size_t>(n)] + l_inf -
                           lp[static_cast<std::size_t>(m + j)] -
                           lp[static_cast<std::size_t>(n - m - j)];
                };
            } else if (fam == Family::StieltjesWigert) {
                log_E = [&lp, l_inf, n, m](long long j) {
                    return 2.0 * l_inf - lp[static_cast<std::size_t>(m + j)] -
                           lp[static_cast<std::size_t>(n - m - j)];
                };
            } else {
                double qa1 = std::exp((spec.fam.alpha + 1.0) * q.ln_q);
                lpa = detail::log_qpoch_prefix(qa1, q, n);
                log_E = [&lp, &lpa, l_inf, n, m](long long j) {
                    return 2.0 * l_inf + lpa[static_cast<std::size_t>(n)] -
                           lp[static_cast<std::size_t>(m + j)] -
                           lp[static_cast<std::size_t>(n - m - j)] -
                           lpa[static_cast<std::size_t>(n - m - j)];
                };
            }
            return recentred_sum(q.ln_q, w1, m, n - m, log_E, pol);
        }
    }
}

LogComplex main_term(const ScalingSpec& spec, const CaseParams& cp, std::complex<double> z,
                     const QParam& q, std::int64_t n, const TruncationPolicy& pol) {
    check_hypothesis(spec, cp, n);
    const Family fam = spec.fam.family;
    const std::complex<double> lz = principal_log(z);
    if (cp.case_id == 1) return LogComplex::one();

    if (cp.case_id == 2 || cp.case_id == 3) {
        double twist = (cp.case_id == 2) ? cp.lambda : cp.beta;
        switch (fam) {
            case Family::QExp: {
                // E_q(-z q^{1/2} e^{2 pi i beta})
                LogComplex w = LogComplex::from_log(0.5 * q.ln_q + lz.real(),
                                                    lz.imag() + kPi + 2.0 * kPi * twist);
                return eq_euler(w, q, pol);
            }
            case Family::Ramanujan: {
                LogComplex w =
                    LogComplex::from_log(lz.real(), lz.imag() + 2.0 * kPi * twist);
                return aq_ramanujan(w, q, pol);
            }
            case Family::QBessel2: {
                double qnu1 = std::exp((spec.fam.nu + 1.0) * q.ln_q);
                std::complex<double> c1(2.0 * lz.real(),
                                        2.0 * lz.imag() + kPi + 2.0 * kPi * twist);
                LogComplex series =
                    detail::peaked_qseries({q.ln_q, 0.0}, c1, q, pol, qnu1).value;
                return qpoch_infinite({qnu1, 0.0}, q, pol).value * series;
            }
            case Family::IsmailMasson: {
                LogComplex w = LogComplex::from_log(-2.0 * lz.real(),
                                                    -2.0 * lz.imag() + 2.0 * kPi * twist);
                return aq_ramanujan(w, q, pol);
            }
            default: {
                LogComplex w =
                    LogComplex::from_log(-lz.real(), -lz.imag() + 2.0 * kPi * twist);
                return aq_ramanujan(w, q, pol);
            }
        }
    }

    // cases 4-7: theta_4 at the case argument; nome sqrt(q) for QExp, q else
    double c_target, d_target;
    switch (cp.case_id) {
        case 4:
            c_target = cp.lambda;
            d_target = cp.lambda1;
            break;
        case 5:
            c_target = cp.lambda;
            d_target = cp.beta;
            break;
        case 6:
            c_target = cp.beta;
            d_target = cp.lambda;
            break;
        default:
            c_target = cp.beta1;
            d_target = cp.beta2;
            break;
    }
    LogComplex arg;
    QParam nome = q;
    switch (fam) {
        case Family::QExp:
            arg = LogComplex::from_log(-lz.real() + c_target * q.ln_q,
                                       -lz.imag() - 2.0 * kPi * d_target);
            nome = QParam(std::sqrt(q.q));
            break;
        case Family::Ramanujan:
            arg = LogComplex::from_log(-lz.real() + 2.0 * c_target * q.ln_q,
                                       -lz.imag() - 2.0 * kPi * d_target);
            break;
        case Family::QBessel2:
            arg = LogComplex::from_log(-2.0 * lz.real() + 2.0 * c_target * q.ln_q,
                                       -2.0 * lz.imag() - 2.0 * kPi * d_target);
            break;
        case Family::IsmailMasson:
            arg = LogComplex::from_log(2.0 * lz.real() + 2.0 * c_target * q.ln_q,
                                       2.0 * lz.imag() - 2.0 * kPi * d_target);
            break;
        default:
            arg = LogComplex::from_log(lz.real() + 2.0 * c_target * q.ln_q,
                                       lz.imag() - 2.0 * kPi * d_target);
            break;
    }
    return theta_z(ThetaIndex(4), arg, nome, pol);
}

namespace {

double theta3_pos(double log_arg, const QParam& nome, const TruncationPolicy& pol = {}) {
    return std::exp(theta_z(ThetaIndex(3), LogComplex::from_log(log_arg, 0.0), nome, pol).log_mag);
}

double exp_guarded(double x) { return std::exp(std::min(x, 700.0)); }

double log_factorial(std::int64_t k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

std::optional<double> error_bound(const ScalingSpec& spec, const CaseParams& cp,
                                  std::complex<double> z, const QParam& q, std::int64_t n) {
    check_hypothesis(spec, cp, n);
    if (n < 2) return std::nullopt;
    const Family fam = spec.fam.family;
    const double A = std::abs(z);
    const double lA = std::log(A);
    const double nn = static_cast<double>(n);
    const double ln_n = std::log(nn);
    const double one_minus_q = 1.0 - q.q;
    const Cutoffs cut = (cp.case_id >= 4) ? cutoffs(spec.fam, n, q, spec.tau) : Cutoffs{0, 0};
    if (cp.case_id >= 4 && cut.k_n < 1) return std::nullopt;
    const double jn = static_cast<double>(cut.j_n);
    const double kn = static_cast<double>(cut.k_n);
    const double rho_term = ln_n / std::pow(nn, cp.rho);
    const double qkn_term = exp_guarded(kn * q.ln_q) / one_minus_q;

    switch (fam) {
        case Family::QExp: {
            QParam sq(std::sqrt(q.q));
            switch (cp.case_id) {
                case 1: {
                    double x = A * exp_guarded((nn * spec.tau + 0.5) * q.ln_q) / one_minus_q;
                    return x * exp_guarded(x);
                }
                case 2:
                case 3: {
                    double x = A * std::sqrt(q.q) / one_minus_q;
                    double tail = std::exp(jn * std::log(x) - log_factorial(cut.j_n));
                    return 24.0 * exp_guarded(x) * (rho_term + tail);
                }
                case 4: {
                    double t3 = theta3_pos(-lA + cp.lambda * q.ln_q, sq);
                    double t = exp_guarded((0.5 * kn * kn + cp.lambda * kn) * q.ln_q - kn * lA);
                    return 4.0 * t3 * (qkn_term + t);
                }
                case 5: {
                    double t3 = theta3_pos(-lA + cp.lambda * q.ln_q, sq);
                    double t1 = exp_guarded((0.5 * jn * jn + cp.lambda * jn) * q.ln_q - jn * lA);
                    double t2 = exp_guarded((0.5 * jn * jn - cp.lambda * jn) * q.ln_q + jn * lA);
                    return 48.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                case 6: {
                    double t3 = theta3_pos(-lA + cp.beta * q.ln_q, sq);
                    double t1 = exp_guarded((0.5 * jn * jn - (cp.beta + 1.0) * jn) * q.ln_q + jn * lA);
                    double t2 = exp_guarded((0.5 * jn * jn + (cp.beta - 1.0) * jn) * q.ln_q - jn * lA);
                    return 6.0 * t3 * (rho_term + qkn_term + t1 + t2);
                }
                default: {
                    double t3 = theta3_pos(-lA + cp.beta1 * q.ln_q, sq);
                    double t1 =
                        exp_guarded((0.5 * jn * jn - (cp.beta1 + 1.0) * jn) * q.ln_q + jn * lA);
                    double t2 =
                        exp_guarded((0.5 * jn * jn + (cp.beta1 - 1.0) * jn) * q.ln_q - jn * lA);
                    return 54.0 * t3 * (rho_term + qkn_term + t1 + t2);
                }
            }
        }
        case Family::Ramanujan: {
            switch (cp.case_id) {
                case 1: {
                    double x = A * exp_guarded((2.0 * nn * spec.tau + 1.0) * q.ln_q) / one_minus_q;
                    return x * exp_guarded(x);
                }
                case 2:
                case 3: {
                    double x = A * q.q / one_minus_q;
                    double tail = std::exp(jn * std::log(x) - log_factorial(cut.j_n));
                    return 24.0 * exp_guarded(x) * (rho_term + tail);
                }
                case 4: {
                    double t3 = theta3_pos(-lA + 2.0 * cp.lambda * q.ln_q, q);
                    double t = exp_guarded((kn * kn + 2.0 * cp.lambda * kn) * q.ln_q - kn * lA);
                    return 4.0 * t3 * (qkn_term + t);
                }
                case 5: {
                    double t3 = theta3_pos(-lA + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((jn * jn + 2.0 * cp.lambda * jn) * q.ln_q - jn * lA);
                    double t2 = exp_guarded((jn * jn - 2.0 * cp.lambda * jn) * q.ln_q + jn * lA);
                    return 48.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                case 6: {
                    double t3 = theta3_pos(-lA + 2.0 * cp.beta * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta - 1.0) * jn) * q.ln_q - jn * lA);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta + 1.0) * jn) * q.ln_q + jn * lA);
                    return 12.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                default: {
                    double t3 = theta3_pos(-lA + 2.0 * cp.beta1 * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta1 - 1.0) * jn) * q.ln_q - jn * lA);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta1 + 1.0) * jn) * q.ln_q + jn * lA);
                    return 54.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
            }
        }
        case Family::QBessel2: {
            double lA2 = 2.0 * lA;
            switch (cp.case_id) {
                case 1: {
                    double qq = exp_guarded((2.0 * nn * spec.tau + 1.0) * q.ln_q);
                    double x = A * A * qq / one_minus_q;
                    double pinf =
                        std::exp(qpoch_infinite({std::exp((spec.fam.nu + 1.0) * q.ln_q), 0.0}, q)
                                     .value.log_mag);
                    return A * A * exp_guarded(x) * qq / (one_minus_q * pinf);
                }
                case 2:
                case 3: {
                    double x = q.q * A * A / one_minus_q;
                    double tail = std::exp(jn * std::log(x) - log_factorial(cut.j_n));
                    return 24.0 * exp_guarded(x) * (rho_term + tail);
                }
                case 4: {
                    double t3 = theta3_pos(-lA2 + 2.0 * cp.lambda * q.ln_q, q);
                    double t = exp_guarded((kn * kn + 2.0 * cp.lambda * kn) * q.ln_q - kn * lA2);
                    return 12.0 * t3 * (qkn_term + t);
                }
                case 5: {
                    double t3 = theta3_pos(-lA2 + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((jn * jn + 2.0 * cp.lambda * jn) * q.ln_q - jn * lA2);
                    double t2 = exp_guarded((jn * jn - 2.0 * cp.lambda * jn) * q.ln_q + jn * lA2);
                    return 48.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                case 6: {
                    double t3 = theta3_pos(-lA2 + 2.0 * cp.beta * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta - 1.0) * jn) * q.ln_q - jn * lA2);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta + 1.0) * jn) * q.ln_q + jn * lA2);
                    return 12.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                default: {
                    double t3 = theta3_pos(-lA2 + 2.0 * cp.beta1 * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta1 - 1.0) * jn) * q.ln_q - jn * lA2);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta1 + 1.0) * jn) * q.ln_q + jn * lA2);
                    return 156.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
            }
        }
        case Family::IsmailMasson: {
            double lA2 = 2.0 * lA;
            double half_n = std::floor(nn / 2.0);
            switch (cp.case_id) {
                case 1: {
                    double x = exp_guarded((2.0 * spec.tau * nn + 1.0) * q.ln_q) /
                               (A * A * one_minus_q);
                    return x * exp_guarded(x);
                }
                case 2: {
                    double aq = std::exp(
                        aq_ramanujan(std::complex<double>(-1.0 / (A * A), 0.0), q).log_mag);
                    double pinf = std::exp(qpoch_infinite({q.q, 0.0}, q).value.log_mag);
                    double t1 = exp_guarded(0.5 * nn * q.ln_q);
                    double t2 = exp_guarded(half_n * half_n * q.ln_q - 2.0 * half_n * lA);
                    return 6.0 * aq / pinf * (t1 + t2);
                }
                case 3: {
                    double x = q.q / (A * A * one_minus_q);
                    double t1 = exp_guarded(0.5 * nn * q.ln_q) / one_minus_q;
                    double t2 = std::exp(-jn * std::log(A * A * (1.0 / q.q - 1.0)) -
                                         log_factorial(cut.j_n));
                    return 24.0 * exp_guarded(x) * (rho_term + t1 + t2);
                }
                case 4: {
                    double t3 = theta3_pos(lA2 + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((kn * kn + 2.0 * cp.lambda * kn) * q.ln_q + kn * lA2);
                    double t2 = exp_guarded((kn * kn - 2.0 * cp.lambda * kn) * q.ln_q - kn * lA2);
                    return 28.0 * t3 * (qkn_term + t1 + t2);
                }
                case 5: {
                    double t3 = theta3_pos(lA2 + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((jn * jn - 2.0 * cp.lambda * jn) * q.ln_q - jn * lA2);
                    double t2 = exp_guarded((jn * jn + 2.0 * cp.lambda * jn) * q.ln_q + jn * lA2);
                    return 24.0 * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                case 6: {
                    double t3 = theta3_pos(lA2 + 2.0 * cp.beta * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta - 1.0) * jn) * q.ln_q + jn * lA2);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta + 1.0) * jn) * q.ln_q - jn * lA2);
                    return 12.0 * t3 * (rho_term + qkn_term + t1 + t2);
                }
                default: {
                    double t3 = theta3_pos(lA2 + 2.0 * cp.beta1 * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta1 - 1.0) * jn) * q.ln_q + jn * lA2);
                    double t2 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta1 + 1.0) * jn) * q.ln_q - jn * lA2);
                    return 54.0 * t3 * (rho_term + qkn_term + t1 + t2);
                }
            }
        }
        default: {  // StieltjesWigert and QLaguerre share the structure
            bool sw = fam == Family::StieltjesWigert;
            double half_n = std::floor(nn / 2.0);
            switch (cp.case_id) {
                case 1: {
                    double x = exp_guarded((2.0 * spec.tau * nn + 1.0) * q.ln_q) /
                               (one_minus_q * A);
                    return x * exp_guarded(x);
                }
                case 2: {
                    double aq = std::exp(
                        aq_ramanujan(std::complex<double>(-1.0 / A, 0.0), q).log_mag);
                    double pinf = std::exp(qpoch_infinite({q.q, 0.0}, q).value.log_mag);
                    double t1 = exp_guarded(0.5 * nn * q.ln_q);
                    double t2 = exp_guarded(half_n * half_n * q.ln_q - half_n * lA);
                    return (sw ? 2.0 : 14.0) * aq / pinf * (t1 + t2);
                }
                case 3: {
                    double x = q.q / (one_minus_q * A);
                    double t1 = exp_guarded(0.5 * nn * q.ln_q) / one_minus_q;
                    double t2 = std::exp(-jn * std::log((1.0 / q.q - 1.0) * A) -
                                         log_factorial(cut.j_n));
                    return 24.0 * exp_guarded(x) * (rho_term + t1 + t2);
                }
                case 4: {
                    double t3 = theta3_pos(lA + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((kn * kn + 2.0 * cp.lambda * kn) * q.ln_q + kn * lA);
                    double t2 = exp_guarded((kn * kn - 2.0 * cp.lambda * kn) * q.ln_q - kn * lA);
                    return (sw ? 12.0 : 60.0) * t3 * (qkn_term + t1 + t2);
                }
                case 5: {
                    double t3 = theta3_pos(lA + 2.0 * cp.lambda * q.ln_q, q);
                    double t1 = exp_guarded((jn * jn - 2.0 * cp.lambda * jn) * q.ln_q - jn * lA);
                    double t2 = exp_guarded((jn * jn + 2.0 * cp.lambda * jn) * q.ln_q + jn * lA);
                    return (sw ? 48.0 : 60.0) * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                case 6: {
                    double t3 = theta3_pos(lA + 2.0 * cp.beta * q.ln_q, q);
                    double t1 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta + 1.0) * jn) * q.ln_q - jn * lA);
                    double t2 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta - 1.0) * jn) * q.ln_q + jn * lA);
                    return (sw ? 36.0 : 180.0) * t3 * (t1 + t2 + qkn_term + rho_term);
                }
                default: {
                    double t1 =
                        exp_guarded((jn * jn - 2.0 * (cp.beta1 + 1.0) * jn) * q.ln_q - jn * lA);
                    double t2 =
                        exp_guarded((jn * jn + 2.0 * (cp.beta1 - 1.0) * jn) * q.ln_q + jn * lA);
                    double bracket = t1 + t2 + qkn_term + rho_term;
                    if (sw) {
                        double t3 = theta3_pos(lA + 2.0 * cp.beta1 * q.ln_q, q);
                        return 156.0 * t3 * bracket;
                    }
                    // q-Laguerre case 7 is printed without the theta_3 factor
                    return 180.0 * bracket;
                }
            }
        }
    }
}

BoundReport verify_case(const ScalingSpec& spec, const CaseParams& cp, std::complex<double> z,
                        const QParam& q, std::int64_t n, const TruncationPolicy& pol) {
    BoundReport rep;
    rep.n = n;
    rep.normalized_actual = normalized_actual(spec, cp, z, q, n, pol);
    rep.main_term = main_term(spec, cp, z, q, n, pol);
    auto b = error_bound(spec, cp, z, q, n);
    rep.residual = rep.normalized_actual.abs_diff(rep.main_term);
    if (!b.has_value()) {
        rep.bound_applicable = false;
        rep.status = BoundStatus::Indeterminate;
        rep.satisfied = false;
        return rep;
    }
    rep.bound_applicable = true;
    rep.bound = *b;
    rep.satisfied = rep.residual <= rep.bound;
    if (rep.satisfied)
        rep.status = BoundStatus::Satisfied;
    else
        rep.status = (rep.bound > 0.5) ? BoundStatus::NotYetAsymptotic : BoundStatus::HardViolation;
    return rep;
}

QParam regime_q(const FamilySpec& fam, const RegimeSpec& regime, std::int64_t n) {
    double c = (fam.family == Family::QExp) ? 2.0 * kPi : kPi;
    if (regime.kind == RegimeSpec::Power) {
        if (!(regime.a > 0.0 && regime.a < 0.5))
            throw DomainError("regime_q: power regime needs 0 < a < 1/2");
        if (n < 1) throw DomainError("regime_q: n >= 1");
        return QParam(std::exp(-c * std::pow(static_cast<double>(n), -regime.a)));
    }
    if (!(regime.gamma > 0.0)) throw DomainError("regime_q: gamma > 0");
    if (n < 2) throw DomainError("regime_q: log regime needs n >= 2");
    return QParam(std::exp(-c / (regime.gamma * std::log(static_cast<double>(n)))));
}

LogComplex theta_main_regime(int theta_index, std::complex<double> v, std::complex<double> tau,
                             double* rel_disagreement) {
    TauParam tp(tau);
    LogComplex direct = theta_sum(ThetaIndex(theta_index), v, tp);
    LogComplex fast = theta_transformed(ThetaIndex(theta_index), v, tp);
    double rel = direct.abs_diff(fast) / fast.abs();
    if (rel_disagreement) *rel_disagreement = rel;
    if (!(rel <= 1e-10))
        throw InternalDisagreement("theta_main_regime: modular transform mismatch");
    return fast;
}

}  // namespace qasymp
