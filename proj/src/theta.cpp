#include "qasymp/theta.hpp"

#include <cmath>

#include "qasymp/hp.hpp"

namespace qasymp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

LogComplex from_exponent(std::complex<double> e) {
    return LogComplex::from_log(e.real(), e.imag());
}

// Bilateral sum sum_k exp(c2 k^2 + c1 k + c0), Re(c2) < 0, walked outward
// from the peak index in both directions with a geometric tail certificate.
LogComplex gaussian_bilateral(std::complex<double> c2, std::complex<double> c1,
                              std::complex<double> c0, const TruncationPolicy& pol) {
    if (!(c2.real() < 0.0)) throw DomainError("theta series: Re of the k^2 coefficient must be < 0");
    auto re_e = [&](double k) { return (c2.real() * k + c1.real()) * k + c0.real(); };
    double kpeak = -c1.real() / (2.0 * c2.real());
    std::int64_t k0 = static_cast<std::int64_t>(std::llround(kpeak));
    double peak_log = re_e(static_cast<double>(k0));

    LogAccumulator acc;
    std::int64_t budget = pol.max_terms;
    for (int dir : {+1, -1}) {
        std::int64_t k = (dir > 0) ? k0 : k0 - 1;
        while (true) {
            if (budget-- <= 0) throw NonConvergent("theta series: max_terms exhausted");
            double kk = static_cast<double>(k);
            std::complex<double> e = (c2 * kk + c1) * kk + c0;
            acc.add(from_exponent(e));
            // past the peak the term ratio exp(Re E(k+dir) - Re E(k)) shrinks
            // monotonically; certify the geometric tail against the peak.
            double next = re_e(kk + dir);
            double r = std::exp(next - e.real());
            bool past_peak = (dir > 0) ? (kk >= kpeak) : (kk <= kpeak);
            if (past_peak && r < 1.0) {
                double tail = std::exp(next - peak_log) / (1.0 - r);
                if (tail < pol.rel_tol) break;
            }
            k += dir;
        }
    }
    return acc.value();
}

// sin(pi v), cos(pi v) in the log domain: the magnitude grows like
// e^{pi |Im v|}, which overflows double for |Im v| beyond ~220.
LogComplex log_sin_pi(std::complex<double> v) {
    std::complex<double> ip(0.0, kPi);
    std::complex<double> e1 = ip * v, e2 = -ip * v;  // sin = (e^{e1} - e^{e2}) / 2i
    if (e1.real() >= e2.real()) {
        std::complex<double> rest = 1.0 - std::exp(e2 - e1);
        return from_exponent(e1) * LogComplex::from_complex(rest / std::complex<double>(0.0, 2.0));
    }
    std::complex<double> rest = std::exp(e1 - e2) - 1.0;
    return from_exponent(e2) * LogComplex::from_complex(rest / std::complex<double>(0.0, 2.0));
}

LogComplex log_cos_pi(std::complex<double> v) {
    std::complex<double> ip(0.0, kPi);
    std::complex<double> e1 = ip * v, e2 = -ip * v;
    if (e1.real() >= e2.real()) {
        std::complex<double> rest = 1.0 + std::exp(e2 - e1);
        return from_exponent(e1) * LogComplex::from_complex(rest / 2.0);
    }
    std::complex<double> rest = std::exp(e1 - e2) + 1.0;
    return from_exponent(e2) * LogComplex::from_complex(rest / 2.0);
}

int modular_partner(int lambda) {
    switch (lambda) {
        case 1: return 1;
        case 2: return 4;
        case 3: return 3;
        default: return 2;
    }
}

}  // namespace

LogComplex theta_sum(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                     const TruncationPolicy& pol) {
    std::complex<double> ipt(0.0, kPi);
    std::complex<double> c2 = ipt * tau.tau;
    std::complex<double> c1, c0;
    LogComplex pref = LogComplex::one();
    switch (idx.lambda) {
        case 3:
            c1 = 2.0 * ipt * v;
            c0 = 0.0;
            break;
        case 4:
            c1 = 2.0 * ipt * v + ipt;
            c0 = 0.0;
            break;
        case 2:
            // (k+1/2)^2 tau + (2k+1) v under i pi
            c1 = c2 + 2.0 * ipt * v;
            c0 = 0.25 * c2 + ipt * v;
            break;
        default:  // 1
            c1 = c2 + 2.0 * ipt * v + ipt;
            c0 = 0.25 * c2 + ipt * v;
            pref = LogComplex::from_complex({0.0, -1.0});
            break;
    }
    return pref * gaussian_bilateral(c2, c1, c0, pol);
}

LogComplex theta_product(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                         const TruncationPolicy& pol) {
    std::complex<double> q = tau.nome;
    std::complex<double> q2 = q * q;
    std::complex<double> e_plus = std::exp(std::complex<double>(0.0, 2.0 * kPi) * v);
    std::complex<double> e_minus = 1.0 / e_plus;
    // |e^{+-2 pi i v}| can overflow double for large |Im v|; the agreement
    // grid keeps |Im v| moderate, matching the operation's contract.
    LogComplex base = detail::qpoch_infinite_cbase(q2, q2, pol).value;
    LogComplex q14 = from_exponent(std::complex<double>(0.0, kPi) * tau.tau * 0.25);
    switch (idx.lambda) {
        case 1:
            return LogComplex::from_complex({2.0, 0.0}) * q14 * log_sin_pi(v) * base *
                   detail::qpoch_infinite_cbase(q2 * e_plus, q2, pol).value *
                   detail::qpoch_infinite_cbase(q2 * e_minus, q2, pol).value;
        case 2:
            return LogComplex::from_complex({2.0, 0.0}) * q14 * log_cos_pi(v) * base *
                   detail::qpoch_infinite_cbase(-q2 * e_plus, q2, pol).value *
                   detail::qpoch_infinite_cbase(-q2 * e_minus, q2, pol).value;
        case 3:
            return base * detail::qpoch_infinite_cbase(-q * e_plus, q2, pol).value *
                   detail::qpoch_infinite_cbase(-q * e_minus, q2, pol).value;
        default:
            return base * detail::qpoch_infinite_cbase(q * e_plus, q2, pol).value *
                   detail::qpoch_infinite_cbase(q * e_minus, q2, pol).value;
    }
}

LogComplex theta_z(ThetaIndex idx, std::complex<double> z, const QParam& q,
                   const TruncationPolicy& pol) {
    if (z == std::complex<double>(0.0, 0.0)) throw DomainError("theta_z: z must be nonzero");
    return theta_z(idx, LogComplex::from_complex(z), q, pol);
}

LogComplex theta_z(ThetaIndex idx, const LogComplex& z, const QParam& q,
                   const TruncationPolicy& pol) {
    if (z.is_zero()) throw DomainError("theta_z: z must be nonzero");
    // z = e^{2 pi i v}: v = arg(z)/(2 pi) - i log|z|/(2 pi), principal branch.
    std::complex<double> v(z.phase / (2.0 * kPi), -z.log_mag / (2.0 * kPi));
    return theta_sum(idx, v, TauParam::from_nome(q), pol);
}

double theta_modular_residual(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                              const TruncationPolicy& pol) {
    std::complex<double> t = tau.tau;
    LogComplex lhs = theta_sum(idx, v / t, TauParam(-1.0 / t), pol);
    LogComplex factor = LogComplex::from_complex(std::sqrt(t / std::complex<double>(0.0, 1.0))) *
                        from_exponent(std::complex<double>(0.0, kPi) * v * v / t);
    if (idx.lambda == 1) factor = factor * LogComplex::from_complex({0.0, -1.0});
    LogComplex rhs = factor * theta_sum(ThetaIndex(modular_partner(idx.lambda)), v, tau, pol);
    if (lhs.log_mag < -690.0 && rhs.log_mag < -690.0) return 0.0;
    return lhs.abs_diff(rhs) / rhs.abs();
}

LogComplex theta_transformed(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                             const TruncationPolicy& pol) {
    // Invert the transformation: theta_idx(v|tau) =
    //   [-i if idx=1] sqrt(-1/(i tau)) e^{-i pi v^2/tau}
    //     theta_partner(-v/tau | -1/tau).
    std::complex<double> t = tau.tau;
    LogComplex factor =
        LogComplex::from_complex(std::sqrt(-1.0 / (std::complex<double>(0.0, 1.0) * t))) *
        from_exponent(std::complex<double>(0.0, -kPi) * v * v / t);
    if (idx.lambda == 1) factor = factor * LogComplex::from_complex({0.0, -1.0});
    return factor *
           theta_sum(ThetaIndex(modular_partner(idx.lambda)), -v / t, TauParam(-1.0 / t), pol);
}

double theta_envelope_log(ThetaIndex idx, double log_abs_z, const QParam& q) {
    TruncationPolicy pol;
    QParam q2(q.q * q.q);
    double log_q2q2 = qpoch_infinite({q.q * q.q, 0.0}, q2, pol).value.log_mag;
    double log_qq2 = detail::qpoch_infinite_cbase({q.q, 0.0}, {q.q * q.q, 0.0}, pol).value.log_mag;
    double gauss = -log_abs_z * log_abs_z / (2.0 * q.ln_q);
    if (idx.lambda == 3 || idx.lambda == 4)
        return log_q2q2 - 2.0 * log_qq2 - 0.5 * q.ln_q + gauss;
    // theta_1, theta_2: 2 q^{1/4} cosh(log|z|/2) factor instead of 1/sqrt(q)
    double ch = std::fabs(log_abs_z) * 0.5;  // log cosh(x) ~ |x| - log 2 for large x
    double log_cosh = (ch > 20.0) ? ch - std::log(2.0) : std::log(std::cosh(log_abs_z * 0.5));
    return std::log(2.0) + 0.25 * q.ln_q + log_q2q2 - 2.0 * log_qq2 + log_cosh + gauss;
}

LogComplex dedekind_eta(const TauParam& tau, const TruncationPolicy& pol) {
    std::complex<double> qt = std::exp(std::complex<double>(0.0, 2.0 * kPi) * tau.tau);
    LogComplex head = from_exponent(std::complex<double>(0.0, kPi) * tau.tau / 12.0);
    return head * detail::qpoch_infinite_cbase(qt, qt, pol).value;
}

EtaRegimeReport eta_regime_expansion(const EtaRegime& regime, std::int64_t n,
                                     const TruncationPolicy& pol) {
    if (regime.gamma <= 0.0) throw DomainError("eta_regime_expansion: gamma must be > 0");
    if (regime.kind == EtaRegime::Power) {
        if (!(regime.a > 0.0 && regime.a < 1.0))
            throw DomainError("eta_regime_expansion: power regime needs 0 < a < 1");
        if (n < 1) throw DomainError("eta_regime_expansion: n >= 1");
        double na = std::pow(static_cast<double>(n), regime.a);
        QParam q(std::exp(-2.0 * kPi / (regime.gamma * na)));
        LogComplex actual = qpoch_infinite({q.q, 0.0}, q, pol).value;
        double g_na = regime.gamma * na;
        LogComplex predicted = LogComplex::from_log(
            0.5 * std::log(g_na) + kPi / (12.0 * g_na) - kPi * g_na / 12.0, 0.0);
        double rate = std::exp(-2.0 * kPi * g_na);
        hp::real eps = hp::exp((hp::real)(-2.0 * kPi) * (hp::real)regime.gamma *
                               hp::pow((hp::real)n, (hp::real)regime.a));
        return {q, actual, predicted, rate, hp::to_double(hp::qpoch_dev_from_eps(eps))};
    }
    if (n < 2) throw DomainError("eta_regime_expansion: log regime needs n >= 2");
    double ln_n = std::log(static_cast<double>(n));
    QParam q(std::exp(-2.0 * kPi / (regime.gamma * ln_n)));
    LogComplex actual = qpoch_infinite({q.q, 0.0}, q, pol).value;
    double g_ln = regime.gamma * ln_n;
    LogComplex predicted = LogComplex::from_log(
        -kPi * g_ln / 12.0 + 0.5 * std::log(g_ln) + kPi / (12.0 * g_ln), 0.0);
    double rate = std::pow(static_cast<double>(n), -2.0 * kPi * regime.gamma);
    hp::real eps = hp::exp((hp::real)(-2.0 * kPi) * (hp::real)regime.gamma *
                           hp::log((hp::real)n));
    return {q, actual, predicted, rate, hp::to_double(hp::qpoch_dev_from_eps(eps))};
}

}  // namespace qasymp
