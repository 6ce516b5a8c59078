#include "qasymp/qpolynomials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qasymp {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Finite sum sum_{k=0}^n exp(c2 k^2 + c1 k + offset_k) with offset_k real,
// accumulated outward from the peak index.
LogComplex finite_peaked_sum(std::int64_t n, std::complex<double> c2, std::complex<double> c1,
                             const std::function<double(std::int64_t)>& log_coeff) {
    double kpeak = std::clamp(-c1.real() / (2.0 * c2.real()), 0.0, static_cast<double>(n));
    std::int64_t k0 = static_cast<std::int64_t>(std::llround(kpeak));
    LogAccumulator acc;
    for (int dir : {+1, -1}) {
        std::int64_t k = (dir > 0) ? k0 : k0 - 1;
        for (; k >= 0 && k <= n; k += dir) {
            double kk = static_cast<double>(k);
            std::complex<double> e = (c2 * kk + c1) * kk;
            acc.add(LogComplex::from_log(e.real() + log_coeff(k), e.imag()));
        }
    }
    return acc.value();
}

}  // namespace

LogComplex ismail_masson(std::int64_t n, std::complex<double> xi, const QParam& q) {
    return ismail_masson_expxi(n, LogComplex::from_complex(std::exp(xi)), q);
}

LogComplex ismail_masson_expxi(std::int64_t n, const LogComplex& exp_xi, const QParam& q) {
    if (n < 0) throw DomainError("ismail_masson: n >= 0");
    if (exp_xi.is_zero()) throw DomainError("ismail_masson: e^xi must be nonzero");
    auto lp = detail::log_qpoch_prefix(q, n);
    std::complex<double> lE(exp_xi.log_mag, exp_xi.phase);
    // term_k = (q;q)_n q^{k(k-n)} (-1)^k E^{n-2k} / ((q;q)_k (q;q)_{n-k})
    std::complex<double> c2(q.ln_q, 0.0);
    std::complex<double> c1 = -static_cast<double>(n) * q.ln_q - 2.0 * lE +
                              std::complex<double>(0.0, kPi);
    LogComplex head = LogComplex::from_log(lp[static_cast<std::size_t>(n)] +
                                               static_cast<double>(n) * lE.real(),
                                           static_cast<double>(n) * lE.imag());
    LogComplex sum = finite_peaked_sum(n, c2, c1, [&](std::int64_t k) {
        return -lp[static_cast<std::size_t>(k)] - lp[static_cast<std::size_t>(n - k)];
    });
    return head * sum;
}

double weight_im(double x, const QParam& q) {
    double xi = std::asinh(x);
    double log_w = 0.125 * q.ln_q + 0.5 * std::log(-2.0 / (kPi * q.ln_q)) +
                   2.0 * xi * xi / q.ln_q;
    return std::exp(log_w);
}

double orthonormal_im(std::int64_t n, double x, const QParam& q) {
    if (n < 0) throw DomainError("orthonormal_im: n >= 0");
    double xi = std::asinh(x);
    LogComplex h = ismail_masson(n, {xi, 0.0}, q);
    if (h.is_zero()) return 0.0;
    auto lp = detail::log_qpoch_prefix(q, n);
    double log_w = 0.125 * q.ln_q + 0.5 * std::log(-2.0 / (kPi * q.ln_q)) +
                   2.0 * xi * xi / q.ln_q;
    double lg = 0.25 * static_cast<double>(n) * static_cast<double>(n + 1) * q.ln_q +
                0.5 * (log_w - lp[static_cast<std::size_t>(n)]) + h.log_mag;
    double sign = std::cos(h.phase);  // real value: phase is 0 or pi
    return std::copysign(std::exp(lg), sign);
}

LogComplex stieltjes_wigert(std::int64_t n, std::complex<double> x, const QParam& q) {
    return stieltjes_wigert(n, LogComplex::from_complex(x), q);
}

LogComplex stieltjes_wigert(std::int64_t n, const LogComplex& x, const QParam& q) {
    if (n < 0) throw DomainError("stieltjes_wigert: n >= 0");
    auto lp = detail::log_qpoch_prefix(q, n);
    std::complex<double> c2(q.ln_q, 0.0);
    std::complex<double> c1;
    if (x.is_zero()) {
        // only k = 0 survives
        return LogComplex::from_log(-lp[static_cast<std::size_t>(n)], 0.0);
    }
    c1 = std::complex<double>(x.log_mag, x.phase + kPi);
    return finite_peaked_sum(n, c2, c1, [&](std::int64_t k) {
        return -lp[static_cast<std::size_t>(k)] - lp[static_cast<std::size_t>(n - k)];
    });
}

double weight_sw(double x, const QParam& q) {
    if (!(x > 0.0)) throw DomainError("weight_sw: x must be > 0");
    double lg = std::log(x) - 0.5 * q.ln_q;
    double log_w = 0.5 * std::log(-1.0 / (2.0 * kPi * q.ln_q)) + lg * lg / (2.0 * q.ln_q);
    return std::exp(log_w);
}

double orthonormal_sw(std::int64_t n, double x, const QParam& q) {
    if (n < 0) throw DomainError("orthonormal_sw: n >= 0");
    if (!(x > 0.0)) throw DomainError("orthonormal_sw: x must be > 0");
    LogComplex s = stieltjes_wigert(n, std::complex<double>(x, 0.0), q);
    if (s.is_zero()) return 0.0;
    auto lp = detail::log_qpoch_prefix(q, n);
    double lg_x = std::log(x) - 0.5 * q.ln_q;
    double log_w = 0.5 * std::log(-1.0 / (2.0 * kPi * q.ln_q)) + lg_x * lg_x / (2.0 * q.ln_q);
    double lg = 0.5 * (static_cast<double>(n) * q.ln_q + lp[static_cast<std::size_t>(n)] + log_w) +
                s.log_mag;
    return std::copysign(std::exp(lg), std::cos(s.phase));
}

LogComplex q_laguerre(std::int64_t n, double alpha, std::complex<double> x, const QParam& q) {
    return q_laguerre(n, alpha, LogComplex::from_complex(x), q);
}

LogComplex q_laguerre(std::int64_t n, double alpha, const LogComplex& x, const QParam& q) {
    if (n < 0) throw DomainError("q_laguerre: n >= 0");
    if (!(alpha > -1.0)) throw DomainError("q_laguerre: alpha must be > -1");
    auto lp = detail::log_qpoch_prefix(q, n);
    double qa1 = std::exp((alpha + 1.0) * q.ln_q);
    auto lpa = detail::log_qpoch_prefix(qa1, q, n);
    double head = lpa[static_cast<std::size_t>(n)];
    if (x.is_zero()) {
        return LogComplex::from_log(
            head - lp[static_cast<std::size_t>(n)] - lpa[static_cast<std::size_t>(n)], 0.0);
    }
    std::complex<double> c2(q.ln_q, 0.0);
    std::complex<double> c1 =
        std::complex<double>(alpha * q.ln_q + x.log_mag, x.phase + kPi);
    LogComplex sum = finite_peaked_sum(n, c2, c1, [&](std::int64_t k) {
        return -lp[static_cast<std::size_t>(k)] - lp[static_cast<std::size_t>(n - k)] -
               lpa[static_cast<std::size_t>(n - k)];
    });
    return LogComplex::from_log(head, 0.0) * sum;
}

namespace {

// log of the absolute integrand plus its sign, for the two substituted
// orthogonality integrands.
struct LogIntegrand {
    double log_abs;
    double sign;
};

LogIntegrand im_integrand(double t, std::int64_t m, std::int64_t n, const QParam& q) {
    LogComplex hm = ismail_masson(m, {t, 0.0}, q);
    LogComplex hn = ismail_masson(n, {t, 0.0}, q);
    if (hm.is_zero() || hn.is_zero()) return {-1e300, 1.0};
    double log_w = 0.125 * q.ln_q + 0.5 * std::log(-2.0 / (kPi * q.ln_q)) + 2.0 * t * t / q.ln_q;
    double log_cosh = (std::fabs(t) > 20.0) ? std::fabs(t) - std::log(2.0)
                                            : std::log(std::cosh(t));
    double s = std::cos(hm.phase) * std::cos(hn.phase) >= 0.0 ? 1.0 : -1.0;
    return {hm.log_mag + hn.log_mag + log_w + log_cosh, s};
}

LogIntegrand sw_integrand(double u, std::int64_t m, std::int64_t n, const QParam& q) {
    double x = std::exp(u);
    LogComplex sm = stieltjes_wigert(m, std::complex<double>(x, 0.0), q);
    LogComplex sn = stieltjes_wigert(n, std::complex<double>(x, 0.0), q);
    if (sm.is_zero() || sn.is_zero()) return {-1e300, 1.0};
    double lg = u - 0.5 * q.ln_q;
    double log_w = 0.5 * std::log(-1.0 / (2.0 * kPi * q.ln_q)) + lg * lg / (2.0 * q.ln_q);
    double s = std::cos(sm.phase) * std::cos(sn.phase) >= 0.0 ? 1.0 : -1.0;
    return {sm.log_mag + sn.log_mag + log_w + u, s};
}

}  // namespace

double orthogonality_diagonal(OrthoFamily family, std::int64_t n, const QParam& q) {
    auto lp = detail::log_qpoch_prefix(q, n);
    if (family == OrthoFamily::IsmailMasson)
        return std::exp(-0.5 * static_cast<double>(n) * static_cast<double>(n + 1) * q.ln_q +
                        lp[static_cast<std::size_t>(n)]);
    return std::exp(-static_cast<double>(n) * q.ln_q - lp[static_cast<std::size_t>(n)]);
}

double orthogonality_integral(OrthoFamily family, std::int64_t m, std::int64_t n, const QParam& q,
                              const QuadratureConfig& quad) {
    if (m < 0 || n < 0) throw DomainError("orthogonality_integral: m, n >= 0");
    const double scale = std::sqrt(orthogonality_diagonal(family, m, q) *
                                   orthogonality_diagonal(family, n, q));
    double center = 0.0, half_width = 0.0;
    if (family == OrthoFamily::IsmailMasson) {
        // integrand decays like exp(2t^2/log q + (m+n+1)|t|)
        double b = static_cast<double>(m + n + 1);
        double L = -q.ln_q;
        half_width = (b * L + std::sqrt(b * b * L * L + 8.0 * 170.0 * L)) / 4.0;
    } else {
        // weight Gaussian in u centered at log sqrt(q), shifted by growth
        double b = static_cast<double>(m + n + 1);
        double L = -q.ln_q;
        center = 0.5 * q.ln_q + b * L;
        half_width = b * L + std::sqrt(2.0 * L * 170.0);
    }

    auto level_sum = [&](std::int64_t points) {
        double h = 2.0 * half_width / static_cast<double>(points);
        double acc = 0.0, comp = 0.0;
        for (std::int64_t i = 0; i <= points; ++i) {
            double t = center - half_width + h * static_cast<double>(i);
            LogIntegrand f = (family == OrthoFamily::IsmailMasson) ? im_integrand(t, m, n, q)
                                                                   : sw_integrand(t, m, n, q);
            double v = f.sign * std::exp(f.log_abs);
            if (i == 0 || i == points) v *= 0.5;
            double y = v - comp;
            double s = acc + y;
            comp = (s - acc) - y;
            acc = s;
        }
        return acc * h;
    };

    std::int64_t points = quad.initial_points;
    double prev = level_sum(points);
    for (int level = 0; level < quad.max_levels; ++level) {
        points *= 2;
        double cur = level_sum(points);
        if (std::fabs(cur - prev) <= quad.rel_tol * std::max(std::fabs(cur), scale)) return cur;
        prev = cur;
    }
    throw QuadratureNotConverged("orthogonality_integral: refinements disagree");
}

}  // namespace qasymp
