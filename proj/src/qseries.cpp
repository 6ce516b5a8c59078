#include "qasymp/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qasymp {

namespace {

// log(1 - w) as a LogComplex-ready complex log, stable for |w| small
// (log1p path) and |w| huge (factor out w).
std::complex<double> log_one_minus(std::complex<double> w) {
    double aw = std::abs(w);
    if (aw < 0.5) {
        // log(1-w) = log1p(-w); complex log1p via the real formula on
        // |1-w|^2 keeps full precision for small w.
        std::complex<double> omw = 1.0 - w;
        double n2 = std::norm(omw);
        return {0.5 * std::log1p(n2 - 1.0), std::arg(omw)};
    }
    if (aw > 2.0) {
        // log(-w (1 - 1/w)) = log(-w) + log1p(-1/w)
        std::complex<double> mw = -w;
        std::complex<double> corr = std::log(1.0 - 1.0 / w);
        return {std::log(aw) + corr.real(), std::arg(mw) + corr.imag()};
    }
    std::complex<double> l = std::log(1.0 - w);
    return l;
}

}  // namespace

LogComplex qpoch_finite(std::complex<double> a, const QParam& q, std::int64_t n) {
    if (n < 0) throw DomainError("qpoch_finite: n must be >= 0");
    double log_mag = 0.0, phase = 0.0;
    double aq = std::abs(a);
    for (std::int64_t k = 0; k < n; ++k) {
        double fk = aq * std::exp(q.ln_q * static_cast<double>(k));
        if (fk < 1e-19) {
            // Remaining factors differ from 1 by < sum |a| q^j <= fk/(1-q):
            // below double resolution of the accumulated log.
            double tail = fk / (1.0 - q.q);
            if (tail < 1e-18) break;
        }
        std::complex<double> w = a * std::exp(q.ln_q * static_cast<double>(k));
        if (w == std::complex<double>(1.0, 0.0)) return LogComplex{};  // exact zero factor
        std::complex<double> l = log_one_minus(w);
        if (!std::isfinite(l.real())) return LogComplex{};
        log_mag += l.real();
        phase += l.imag();
    }
    return LogComplex::from_log(log_mag, phase);
}

CertifiedValue qpoch_infinite(std::complex<double> a, const QParam& q,
                              const TruncationPolicy& pol) {
    return detail::qpoch_infinite_cbase(a, {q.q, 0.0}, pol);
}

Lemma1Bounds lemma1_bounds(std::complex<double> z, const QParam& q, std::int64_t n) {
    double ratio = std::abs(z) * std::exp(q.ln_q * static_cast<double>(n)) / (1.0 - q.q);
    if (!(ratio > 0.0 && ratio < 0.5))
        throw HypothesisViolated("lemma1_bounds: |z| q^n / (1-q) not in (0, 1/2)");
    double b = 2.0 * ratio;
    return {b, b};
}

LogComplex qgamma(double x, const QParam& q, const TruncationPolicy& pol) {
    if (x <= 0.0 && x == std::floor(x))
        throw PoleError("qgamma: pole at non-positive integer x");
    LogComplex num = qpoch_infinite({q.q, 0.0}, q, pol).value;
    double qx = std::exp(x * q.ln_q);
    LogComplex den = qpoch_infinite({qx, 0.0}, q, pol).value;
    LogComplex pw = LogComplex::from_real(1.0 - q.q).pow(1.0 - x);
    return num / den * pw;
}

namespace detail {

CertifiedValue qpoch_infinite_cbase(std::complex<double> a, std::complex<double> qc,
                                    const TruncationPolicy& pol) {
    double absq = std::abs(qc);
    if (!(absq < 1.0)) throw DomainError("qpoch_infinite: |q| must be < 1");
    if (a == std::complex<double>(0.0, 0.0)) return {LogComplex::one(), 0.0};

    double log_mag = 0.0, phase = 0.0;
    std::complex<double> aqk = a;
    double one_minus_q = 1.0 - absq;
    for (std::int64_t k = 0; k < pol.max_terms; ++k) {
        double m = std::abs(aqk);
        double tail = 2.0 * m / one_minus_q;
        if (m < pol.rel_tol * one_minus_q && tail < pol.rel_tol)
            return {LogComplex::from_log(log_mag, phase), tail};
        if (aqk == std::complex<double>(1.0, 0.0)) return {LogComplex{}, 0.0};
        std::complex<double> l = log_one_minus(aqk);
        if (!std::isfinite(l.real())) return {LogComplex{}, 0.0};
        log_mag += l.real();
        phase += l.imag();
        aqk *= qc;
    }
    throw NonConvergent("qpoch_infinite: tail bound not reached within max_terms");
}

double log_qpoch_tail(const QParam& q, std::int64_t start, const TruncationPolicy& pol) {
    double s = 0.0;
    double qi = std::exp(q.ln_q * static_cast<double>(start));
    for (std::int64_t i = 0; i < pol.max_terms; ++i) {
        if (qi < 1e-20) break;
        s += std::log1p(-qi);
        qi *= q.q;
    }
    return s;
}

std::vector<double> log_qpoch_prefix(const QParam& q, std::int64_t n) {
    return log_qpoch_prefix(q.q, q, n);
}

// sum_{k>=0} exp(c2 k^2 + c1 k) / ((q;q)_k [(c;q)_k]), Re(c2) < 0, walked
// from the peak index outward with compensated accumulation. Gaussian-in-k
// terms with phase near pi lose precision to cancellation when summed
// front-to-back; peak-first ordering keeps the scaled sum O(1).
PeakedSum peaked_qseries(std::complex<double> c2, std::complex<double> c1, const QParam& q,
                         const TruncationPolicy& pol, double extra_pochbase) {
    auto re_e = [&](double k) { return (c2.real() * k + c1.real()) * k; };
    double kpeak = std::max(0.0, -c1.real() / (2.0 * c2.real()));
    std::int64_t k0 = static_cast<std::int64_t>(std::llround(kpeak));

    std::vector<double> logpoch{0.0};  // log[(q;q)_k (c;q)_k], grown on demand
    auto poch_up_to = [&](std::int64_t k) {
        while (static_cast<std::int64_t>(logpoch.size()) <= k) {
            std::int64_t i = static_cast<std::int64_t>(logpoch.size());
            double f = std::log1p(-std::exp(q.ln_q * static_cast<double>(i)));
            if (extra_pochbase > 0.0)
                f += std::log1p(-extra_pochbase * std::exp(q.ln_q * static_cast<double>(i - 1)));
            logpoch.push_back(logpoch.back() + f);
        }
        return logpoch[static_cast<std::size_t>(k)];
    };
    auto log_term = [&](std::int64_t k) { return re_e(static_cast<double>(k)) - poch_up_to(k); };

    // worst-case one-step poch factor, bounds every denominator ratio
    double log_poch_floor = std::log1p(-q.q);
    if (extra_pochbase > 0.0) log_poch_floor += std::log1p(-std::max(q.q, extra_pochbase));

    double peak_log = log_term(k0);
    LogAccumulator acc;
    std::int64_t budget = pol.max_terms;
    for (int dir : {+1, -1}) {
        std::int64_t k = (dir > 0) ? k0 : k0 - 1;
        while (k >= 0) {
            if (budget-- <= 0) throw NonConvergent("q-series: max_terms exhausted");
            double kk = static_cast<double>(k);
            std::complex<double> e = (c2 * kk + c1) * kk;
            double lp = poch_up_to(k);
            acc.add(LogComplex::from_log(e.real() - lp, e.imag()));
            if (dir > 0 && kk >= kpeak) {
                // For j >= k the term ratio is exp(re_e(j+1)-re_e(j)) over a
                // poch factor >= exp(log_poch_floor); the exponent increments
                // only shrink (Re c2 < 0), so the ratio at k+1 majorizes the
                // whole tail.
                double r = std::exp(re_e(kk + 2.0) - re_e(kk + 1.0) - log_poch_floor);
                if (r < 1.0) {
                    double tail = std::exp(log_term(k + 1) - peak_log) / (1.0 - r);
                    if (tail < pol.rel_tol) break;
                }
            }
            k += dir;
        }
    }
    return {acc.value(), acc.peak_log()};
}

std::vector<double> log_qpoch_prefix(double c, const QParam& q, std::int64_t n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = 0.0;
    double cqk = c;  // c q^{k-1} at step k
    double acc = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        acc += std::log1p(-cqk);
        out[static_cast<std::size_t>(k)] = acc;
        cqk *= q.q;
    }
    return out;
}

}  // namespace detail

}  // namespace qasymp
