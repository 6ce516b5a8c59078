#include "qasymp/qfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qasymp {

namespace {

std::complex<double> log_of(const LogComplex& z) { return {z.log_mag, z.phase}; }

}  // namespace

LogComplex eq_euler(std::complex<double> z, const QParam& q, const TruncationPolicy& pol) {
    return eq_euler(LogComplex::from_complex(z), q, pol);
}

LogComplex eq_euler(const LogComplex& z, const QParam& q, const TruncationPolicy& pol) {
    if (z.is_zero()) return LogComplex::one();
    // product route: (-z;q)_inf
    CertifiedValue prod;
    if (z.log_mag < 690.0) {
        prod = qpoch_infinite(-z.to_complex(), q, pol);
    } else {
        // peel the factors with |z q^k| beyond double range as
        // (z q^k)(1 + 1/(z q^k)), then finish with the plain product
        double log_mag = 0.0, phase = 0.0;
        double lzqk = z.log_mag;
        for (; lzqk > 600.0; lzqk += q.ln_q) {
            log_mag += lzqk;
            phase += z.phase;
            std::complex<double> inv = std::exp(std::complex<double>(-lzqk, -z.phase));
            std::complex<double> corr = std::log(1.0 + inv);
            log_mag += corr.real();
            phase += corr.imag();
        }
        std::complex<double> zq = std::exp(std::complex<double>(lzqk, z.phase));
        CertifiedValue rest = qpoch_infinite(-zq, q, pol);
        prod.value = LogComplex::from_log(log_mag, phase) * rest.value;
        prod.rel_cert = rest.rel_cert;
    }
    // series route: sum q^{k(k-1)/2} z^k / (q;q)_k
    std::complex<double> lz = log_of(z);
    detail::PeakedSum series = detail::peaked_qseries(std::complex<double>(0.5 * q.ln_q, 0.0),
                                        lz + std::complex<double>(-0.5 * q.ln_q, 0.0), q, pol);
    // Agreement within truncation certificates plus the cancellation floor of
    // the series (near zeros of E_q the sum is far below its largest term).
    double tol = (1e-11 + 10.0 * prod.rel_cert) * std::exp(prod.value.log_mag) +
                 1e-12 * std::exp(series.peak_log);
    if (prod.value.abs_diff(series.value) > tol)
        throw InternalDisagreement("eq_euler: product and series routes disagree");
    return prod.value;
}

LogComplex aq_ramanujan(std::complex<double> z, const QParam& q, const TruncationPolicy& pol) {
    return aq_ramanujan(LogComplex::from_complex(z), q, pol);
}

LogComplex aq_ramanujan(const LogComplex& z, const QParam& q, const TruncationPolicy& pol) {
    if (z.is_zero()) return LogComplex::one();
    std::complex<double> lmz = log_of(z.negate());
    return detail::peaked_qseries(std::complex<double>(q.ln_q, 0.0), lmz, q, pol).value;
}

LogComplex jackson_bessel2(double nu, std::complex<double> z, const QParam& q,
                           const TruncationPolicy& pol) {
    if (nu <= -1.0) throw DomainError("jackson_bessel2: nu must be > -1");
    if (z == std::complex<double>(0.0, 0.0)) {
        if (nu != std::floor(nu))
            throw BranchError("jackson_bessel2: z = 0 with non-integer nu");
        return nu > 0.0 ? LogComplex{} : LogComplex::one();
    }
    return jackson_bessel2(nu, LogComplex::from_complex(z), q, pol);
}

LogComplex jackson_bessel2(double nu, const LogComplex& z, const QParam& q,
                           const TruncationPolicy& pol) {
    if (nu <= -1.0) throw DomainError("jackson_bessel2: nu must be > -1");
    if (z.is_zero()) return jackson_bessel2(nu, std::complex<double>(0.0, 0.0), q, pol);
    double qnu1 = std::exp((nu + 1.0) * q.ln_q);
    LogComplex pref = qpoch_infinite({qnu1, 0.0}, q, pol).value /
                      qpoch_infinite({q.q, 0.0}, q, pol).value;
    LogComplex half_z = z * LogComplex::from_real(0.5);
    // sum_k q^{k^2 + k nu} (-(z/2)^2)^k / ((q;q)_k (q^{nu+1};q)_k)
    std::complex<double> lw = log_of((half_z * half_z).negate());
    LogComplex series = detail::peaked_qseries(std::complex<double>(q.ln_q, 0.0),
                                      lw + std::complex<double>(nu * q.ln_q, 0.0), q, pol, qnu1)
                            .value;
    return pref * half_z.pow(nu) * series;
}

double envelope_bound(EnvelopeFamily family, std::complex<double> z, const QParam& q, double nu) {
    TruncationPolicy pol;
    double az = std::abs(z);
    if (az == 0.0) throw DomainError("envelope_bound: z must be nonzero");
    switch (family) {
        case EnvelopeFamily::EQ: {
            double lg = std::log(az / q.q);
            double log_b = -lg * lg / (2.0 * q.ln_q) -
                           qpoch_infinite({std::sqrt(q.q), 0.0}, q, pol).value.log_mag;
            return std::exp(log_b);
        }
        case EnvelopeFamily::AQ: {
            double b1 = std::exp(q.q * az / (1.0 - q.q));
            double lg = std::log(az);
            double b2 = std::exp(qpoch_infinite({-std::sqrt(q.q), 0.0}, q, pol).value.log_mag -
                                 lg * lg / (2.0 * q.ln_q));
            return std::min(b1, b2);
        }
        default: {
            double lg = std::log(az * az * std::exp(nu * q.ln_q) / 4.0);
            double log_b = qpoch_infinite({-std::sqrt(q.q), 0.0}, q, pol).value.log_mag -
                           qpoch_infinite({q.q, 0.0}, q, pol).value.log_mag +
                           nu * std::log(az / 2.0) - lg * lg / (2.0 * q.ln_q);
            return std::exp(log_b);
        }
    }
}

}  // namespace qasymp
