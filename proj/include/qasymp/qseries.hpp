#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qasymp/errors.hpp"
#include "qasymp/log_complex.hpp"

namespace qasymp {

// The base q in (0,1) with its log cached; every series in the library is a
// power series in this q.
struct QParam {
    double q;
    double ln_q;

    explicit QParam(double q_) : q(q_), ln_q(std::log(q_)) {
        if (!(q_ > 0.0 && q_ < 1.0)) throw DomainError("QParam: q must lie in (0,1)");
    }
};

// When to stop an infinite product/sum: relative tail target plus a hard
// term cap. Truncation is always certified (Lemma-1 style geometric tail
// bound below rel_tol), never by term smallness alone.
struct TruncationPolicy {
    double rel_tol = 1e-16;
    std::int64_t max_terms = 1'000'000;
};

// A value plus the guaranteed relative error of its truncation.
struct CertifiedValue {
    LogComplex value;
    double rel_cert = 0.0;
};

// (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k), exact zero if a factor vanishes.
LogComplex qpoch_finite(std::complex<double> a, const QParam& q, std::int64_t n);

// (a;q)_inf = prod_{k>=0} (1 - a q^k), truncated once the Lemma-1 tail bound
// 2|a|q^k/(1-q) falls below pol.rel_tol. The certificate is returned.
CertifiedValue qpoch_infinite(std::complex<double> a, const QParam& q,
                              const TruncationPolicy& pol = {});

// Both remainder bounds of Lemma 1: |(zq^n;q)_inf - 1| and
// |1/(zq^n;q)_inf - 1| are each at most 2|z|q^n/(1-q), valid under the
// hypothesis 0 < |z|q^n/(1-q) < 1/2. Throws HypothesisViolated otherwise,
// so callers never use the lemma outside its window.
struct Lemma1Bounds {
    double r1_bound;
    double r2_bound;
};
Lemma1Bounds lemma1_bounds(std::complex<double> z, const QParam& q, std::int64_t n);

// Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}; poles at x = 0,-1,-2,...
LogComplex qgamma(double x, const QParam& q, const TruncationPolicy& pol = {});

namespace detail {

// (a;qc)_inf for a complex base |qc| < 1; the real-base operations and the
// theta triple products share this.
CertifiedValue qpoch_infinite_cbase(std::complex<double> a, std::complex<double> qc,
                                    const TruncationPolicy& pol);

// log (q^{start};q)_inf = sum_{i>=start} log1p(-q^i), real q. Cheap for
// large start (the factors are 1 + O(q^start)).
double log_qpoch_tail(const QParam& q, std::int64_t start, const TruncationPolicy& pol = {});

// Prefix logs L[i] = log (q;q)_i for i = 0..n.
std::vector<double> log_qpoch_prefix(const QParam& q, std::int64_t n);
// Same for (c;q)_i with 0 < c < 1 real (e.g. c = q^{alpha+1}).
std::vector<double> log_qpoch_prefix(double c, const QParam& q, std::int64_t n);

// sum_{k>=0} exp(c2 k^2 + c1 k) / ((q;q)_k [(c;q)_k]) with Re(c2) < 0,
// walked outward from the peak index with compensated accumulation and a
// certified geometric tail. peak_log reports the largest term (the
// cancellation reference level).
struct PeakedSum {
    LogComplex value;
    double peak_log;
};
PeakedSum peaked_qseries(std::complex<double> c2, std::complex<double> c1, const QParam& q,
                         const TruncationPolicy& pol, double extra_pochbase = 0.0);

}  // namespace detail

}  // namespace qasymp
