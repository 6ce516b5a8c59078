#pragma once

// Brute-force oracles used across the test suite. Everything here is
// independent of the library's evaluation paths: plain products and sums in
// long double, front-to-back.

#include <complex>
#include <cstdint>

namespace oracles {

using CLD = std::complex<long double>;

// (a;q)_inf by direct multiplication of `factors` factors.
inline CLD qpoch_product(CLD a, CLD q, int factors = 500) {
    CLD prod = 1.0L;
    CLD aqk = a;
    for (int k = 0; k < factors; ++k) {
        prod *= (CLD(1.0L) - aqk);
        aqk *= q;
    }
    return prod;
}

// (a;q)_n
inline CLD qpoch_finite(CLD a, CLD q, std::int64_t n) {
    CLD prod = 1.0L;
    CLD aqk = a;
    for (std::int64_t k = 0; k < n; ++k) {
        prod *= (CLD(1.0L) - aqk);
        aqk *= q;
    }
    return prod;
}

// theta_lambda(v|tau) by the bilateral definition, |k| <= K front-to-back.
inline CLD theta_direct(int lambda, CLD v, CLD tau, int K = 60) {
    const long double pi = 3.14159265358979323846264338327950288L;
    CLD i(0.0L, 1.0L);
    CLD s = 0.0L;
    for (int k = -K; k <= K; ++k) {
        long double kk = static_cast<long double>(k);
        CLD term;
        switch (lambda) {
            case 1:
                term = powl(-1.0L, k) * std::exp(i * pi * tau * (kk + 0.5L) * (kk + 0.5L)) *
                       std::exp(CLD(0.0L, (2.0L * kk + 1.0L) * pi) * v);
                break;
            case 2:
                term = std::exp(i * pi * tau * (kk + 0.5L) * (kk + 0.5L)) *
                       std::exp(CLD(0.0L, (2.0L * kk + 1.0L) * pi) * v);
                break;
            case 3:
                term = std::exp(i * pi * tau * kk * kk) * std::exp(CLD(0.0L, 2.0L * kk * pi) * v);
                break;
            default:
                term = powl(-1.0L, k) * std::exp(i * pi * tau * kk * kk) *
                       std::exp(CLD(0.0L, 2.0L * kk * pi) * v);
                break;
        }
        s += term;
    }
    if (lambda == 1) s *= -i;
    return s;
}

// E_q(z) series, front-to-back.
inline CLD eq_series(CLD z, long double q, int K = 200) {
    CLD s = 0.0L;
    CLD zk = 1.0L;
    long double qpoch = 1.0L;
    long double qk = 1.0L;  // q^k
    long double qhalf = 1.0L;  // q^{k(k-1)/2}
    for (int k = 0; k < K; ++k) {
        s += qhalf / qpoch * zk;
        zk *= z;
        qk *= q;
        qhalf *= powl(q, k);  // q^{k(k+1)/2} next
        qpoch *= (1.0L - qk);
    }
    return s;
}

// A_q(z) series, front-to-back.
inline CLD aq_series(CLD z, long double q, int K = 200) {
    CLD s = 0.0L;
    CLD mzk = 1.0L;
    long double qpoch = 1.0L;
    long double qk = 1.0L;
    for (int k = 0; k < K; ++k) {
        s += powl(q, static_cast<long double>(k) * k) / qpoch * mzk;
        mzk *= -z;
        qk *= q;
        qpoch *= (1.0L - qk);
    }
    return s;
}

}  // namespace oracles
