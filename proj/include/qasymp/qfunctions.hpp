#pragma once

#include "qasymp/qseries.hpp"

namespace qasymp {

// Euler's q-exponential E_q(z) = (-z;q)_inf = sum_k q^{k(k-1)/2} z^k/(q;q)_k.
// Evaluates both the product and the series and checks agreement within the
// combined truncation certificates (InternalDisagreement on failure); the
// product value is returned. The LogComplex overload accepts arguments far
// outside double range.
LogComplex eq_euler(std::complex<double> z, const QParam& q, const TruncationPolicy& pol = {});
LogComplex eq_euler(const LogComplex& z, const QParam& q, const TruncationPolicy& pol = {});

// Ramanujan's entire function A_q(z) = sum_k q^{k^2} (-z)^k / (q;q)_k.
LogComplex aq_ramanujan(std::complex<double> z, const QParam& q, const TruncationPolicy& pol = {});
LogComplex aq_ramanujan(const LogComplex& z, const QParam& q, const TruncationPolicy& pol = {});

// Jackson's q-Bessel function of the second kind, nu > -1:
//   J^{(2)}_nu(z;q) = (q^{nu+1};q)_inf/(q;q)_inf
//                     * sum_k q^{k^2+k nu} (-1)^k (z/2)^{2k+nu} / ((q,q^{nu+1};q)_k).
// (z/2)^nu takes the principal branch; z = 0 with non-integer nu is a
// BranchError.
LogComplex jackson_bessel2(double nu, std::complex<double> z, const QParam& q,
                           const TruncationPolicy& pol = {});
LogComplex jackson_bessel2(double nu, const LogComplex& z, const QParam& q,
                           const TruncationPolicy& pol = {});

// Printed magnitude envelopes; callers assert |f(z)| <= envelope_bound(...).
enum class EnvelopeFamily { EQ, AQ, JNU };
double envelope_bound(EnvelopeFamily family, std::complex<double> z, const QParam& q,
                      double nu = 0.0);

}  // namespace qasymp
