#pragma once

#include "qasymp/qseries.hpp"

namespace qasymp {

// h_n(sinh xi | q) = sum_{k=0}^n (q;q)_n q^{k(k-n)} (-1)^k e^{(n-2k) xi}
//                    / ((q;q)_k (q;q)_{n-k}).
// The overload taking exp_xi evaluates the same sum with e^{xi} given in
// log form, which is how the scaled arguments e^{xi_n} = q^{-ns} z arrive.
LogComplex ismail_masson(std::int64_t n, std::complex<double> xi, const QParam& q);
LogComplex ismail_masson_expxi(std::int64_t n, const LogComplex& exp_xi, const QParam& q);

// w_im(x) = q^{1/8} sqrt(-2/(pi log q)) exp(2 log^2(x + sqrt(x^2+1)) / log q)
double weight_im(double x, const QParam& q);

// h_n(x || q) = q^{n(n+1)/4} sqrt(w_im(x)/(q;q)_n) h_n(x|q)
double orthonormal_im(std::int64_t n, double x, const QParam& q);

// S_n(x;q) = sum_k q^{k^2} (-x)^k / ((q;q)_k (q;q)_{n-k})
LogComplex stieltjes_wigert(std::int64_t n, std::complex<double> x, const QParam& q);
LogComplex stieltjes_wigert(std::int64_t n, const LogComplex& x, const QParam& q);

// w_sw(x) = sqrt(-1/(2 pi log q)) exp(log^2(x/sqrt q) / (2 log q)), x > 0
double weight_sw(double x, const QParam& q);

// s_n(x || q) = sqrt(q^n (q;q)_n w_sw(x)) S_n(x;q)
double orthonormal_sw(std::int64_t n, double x, const QParam& q);

// L_n^{(alpha)}(x;q) = sum_k q^{k^2 + alpha k} (-x)^k (q^{alpha+1};q)_n
//                      / ((q;q)_k (q,q^{alpha+1};q)_{n-k}),  alpha > -1
LogComplex q_laguerre(std::int64_t n, double alpha, std::complex<double> x, const QParam& q);
LogComplex q_laguerre(std::int64_t n, double alpha, const LogComplex& x, const QParam& q);

enum class OrthoFamily { IsmailMasson, StieltjesWigert };

struct QuadratureConfig {
    double rel_tol = 1e-8;
    int max_levels = 14;
    int initial_points = 64;  // per half-width at the coarsest level
};

// Trapezoid quadrature of the orthogonality integral after the substitution
// that makes the weight Gaussian (x = sinh t for IM, x = e^u for SW);
// refinement halves the step until two levels agree. Converges
// geometrically for these analytic, Gaussian-decaying integrands.
double orthogonality_integral(OrthoFamily family, std::int64_t m, std::int64_t n, const QParam& q,
                              const QuadratureConfig& quad = {});

// The printed diagonal values the quadrature must reproduce.
double orthogonality_diagonal(OrthoFamily family, std::int64_t n, const QParam& q);

}  // namespace qasymp
