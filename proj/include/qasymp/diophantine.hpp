#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qasymp/errors.hpp"

namespace qasymp {

// Reduced fraction p/q, q >= 1.
struct RationalNumber {
    long long p = 0;
    long long q = 1;

    RationalNumber() = default;
    RationalNumber(long long num, long long den);
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    bool operator==(const RationalNumber&) const = default;
};

// A real scanned for admissible indices. Doubles lose digits of frac(n x)
// linearly in log n, so the named irrationals carry a two-double (hi+lo)
// representation and arbitrary doubles are promoted with lo = 0.
struct RealParam {
    double hi = 0.0;
    double lo = 0.0;

    RealParam() = default;
    RealParam(double v) : hi(v) {}
    static RealParam sqrt2();
    static RealParam golden();
    static RealParam euler_e();
    static RealParam pi();
    // "sqrt2" | "golden" | "e" | "pi" | "p/q" | decimal literal
    static RealParam parse(const std::string& text);
    double value() const { return hi + lo; }
};

// An index n with the fractional decompositions a theorem case requires:
//   -n tau = m + (target) + a_n   (tau side, m >= 0)
//    n theta = m1 + (target) + b_n (theta side)
// Sides not constrained by the producing operation stay unset.
struct AdmissibleIndex {
    long long n = 0;
    bool has_tau_side = false;
    long long m = 0;
    double a_n = 0.0;
    bool has_theta_side = false;
    long long m1 = 0;
    double b_n = 0.0;
    double rho = 0.0;
};

struct Convergent {
    long long p;
    long long q;
};

// Continued-fraction convergents p_k/q_k of theta, best rational
// approximations with |q_k theta - p_k| < 1/q_{k+1}. Stops early on a
// rational theta (exact expansion) or at int64 overflow.
std::vector<Convergent> continued_fraction(const RealParam& theta, int depth);

// Smallest n <= n_max with |n theta - beta - round(.)| <= 3/n (Chebyshev's
// bound); nullopt means the scan window was too small, not a counterexample.
std::optional<AdmissibleIndex> chebyshev_witness(const RealParam& theta, double beta,
                                                 long long n_max);

// All n <= n_max with |n theta - beta - m1| < n^{-rho} (strict; ties at the
// threshold excluded).
std::vector<AdmissibleIndex> scan_admissible(const RealParam& theta, double beta, double rho,
                                             long long n_max);

// All n <= n_max satisfying both -n tau = m + beta1 + a_n (m >= 0) and
// n theta = m1 + beta2 + b_n with |a_n|, |b_n| < n^{-rho}.
std::vector<AdmissibleIndex> scan_joint(const RealParam& tau, const RealParam& theta,
                                        double beta1, double beta2, double rho, long long n_max);

// S(theta) = { frac(n theta) : n in N } for rational theta: the multiples of
// 1/q, all q of them once the fraction is reduced.
std::vector<RationalNumber> sset_rational(const RationalNumber& theta);

// The arithmetic progression n0 + k L realizing -n tau = m + lambda and
// n theta = m1 + lambda1 exactly (a_n = b_n = 0), via CRT on the reduced
// denominators. nullopt when the residue targets are incompatible or the
// targets lie outside S(-tau) x S(theta).
struct CrtProgression {
    long long n0;
    long long stride;
};
std::optional<CrtProgression> crt_joint_rational(const RationalNumber& tau,
                                                 const RationalNumber& theta,
                                                 const RationalNumber& lambda,
                                                 const RationalNumber& lambda1);

// Exact decomposition of -n*tau = m + lambda (fills the tau side) and
// n*theta = m1 + lambda1 (theta side) for rational tau/theta; the residuals
// are exactly zero by construction. Used to build theorem-case indices.
AdmissibleIndex admissible_from_rational(const RationalNumber& tau, const RationalNumber& theta,
                                         const RationalNumber& lambda,
                                         const RationalNumber& lambda1, long long n);

namespace detail {
// frac residual r = x*n - beta - round(x*n - beta) computed in two-double
// arithmetic; |r| <= 1/2.
double residual_near_integer(const RealParam& x, long long n, double beta, long long* nearest);
}  // namespace detail

}  // namespace qasymp
