#pragma once

// High-precision scalar used where certified rates fall below binary64
// resolution (corollary sweeps, q->1 regime deviations). __float128 via
// quadmath on GCC/x86; long double elsewhere.

#if defined(__SIZEOF_FLOAT128__) && !defined(QASYMP_NO_FLOAT128)
#include <quadmath.h>
#define QASYMP_HAVE_FLOAT128 1
#else
#include <cmath>
#define QASYMP_HAVE_FLOAT128 0
#endif

namespace qasymp::hp {

#if QASYMP_HAVE_FLOAT128
using real = __float128;
inline real exp(real x) { return expq(x); }
inline real log(real x) { return logq(x); }
inline real log1p(real x) { return log1pq(x); }
inline real expm1(real x) { return expm1q(x); }
inline real sqrt(real x) { return sqrtq(x); }
inline real cos(real x) { return cosq(x); }
inline real sin(real x) { return sinq(x); }
inline real fabs(real x) { return fabsq(x); }
inline real pow(real x, real y) { return powq(x, y); }
inline real floor(real x) { return floorq(x); }
inline constexpr real pi() { return 3.14159265358979323846264338327950288419716939937510Q; }
#else
using real = long double;
inline real exp(real x) { return std::exp(x); }
inline real log(real x) { return std::log(x); }
inline real log1p(real x) { return std::log1p(x); }
inline real expm1(real x) { return std::expm1(x); }
inline real sqrt(real x) { return std::sqrt(x); }
inline real cos(real x) { return std::cos(x); }
inline real sin(real x) { return std::sin(x); }
inline real fabs(real x) { return std::fabs(x); }
inline real pow(real x, real y) { return std::pow(x, y); }
inline real floor(real x) { return std::floor(x); }
inline constexpr real pi() { return 3.141592653589793238462643383279502884L; }
#endif

inline double to_double(real x) { return static_cast<double>(x); }

// prod_{k>=1} (1 - eps^k) - 1, the exact correction factor of the q->1
// regime expansions; cancellation-free at any magnitude of eps.
inline constexpr double tiny_log_floor() {
#if QASYMP_HAVE_FLOAT128
    return -11000.0;  // below float128 min subnormal exponent
#else
    return -11000.0;  // long double on x86 reaches ~1e-4951
#endif
}

inline real qpoch_dev_from_eps(real eps) {
    if (eps <= 0) return 0;
    real s = 0;
    real ek = eps;
    for (int k = 1; k < 100000; ++k) {
        if (ek == 0) break;
        s += log1p(-ek);
        ek *= eps;
        if (fabs(ek) < fabs(s) * (real)1e-35) {
            s += -ek / (1 - eps);  // geometric remainder estimate
            break;
        }
    }
    return expm1(s);
}

}  // namespace qasymp::hp
