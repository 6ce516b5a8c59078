#include "qasymp/diophantine.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "qasymp/parallel.hpp"

namespace qasymp {

namespace {

// Minimal double-double arithmetic (Dekker/Knuth): enough accuracy that
// frac(n x) keeps ~30 digits for n up to 1e7.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

DD dd_sub_d(DD a, double b) { return dd_add(a, {-b, 0.0}); }

DD dd_div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = dd_add(a, dd_neg(dd_mul_d(b, q1)));
    double q2 = r.hi / b.hi;
    r = dd_add(r, dd_neg(dd_mul_d(b, q2)));
    double q3 = r.hi / b.hi;
    return quick_two_sum(q1, q2 + q3);
}

DD dd_from(double hi, double lo) { return quick_two_sum(hi, lo); }

// x - round(x), exact in dd
DD dd_frac_signed(DD x, long long* nearest) {
    double r = std::round(x.hi);
    DD f = dd_add(x, {-r, 0.0});
    if (f.hi > 0.5 || (f.hi == 0.5 && f.lo > 0.0)) {
        r += 1.0;
        f = dd_add(f, {-1.0, 0.0});
    } else if (f.hi < -0.5 || (f.hi == -0.5 && f.lo < 0.0)) {
        r -= 1.0;
        f = dd_add(f, {1.0, 0.0});
    }
    *nearest = static_cast<long long>(r);
    return f;
}

long long mod_pos(long long a, long long m) {
    long long r = a % m;
    return r < 0 ? r + m : r;
}

long long mod_inverse(long long a, long long m) {
    long long t = 0, new_t = 1, r = m, new_r = mod_pos(a, m);
    while (new_r != 0) {
        long long quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    return mod_pos(t, m);  // gcd(a,m)=1 assumed by callers
}

}  // namespace

RationalNumber::RationalNumber(long long num, long long den) {
    if (den == 0) throw DomainError("RationalNumber: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    p = num / g;
    q = den / g;
}

RealParam RealParam::sqrt2() {
    RealParam r;
    r.hi = std::sqrt(2.0);
    r.lo = std::fma(-r.hi, r.hi, 2.0) / (2.0 * r.hi);
    return r;
}

RealParam RealParam::golden() {
    double s5 = std::sqrt(5.0);
    double s5lo = std::fma(-s5, s5, 5.0) / (2.0 * s5);
    DD g = dd_mul_d(dd_add(dd_from(s5, s5lo), {1.0, 0.0}), 0.5);
    RealParam r;
    r.hi = g.hi;
    r.lo = g.lo;
    return r;
}

RealParam RealParam::euler_e() {
    RealParam r;
    r.hi = 2.718281828459045235360287471352662497757;
    r.lo = 1.4456468917292502e-16;
    return r;
}

RealParam RealParam::pi() {
    RealParam r;
    r.hi = 3.141592653589793238462643383279502884;
    r.lo = 1.2246467991473532e-16;
    return r;
}

RealParam RealParam::parse(const std::string& text) {
    if (text == "sqrt2") return sqrt2();
    if (text == "golden") return golden();
    if (text == "e") return euler_e();
    if (text == "pi") return pi();
    if (text.empty()) throw ConfigError("RealParam: empty value");
    bool neg = text[0] == '-';
    std::string body = neg ? text.substr(1) : text;
    RealParam v;
    if (body == "sqrt2" || body == "golden" || body == "e" || body == "pi") {
        v = parse(body);
    } else if (auto slash = body.find('/'); slash != std::string::npos) {
        long long num = std::stoll(body.substr(0, slash));
        long long den = std::stoll(body.substr(slash + 1));
        if (den == 0) throw ConfigError("RealParam: zero denominator");
        DD d = dd_div({static_cast<double>(num), 0.0}, {static_cast<double>(den), 0.0});
        v.hi = d.hi;
        v.lo = d.lo;
    } else {
        v.hi = std::stod(body);
    }
    if (neg) {
        v.hi = -v.hi;
        v.lo = -v.lo;
    }
    return v;
}

namespace detail {
double residual_near_integer(const RealParam& x, long long n, double beta, long long* nearest) {
    DD nx = dd_mul_d(dd_from(x.hi, x.lo), static_cast<double>(n));
    DD shifted = dd_sub_d(nx, beta);
    DD f = dd_frac_signed(shifted, nearest);
    return f.hi + f.lo;
}
}  // namespace detail

std::vector<Convergent> continued_fraction(const RealParam& theta, int depth) {
    if (depth < 1) throw DomainError("continued_fraction: depth >= 1");
    std::vector<Convergent> out;
    DD x = dd_from(theta.hi, theta.lo);
    long long p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
    long long p_cur = 0, q_cur = 1;    // virtual p_0 before the first term
    bool first = true;
    for (int i = 0; i < depth; ++i) {
        double a = std::floor(x.hi);
        DD frac = dd_add(x, {-a, 0.0});
        if (frac.hi < 0.0) {  // floor(hi) overshot the dd value
            a -= 1.0;
            frac = dd_add(frac, {1.0, 0.0});
        }
        long long ai = static_cast<long long>(a);
        // recurrence p_k = a_k p_{k-1} + p_{k-2}; stop before overflow
        if (q_cur > (1LL << 61) / std::max<long long>(ai, 1)) break;
        long long p_new, q_new;
        if (first) {
            p_new = ai;
            q_new = 1;
            p_prev = 1;
            q_prev = 0;
            first = false;
        } else {
            p_new = ai * p_cur + p_prev;
            q_new = ai * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
        }
        p_cur = p_new;
        q_cur = q_new;
        out.push_back({p_cur, q_cur});
        // rational input: expansion terminates
        if (std::fabs(frac.hi + frac.lo) < 1e-15 / std::max(1.0, std::fabs(theta.hi))) break;
        x = dd_div({1.0, 0.0}, frac);
    }
    return out;
}

std::optional<AdmissibleIndex> chebyshev_witness(const RealParam& theta, double beta,
                                                 long long n_max) {
    if (n_max < 1) throw DomainError("chebyshev_witness: n_max >= 1");
    for (long long n = 1; n <= n_max; ++n) {
        long long m1 = 0;
        double r = detail::residual_near_integer(theta, n, beta, &m1);
        if (std::fabs(r) <= 3.0 / static_cast<double>(n)) {
            AdmissibleIndex idx;
            idx.n = n;
            idx.has_theta_side = true;
            idx.m1 = m1;
            idx.b_n = r;
            idx.rho = 0.0;
            return idx;
        }
    }
    return std::nullopt;
}

std::vector<AdmissibleIndex> scan_admissible(const RealParam& theta, double beta, double rho,
                                             long long n_max) {
    if (rho < 0.0) throw DomainError("scan_admissible: rho >= 0");
    return parallel_map_range<AdmissibleIndex>(
        1, n_max + 1, [&](long long lo, long long hi, std::vector<AdmissibleIndex>& chunk) {
            for (long long n = lo; n < hi; ++n) {
                long long m1 = 0;
                double r = detail::residual_near_integer(theta, n, beta, &m1);
                double thr = std::pow(static_cast<double>(n), -rho);
                if (std::fabs(r) < thr) {
                    AdmissibleIndex idx;
                    idx.n = n;
                    idx.has_theta_side = true;
                    idx.m1 = m1;
                    idx.b_n = r;
                    idx.rho = rho;
                    chunk.push_back(idx);
                }
            }
        });
}

std::vector<AdmissibleIndex> scan_joint(const RealParam& tau, const RealParam& theta, double beta1,
                                        double beta2, double rho, long long n_max) {
    if (!(tau.value() < 0.0)) throw DomainError("scan_joint: tau must be < 0");
    if (!(rho > 0.0)) throw DomainError("scan_joint: rho must be > 0");
    RealParam minus_tau;
    minus_tau.hi = -tau.hi;
    minus_tau.lo = -tau.lo;
    return parallel_map_range<AdmissibleIndex>(
        1, n_max + 1, [&](long long lo, long long hi, std::vector<AdmissibleIndex>& chunk) {
            for (long long n = lo; n < hi; ++n) {
                double thr = std::pow(static_cast<double>(n), -rho);
                long long m = 0;
                double a_n = detail::residual_near_integer(minus_tau, n, beta1, &m);
                if (!(std::fabs(a_n) < thr) || m < 0) continue;
                long long m1 = 0;
                double b_n = detail::residual_near_integer(theta, n, beta2, &m1);
                if (!(std::fabs(b_n) < thr)) continue;
                AdmissibleIndex idx;
                idx.n = n;
                idx.has_tau_side = true;
                idx.m = m;
                idx.a_n = a_n;
                idx.has_theta_side = true;
                idx.m1 = m1;
                idx.b_n = b_n;
                idx.rho = rho;
                chunk.push_back(idx);
            }
        });
}

std::vector<RationalNumber> sset_rational(const RationalNumber& theta) {
    // gcd(p,q)=1, so {n p mod q} covers every residue class
    std::vector<RationalNumber> out;
    out.reserve(static_cast<std::size_t>(theta.q));
    for (long long k = 0; k < theta.q; ++k) out.emplace_back(k, theta.q);
    return out;
}

std::optional<CrtProgression> crt_joint_rational(const RationalNumber& tau,
                                                 const RationalNumber& theta,
                                                 const RationalNumber& lambda,
                                                 const RationalNumber& lambda1) {
    if (!(tau.value() < 0.0)) throw DomainError("crt_joint_rational: tau must be < 0");
    RationalNumber minus_tau(-tau.p, tau.q);
    // targets must be reachable fractional parts: lambda = v1/p1 in [0,1)
    long long p1 = minus_tau.q, q1 = mod_pos(minus_tau.p, minus_tau.q);
    long long p2 = theta.q, q2 = mod_pos(theta.p, theta.q);
    if (lambda.p < 0 || lambda.p >= lambda.q || lambda1.p < 0 || lambda1.p >= lambda1.q)
        return std::nullopt;
    if (p1 % lambda.q != 0 || p2 % lambda1.q != 0) return std::nullopt;  // not in S(.)
    long long v1 = lambda.p * (p1 / lambda.q);
    long long v2 = lambda1.p * (p2 / lambda1.q);
    // v1 = q1 u1 (mod p1), v2 = q2 u2 (mod p2)
    long long g1 = std::gcd(q1, p1);
    if (v1 % std::max<long long>(g1, 1) != 0 && p1 > 1) return std::nullopt;
    long long u1 = (p1 == 1) ? 0 : mod_pos(mod_inverse(q1, p1) * v1, p1);
    long long g2 = std::gcd(q2, p2);
    if (v2 % std::max<long long>(g2, 1) != 0 && p2 > 1) return std::nullopt;
    long long u2 = (p2 == 1) ? 0 : mod_pos(mod_inverse(q2, p2) * v2, p2);
    // n = u1 (mod p1), n = u2 (mod p2)
    long long d = std::gcd(p1, p2);
    if (mod_pos(u1 - u2, d) != 0) return std::nullopt;
    long long stride = p1 / d * p2;
    // combine: n = u1 + p1 * t with t solving u1 + p1 t = u2 (mod p2)
    long long p2d = p2 / d;
    long long t = mod_pos(mod_inverse(p1 / d, p2d) * ((u2 - u1) / d), p2d);
    long long n0 = mod_pos(u1 + p1 * t, stride);
    if (n0 == 0) n0 = stride;
    // m = -n0 tau - lambda must be >= 0
    while (static_cast<double>(n0) * minus_tau.value() - lambda.value() < -1e-12) n0 += stride;
    return CrtProgression{n0, stride};
}

AdmissibleIndex admissible_from_rational(const RationalNumber& tau, const RationalNumber& theta,
                                         const RationalNumber& lambda,
                                         const RationalNumber& lambda1, long long n) {
    AdmissibleIndex idx;
    idx.n = n;
    // -n tau = m + lambda exactly: m = (-n p_tau * q_l - p_l * q_tau') / ...
    // work over the common denominator
    {
        long long num = -n * tau.p;  // over tau.q
        // m = num/tau.q - lambda
        long long common = std::lcm(tau.q, lambda.q);
        long long lhs = num * (common / tau.q) - lambda.p * (common / lambda.q);
        if (lhs % common != 0)
            throw HypothesisViolated("admissible_from_rational: -n tau - lambda not an integer");
        idx.m = lhs / common;
        if (idx.m < 0) throw HypothesisViolated("admissible_from_rational: m < 0");
        idx.a_n = 0.0;
        idx.has_tau_side = true;
    }
    {
        long long num = n * theta.p;
        long long common = std::lcm(theta.q, lambda1.q);
        long long lhs = num * (common / theta.q) - lambda1.p * (common / lambda1.q);
        if (lhs % common != 0)
            throw HypothesisViolated("admissible_from_rational: n theta - lambda1 not an integer");
        idx.m1 = lhs / common;
        idx.b_n = 0.0;
        idx.has_theta_side = true;
    }
    return idx;
}

}  // namespace qasymp
