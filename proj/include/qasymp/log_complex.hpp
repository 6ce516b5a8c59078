#pragma once

#include <cmath>
#include <complex>
#include <limits>

namespace qasymp {

// A nonzero complex value stored as (log of magnitude, phase). Quantities
// like q^{-n^2 s} reach magnitudes far beyond 1e308 already for moderate n,
// so all evaluators carry values in this form and only convert to
// std::complex<double> at the very end (or never).
//
// Invariants: phase in (-pi, pi] whenever log_mag is finite; the zero value
// is canonical with log_mag = -inf and phase = 0.
struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();
    double phase = 0.0;

    constexpr LogComplex() = default;

    static LogComplex from_log(double log_mag, double phase) {
        LogComplex v;
        if (std::isinf(log_mag) && log_mag < 0) return v;  // canonical zero
        v.log_mag = log_mag;
        v.phase = reduce_phase(phase);
        return v;
    }

    static LogComplex from_complex(std::complex<double> z) {
        if (z == 0.0) return LogComplex{};
        return from_log(std::log(std::abs(z)), std::arg(z));
    }

    static LogComplex from_real(double x) {
        if (x == 0.0) return LogComplex{};
        return from_log(std::log(std::fabs(x)), x > 0 ? 0.0 : pi());
    }

    static LogComplex one() { return from_log(0.0, 0.0); }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        return std::polar(std::exp(log_mag), phase);
    }

    double abs() const { return is_zero() ? 0.0 : std::exp(log_mag); }

    LogComplex operator*(const LogComplex& o) const {
        if (is_zero() || o.is_zero()) return LogComplex{};
        return from_log(log_mag + o.log_mag, phase + o.phase);
    }

    LogComplex operator/(const LogComplex& o) const {
        return from_log(log_mag - o.log_mag, phase - o.phase);
    }

    LogComplex pow(double e) const {
        if (is_zero()) return LogComplex{};
        return from_log(log_mag * e, phase * e);
    }

    LogComplex conj() const { return from_log(log_mag, -phase); }

    LogComplex negate() const {
        if (is_zero()) return LogComplex{};
        return from_log(log_mag, phase + pi());
    }

    // |this - o| without leaving the log domain: |a||1 - b/a|.
    double abs_diff(const LogComplex& o) const {
        if (is_zero()) return o.abs();
        if (o.is_zero()) return abs();
        const LogComplex& big = (log_mag >= o.log_mag) ? *this : o;
        const LogComplex& small = (log_mag >= o.log_mag) ? o : *this;
        std::complex<double> ratio =
            std::polar(std::exp(small.log_mag - big.log_mag), small.phase - big.phase);
        return std::exp(big.log_mag) * std::abs(1.0 - ratio);
    }

    static double reduce_phase(double p) {
        if (!std::isfinite(p)) return 0.0;
        p = std::remainder(p, 2.0 * pi());  // (-pi, pi] up to the boundary
        if (p <= -pi()) p += 2.0 * pi();
        return p;
    }

    static constexpr double pi() { return 3.141592653589793238462643383279502884; }
};

// Streaming sum of LogComplex terms: keeps a running scale equal to the
// largest exponent seen and accumulates scaled terms with compensated
// (Kahan) summation, so Gaussian-peaked series with sign cancellation keep
// close to full relative accuracy of the scaled sum.
class LogAccumulator {
  public:
    void add(const LogComplex& t) {
        if (t.is_zero()) return;
        if (empty_) {
            scale_ = t.log_mag;
            empty_ = false;
        } else if (t.log_mag > scale_ + 40.0) {
            rescale(t.log_mag);
        }
        add_scaled(std::polar(std::exp(t.log_mag - scale_), t.phase));
    }

    void add_scaled_complex(double log_scale, std::complex<double> v) {
        if (v == 0.0) return;
        if (empty_) {
            scale_ = log_scale;
            empty_ = false;
        } else if (log_scale > scale_ + 40.0) {
            rescale(log_scale);
        }
        add_scaled(v * std::exp(log_scale - scale_));
    }

    LogComplex value() const {
        if (empty_ || sum_ == std::complex<double>(0.0, 0.0)) return LogComplex{};
        return LogComplex::from_log(scale_ + std::log(std::abs(sum_)), std::arg(sum_));
    }

    // log of the largest term magnitude seen so far (the natural reference
    // level for tail-bound cutoffs).
    double peak_log() const { return empty_ ? -std::numeric_limits<double>::infinity() : peak_; }

    double current_scaled_abs() const { return std::abs(sum_); }

  private:
    void add_scaled(std::complex<double> v) {
        std::complex<double> y = v - comp_;
        std::complex<double> t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
        double lm = scale_ + std::log(std::abs(v));
        if (lm > peak_) peak_ = lm;
    }

    void rescale(double new_scale) {
        double f = std::exp(scale_ - new_scale);
        sum_ *= f;
        comp_ *= f;
        scale_ = new_scale;
    }

    bool empty_ = true;
    double scale_ = 0.0;
    double peak_ = -std::numeric_limits<double>::infinity();
    std::complex<double> sum_{0.0, 0.0};
    std::complex<double> comp_{0.0, 0.0};
};

}  // namespace qasymp
