#pragma once

#include <complex>

#include "qasymp/qseries.hpp"

namespace qasymp {

// Modular variable tau (Im tau > 0) and the nome e^{i pi tau}.
struct TauParam {
    std::complex<double> tau;
    std::complex<double> nome;

    explicit TauParam(std::complex<double> tau_)
        : tau(tau_), nome(std::exp(std::complex<double>(0.0, LogComplex::pi()) * tau_)) {
        if (!(tau_.imag() > 0.0)) throw DomainError("TauParam: Im(tau) must be > 0");
    }

    // tau = i log(1/q) / pi for a real nome q in (0,1).
    static TauParam from_nome(const QParam& q) {
        return TauParam(std::complex<double>(0.0, -q.ln_q / LogComplex::pi()));
    }
};

struct ThetaIndex {
    int lambda;
    explicit ThetaIndex(int l) : lambda(l) {
        if (l < 1 || l > 4) throw DomainError("ThetaIndex: lambda must be 1..4");
    }
};

// theta_lambda(v|tau) by the bilateral series, truncated symmetrically
// around the peak index with a geometric-majorant tail certificate.
LogComplex theta_sum(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                     const TruncationPolicy& pol = {});

// Same function through the Jacobi triple product.
LogComplex theta_product(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                         const TruncationPolicy& pol = {});

// theta_lambda(z;q) = theta_lambda(v|tau) with z = e^{2 pi i v} (principal
// branch) and real nome q.
LogComplex theta_z(ThetaIndex idx, std::complex<double> z, const QParam& q,
                   const TruncationPolicy& pol = {});
LogComplex theta_z(ThetaIndex idx, const LogComplex& z, const QParam& q,
                   const TruncationPolicy& pol = {});

// Relative residual of the lambda-th modular transformation
// theta_lambda(v/tau | -1/tau) = factor * theta_sigma(lambda)(v|tau),
// both sides by theta_sum. Returns 0 when both sides vanish (theta_1 at
// lattice points).
double theta_modular_residual(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                              const TruncationPolicy& pol = {});

// theta_lambda(v|tau) evaluated through the modular transformation, i.e.
// factor * theta_sigma(v', tau') with tau' = -1/tau. Converges fast when
// Im(tau) is small; theta_main_regime builds on this.
LogComplex theta_transformed(ThetaIndex idx, std::complex<double> v, const TauParam& tau,
                             const TruncationPolicy& pol = {});

// Magnitude bound for |theta_lambda(z;q)|:
//   theta_3, theta_4: (q^2;q^2)_inf / ((q;q^2)_inf^2 sqrt(q)) * exp(-log^2|z| / (2 log q))
//   theta_1, theta_2: 2 q^{1/4} (q^2;q^2)_inf cosh(log|z|/2) / (q;q^2)_inf^2 * exp(...)
// Returned as a log to stay finite for extreme |z|.
double theta_envelope_log(ThetaIndex idx, double log_abs_z, const QParam& q);

// eta(tau) = e^{i pi tau/12} prod_{k>=1}(1 - e^{2 pi i k tau}).
LogComplex dedekind_eta(const TauParam& tau, const TruncationPolicy& pol = {});

// Regimes where q -> 1 with n: q = exp(-2 pi / (gamma n^a)) (power) or
// q = exp(-2 pi / (gamma log n)) (log). The expansion gives
//   (q;q)_inf = main_factor * prod_{k>=1}(1 - eps^k),
// eps = exp(-2 pi gamma n^a) resp. n^{-2 pi gamma}; the product deviation is
// returned exactly (ratio_dev) alongside the direct evaluation.
struct EtaRegime {
    enum Kind { Power, LogN } kind;
    double a = 0.5;      // power regime exponent, 0 < a < 1
    double gamma = 1.0;  // > 0
};

struct EtaRegimeReport {
    QParam q;
    LogComplex qpoch_value;  // (q;q)_inf by direct product
    LogComplex predicted;    // the closed-form main factor
    double rel_err_rate;     // printed decay rate of the correction
    double ratio_dev;        // exact prod(1-eps^k) - 1, high precision
};

EtaRegimeReport eta_regime_expansion(const EtaRegime& regime, std::int64_t n,
                                     const TruncationPolicy& pol = {});

}  // namespace qasymp
