#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qasymp/diophantine.hpp"
#include "qasymp/qseries.hpp"

namespace qasymp {

enum class Family { QExp, Ramanujan, QBessel2, IsmailMasson, StieltjesWigert, QLaguerre };

struct FamilySpec {
    Family family;
    double nu = 0.0;     // QBessel2 order, > -1
    double alpha = 0.0;  // QLaguerre parameter, > -1
};

// The complex scaling exponent each family applies to its argument:
//   QExp:            s = tau + 2 pi i theta / log q
//   Ramanujan:       s = 2 tau + 2 pi i theta / log q
//   QBessel2:        s = tau + pi i theta / log q
//   IsmailMasson:    s = (1+2 tau)/2 + i theta pi / log q
//   StieltjesWigert, QLaguerre: s = 2 tau + 2 + 2 i theta pi / log q
struct ScalingSpec {
    FamilySpec fam;
    double tau = 0.0;
    double theta = 0.0;

    std::complex<double> s(const QParam& q) const;
};

// Per-case hypothesis data. Fields are read according to case_id:
//   1: tau > 0, nothing else
//   2: tau = 0, n theta = m1 + lambda exactly
//   3: tau = 0, n theta = m1 + beta + b_n, |b_n| < n^-rho, rho >= 1
//   4: tau < 0, -n tau = m + lambda and n theta = m1 + lambda1 exactly
//   5: tau < 0, -n tau = m + lambda exact, n theta = m1 + beta + b_n
//   6: tau < 0, -n tau = m + beta + a_n, n theta = m1 + lambda exact
//   7: tau < 0, both sides approximate with targets beta1, beta2, rho > 0
// idx carries the integer parts and residuals for the given n.
struct CaseParams {
    int case_id = 1;
    double lambda = 0.0;
    double lambda1 = 0.0;
    double beta = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double rho = 1.0;
    AdmissibleIndex idx;
};

struct Cutoffs {
    std::int64_t j_n;
    std::int64_t k_n;
};

// j_n = floor(q^4 log n / -log q) for every family;
// k_n = floor(-n tau / 2) for the entire-function families,
//       min(floor((tau+1) n/2), floor(-tau n/2)) for the polynomial ones.
Cutoffs cutoffs(const FamilySpec& fam, std::int64_t n, const QParam& q, double tau);

// The theorem's left side: the function evaluated by direct summation at the
// scaled argument, times the exact normalization, carried in the log domain
// throughout (the normalizing q^{m(...)} factors are folded into the term
// exponents as integer combinations, so nothing large is ever cancelled).
LogComplex normalized_actual(const ScalingSpec& spec, const CaseParams& cp,
                             std::complex<double> z, const QParam& q, std::int64_t n,
                             const TruncationPolicy& pol = {});

// The theorem's main term: 1 (case 1), an A_q / E_q / J-type value at the
// twisted limit argument (cases 2-3), or theta_4 at the case argument
// (cases 4-7; nome sqrt(q) for QExp, q otherwise).
LogComplex main_term(const ScalingSpec& spec, const CaseParams& cp, std::complex<double> z,
                     const QParam& q, std::int64_t n, const TruncationPolicy& pol = {});

// The printed remainder bound of the (family, case) pair. not applicable
// (nullopt) when the formula's cutoffs are degenerate (k_n < 1 on a
// k_n-formula, or n < 2 where a log n term appears).
std::optional<double> error_bound(const ScalingSpec& spec, const CaseParams& cp,
                                  std::complex<double> z, const QParam& q, std::int64_t n);

enum class BoundStatus { Satisfied, NotYetAsymptotic, HardViolation, Indeterminate };

struct BoundReport {
    std::int64_t n = 0;
    LogComplex normalized_actual;
    LogComplex main_term;
    double bound = 0.0;
    double residual = 0.0;
    bool bound_applicable = false;
    bool satisfied = false;
    BoundStatus status = BoundStatus::Indeterminate;
};

// Full certification of one theorem case at one n: residual = |actual-main|,
// satisfied iff residual <= bound. An unsatisfied bound still above 0.5
// counts as NotYetAsymptotic ("for n sufficiently large" has not kicked in);
// a violation of a bound below 0.5 is a HardViolation.
BoundReport verify_case(const ScalingSpec& spec, const CaseParams& cp, std::complex<double> z,
                        const QParam& q, std::int64_t n, const TruncationPolicy& pol = {});

// q -> 1 regimes of the corollaries. Power: q = exp(-c n^-a) with c = 2 pi
// for QExp and pi otherwise, 0 < a < 1/2. Log: q = exp(-c/(gamma log n)),
// n >= 2, same c.
struct RegimeSpec {
    enum Kind { Power, LogN } kind = Power;
    double a = 0.25;
    double gamma = 1.0;
};

QParam regime_q(const FamilySpec& fam, const RegimeSpec& regime, std::int64_t n);

// One point of a corollary sweep. ratio is |actual - predicted| divided by
// the prefactor scale and the printed O-rate; the fitted constant of a sweep
// is the max ratio.
struct CorollaryPoint {
    std::int64_t n = 0;
    double log_abs_actual = 0.0;
    double log_abs_predicted = 0.0;
    double rate = 0.0;
    double ratio = 0.0;
};

// Which closed-form display of the corollary to check. Cases follow the
// papers' corollary numbering per family (1 = tau > 0 main term, 2 = exact
// -n tau = m + lambda cosine form, 3 = approximate tau side, log regime
// only). orthonormal selects the ||-forms of the IM and SW corollaries.
struct CorollaryCase {
    int case_id = 1;
    bool orthonormal = false;
    double tau = 0.0;
    double u = 0.0;
    double lambda = 0.0;  // case 2 target
    double beta = 0.0;    // case 3 target
    double rho = 1.0;     // case 3
    bool rate_is_printed = true;  // false: o(1) only, check monotone decrease
};

// Evaluates the corollary's left side and closed form along n_list in
// extended precision (the printed rates drop far below binary64 around
// n ~ 1000) and reports per-point normalized deviations. idx_for_n supplies
// the exact decomposition of -n tau where the hypothesis needs one.
std::vector<CorollaryPoint> corollary_check(const FamilySpec& fam, const RegimeSpec& regime,
                                            const CorollaryCase& cc,
                                            const std::vector<AdmissibleIndex>& indices);

// The modular-transform step used inside the corollary closed forms:
// evaluates theta_idx(v|tau) by both the direct bilateral sum and the
// transformed (fast) side, asserts relative agreement <= 1e-10, and returns
// the transformed value.
LogComplex theta_main_regime(int theta_index, std::complex<double> v, std::complex<double> tau,
                             double* rel_disagreement = nullptr);

}  // namespace qasymp
