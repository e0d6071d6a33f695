#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcm/bounds.hpp"
#include "gcm/numeric.hpp"

namespace gcm {

/// The constrained minimization instance: show f_{g,k,l}(x,y) >= c over
/// -1 <= x <= 1, 0 <= y <= g(1+x) - rho(1+x).
struct ReductionProblem {
    double k = 2;
    double l = 0;
    BoundFunction g = BoundFunction::power(3);
    BoundFunction rho = BoundFunction::fisher_k3();
    double target_c = 2;

    /// rho <= g on a grid, rho(2) > 0, c <= 2 g(1). Throws on violation.
    void validate() const;

    std::string to_json() const;
    static ReductionProblem from_json(const std::string& text);
};

/// f_{g,k,l}(x,y) = (1+x)^l (g(1+x)-y)^k + (1-x)^l (g(1-x)+y)^k with the
/// 0^0 = 1 convention. Requires y <= g(1+x); rejects l < 0 at x = +-1.
double f_gkl(const ReductionProblem& p, double x, double y);

/// Closed-form partial derivative of f with respect to y.
double f_gkl_dy(const ReductionProblem& p, double x, double y);

/// Interior critical point of f in y at fixed x (k > 1).
double critical_y0(const ReductionProblem& p, double x);
/// Second critical point; +infinity when its denominator vanishes. Always
/// at least g(1+x) - rho(1+x), so it never competes with the minimum.
double critical_y1(const ReductionProblem& p, double x);

/// Condition margins (LHS - RHS; nonnegative means satisfied), k > 1.
double cond_x0(const ReductionProblem& p, double x);
double cond_x1(const ReductionProblem& p, double x);
double cond_x1prime(const ReductionProblem& p, double x);

Interval cond_x0(const ReductionProblem& p, Interval x);
Interval cond_x1(const ReductionProblem& p, Interval x);
Interval cond_x1prime(const ReductionProblem& p, Interval x);

/// Sufficient-condition margins from the appendix lemmas. A nonnegative
/// margin implies the corresponding full condition above.
enum class AppendixVariant { x1_star, x0_star, x0_dagger };
double cond_appendix(const ReductionProblem& p, double x, AppendixVariant v,
                     double param = 0);  // x0_star: l0; x0_dagger: m

enum class VerifyStrategy { grid_with_margin, certified_interval };

struct IntervalRecord {
    double x_lo = 0;
    double x_hi = 0;
    std::string condition;  // "x0", "x1+x1'", "x0_boundary"
    double margin = 0;
};

enum class CertVerdict { holds, fails_at, inconclusive };

struct Certificate {
    ReductionProblem problem;
    VerifyStrategy strategy = VerifyStrategy::grid_with_margin;
    CertVerdict verdict = CertVerdict::inconclusive;
    std::vector<IntervalRecord> intervals;  // ascending in x
    double fail_x = 0, fail_y = 0, fail_value = 0;  // set when fails_at
    /// Largest x such that condition (x~0) held on every certified
    /// interval up to x (the x_0 crossover of the run).
    double x0_crossover = 0;

    bool holds() const { return verdict == CertVerdict::holds; }
    std::string to_json() const;
    static Certificate from_json(const std::string& text);
};

/// Covers [0,1] with subintervals, certifying (x~0) or ((x~1) and (x~1'))
/// on each. The boundary cell at x = 0, where the margin of (x~0)
/// degenerates to an exact equality when c = 2 g(1), is certified by the
/// second-order expansion of the margin instead of pointwise evaluation.
Certificate verify_reduction(const ReductionProblem& p, VerifyStrategy strategy,
                             double resolution = 1e-4);

/// Re-runs the embedded problem and checks the stored verdict and interval
/// conditions still come out the same. Returns false on any mismatch.
bool replay_certificate(const Certificate& c);

/// The two-page lower-bound pipeline for c(K3 disjoint-union K2): exact
/// case analysis, quartic root bracketing and the final mixed bound.
struct K3K2LowerBound {
    Rational endpoint_value;       // value at z = 0, equals 5/27
    Rational bracket_lo, bracket_hi;  // sign-change bracket for the quartic
    Rational h_at_lo, h_at_hi;     // quartic values at the bracket ends
    Rational final_bound;          // > 121423/1000000
    bool all_checks_pass = false;
    std::string to_json() const;
};
K3K2LowerBound lower_bound_k3_k2();

/// Pointwise truth of the helper inequalities (property-test oracles).
bool bernoulli_ineq(double a, double b, double k);
bool rearrange_ineq(double a, double b, double c, double d, double s, double t);
bool holder_claim(double b1, double b2, double s, double m);

}  // namespace gcm
