#pragma once

#include <span>

namespace aif {

/// Regularized incomplete beta I_x(a, b), evaluated with the modified Lentz
/// continued fraction (relative accuracy ~1e-14). a, b > 0; x in [0, 1].
double RegularizedIncompleteBeta(double a, double b, double x);

/// P(T <= t) for Student's t with `dof` degrees of freedom (dof > 0).
double StudentTCdf(double t, double dof);

/// P(|T| >= |t|).
double StudentTTwoSidedP(double t, double dof);

struct TTestResult {
  double t_statistic = 0.0;
  double degrees_of_freedom = 0.0;
  double p_value = 1.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  /// Both samples have zero variance. Then t = 0, p = 1 when the means agree,
  /// and t = +-inf, p = 0 when they differ.
  bool degenerate = false;
};

/// Two-sided Welch (unequal variance) t-test with Welch-Satterthwaite dof.
/// Each sample needs at least two values (kInvalidArgument otherwise).
TTestResult WelchTTest(std::span<const double> a, std::span<const double> b);

/// Two-sided pooled-variance Student t-test, dof = n_a + n_b - 2.
TTestResult PooledTTest(std::span<const double> a, std::span<const double> b);

/// Spearman rank correlation with average ranks for ties. NaN when either
/// input is constant.
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

double Mean(std::span<const double> v);
/// Unbiased (n - 1) sample variance.
double SampleVariance(std::span<const double> v);

}  // namespace aif
