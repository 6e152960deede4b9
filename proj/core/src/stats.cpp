#include "aif/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "aif/error.hpp"

namespace aif {

namespace {

double BetaContinuedFraction(double a, double b, double x) {
  constexpr int kMaxIterations = 10000;
  constexpr double kEpsilon = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  Fail(ErrorCode::kConvergenceFailure, "incomplete beta continued fraction did not converge");
}

}  // namespace

double RegularizedIncompleteBeta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) Fail(ErrorCode::kInvalidArgument, "incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) Fail(ErrorCode::kInvalidArgument, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * BetaContinuedFraction(a, b, x) / a;
  return 1.0 - front * BetaContinuedFraction(b, a, 1.0 - x) / b;
}

double StudentTTwoSidedP(double t, double dof) {
  if (!(dof > 0.0)) Fail(ErrorCode::kInvalidArgument, "Student t needs positive degrees of freedom");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = dof / (dof + t * t);
  return std::clamp(RegularizedIncompleteBeta(dof / 2.0, 0.5, x), 0.0, 1.0);
}

double StudentTCdf(double t, double dof) {
  const double tail = 0.5 * StudentTTwoSidedP(t, dof);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double Mean(std::span<const double> v) {
  if (v.empty()) Fail(ErrorCode::kEmptyInput, "mean of an empty sample");
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double SampleVariance(std::span<const double> v) {
  if (v.size() < 2) Fail(ErrorCode::kInvalidArgument, "variance needs at least two values");
  const double mean = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return ss / static_cast<double>(v.size() - 1);
}

namespace {

TTestResult Degenerate(double mean_a, double mean_b, double dof) {
  TTestResult r;
  r.mean_a = mean_a;
  r.mean_b = mean_b;
  r.degrees_of_freedom = dof;
  r.degenerate = true;
  if (mean_a == mean_b) {
    r.t_statistic = 0.0;
    r.p_value = 1.0;
  } else {
    r.t_statistic = mean_a > mean_b ? std::numeric_limits<double>::infinity()
                                    : -std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  }
  return r;
}

void RequireTwo(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) Fail(ErrorCode::kInvalidArgument, "t-test needs at least two values per sample");
}

}  // namespace

TTestResult WelchTTest(std::span<const double> a, std::span<const double> b) {
  RequireTwo(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = Mean(a);
  const double mb = Mean(b);
  const double va = SampleVariance(a) / na;
  const double vb = SampleVariance(b) / nb;
  const double se2 = va + vb;
  if (se2 == 0.0) return Degenerate(ma, mb, na + nb - 2.0);

  TTestResult r;
  r.mean_a = ma;
  r.mean_b = mb;
  r.t_statistic = (ma - mb) / std::sqrt(se2);
  r.degrees_of_freedom = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p_value = StudentTTwoSidedP(r.t_statistic, r.degrees_of_freedom);
  return r;
}

TTestResult PooledTTest(std::span<const double> a, std::span<const double> b) {
  RequireTwo(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ma = Mean(a);
  const double mb = Mean(b);
  const double dof = na + nb - 2.0;
  const double pooled = ((na - 1.0) * SampleVariance(a) + (nb - 1.0) * SampleVariance(b)) / dof;
  const double se2 = pooled * (1.0 / na + 1.0 / nb);
  if (se2 == 0.0) return Degenerate(ma, mb, dof);

  TTestResult r;
  r.mean_a = ma;
  r.mean_b = mb;
  r.t_statistic = (ma - mb) / std::sqrt(se2);
  r.degrees_of_freedom = dof;
  r.p_value = StudentTTwoSidedP(r.t_statistic, dof);
  return r;
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
  std::vector<double> ranks(v.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double SpearmanCorrelation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) Fail(ErrorCode::kDimensionMismatch, "Spearman inputs differ in length");
  if (a.size() < 2) Fail(ErrorCode::kInvalidArgument, "Spearman needs at least two pairs");
  const auto ra = AverageRanks(a);
  const auto rb = AverageRanks(b);
  const double ma = Mean(ra);
  const double mb = Mean(rb);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sab / std::sqrt(saa * sbb);
}

}  // namespace aif
