#include "aif/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aif/error.hpp"

namespace aif {

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> values)
    : dim_(dim), values_(std::move(values)) {}

SymMatrix SymMatrix::Identity(std::size_t dim) {
  std::vector<double> values(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) values[i * dim + i] = 1.0;
  return SymMatrix(dim, std::move(values));
}

SymMatrix SymMatrix::Diagonal(std::span<const double> diag) {
  const std::size_t dim = diag.size();
  std::vector<double> values(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) values[i * dim + i] = diag[i];
  return SymMatrix(dim, std::move(values));
}

SymMatrix SymMatrix::FromRows(const std::vector<std::vector<double>>& rows,
                              double tolerance) {
  const std::size_t dim = rows.size();
  if (dim == 0) Fail(ErrorCode::kInvalidArgument, "matrix must have at least one row");
  for (std::size_t i = 0; i < dim; ++i) {
    if (rows[i].size() != dim) {
      Fail(ErrorCode::kDimensionMismatch,
           "matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
               " entries, expected " + std::to_string(dim));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) Fail(ErrorCode::kInvalidArgument, "matrix entries must be finite");
    }
  }
  std::vector<double> values(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double a = rows[i][j];
      const double b = rows[j][i];
      if (std::abs(a - b) > tolerance) {
        Fail(ErrorCode::kInvalidArgument, "matrix is not symmetric at (" + std::to_string(i) +
                                              ", " + std::to_string(j) + ")");
      }
      // (a + b) / 2 evaluated in a fixed operand order keeps (i, j) and (j, i) identical.
      values[i * dim + j] = i <= j ? 0.5 * (a + b) : 0.5 * (b + a);
    }
  }
  return SymMatrix(dim, std::move(values));
}

std::vector<std::vector<double>> SymMatrix::ToRows() const {
  std::vector<std::vector<double>> rows(dim_);
  for (std::size_t i = 0; i < dim_; ++i) rows[i].assign(row(i).begin(), row(i).end());
  return rows;
}

SymMatrix SymMatrix::Scaled(double factor) const {
  std::vector<double> values = values_;
  for (double& v : values) v *= factor;
  return SymMatrix(dim_, std::move(values));
}

double SymMatrix::Trace() const noexcept {
  double trace = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) trace += (*this)(i, i);
  return trace;
}

double SymMatrix::FrobeniusNorm() const noexcept {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

bool SymMatrix::IsIdentity() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if ((*this)(i, j) != (i == j ? 1.0 : 0.0)) return false;
    }
  }
  return true;
}

Vector CholeskyFactor::Apply(std::span<const double> z) const {
  if (z.size() != dim_) Fail(ErrorCode::kDimensionMismatch, "Cholesky apply: wrong vector length");
  Vector out(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += lower_[i * dim_ + j] * z[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> CholeskyFactor::Reconstruct() const {
  std::vector<double> out(dim_ * dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k <= std::min(i, j); ++k) {
        acc += lower_[i * dim_ + k] * lower_[j * dim_ + k];
      }
      out[i * dim_ + j] = acc;
    }
  }
  return out;
}

CholeskyFactor Cholesky(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "Cholesky of an empty matrix");
  std::vector<double> lower(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= lower[j * n + k] * lower[j * n + k];
    if (!(pivot > kCholeskyPivotFloor)) {
      Fail(ErrorCode::kNotPositiveDefinite,
           "pivot " + std::to_string(j) + " is " + std::to_string(pivot));
    }
    const double diag = std::sqrt(pivot);
    lower[j * n + j] = diag;
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= lower[i * n + k] * lower[j * n + k];
      lower[i * n + j] = acc / diag;
    }
  }
  return CholeskyFactor(n, std::move(lower));
}

EigenDecomposition Eigh(const SymMatrix& a) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = a.dim();
  std::vector<double> m = a.values();
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  const double threshold = 1e-12 * a.FrobeniusNorm();
  auto off_norm = [&] {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) sum += m[i * n + j] * m[i * n + j];
    return std::sqrt(sum);
  };

  bool converged = off_norm() <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) continue;
        const double app = m[p * n + p];
        const double aqq = m[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    }
    converged = off_norm() <= threshold;
  }
  if (!converged) Fail(ErrorCode::kConvergenceFailure, "Jacobi eigensolver exceeded 100 sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return m[x * n + x] > m[y * n + y]; });

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(m[idx * n + idx]);
    Vector g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = v[k * n + idx];
    const double norm = Norm(g);
    for (double& x : g) x /= norm;
    for (double x : g) {
      if (std::abs(x) > 1e-12) {
        if (x < 0.0)
          for (double& y : g) y = -y;
        break;
      }
    }
    out.eigenvectors.push_back(std::move(g));
  }
  return out;
}

double QuadraticForm(std::span<const double> n, const SymMatrix& a) {
  if (n.size() != a.dim()) {
    Fail(ErrorCode::kDimensionMismatch, "quadratic form: vector has length " +
                                            std::to_string(n.size()) + ", matrix is " +
                                            std::to_string(a.dim()) + "x" +
                                            std::to_string(a.dim()));
  }
  // Row-wise contraction: for the identity the inner sum is exactly n_i, so the
  // result equals Dot(n, n) bit for bit.
  double total = 0.0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    double inner = 0.0;
    const auto row = a.row(i);
    for (std::size_t j = 0; j < n.size(); ++j) inner += row[j] * n[j];
    total += n[i] * inner;
  }
  return total;
}

double SpectralRadius(const SymMatrix& a) {
  const auto eig = Eigh(a);
  double radius = 0.0;
  for (double lambda : eig.eigenvalues) radius = std::max(radius, std::abs(lambda));
  return radius;
}

SymMatrix NormalizeSpectral(const SymMatrix& a) {
  const double radius = SpectralRadius(a);
  if (radius <= 1e-12) Fail(ErrorCode::kZeroMatrix, "spectral radius is zero");
  if (radius == 1.0) return a;
  return a.Scaled(1.0 / radius);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) Fail(ErrorCode::kDimensionMismatch, "dot product length mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double Norm(std::span<const double> v) { return std::sqrt(Dot(v, v)); }

}  // namespace aif
