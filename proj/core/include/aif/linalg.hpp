#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace aif {

using Vector = std::vector<double>;

/// Dense symmetric d x d matrix stored row-major. Symmetry is structural:
/// every constructor leaves entries(i, j) == entries(j, i) bit for bit.
class SymMatrix {
 public:
  SymMatrix() = default;

  static SymMatrix Identity(std::size_t dim);
  static SymMatrix Diagonal(std::span<const double> diag);

  /// Builds from row-major nested rows. Rejects non-square input and
  /// asymmetry larger than `tolerance` (absolute), then stores (A + A')/2.
  static SymMatrix FromRows(const std::vector<std::vector<double>>& rows,
                            double tolerance = 1e-9);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * dim_ + j];
  }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<std::vector<double>> ToRows() const;

  SymMatrix Scaled(double factor) const;
  double Trace() const noexcept;
  double FrobeniusNorm() const noexcept;
  bool IsIdentity() const noexcept;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  SymMatrix(std::size_t dim, std::vector<double> values);

  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// Lower-triangular L with L L' equal to the factored matrix.
class CholeskyFactor {
 public:
  CholeskyFactor() = default;
  CholeskyFactor(std::size_t dim, std::vector<double> lower)
      : dim_(dim), lower_(std::move(lower)) {}

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return lower_[i * dim_ + j];
  }
  /// Returns L z.
  Vector Apply(std::span<const double> z) const;
  /// Returns L L' as a full matrix (row-major).
  std::vector<double> Reconstruct() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> lower_;
};

struct EigenDecomposition {
  Vector eigenvalues;               // descending
  std::vector<Vector> eigenvectors;  // unit norm, eigenvectors[i] pairs with eigenvalues[i]
};

inline constexpr double kCholeskyPivotFloor = 1e-12;

/// Throws kNotPositiveDefinite if a pivot falls to 1e-12 or below.
CholeskyFactor Cholesky(const SymMatrix& a);

/// Cyclic Jacobi rotations; at most 100 sweeps, stops once the off-diagonal
/// Frobenius norm drops to 1e-12 * ||A||_F. Eigenvectors are sign-normalized
/// so that their first non-negligible component is positive.
EigenDecomposition Eigh(const SymMatrix& a);

/// n' A n. Throws kDimensionMismatch.
double QuadraticForm(std::span<const double> n, const SymMatrix& a);

double SpectralRadius(const SymMatrix& a);

/// A / spectral_radius(A); throws kZeroMatrix when the radius is <= 1e-12.
SymMatrix NormalizeSpectral(const SymMatrix& a);

double Dot(std::span<const double> a, std::span<const double> b);
double Norm(std::span<const double> v);

}  // namespace aif
