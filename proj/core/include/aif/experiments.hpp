#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aif/analysis.hpp"
#include "aif/dataset.hpp"
#include "aif/linalg.hpp"
#include "aif/sampling.hpp"

namespace aif {

/// Blob study settings: 500 trees on subsamples of 128.
inline constexpr std::size_t kStudyTrees = 500;
inline constexpr std::size_t kStudySubsample = 128;
inline constexpr std::size_t kBlobSize = 2000;
inline constexpr double kTopFraction = 0.1;

/// diag(1, 0.05): less sensitive along y.
SymMatrix AxisMatrixA1();
/// diag(0.05, 1): less sensitive along x.
SymMatrix AxisMatrixA2();

/// 1/2 (N(0, 2 diag(1, .01)) + N(0, 2 diag(.01, 1))).
MixtureSpec AxisMixtureD1();
/// 1/2 (N(0, 2 [[1, .99], [.99, 1]]) + N(0, 2 [[1, -.99], [-.99, 1]])).
MixtureSpec DiagonalMixtureD2();

/// Feature columns of the Pima Indians Diabetes file, in canonical order.
inline constexpr std::array<std::string_view, 8> kDiabetesFeatures = {
    "Pregnancies", "Glucose", "BloodPressure", "SkinThickness",
    "Insulin", "BMI", "DiabetesPedigreeFunction", "Age"};
inline constexpr std::string_view kDiabetesOutcome = "Outcome";

/// Drops the outcome column if present and checks that exactly the eight
/// feature columns remain (any order; the file's order is kept).
/// Throws kSchemaMismatch otherwise.
Dataset PrepareDiabetes(const Dataset& raw);

enum class DiabetesScenario {
  kA3,  // (1/1000) diag(1000, 1000, 1, ..., 1): age and DPF more sensitive
  kA4,  // diag(0.001, 0.001, 1, ..., 1): age and DPF less sensitive
  kA5,  // (1/100) diag(0.01, 100, 1, ..., 1): age less, DPF more sensitive
};

std::string_view ScenarioName(DiabetesScenario scenario);

/// Diagonal covariance over `columns` with the scenario's entries for Age and
/// DiabetesPedigreeFunction, 1 elsewhere, and the scenario's overall factor.
SymMatrix DiabetesCovariance(DiabetesScenario scenario, const std::vector<std::string>& columns);

struct DiabetesComparison {
  AnomalyLabeling eif;
  AnomalyLabeling aif;
  std::vector<TTestResult> tests;  // mean_a = EIF anomalies, mean_b = AIF anomalies
};

/// Fits an EIF and AIF(scenario) with the same master seed, flags the top
/// `q` of each model's scores on the full data and t-tests every feature.
DiabetesComparison CompareDiabetesScenario(const Dataset& prepared, DiabetesScenario scenario,
                                           std::uint64_t seed, std::size_t threads = 1,
                                           std::size_t trees = kStudyTrees,
                                           std::size_t subsample = kStudySubsample,
                                           double q = kTopFraction,
                                           TTestKind kind = TTestKind::kWelch);

}  // namespace aif
