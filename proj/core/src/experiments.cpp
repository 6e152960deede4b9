#include "aif/experiments.hpp"

#include <algorithm>

#include "aif/error.hpp"
#include "aif/forest.hpp"

namespace aif {

SymMatrix AxisMatrixA1() { return SymMatrix::Diagonal(std::vector<double>{1.0, 0.05}); }
SymMatrix AxisMatrixA2() { return SymMatrix::Diagonal(std::vector<double>{0.05, 1.0}); }

MixtureSpec AxisMixtureD1() {
  return MixtureSpec({{0.5, GaussianSpec(SymMatrix::Diagonal(std::vector<double>{1.0, 0.01}))},
                      {0.5, GaussianSpec(SymMatrix::Diagonal(std::vector<double>{0.01, 1.0}))}},
                     2.0);
}

MixtureSpec DiagonalMixtureD2() {
  return MixtureSpec({{0.5, GaussianSpec(SymMatrix::FromRows({{1.0, 0.99}, {0.99, 1.0}}))},
                      {0.5, GaussianSpec(SymMatrix::FromRows({{1.0, -0.99}, {-0.99, 1.0}}))}},
                     2.0);
}

Dataset PrepareDiabetes(const Dataset& raw) {
  Dataset prepared = raw.WithoutColumn(std::string(kDiabetesOutcome));
  for (std::string_view name : kDiabetesFeatures) {
    if (prepared.ColumnIndex(std::string(name)) == std::string::npos) {
      Fail(ErrorCode::kSchemaMismatch, raw.provenance + ": missing Diabetes column '" + std::string(name) + "'");
    }
  }
  if (prepared.columns.size() != kDiabetesFeatures.size()) {
    Fail(ErrorCode::kSchemaMismatch, raw.provenance + ": expected exactly the 8 Diabetes feature columns (plus optional Outcome)");
  }
  return prepared;
}

std::string_view ScenarioName(DiabetesScenario scenario) {
  switch (scenario) {
    case DiabetesScenario::kA3: return "a3";
    case DiabetesScenario::kA4: return "a4";
    case DiabetesScenario::kA5: return "a5";
  }
  return "?";
}

SymMatrix DiabetesCovariance(DiabetesScenario scenario, const std::vector<std::string>& columns) {
  double age = 1.0, dpf = 1.0, factor = 1.0;
  switch (scenario) {
    case DiabetesScenario::kA3: age = 1000.0; dpf = 1000.0; factor = 1.0 / 1000.0; break;
    case DiabetesScenario::kA4: age = 0.001; dpf = 0.001; factor = 1.0; break;
    case DiabetesScenario::kA5: age = 0.01; dpf = 100.0; factor = 1.0 / 100.0; break;
  }
  std::vector<double> diag(columns.size(), 1.0);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == "Age") diag[j] = age;
    if (columns[j] == "DiabetesPedigreeFunction") diag[j] = dpf;
  }
  for (double& v : diag) v *= factor;
  return SymMatrix::Diagonal(diag);
}

DiabetesComparison CompareDiabetesScenario(const Dataset& prepared, DiabetesScenario scenario,
                                           std::uint64_t seed, std::size_t threads, std::size_t trees,
                                           std::size_t subsample, double q, TTestKind kind) {
  ForestParams params;
  params.trees = trees;
  params.subsample = subsample;
  params.seed = seed;
  const Forest eif = FitExtended(prepared.data, params, threads);
  const Forest aif = Fit(prepared.data, params, GaussianSpec(DiabetesCovariance(scenario, prepared.columns)), threads);
  DiabetesComparison out;
  out.eif = LabelTopFraction(eif.ScoreAll(prepared.data, threads).scores, q);
  out.aif = LabelTopFraction(aif.ScoreAll(prepared.data, threads).scores, q);
  out.tests = CompareAnomalyFeatures(prepared.data, out.eif.flags, out.aif.flags, kind);
  return out;
}

}  // namespace aif
