#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "aif/analysis.hpp"
#include "aif/config.hpp"
#include "aif/dataset.hpp"
#include "aif/error.hpp"
#include "aif/experiments.hpp"
#include "aif/model_io.hpp"
#include "aif/parallel.hpp"
#include "aif/random.hpp"
#include "aif/sensitivity.hpp"
#include "aif/tables.hpp"

namespace aif::cli {
namespace {

template <typename Writer>
void Emit(const std::string& path, std::ostream& stdout_stream, Writer&& write) {
  if (path == "-") {
    write(stdout_stream);
    stdout_stream.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) Fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  write(file);
  file.close();
  if (!file) Fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

void EmitFile(const std::filesystem::path& path, std::ostream& log,
              const std::function<void(std::ostream&)>& write) {
  std::ostringstream unused;
  Emit(path.string(), unused, write);
  log << "wrote " << path.string() << '\n';
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kNotPositiveDefinite:
    case ErrorCode::kSubsampleTooLarge:
    case ErrorCode::kEmptyInput:
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaMismatch:
    case ErrorCode::kUnsupportedVersion:
      return kExitValidation;
    case ErrorCode::kConvergenceFailure:
    case ErrorCode::kZeroMatrix:
    case ErrorCode::kDegenerateNormal:
    case ErrorCode::kEmptyRegion:
    case ErrorCode::kTooFewAnomalies:
      return kExitRuntime;
  }
  return kExitRuntime;
}

// Geometry commands work in the plane the forest was trained in.
const Forest& PlanarForest(const Model& model) {
  if (model.forest.dim() != 2) {
    Fail(ErrorCode::kDimensionMismatch,
         "this command needs a 2-D model, got d = " + std::to_string(model.forest.dim()));
  }
  if (model.standardizer) {
    Fail(ErrorCode::kInvalidArgument,
         "this command needs a model trained without standardization (grid coordinates are raw)");
  }
  return model.forest;
}

void CheckRange(double lo, double hi, const char* axis) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    Fail(ErrorCode::kInvalidArgument, std::string(axis) + " range must satisfy lo < hi");
  }
}

std::vector<double> AlphaAlong(const Distribution& dist, std::span<const double> thetas) {
  std::vector<double> alpha;
  alpha.reserve(thetas.size());
  for (double theta : thetas) alpha.push_back(AlphaOf(Direction::Polar(theta), dist));
  return alpha;
}

std::string JoinNames() {
  std::string names;
  for (const auto& n : ExperimentNames()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  return names;
}

// Grids, rays and first-tree partitions for three blob models.
void BlobStudy(const std::vector<std::pair<std::string, Distribution>>& models,
               const ExperimentOptions& opt, std::size_t threads, std::ostream& log) {
  const DataMatrix blob = MakeBlob(kBlobSize, 2, opt.seed);
  Dataset blob_set{{"x", "y"}, blob, "blob"};
  EmitFile(opt.out_dir / "blob.csv", log, [&](std::ostream& o) { WriteCsv(o, blob_set); });

  ForestParams params;
  params.trees = kStudyTrees;
  params.subsample = kStudySubsample;
  params.seed = opt.seed;
  const Range span{-4.0, 4.0};
  const std::vector<double> thetas = EvenThetas(360);

  for (const auto& [name, dist] : models) {
    const Forest forest = Fit(blob, params, dist, threads);
    const Grid2D grid = ScoreGrid(forest, span, span, 101, 101, threads);
    EmitFile(opt.out_dir / ("grid-" + name + ".csv"), log,
             [&](std::ostream& o) { WriteGrid(o, grid); });

    const RayProfile rays =
        RayMeanScores(forest, thetas, kDefaultRhoMin, kDefaultRhoMax, kDefaultRaySamples, threads);
    const std::vector<double> alpha = AlphaAlong(dist, thetas);
    EmitFile(opt.out_dir / ("rays-" + name + ".csv"), log,
             [&](std::ostream& o) { WriteRays(o, rays, &alpha); });

    const auto segments = ExportTreePartitions(forest.trees().front(), Box2D{span, span});
    EmitFile(opt.out_dir / ("partitions-" + name + ".csv"), log,
             [&](std::ostream& o) { WriteSegments(o, segments, 0); });
  }
}

void DiabetesStudy(DiabetesScenario scenario, const ExperimentOptions& opt, std::size_t threads,
                   std::ostream& log) {
  std::filesystem::path path;
  if (opt.data) {
    path = *opt.data;
  } else if (const char* env = std::getenv("AIF_DIABETES_CSV"); env != nullptr && *env != '\0') {
    path = env;
  } else {
    Fail(ErrorCode::kInvalidArgument,
         "diabetes experiments need --data <file> or the AIF_DIABETES_CSV variable");
  }
  const Dataset prepared = PrepareDiabetes(ReadCsvFile(path));
  const DiabetesComparison result = CompareDiabetesScenario(prepared, scenario, opt.seed, threads);
  log << "EIF flagged " << result.eif.flagged << " rows, AIF(" << ScenarioName(scenario)
      << ") flagged " << result.aif.flagged << " of " << prepared.data.rows() << '\n';
  const std::string file = "diabetes-" + std::string(ScenarioName(scenario)) + ".csv";
  EmitFile(opt.out_dir / file, log,
           [&](std::ostream& o) { WriteTTestTable(o, prepared.columns, result.tests); });
}

}  // namespace

int ReportCurrentException(std::ostream& err) {
  try {
    throw;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names = {"diabetes-a3", "diabetes-a4", "diabetes-a5",
                                                 "blob-maps", "blob-mixtures"};
  return names;
}

void Generate(const GenerateOptions& opt, std::ostream& out, std::ostream& log) {
  if (opt.kind != "blob") Fail(ErrorCode::kInvalidArgument, "unknown dataset kind '" + opt.kind + "'");
  if (opt.n == 0) Fail(ErrorCode::kInvalidArgument, "n must be positive");
  if (opt.d == 0) Fail(ErrorCode::kInvalidArgument, "d must be positive");
  Dataset blob;
  blob.data = MakeBlob(opt.n, opt.d, opt.seed);
  for (std::size_t j = 0; j < opt.d; ++j) blob.columns.push_back("x" + std::to_string(j));
  Emit(opt.out, out, [&](std::ostream& o) { WriteCsv(o, blob); });
  log << "generated blob: n=" << opt.n << " d=" << opt.d << " seed=" << opt.seed << '\n';
}

void FitCommand(const FitOptions& opt, std::ostream& out, std::ostream& log) {
  const RunConfig config = LoadRunConfig(opt.config);
  const Dataset data = ReadCsvFile(opt.data);
  const Model model = FitModel(config, data, ResolveThreads(opt.threads));
  Emit(opt.out, out, [&](std::ostream& o) { SaveModel(model, o); });
  log << "fitted forest: t=" << model.forest.trees().size() << " c=" << config.forest.subsample
      << " l=" << model.forest.height_limit() << " d=" << model.forest.dim()
      << " distribution=" << DistributionKind(config.distribution);
  if (IsIsotropic(config.distribution)) log << " (EIF-equivalent)";
  log << '\n';
}

void ScoreCommand(const ScoreOptions& opt, std::ostream& out, std::ostream& log) {
  const Model model = LoadModelFile(opt.model);
  const Dataset data = ReadCsvFile(opt.data);
  const ScoreReport report = ScoreModel(model, data, ResolveThreads(opt.threads));
  Emit(opt.out, out, [&](std::ostream& o) { WriteScores(o, report); });
  log << "scored " << report.scores.size() << " rows\n";
}

void MapCommand(const MapOptions& opt, std::ostream& out, std::ostream& log) {
  CheckRange(opt.x_lo, opt.x_hi, "x");
  CheckRange(opt.y_lo, opt.y_hi, "y");
  const Model model = LoadModelFile(opt.model);
  const Grid2D grid = ScoreGrid(PlanarForest(model), {opt.x_lo, opt.x_hi}, {opt.y_lo, opt.y_hi},
                                opt.nx, opt.ny, ResolveThreads(opt.threads));
  Emit(opt.out, out, [&](std::ostream& o) { WriteGrid(o, grid); });
  log << "scored " << opt.nx << "x" << opt.ny << " grid\n";
}

void RaysCommand(const RaysOptions& opt, std::ostream& out, std::ostream& log) {
  const Model model = LoadModelFile(opt.model);
  const Forest& forest = PlanarForest(model);
  const std::vector<double> thetas = EvenThetas(opt.thetas);
  const RayProfile rays = RayMeanScores(forest, thetas, opt.rho_min, opt.rho_max, opt.samples,
                                        ResolveThreads(opt.threads));
  std::vector<double> alpha;
  if (opt.with_alpha) alpha = AlphaAlong(forest.distribution(), thetas);
  Emit(opt.out, out,
       [&](std::ostream& o) { WriteRays(o, rays, opt.with_alpha ? &alpha : nullptr); });
  log << "computed " << opt.thetas << " ray means\n";
}

void PartitionsCommand(const PartitionsOptions& opt, std::ostream& out, std::ostream& log) {
  CheckRange(opt.x_lo, opt.x_hi, "x");
  CheckRange(opt.y_lo, opt.y_hi, "y");
  const Model model = LoadModelFile(opt.model);
  const Forest& forest = PlanarForest(model);
  if (opt.tree >= forest.trees().size()) {
    Fail(ErrorCode::kInvalidArgument, "tree index " + std::to_string(opt.tree) + " out of range (" +
                                          std::to_string(forest.trees().size()) + " trees)");
  }
  const auto segments = ExportTreePartitions(forest.trees()[opt.tree],
                                             Box2D{{opt.x_lo, opt.x_hi}, {opt.y_lo, opt.y_hi}});
  Emit(opt.out, out, [&](std::ostream& o) { WriteSegments(o, segments, opt.tree); });
  log << "exported " << segments.size() << " segments of tree " << opt.tree << '\n';
}

void SensitivityCommand(const SensitivityOptions& opt, std::ostream& out, std::ostream& log) {
  const bool cap = opt.cap_axis.has_value() || opt.cap_direction.has_value();
  const int modes = int(opt.thetas.has_value()) + int(opt.directions.has_value()) +
                    int(opt.full_sphere || cap) + int(opt.normalize);
  if (modes != 1) {
    Fail(ErrorCode::kInvalidArgument,
         "choose exactly one of --thetas, --directions, --full-sphere/--cap-*, --normalize");
  }
  if (opt.full_sphere && cap) Fail(ErrorCode::kInvalidArgument, "--full-sphere and --cap-* are exclusive");
  if (opt.cap_axis && opt.cap_direction) {
    Fail(ErrorCode::kInvalidArgument, "--cap-axis and --cap-direction are exclusive");
  }

  const RunConfig config = LoadRunConfig(opt.config);
  const Distribution& dist = config.distribution;
  const std::size_t dim = DimensionOf(dist);

  if (opt.thetas) {
    if (dim != 2) Fail(ErrorCode::kDimensionMismatch, "--thetas needs a 2-D distribution");
    const auto profile = AlphaProfilePolar(dist, EvenThetas(*opt.thetas));
    Emit(opt.out, out, [&](std::ostream& o) { WriteProfile(o, profile, "theta", "alpha"); });
    log << "alpha at " << *opt.thetas << " angles\n";
    return;
  }

  if (opt.directions) {
    const Dataset file = ReadCsvFile(*opt.directions);
    if (file.data.cols() != dim) {
      Fail(ErrorCode::kDimensionMismatch, file.provenance + " has " +
                                              std::to_string(file.data.cols()) +
                                              " columns, distribution has d = " + std::to_string(dim));
    }
    std::vector<Direction> directions;
    for (std::size_t i = 0; i < file.data.rows(); ++i) {
      directions.push_back(Direction::Normalized(file.data.row(i)));
    }
    const auto profile = AlphaProfile(dist, directions);
    Emit(opt.out, out, [&](std::ostream& o) { WriteProfile(o, profile, "direction", "alpha"); });
    log << "alpha for " << directions.size() << " directions\n";
    return;
  }

  if (opt.normalize) {
    const auto* mixture = std::get_if<MixtureSpec>(&dist);
    if (mixture == nullptr) Fail(ErrorCode::kInvalidArgument, "--normalize needs a mixture distribution");
    const AlphaMaximum max = MaximizeAlphaMixture(*mixture, opt.grid);
    const MixtureSpec normalized = NormalizeMixture(*mixture, opt.grid);
    Emit(opt.out, out, [&](std::ostream& o) {
      o << "input_scale,max_alpha,normalized_scale";
      for (std::size_t j = 0; j < dim; ++j) o << ",n" << j;
      o << '\n' << FormatDouble(mixture->scale()) << ',' << FormatDouble(max.value) << ','
        << FormatDouble(normalized.scale());
      for (double v : max.direction) o << ',' << FormatDouble(v);
      o << '\n';
    });
    log << "max alpha " << max.value << " at scale " << mixture->scale() << "; normalized scale "
        << normalized.scale() << '\n';
    return;
  }

  SphereRegion region = FullSphere(dim);
  if (cap) {
    if (!(opt.cap_angle > 0.0 && opt.cap_angle <= std::numbers::pi)) {
      Fail(ErrorCode::kInvalidArgument, "--cap-angle must lie in (0, pi]");
    }
    Direction axis = Direction::Axis(dim, 0);
    if (opt.cap_axis) {
      if (*opt.cap_axis >= dim) Fail(ErrorCode::kInvalidArgument, "--cap-axis out of range");
      axis = Direction::Axis(dim, *opt.cap_axis);
    } else {
      if (opt.cap_direction->size() != dim) {
        Fail(ErrorCode::kDimensionMismatch, "--cap-direction needs " + std::to_string(dim) + " components");
      }
      axis = Direction::Normalized(*opt.cap_direction);
    }
    region = CapRegion{axis, opt.cap_angle};
  }
  RngStream rng(opt.seed, 0);
  const MonteCarloEstimate tau =
      std::holds_alternative<MixtureSpec>(dist)
          ? TauMixture(region, std::get<MixtureSpec>(dist), opt.samples, rng)
          : Tau(region, std::get<GaussianSpec>(dist).cov(), opt.samples, rng);
  Emit(opt.out, out, [&](std::ostream& o) {
    o << "estimate,std_error,samples\n"
      << FormatDouble(tau.estimate) << ',' << FormatDouble(tau.std_error) << ',' << tau.samples << '\n';
  });
  log << "tau = " << tau.estimate << " +/- " << tau.std_error << '\n';
}

void CompareCommand(const CompareOptions& opt, std::ostream& out, std::ostream& log) {
  const Model a = LoadModelFile(opt.model_a);
  const Model b = LoadModelFile(opt.model_b);
  const Dataset data = ReadCsvFile(opt.data);
  const std::size_t threads = ResolveThreads(opt.threads);
  const AnomalyLabeling la = LabelTopFraction(ScoreModel(a, data, threads).scores, opt.q);
  const AnomalyLabeling lb = LabelTopFraction(ScoreModel(b, data, threads).scores, opt.q);
  const auto tests = CompareAnomalyFeatures(data.data, la.flags, lb.flags,
                                            opt.pooled ? TTestKind::kPooled : TTestKind::kWelch);
  Emit(opt.out, out, [&](std::ostream& o) { WriteTTestTable(o, data.columns, tests); });
  log << "model a flagged " << la.flagged << " rows, model b flagged " << lb.flagged << '\n';
}

void ExperimentCommand(const ExperimentOptions& opt, std::ostream& /*out*/, std::ostream& log) {
  const auto& names = ExperimentNames();
  if (std::find(names.begin(), names.end(), opt.name) == names.end()) {
    Fail(ErrorCode::kInvalidArgument,
         "unknown experiment '" + opt.name + "'; valid experiments: " + JoinNames());
  }
  std::error_code ec;
  std::filesystem::create_directories(opt.out_dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create '" + opt.out_dir.string() + "': " + ec.message());
  const std::size_t threads = ResolveThreads(opt.threads);

  if (opt.name == "blob-maps") {
    BlobStudy({{"eif", GaussianSpec::Isotropic(2)},
               {"a1", GaussianSpec(AxisMatrixA1())},
               {"a2", GaussianSpec(AxisMatrixA2())}},
              opt, threads, log);
  } else if (opt.name == "blob-mixtures") {
    BlobStudy({{"eif", GaussianSpec::Isotropic(2)}, {"d1", AxisMixtureD1()}, {"d2", DiagonalMixtureD2()}},
              opt, threads, log);
  } else if (opt.name == "diabetes-a3") {
    DiabetesStudy(DiabetesScenario::kA3, opt, threads, log);
  } else if (opt.name == "diabetes-a4") {
    DiabetesStudy(DiabetesScenario::kA4, opt, threads, log);
  } else {
    DiabetesStudy(DiabetesScenario::kA5, opt, threads, log);
  }
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anisotropic Isolation Forest: fit, score and analyse directional sensitivity"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "aif 0.1.0");

  const std::string threads_help =
      "Worker threads (0 = AIF_THREADS if set, else all cores); output does not depend on it";

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic dataset");
  generate->add_option("--kind", gen.kind, "Dataset kind")->check(CLI::IsMember({"blob"}))->capture_default_str();
  generate->add_option("-n,--rows", gen.n, "Number of rows")->capture_default_str();
  generate->add_option("-d,--dim", gen.d, "Number of columns")->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("-o,--out", gen.out, "Output CSV ('-' = stdout)")->capture_default_str();

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a forest from a JSON run config and a CSV dataset");
  fit_cmd->add_option("-c,--config", fit.config, "Run config (JSON)")->required();
  fit_cmd->add_option("--data", fit.data, "Training CSV")->required();
  fit_cmd->add_option("-o,--out", fit.out, "Model output ('-' = stdout)")->capture_default_str();
  fit_cmd->add_option("--threads", fit.threads, threads_help)->capture_default_str();

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "Score every row of a CSV with a saved model");
  score_cmd->add_option("-m,--model", score.model, "Model file")->required();
  score_cmd->add_option("--data", score.data, "CSV to score")->required();
  score_cmd->add_option("-o,--out", score.out, "Score table ('-' = stdout)")->capture_default_str();
  score_cmd->add_option("--threads", score.threads, threads_help)->capture_default_str();

  MapOptions map;
  auto* map_cmd = app.add_subcommand("map", "Score a regular 2-D grid (cell centres)");
  map_cmd->add_option("-m,--model", map.model, "Model file (d = 2)")->required();
  map_cmd->add_option("--x-min", map.x_lo)->capture_default_str();
  map_cmd->add_option("--x-max", map.x_hi)->capture_default_str();
  map_cmd->add_option("--y-min", map.y_lo)->capture_default_str();
  map_cmd->add_option("--y-max", map.y_hi)->capture_default_str();
  map_cmd->add_option("--nx", map.nx, "Cells along x")->check(CLI::PositiveNumber)->capture_default_str();
  map_cmd->add_option("--ny", map.ny, "Cells along y")->check(CLI::PositiveNumber)->capture_default_str();
  map_cmd->add_option("-o,--out", map.out, "Grid table ('-' = stdout)")->capture_default_str();
  map_cmd->add_option("--threads", map.threads, threads_help)->capture_default_str();

  RaysOptions rays;
  auto* rays_cmd = app.add_subcommand("rays", "Mean score along polar rays, one per angle");
  rays_cmd->add_option("-m,--model", rays.model, "Model file (d = 2)")->required();
  rays_cmd->add_option("--thetas", rays.thetas, "Number of evenly spaced angles")
      ->check(CLI::PositiveNumber)->capture_default_str();
  rays_cmd->add_option("--rho-min", rays.rho_min)->capture_default_str();
  rays_cmd->add_option("--rho-max", rays.rho_max)->capture_default_str();
  rays_cmd->add_option("--samples", rays.samples, "Points per ray")->check(CLI::PositiveNumber)->capture_default_str();
  rays_cmd->add_flag("--alpha", rays.with_alpha, "Add the directional sensitivity column");
  rays_cmd->add_option("-o,--out", rays.out, "Ray table ('-' = stdout)")->capture_default_str();
  rays_cmd->add_option("--threads", rays.threads, threads_help)->capture_default_str();

  PartitionsOptions parts;
  auto* parts_cmd = app.add_subcommand("partitions", "Export one tree's split lines as segments");
  parts_cmd->add_option("-m,--model", parts.model, "Model file (d = 2)")->required();
  parts_cmd->add_option("--tree", parts.tree, "Tree index")->capture_default_str();
  parts_cmd->add_option("--x-min", parts.x_lo)->capture_default_str();
  parts_cmd->add_option("--x-max", parts.x_hi)->capture_default_str();
  parts_cmd->add_option("--y-min", parts.y_lo)->capture_default_str();
  parts_cmd->add_option("--y-max", parts.y_hi)->capture_default_str();
  parts_cmd->add_option("-o,--out", parts.out, "Segment table ('-' = stdout)")->capture_default_str();

  SensitivityOptions sens;
  std::size_t thetas = 0;
  std::string directions;
  std::size_t cap_axis = 0;
  std::vector<double> cap_direction;
  auto* sens_cmd = app.add_subcommand("sensitivity", "Directional sensitivity of a config's distribution");
  sens_cmd->add_option("-c,--config", sens.config, "Run config (JSON)")->required();
  auto* thetas_opt = sens_cmd->add_option("--thetas", thetas, "Alpha at N evenly spaced angles (d = 2)")
                         ->check(CLI::PositiveNumber);
  auto* dir_opt = sens_cmd->add_option("--directions", directions, "Alpha at each row of a CSV of directions");
  sens_cmd->add_flag("--full-sphere", sens.full_sphere, "Average sensitivity over the whole sphere");
  auto* cap_axis_opt = sens_cmd->add_option("--cap-axis", cap_axis, "Average over a cap around axis e_i");
  auto* cap_dir_opt = sens_cmd->add_option("--cap-direction", cap_direction, "Cap axis as a comma list")
                          ->delimiter(',');
  sens_cmd->add_option("--cap-angle", sens.cap_angle, "Cap half-angle in radians");
  sens_cmd->add_flag("--normalize", sens.normalize, "Report the mixture scale that makes max alpha 1");
  sens_cmd->add_option("--grid", sens.grid, "Coarse directions for --normalize")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sens_cmd->add_option("--samples", sens.samples, "Monte Carlo samples for region averages")->capture_default_str();
  sens_cmd->add_option("--seed", sens.seed, "Monte Carlo seed")->capture_default_str();
  sens_cmd->add_option("-o,--out", sens.out, "Output table ('-' = stdout)")->capture_default_str();

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "t-test the top anomalies of two models feature by feature");
  cmp_cmd->add_option("--model-a", cmp.model_a)->required();
  cmp_cmd->add_option("--model-b", cmp.model_b)->required();
  cmp_cmd->add_option("--data", cmp.data, "CSV scored by both models")->required();
  cmp_cmd->add_option("-q,--fraction", cmp.q, "Fraction labelled anomalous")->capture_default_str();
  cmp_cmd->add_flag("--pooled", cmp.pooled, "Pooled-variance t-test instead of Welch");
  cmp_cmd->add_option("-o,--out", cmp.out, "t-test table ('-' = stdout)")->capture_default_str();
  cmp_cmd->add_option("--threads", cmp.threads, threads_help)->capture_default_str();

  ExperimentOptions exp;
  std::string exp_data;
  auto* exp_cmd = app.add_subcommand("experiment", "Reproduce a study's tables with its settings built in");
  exp_cmd->add_option("name", exp.name, "One of: " + JoinNames())->required();
  auto* exp_data_opt = exp_cmd->add_option("--data", exp_data, "Diabetes CSV (else AIF_DIABETES_CSV)");
  exp_cmd->add_option("--seed", exp.seed, "Master seed")->capture_default_str();
  exp_cmd->add_option("--out-dir", exp.out_dir, "Output directory")->capture_default_str();
  exp_cmd->add_option("--threads", exp.threads, threads_help)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage_out, usage_err;
    const int code = app.exit(e, usage_out, usage_err);
    out << usage_out.str();
    err << usage_err.str();
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (thetas_opt->count() > 0) sens.thetas = thetas;
  if (dir_opt->count() > 0) sens.directions = directions;
  if (cap_axis_opt->count() > 0) sens.cap_axis = cap_axis;
  if (cap_dir_opt->count() > 0) sens.cap_direction = cap_direction;
  if (exp_data_opt->count() > 0) exp.data = exp_data;

  try {
    if (generate->parsed()) Generate(gen, out, err);
    else if (fit_cmd->parsed()) FitCommand(fit, out, err);
    else if (score_cmd->parsed()) ScoreCommand(score, out, err);
    else if (map_cmd->parsed()) MapCommand(map, out, err);
    else if (rays_cmd->parsed()) RaysCommand(rays, out, err);
    else if (parts_cmd->parsed()) PartitionsCommand(parts, out, err);
    else if (sens_cmd->parsed()) SensitivityCommand(sens, out, err);
    else if (cmp_cmd->parsed()) CompareCommand(cmp, out, err);
    else if (exp_cmd->parsed()) ExperimentCommand(exp, out, err);
  } catch (...) {
    return ReportCurrentException(err);
  }
  return kExitOk;
}

}  // namespace aif::cli
