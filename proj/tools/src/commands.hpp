#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aif::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;
inline constexpr int kExitIo = 4;

/// Maps the exception currently being handled to an exit status and prints
/// its message to `err`.
int ReportCurrentException(std::ostream& err);

struct GenerateOptions {
  std::string kind = "blob";
  std::size_t n = 2000;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct FitOptions {
  std::filesystem::path config;
  std::filesystem::path data;
  std::string out = "-";
  std::size_t threads = 0;
};

struct ScoreOptions {
  std::filesystem::path model;
  std::filesystem::path data;
  std::string out = "-";
  std::size_t threads = 0;
};

struct MapOptions {
  std::filesystem::path model;
  double x_lo = -4.0, x_hi = 4.0, y_lo = -4.0, y_hi = 4.0;
  std::size_t nx = 101, ny = 101;
  std::string out = "-";
  std::size_t threads = 0;
};

struct RaysOptions {
  std::filesystem::path model;
  std::size_t thetas = 360;
  double rho_min = 1.0;
  double rho_max = 4.0;
  std::size_t samples = 200;
  bool with_alpha = false;
  std::string out = "-";
  std::size_t threads = 0;
};

struct PartitionsOptions {
  std::filesystem::path model;
  std::size_t tree = 0;
  double x_lo = -4.0, x_hi = 4.0, y_lo = -4.0, y_hi = 4.0;
  std::string out = "-";
};

struct SensitivityOptions {
  std::filesystem::path config;
  // Exactly one mode: a theta grid (2-D), a direction file, a region (tau), or normalize.
  std::optional<std::size_t> thetas;
  std::optional<std::filesystem::path> directions;
  bool full_sphere = false;
  std::optional<std::size_t> cap_axis;
  std::optional<std::vector<double>> cap_direction;
  double cap_angle = 0.0;
  bool normalize = false;
  std::size_t grid = 10000;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::string out = "-";
};

struct CompareOptions {
  std::filesystem::path model_a;
  std::filesystem::path model_b;
  std::filesystem::path data;
  double q = 0.1;
  bool pooled = false;
  std::string out = "-";
  std::size_t threads = 0;
};

struct ExperimentOptions {
  std::string name;
  std::optional<std::filesystem::path> data;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = ".";
  std::size_t threads = 0;
};

/// Valid experiment names, in help order.
const std::vector<std::string>& ExperimentNames();

// Each command writes its table/model to the path in `opt.out` (or to `out`
// when that path is "-") and a short
// human-readable summary to `log`. Failures throw aif::Error.
void Generate(const GenerateOptions& opt, std::ostream& out, std::ostream& log);
void FitCommand(const FitOptions& opt, std::ostream& out, std::ostream& log);
void ScoreCommand(const ScoreOptions& opt, std::ostream& out, std::ostream& log);
void MapCommand(const MapOptions& opt, std::ostream& out, std::ostream& log);
void RaysCommand(const RaysOptions& opt, std::ostream& out, std::ostream& log);
void PartitionsCommand(const PartitionsOptions& opt, std::ostream& out, std::ostream& log);
void SensitivityCommand(const SensitivityOptions& opt, std::ostream& out, std::ostream& log);
void CompareCommand(const CompareOptions& opt, std::ostream& out, std::ostream& log);
void ExperimentCommand(const ExperimentOptions& opt, std::ostream& out, std::ostream& log);

/// Full command line entry point (argv[0] included); returns the exit status.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aif::cli
