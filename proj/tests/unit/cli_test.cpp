#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "aif/dataset.hpp"
#include "commands.hpp"
#include "test_support.hpp"

namespace aif::cli {
namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "aif");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Dataset ReadTable(const std::string& text) {
  std::istringstream in(text);
  return ReadCsv(in);
}

constexpr const char* kEifConfig =
    R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1]},
        "trees": 500, "subsample": 128, "seed": 3})";
constexpr const char* kAxisConfig =
    R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [4, 0.05]},
        "trees": 100, "subsample": 128, "seed": 3})";
constexpr const char* kD1Config =
    R"({"schema_version": 1, "distribution": {"kind": "mixture", "scale": 2, "components": [
        {"weight": 0.5, "cov": [[1, 0], [0, 0.01]]}, {"weight": 0.5, "cov": [[0.01, 0], [0, 1]]}]}})";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    blob_ = (dir_ / "blob.csv").string();
    ASSERT_EQ(RunCli({"generate", "-n", "2000", "-d", "2", "--seed", "7", "-o", blob_}).code, 0);
  }

  std::string Config(const std::string& name, const char* text) { return dir_.Write(name, text).string(); }

  std::string FitModel(const char* config_text, const std::string& name) {
    const std::string model = (dir_ / name).string();
    const auto r = RunCli({"fit", "-c", Config(name + ".json", config_text), "--data", blob_, "-o", model});
    EXPECT_EQ(r.code, 0) << r.err;
    return model;
  }

  testing::TempDir dir_;
  std::string blob_;
};

TEST_F(CliTest, GenerateShapeAndDeterminism) {
  const Dataset ds = ReadCsvFile(blob_);
  EXPECT_EQ(ds.data.rows(), 2000u);
  EXPECT_EQ(ds.data.cols(), 2u);
  const std::string again = (dir_ / "again.csv").string();
  ASSERT_EQ(RunCli({"generate", "-n", "2000", "-d", "2", "--seed", "7", "-o", again}).code, 0);
  EXPECT_EQ(testing::ReadFile(again), testing::ReadFile(blob_));
  const auto stdout_run = RunCli({"generate", "-n", "2000", "-d", "2", "--seed", "7"});
  EXPECT_EQ(stdout_run.out, testing::ReadFile(blob_));
}

TEST_F(CliTest, GenerateRejectsZeroRows) {
  const auto r = RunCli({"generate", "-n", "0"});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("n must be positive"), std::string::npos);
}

TEST_F(CliTest, FitSummaryForPaperSettings) {
  const auto r = RunCli({"fit", "-c", Config("eif.json", kEifConfig), "--data", blob_, "-o",
                         (dir_ / "m.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("t=500"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("c=128"), std::string::npos);
  EXPECT_NE(r.err.find("l=7"), std::string::npos);
  EXPECT_NE(r.err.find("d=2"), std::string::npos);
  EXPECT_NE(r.err.find("EIF-equivalent"), std::string::npos);

  const auto aniso = RunCli({"fit", "-c", Config("a.json", kAxisConfig), "--data", blob_, "-o",
                             (dir_ / "a.model").string()});
  ASSERT_EQ(aniso.code, 0);
  EXPECT_EQ(aniso.err.find("EIF-equivalent"), std::string::npos);
}

TEST_F(CliTest, FitErrors) {
  const std::string small = dir_.Write("small.csv", "x,y\n1,2\n3,4\n5,6\n").string();
  const auto too_large = RunCli({"fit", "-c", Config("eif.json", kEifConfig), "--data", small});
  EXPECT_EQ(too_large.code, kExitValidation);
  EXPECT_NE(too_large.err.find("SubsampleTooLarge"), std::string::npos);

  const std::string bad = Config("bad.json", "{\n \"schema_version\": 1,\n \"distribution\": [\n");
  const auto syntax = RunCli({"fit", "-c", bad, "--data", blob_});
  EXPECT_EQ(syntax.code, kExitValidation);
  EXPECT_NE(syntax.err.find("bad.json:"), std::string::npos) << syntax.err;

  const std::string three = Config("three.json",
      R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1, 1]}, "subsample": 16})");
  EXPECT_EQ(RunCli({"fit", "-c", three, "--data", blob_}).code, kExitValidation);

  EXPECT_EQ(RunCli({"fit", "-c", (dir_ / "none.json").string(), "--data", blob_}).code, kExitIo);
  EXPECT_EQ(RunCli({"fit", "--data", blob_}).code, kExitValidation);
}

TEST_F(CliTest, ScoreRanksExtremeRowsHighest) {
  const std::string model = FitModel(kEifConfig, "eif.model");
  const auto r = RunCli({"score", "-m", model, "--data", blob_});
  ASSERT_EQ(r.code, 0) << r.err;
  const Dataset scores = ReadTable(r.out);
  const Dataset blob = ReadCsvFile(blob_);
  ASSERT_EQ(scores.data.rows(), 2000u);
  EXPECT_EQ(scores.columns, (std::vector<std::string>{"row", "mean_path_length", "score"}));
  std::size_t far = 0, near = 0;
  for (std::size_t i = 0; i < 2000; ++i) {
    EXPECT_EQ(scores.data(i, 0), static_cast<double>(i));
    EXPECT_GT(scores.data(i, 2), 0.0);
    EXPECT_LT(scores.data(i, 2), 1.0);
    const double r2 = blob.data(i, 0) * blob.data(i, 0) + blob.data(i, 1) * blob.data(i, 1);
    if (r2 > blob.data(far, 0) * blob.data(far, 0) + blob.data(far, 1) * blob.data(far, 1)) far = i;
    if (r2 < blob.data(near, 0) * blob.data(near, 0) + blob.data(near, 1) * blob.data(near, 1)) near = i;
  }
  std::size_t rank = 0;
  for (std::size_t i = 0; i < 2000; ++i) rank += scores.data(i, 2) > scores.data(far, 2);
  EXPECT_LT(rank, 10u);
  EXPECT_GT(scores.data(far, 2), scores.data(near, 2) + 0.2);
}

TEST_F(CliTest, ScoreErrors) {
  const std::string model = FitModel(kEifConfig, "eif.model");
  const std::string empty = dir_.Write("empty.csv", "").string();
  const auto r = RunCli({"score", "-m", model, "--data", empty});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("EmptyInput"), std::string::npos);
  const std::string header_only = dir_.Write("header.csv", "x,y\n").string();
  EXPECT_NE(RunCli({"score", "-m", model, "--data", header_only}).err.find("EmptyInput"), std::string::npos);
  const std::string wide = dir_.Write("wide.csv", "a,b,c\n1,2,3\n").string();
  const auto mismatch = RunCli({"score", "-m", model, "--data", wide});
  EXPECT_EQ(mismatch.code, kExitValidation);
  EXPECT_NE(mismatch.err.find("DimensionMismatch"), std::string::npos);
}

TEST_F(CliTest, OutputsIndependentOfThreadCount) {
  const std::string cfg = Config("a.json", kAxisConfig);
  const std::string m1 = (dir_ / "m1").string(), m4 = (dir_ / "m4").string();
  ASSERT_EQ(RunCli({"fit", "-c", cfg, "--data", blob_, "-o", m1, "--threads", "1"}).code, 0);
  ASSERT_EQ(RunCli({"fit", "-c", cfg, "--data", blob_, "-o", m4, "--threads", "4"}).code, 0);
  EXPECT_EQ(testing::ReadFile(m1), testing::ReadFile(m4));
  EXPECT_EQ(RunCli({"score", "-m", m1, "--data", blob_, "--threads", "1"}).out,
            RunCli({"score", "-m", m4, "--data", blob_, "--threads", "3"}).out);
  EXPECT_EQ(RunCli({"map", "-m", m1, "--nx", "21", "--ny", "17", "--threads", "1"}).out,
            RunCli({"map", "-m", m1, "--nx", "21", "--ny", "17", "--threads", "5"}).out);
}

TEST_F(CliTest, MapRaysPartitions) {
  const std::string model = FitModel(kAxisConfig, "a.model");
  const auto map = RunCli({"map", "-m", model, "--nx", "10", "--ny", "5", "--x-min", "-1", "--x-max", "1"});
  ASSERT_EQ(map.code, 0) << map.err;
  const Dataset grid = ReadTable(map.out);
  EXPECT_EQ(grid.columns, (std::vector<std::string>{"x", "y", "score"}));
  ASSERT_EQ(grid.data.rows(), 50u);
  EXPECT_DOUBLE_EQ(grid.data(0, 0), -0.9);
  EXPECT_DOUBLE_EQ(grid.data(1, 0), -0.7);

  const auto rays = RunCli({"rays", "-m", model, "--thetas", "8", "--alpha"});
  ASSERT_EQ(rays.code, 0) << rays.err;
  const Dataset r = ReadTable(rays.out);
  EXPECT_EQ(r.columns, (std::vector<std::string>{"theta", "mean_score", "alpha"}));
  ASSERT_EQ(r.data.rows(), 8u);
  EXPECT_NEAR(r.data(0, 2), 2.0, 1e-12);
  EXPECT_NEAR(r.data(2, 2), std::sqrt(0.05), 1e-12);
  // Less sensitive along y: rays at pi/2 score lower than rays at 0.
  EXPECT_LT(r.data(2, 1), r.data(0, 1));
  EXPECT_EQ(ReadTable(RunCli({"rays", "-m", model, "--thetas", "8"}).out).columns.size(), 2u);

  const auto parts = RunCli({"partitions", "-m", model, "--tree", "3"});
  ASSERT_EQ(parts.code, 0) << parts.err;
  const Dataset segs = ReadTable(parts.out);
  EXPECT_EQ(segs.columns, (std::vector<std::string>{"tree", "depth", "x0", "y0", "x1", "y1"}));
  EXPECT_GT(segs.data.rows(), 0u);
  EXPECT_EQ(segs.data(0, 0), 3.0);
  EXPECT_EQ(RunCli({"partitions", "-m", model, "--tree", "100"}).code, kExitValidation);
}

TEST_F(CliTest, GeometryCommandsRejectOtherDimensions) {
  const std::string data3 = (dir_ / "b3.csv").string();
  ASSERT_EQ(RunCli({"generate", "-n", "200", "-d", "3", "-o", data3}).code, 0);
  const std::string cfg = Config("c3.json",
      R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1, 1]}, "trees": 5, "subsample": 32})");
  const std::string model = (dir_ / "m3").string();
  ASSERT_EQ(RunCli({"fit", "-c", cfg, "--data", data3, "-o", model}).code, 0);
  for (const char* cmd : {"map", "rays", "partitions"}) {
    const auto r = RunCli({cmd, "-m", model});
    EXPECT_EQ(r.code, kExitValidation) << cmd;
    EXPECT_NE(r.err.find("2-D"), std::string::npos) << r.err;
  }
}

TEST_F(CliTest, SensitivityModes) {
  const auto iso = RunCli({"sensitivity", "-c", Config("eif.json", kEifConfig), "--thetas", "36"});
  ASSERT_EQ(iso.code, 0) << iso.err;
  const Dataset p = ReadTable(iso.out);
  ASSERT_EQ(p.data.rows(), 36u);
  for (std::size_t i = 0; i < 36; ++i) EXPECT_EQ(p.data(i, 1), 1.0);

  const std::string d1 = Config("d1.json", kD1Config);
  const Dataset prof = ReadTable(RunCli({"sensitivity", "-c", d1, "--thetas", "3600"}).out);
  double max = 0.0;
  for (std::size_t i = 0; i < prof.data.rows(); ++i) max = std::max(max, prof.data(i, 1));
  EXPECT_NEAR(max, 1.0, 2e-2);

  const auto norm = RunCli({"sensitivity", "-c", d1, "--normalize"});
  ASSERT_EQ(norm.code, 0) << norm.err;
  const Dataset n = ReadTable(norm.out);
  EXPECT_NEAR(n.data(0, 1), std::sqrt(1.01), 1e-9);
  EXPECT_NEAR(n.data(0, 2), 2.0 / 1.01, 1e-9);

  const auto cap = RunCli({"sensitivity", "-c", Config("a.json", kAxisConfig), "--cap-axis", "0",
                           "--cap-angle", "0.01", "--samples", "5000"});
  ASSERT_EQ(cap.code, 0) << cap.err;
  EXPECT_NEAR(ReadTable(cap.out).data(0, 0), 2.0, 1e-3);

  const std::string dirs = dir_.Write("dirs.csv", "u,v\n1,0\n0,2\n1,1\n").string();
  const Dataset dp = ReadTable(RunCli({"sensitivity", "-c", Config("a2.json", kAxisConfig), "--directions", dirs}).out);
  ASSERT_EQ(dp.data.rows(), 3u);
  EXPECT_NEAR(dp.data(1, 1), std::sqrt(0.05), 1e-12);
  EXPECT_NEAR(dp.data(2, 1), std::sqrt(0.5 * 4.05), 1e-12);

  const auto full = RunCli({"sensitivity", "-c", Config("e2.json", kEifConfig), "--full-sphere", "--samples", "1000"});
  EXPECT_EQ(ReadTable(full.out).data(0, 0), 1.0);
}

TEST_F(CliTest, SensitivityRejectsInvalidRegions) {
  const std::string cfg = Config("a.json", kAxisConfig);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg, "--cap-axis", "0", "--cap-angle", "0"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg, "--cap-axis", "5", "--cap-angle", "0.5"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg, "--cap-direction", "1,0,0", "--cap-angle", "0.5"}).code,
            kExitValidation);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg}).code, kExitValidation);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg, "--thetas", "4", "--full-sphere"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"sensitivity", "-c", cfg, "--normalize"}).code, kExitValidation);
}

TEST_F(CliTest, CompareSameModelGivesUnitPValues) {
  const std::string model = FitModel(kAxisConfig, "a.model");
  const auto r = RunCli({"compare", "--model-a", model, "--model-b", model, "--data", blob_, "-q", "0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  // The feature column holds names, so parse by hand.
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "feature,mean_a,mean_b,t,df,p");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "1") << line;
  }
  EXPECT_EQ(rows, 2);
}

TEST_F(CliTest, CompareTooFewAnomalies) {
  const std::string model = FitModel(kAxisConfig, "a.model");
  const std::string tiny = dir_.Write("tiny.csv", "x,y\n0,0\n1,1\n2,2\n3,3\n").string();
  const auto r = RunCli({"compare", "--model-a", model, "--model-b", model, "--data", tiny, "-q", "0.1"});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("TooFewAnomalies"), std::string::npos);
}

TEST_F(CliTest, ExperimentNames) {
  const auto r = RunCli({"experiment", "nope"});
  EXPECT_EQ(r.code, kExitValidation);
  for (const auto& name : ExperimentNames()) EXPECT_NE(r.err.find(name), std::string::npos);
}

TEST_F(CliTest, DiabetesExperimentOnSyntheticFile) {
  const std::string csv = dir_.Write("diabetes.csv", testing::SyntheticDiabetesCsv(768, 3)).string();
  const std::string out = (dir_ / "out").string();
  const auto r = RunCli({"experiment", "diabetes-a3", "--data", csv, "--out-dir", out, "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string table = testing::ReadFile(dir_ / "out/diabetes-a3.csv");
  EXPECT_EQ(table.rfind("feature,mean_a,mean_b,t,df,p\n", 0), 0u);
  EXPECT_NE(table.find("\nAge,"), std::string::npos);
  EXPECT_NE(table.find("\nDiabetesPedigreeFunction,"), std::string::npos);

  const std::string broken = dir_.Write("broken.csv", "Age,Glucose\n30,100\n").string();
  const auto bad = RunCli({"experiment", "diabetes-a4", "--data", broken, "--out-dir", out});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_NE(bad.err.find("SchemaMismatch"), std::string::npos);
}

TEST_F(CliTest, HelpAndUsage) {
  const auto help = RunCli({"--help"});
  EXPECT_EQ(help.code, 0);
  for (const char* cmd : {"generate", "fit", "score", "map", "rays", "partitions", "sensitivity", "compare",
                          "experiment"}) {
    EXPECT_NE(help.out.find(cmd), std::string::npos) << cmd;
  }
  EXPECT_EQ(RunCli({}).code, kExitValidation);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(RunCli({"generate", "-n", "abc"}).code, kExitValidation);
}

}  // namespace
}  // namespace aif::cli
