#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "aif/config.hpp"
#include "aif/dataset.hpp"
#include "aif/error.hpp"
#include "aif/model_io.hpp"
#include "test_support.hpp"

namespace aif {
namespace {

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidArgument;
}

std::string MessageOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(CsvTest, ReadsHeaderAndRows) {
  std::istringstream in("a,b,\"c\"\n1,2.5,-3e2\n\n4, 5 ,6\r\n");
  const Dataset ds = ReadCsv(in, "mem");
  EXPECT_EQ(ds.columns, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(ds.data.rows(), 2u);
  EXPECT_EQ(ds.data(0, 2), -300.0);
  EXPECT_EQ(ds.data(1, 1), 5.0);
  EXPECT_EQ(ds.ColumnIndex("c"), 2u);
  EXPECT_EQ(ds.ColumnIndex("zzz"), std::string::npos);
  EXPECT_EQ(ds.provenance, "mem");
}

TEST(CsvTest, ErrorsNameLineAndColumn) {
  std::istringstream bad("x,y\n1,2\n3,abc\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(bad, "f.csv"); }), ErrorCode::kParseError);
  std::istringstream bad2("x,y\n1,2\n3,abc\n");
  const std::string msg = MessageOf([&] { ReadCsv(bad2, "f.csv"); });
  EXPECT_NE(msg.find("f.csv:3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("y"), std::string::npos) << msg;

  std::istringstream ragged("x,y\n1\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(ragged); }), ErrorCode::kParseError);
  std::istringstream nonfinite("x\ninf\n");
  EXPECT_EQ(CodeOf([&] { ReadCsv(nonfinite); }), ErrorCode::kParseError);
  std::istringstream empty("");
  EXPECT_EQ(CodeOf([&] { ReadCsv(empty); }), ErrorCode::kEmptyInput);
}

TEST(CsvTest, HeaderOnlyGivesEmptyDataset) {
  std::istringstream in("a,b\n");
  const Dataset ds = ReadCsv(in);
  EXPECT_TRUE(ds.data.empty());
  EXPECT_EQ(ds.columns.size(), 2u);
}

TEST(CsvTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { ReadCsvFile("/nonexistent/dir/x.csv"); }), ErrorCode::kIo);
}

TEST(CsvTest, WriteReadRoundTripIsExact) {
  Dataset ds;
  ds.columns = {"u", "v"};
  ds.data = DataMatrix::FromRows({{0.1, 1.0 / 3.0}, {-1e-300, 123456789.123456789}, {5e-324, -0.0}});
  std::ostringstream out;
  WriteCsv(out, ds);
  std::istringstream in(out.str());
  const Dataset back = ReadCsv(in);
  EXPECT_EQ(back.columns, ds.columns);
  EXPECT_TRUE(back.data == ds.data);
}

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(2.0), "2");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(DatasetTest, WithoutColumn) {
  Dataset ds{{"a", "Outcome", "b"}, DataMatrix::FromRows({{1, 0, 2}, {3, 1, 4}}), "p"};
  const Dataset d = ds.WithoutColumn("Outcome");
  EXPECT_EQ(d.columns, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.data(1, 1), 4.0);
}

TEST(StandardizerTest, ZeroMeanUnitScale) {
  const DataMatrix m = DataMatrix::FromRows({{1, 5}, {2, 5}, {3, 5}, {6, 5}});
  const auto st = Standardizer::Fit(m);
  EXPECT_DOUBLE_EQ(st.mean[0], 3.0);
  EXPECT_DOUBLE_EQ(st.scale[0], std::sqrt(14.0 / 4.0));
  EXPECT_EQ(st.scale[1], 1.0);
  const DataMatrix z = st.Apply(m);
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += z(i, 0);
  EXPECT_NEAR(s, 0.0, 1e-12);
  EXPECT_EQ(z(0, 1), 0.0);
}

const char* kMixtureConfig = R"({
  "schema_version": 1,
  "distribution": {"kind": "mixture", "scale": 2,
    "components": [{"weight": 0.5, "cov": [[1, 0.99], [0.99, 1]]},
                   {"weight": 0.5, "cov": [[1, -0.99], [-0.99, 1]]}]},
  "trees": 50, "subsample": 32, "extension": 1, "seed": 9,
  "leaf_adjustment": false, "standardize": true
})";

TEST(ConfigTest, ParsesGaussianAndDefaults) {
  const RunConfig c = ParseRunConfig(
      R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 0.05]}})");
  EXPECT_EQ(DistributionKind(c.distribution), "gaussian");
  EXPECT_EQ(std::get<GaussianSpec>(c.distribution).cov()(1, 1), 0.05);
  EXPECT_EQ(c.forest.trees, 100u);
  EXPECT_EQ(c.forest.subsample, 256u);
  EXPECT_TRUE(c.forest.extension.is_full());
  EXPECT_TRUE(c.forest.leaf_adjustment);
  EXPECT_FALSE(c.standardize);
}

TEST(ConfigTest, ParsesMixtureAndRoundTrips) {
  const RunConfig c = ParseRunConfig(kMixtureConfig);
  const auto& m = std::get<MixtureSpec>(c.distribution);
  EXPECT_EQ(m.scale(), 2.0);
  EXPECT_EQ(m.components().size(), 2u);
  EXPECT_EQ(m.components()[1].spec.cov()(0, 1), -0.99);
  EXPECT_EQ(*c.forest.extension.raw(), 1u);
  EXPECT_FALSE(c.forest.leaf_adjustment);
  EXPECT_TRUE(c.standardize);
  const RunConfig again = ParseRunConfig(DumpRunConfig(c));
  EXPECT_EQ(DumpRunConfig(again), DumpRunConfig(c));
  EXPECT_TRUE(again.forest == c.forest);
}

TEST(ConfigTest, SyntaxErrorReportsLineAndColumn) {
  const std::string msg = MessageOf([] { ParseRunConfig("{\n  \"schema_version\": 1,\n  oops\n}", "cfg.json"); });
  EXPECT_NE(msg.find("cfg.json:3:"), std::string::npos) << msg;
  EXPECT_EQ(CodeOf([] { ParseRunConfig("{", "c"); }), ErrorCode::kParseError);
}

TEST(ConfigTest, SemanticErrorsReportJsonPath) {
  const std::string unknown = MessageOf([] {
    ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1]}, "tress": 5})");
  });
  EXPECT_NE(unknown.find("/tress"), std::string::npos) << unknown;

  const std::string bad_weight = MessageOf([] {
    ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "mixture",
        "components": [{"weight": "half", "diag": [1]}]}})");
  });
  EXPECT_NE(bad_weight.find("/distribution/components/0/weight"), std::string::npos) << bad_weight;

  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "cov": [[1, 2], [2, 1]]}})");
            }),
            ErrorCode::kNotPositiveDefinite);
  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "cov": [[1, 0.5], [0, 1]]}})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1]}, "extension": 2})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1]}, "subsample": 1})");
            }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "mixture",
                  "components": [{"weight": 0.4, "diag": [1]}, {"weight": 0.4, "diag": [2]}]}})");
            }),
            ErrorCode::kInvalidArgument);
}

TEST(ConfigTest, RejectsOtherSchemaVersions) {
  EXPECT_EQ(CodeOf([] {
              ParseRunConfig(R"({"schema_version": 2, "distribution": {"kind": "gaussian", "diag": [1]}})");
            }),
            ErrorCode::kUnsupportedVersion);
  EXPECT_EQ(CodeOf([] { ParseRunConfig(R"({"distribution": {"kind": "gaussian", "diag": [1]}})"); }),
            ErrorCode::kInvalidArgument);
}

Dataset BlobDataset(std::size_t n, std::uint64_t seed) {
  Dataset ds;
  ds.columns = {"x", "y"};
  ds.provenance = "blob";
  // Deterministic, slightly skewed cloud.
  std::mt19937 gen(static_cast<unsigned>(seed));
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back({normal(gen), 3.0 * normal(gen) + 10.0});
  ds.data = DataMatrix::FromRows(rows);
  return ds;
}

TEST(ModelTest, SaveLoadReproducesScoresBitwise) {
  for (const char* text :
       {kMixtureConfig,
        R"({"schema_version": 1, "distribution": {"kind": "gaussian", "cov": [[1, 0.3], [0.3, 0.5]]},
            "trees": 40, "subsample": 64, "seed": 4})"}) {
    const RunConfig config = ParseRunConfig(text);
    const Dataset data = BlobDataset(300, 1);
    const Model model = FitModel(config, data);
    std::stringstream buf;
    SaveModel(model, buf);
    const Model back = LoadModel(buf, "buf");
    EXPECT_TRUE(back.forest == model.forest);
    EXPECT_EQ(back.columns, model.columns);
    EXPECT_EQ(back.standardizer.has_value(), config.standardize);
    EXPECT_EQ(ScoreModel(back, data).scores, ScoreModel(model, data).scores);
    // The embedded config re-validates and is unchanged.
    EXPECT_EQ(DumpRunConfig(back.config), DumpRunConfig(config));
    std::stringstream again;
    SaveModel(back, again);
    EXPECT_EQ(again.str(), buf.str());
  }
}

TEST(ModelTest, ScoreChecksWidthAndEmptiness) {
  const RunConfig config =
      ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1]},
                         "trees": 10, "subsample": 16})");
  const Model model = FitModel(config, BlobDataset(50, 2));
  Dataset wide{{"a", "b", "c"}, DataMatrix::FromRows({{1, 2, 3}}), "wide"};
  EXPECT_EQ(CodeOf([&] { ScoreModel(model, wide); }), ErrorCode::kDimensionMismatch);
  Dataset none{{"x", "y"}, DataMatrix(), "none"};
  EXPECT_EQ(CodeOf([&] { ScoreModel(model, none); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(CodeOf([&] { FitModel(config, none); }), ErrorCode::kEmptyInput);
}

TEST(ModelTest, LoaderRejectsForeignDocuments) {
  std::istringstream wrong_format(R"({"format": "something-else", "schema_version": 1})");
  EXPECT_EQ(CodeOf([&] { LoadModel(wrong_format); }), ErrorCode::kSchemaMismatch);
  std::istringstream wrong_version(R"({"format": "aif-model", "schema_version": 7})");
  EXPECT_EQ(CodeOf([&] { LoadModel(wrong_version); }), ErrorCode::kUnsupportedVersion);
  std::istringstream garbage("not json");
  EXPECT_EQ(CodeOf([&] { LoadModel(garbage); }), ErrorCode::kParseError);
}

TEST(ModelTest, LoaderRejectsCorruptTrees) {
  const RunConfig config =
      ParseRunConfig(R"({"schema_version": 1, "distribution": {"kind": "gaussian", "diag": [1, 1]},
                         "trees": 2, "subsample": 16})");
  const Model model = FitModel(config, BlobDataset(50, 3));
  std::stringstream buf;
  SaveModel(model, buf);
  std::string text = buf.str();
  const auto pos = text.find("\"left\":1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 8, "\"left\":999");
  std::istringstream corrupt(text);
  EXPECT_EQ(CodeOf([&] { LoadModel(corrupt); }), ErrorCode::kSchemaMismatch);
}

}  // namespace
}  // namespace aif
