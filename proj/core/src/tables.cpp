#include "aif/tables.hpp"

#include <ostream>

#include "aif/dataset.hpp"
#include "aif/error.hpp"

namespace aif {

void WriteScores(std::ostream& out, const ScoreReport& report) {
  out << "row,mean_path_length,score\n";
  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    out << i << ',' << FormatDouble(report.mean_path_length[i]) << ',' << FormatDouble(report.scores[i]) << '\n';
  }
}

void WriteGrid(std::ostream& out, const Grid2D& grid) {
  out << "x,y,score\n";
  for (std::size_t iy = 0; iy < grid.ny; ++iy) {
    for (std::size_t ix = 0; ix < grid.nx; ++ix) {
      out << FormatDouble(grid.CenterX(ix)) << ',' << FormatDouble(grid.CenterY(iy)) << ','
          << FormatDouble(grid.At(ix, iy)) << '\n';
    }
  }
}

void WriteRays(std::ostream& out, const RayProfile& rays, const std::vector<double>* alpha) {
  if (alpha != nullptr && alpha->size() != rays.thetas.size()) {
    Fail(ErrorCode::kDimensionMismatch, "alpha column length differs from the ray count");
  }
  out << "theta,mean_score" << (alpha ? ",alpha" : "") << '\n';
  for (std::size_t k = 0; k < rays.thetas.size(); ++k) {
    out << FormatDouble(rays.thetas[k]) << ',' << FormatDouble(rays.mean_scores[k]);
    if (alpha) out << ',' << FormatDouble((*alpha)[k]);
    out << '\n';
  }
}

void WriteSegments(std::ostream& out, const std::vector<Segment>& segments, std::size_t tree_index) {
  out << "tree,depth,x0,y0,x1,y1\n";
  for (const Segment& s : segments) {
    out << tree_index << ',' << s.depth << ',' << FormatDouble(s.x0) << ',' << FormatDouble(s.y0) << ','
        << FormatDouble(s.x1) << ',' << FormatDouble(s.y1) << '\n';
  }
}

void WriteProfile(std::ostream& out, const SensitivityProfile& profile, const std::string& key_name,
                  const std::string& value_name) {
  out << key_name << ',' << value_name << '\n';
  for (std::size_t k = 0; k < profile.keys.size(); ++k) {
    out << FormatDouble(profile.keys[k]) << ',' << FormatDouble(profile.values[k]) << '\n';
  }
}

void WriteTTestTable(std::ostream& out, const std::vector<std::string>& features,
                     const std::vector<TTestResult>& results) {
  if (features.size() != results.size()) Fail(ErrorCode::kDimensionMismatch, "feature names and results differ in length");
  out << "feature,mean_a,mean_b,t,df,p\n";
  for (std::size_t j = 0; j < results.size(); ++j) {
    const auto& r = results[j];
    out << features[j] << ',' << FormatDouble(r.mean_a) << ',' << FormatDouble(r.mean_b) << ','
        << FormatDouble(r.t_statistic) << ',' << FormatDouble(r.degrees_of_freedom) << ','
        << FormatDouble(r.p_value) << '\n';
  }
}

}  // namespace aif
