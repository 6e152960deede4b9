#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "aif/analysis.hpp"
#include "aif/forest.hpp"
#include "aif/sensitivity.hpp"
#include "aif/stats.hpp"

namespace aif {

// Comma-separated tables with a header row. Numbers use the shortest
// round-trip decimal form, so identical inputs give byte-identical files.
//
//   scores      row,mean_path_length,score
//   grid        x,y,score                      (x fastest)
//   rays        theta,mean_score[,alpha]
//   segments    tree,depth,x0,y0,x1,y1
//   profile     <key>,<value>                  (e.g. theta,alpha)
//   ttest       feature,mean_a,mean_b,t,df,p

void WriteScores(std::ostream& out, const ScoreReport& report);
void WriteGrid(std::ostream& out, const Grid2D& grid);
void WriteRays(std::ostream& out, const RayProfile& rays, const std::vector<double>* alpha = nullptr);
void WriteSegments(std::ostream& out, const std::vector<Segment>& segments, std::size_t tree_index);
void WriteProfile(std::ostream& out, const SensitivityProfile& profile, const std::string& key_name,
                  const std::string& value_name);
void WriteTTestTable(std::ostream& out, const std::vector<std::string>& features,
                     const std::vector<TTestResult>& results);

}  // namespace aif
