#pragma once

#include <string>
#include <vector>

namespace r0 {

struct SvgSeries {
  std::string label;
  std::vector<double> ys;  // x is the index
};

// Minimal self-contained line chart; enough to eyeball a training run.
// Non-finite values break the polyline rather than distorting the scale.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::vector<SvgSeries>& series);

}  // namespace r0
