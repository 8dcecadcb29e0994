#pragma once

#include <string>
#include <utility>
#include <vector>

#include "narsrl/harness/aggregate.hpp"

namespace narsrl {

/// Mean line plus translucent mean±std band per labeled series, axes and a
/// legend. Long series are downsampled for rendering; first and last grid
/// points always survive.
std::string render_plot_svg(
    const std::vector<std::pair<std::string, AggregateSeries>>& series,
    const std::string& metric);

}  // namespace narsrl
