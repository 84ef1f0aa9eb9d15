#pragma once

#include <string>
#include <vector>

#include "vform/geometry.hpp"

namespace vform {

// Top-down view of one configuration: a dot per body, a horizontal bar per
// wingspan, flight direction pointing up the page. overlay adds the dashed
// trailing-to-lead segments that the positioning metrics are built on.
std::string renderSvg(const std::vector<BirdPose>& birds, const Params& p,
                      bool overlay);

}  // namespace vform
