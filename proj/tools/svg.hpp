#pragma once

#include <array>
#include <string>
#include <vector>

#include "robustab/interval.hpp"
#include "robustab/roots.hpp"

namespace robustab::cli {

/// Scatter of the roots of k1..k4 in a 2x2 grid (k1 top left, k3 top right,
/// k2 bottom left, k4 bottom right). Self-contained SVG document.
std::string roots_svg(const std::array<RootSet, 4>& roots);

/// Kharitonov rectangles at a handful of frequencies with the four corner
/// trajectories and k1..k4 labels on the last drawn rectangle.
std::string rectangle_svg(const std::vector<RectangleSample>& samples);

}  // namespace robustab::cli
