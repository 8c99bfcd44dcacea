#pragma once

#include "treechain/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treechain {

struct SvgOptions {
    std::vector<int> levels;      // covers to draw, 0-based; empty draws the skeleton only
    double scale = 60.0;          // pixels per unit
    double fallback_radius = 0.06; // stroke half-width when no enlargement is given
};

/// Skeleton of |T_l| with one layer per requested level. Each link is a path
/// over its closed segments stroked with round caps at twice its radius.
/// Output depends only on the inputs.
std::string render_svg(const CoverSystem& s, const RealizedSystem& r, const std::optional<EnlargedFamily>& enlarged,
                       const SvgOptions& options);

} // namespace treechain
