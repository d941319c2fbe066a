#pragma once

// Bundled surface models. The JSON files under models/ carry the same data.

#include <string>
#include <string_view>
#include <vector>

#include "zdlab/surface.hpp"

namespace zdlab::models {

/// P^2 blown up at one point: classes H, E; generators E and F = H - E.
surface::ModelPtr blp2();
/// P^2 blown up at two points: classes H, E1, E2; generators E1, E2, L = H - E1 - E2.
surface::ModelPtr blp2x2();
/// Hirzebruch surface F_n: negative section C (C^2 = -n), fibre F.
surface::ModelPtr hirzebruch(int n);

std::vector<std::string> bundled_names();
/// Throws UsageError for unknown names.
surface::ModelPtr bundled(std::string_view name);

}  // namespace zdlab::models
