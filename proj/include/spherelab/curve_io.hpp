#pragma once

#include <filesystem>
#include <string>

#include "spherelab/sphere_geom.hpp"

namespace spherelab {

/// JSON array of [x, y, z] triples, written with round-trip precision.
std::string curve_to_json(const DiscreteCurve& c);
/// Parses a JSON array of triples; every point is re-normalized and the curve validated.
DiscreteCurve curve_from_json(const std::string& text);

void save_curve(const DiscreteCurve& c, const std::filesystem::path& path);
DiscreteCurve load_curve(const std::filesystem::path& path);

}  // namespace spherelab
