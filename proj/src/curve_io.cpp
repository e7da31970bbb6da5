#include "spherelab/curve_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace spherelab {

std::string curve_to_json(const DiscreteCurve& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : c.vertices()) arr.push_back({p.x(), p.y(), p.z()});
  return arr.dump();
}

DiscreteCurve curve_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidCurve, std::string("curve JSON does not parse: ") + e.what());
  }
  if (!arr.is_array()) throw Error(ErrorCode::InvalidCurve, "curve JSON must be an array of [x,y,z]");
  std::vector<Vec3> pts;
  pts.reserve(arr.size());
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() || !t[2].is_number())
      throw Error(ErrorCode::InvalidCurve, "curve JSON entries must be numeric triples");
    pts.push_back({t[0].get<double>(), t[1].get<double>(), t[2].get<double>()});
  }
  return DiscreteCurve::from_points(pts);
}

void save_curve(const DiscreteCurve& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << curve_to_json(c) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

DiscreteCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return curve_from_json(ss.str());
}

}  // namespace spherelab
