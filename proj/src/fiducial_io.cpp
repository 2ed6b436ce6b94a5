#include "sicpath/fiducial_io.hpp"

#include <fstream>

#include <json.hpp>

#include "sicpath/errors.hpp"

namespace sicpath {

using nlohmann::json;

FiducialRecord load_fiducial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open fiducial file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("d") || !j.contains("v"))
    throw ParseError(path + ": expected object with fields \"d\" and \"v\"");
  if (!j["d"].is_number_integer()) throw ParseError(path + ": field \"d\" must be an integer");
  const int d = j["d"].get<int>();
  if (d < 2) throw ParseError(path + ": d must be >= 2");
  if (!j["v"].is_array())
    throw ParseError(path + ": field \"v\" must be an array of [re, im] pairs");
  if (static_cast<int>(j["v"].size()) != d)
    throw DimensionMismatch(path + ": expected " + std::to_string(d) + " entries, found " +
                            std::to_string(j["v"].size()));
  std::vector<cplx> e(d);
  for (int i = 0; i < d; ++i) {
    const json& pair = j["v"][i];
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
      throw ParseError(path + ": entry " + std::to_string(i) + " is not an [re, im] pair");
    e[i] = cplx(pair[0].get<double>(), pair[1].get<double>());
  }
  ComplexVector vv(std::move(e));
  if (vv.norm_sq() == 0.0) throw ParseError(path + ": vector has zero norm");
  FiducialRecord rec{d, vv.normalized(), j.value("label", std::string()),
                     j.value("source", std::string())};
  return rec;
}

void save_vector(const ComplexVector& v, const std::string& path, const std::string& label,
                 const std::string& source) {
  json j;
  j["d"] = v.dim();
  j["label"] = label;
  j["source"] = source;
  json arr = json::array();
  for (int i = 0; i < v.dim(); ++i) arr.push_back({v[i].real(), v[i].imag()});
  j["v"] = std::move(arr);
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace sicpath
