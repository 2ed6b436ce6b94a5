#pragma once

#include <string>

#include "sicpath/complex_vector.hpp"

namespace sicpath {

// Fiducial file format (JSON, UTF-8):
//   {"d": <int>, "label": <string>, "source": <string>,
//    "v": [[re, im], ...]}          -- exactly d pairs
// Vectors are normalized to unit norm when loaded.

struct FiducialRecord {
  int d;
  ComplexVector v;
  std::string label;
  std::string source;
};

FiducialRecord load_fiducial(const std::string& path);

void save_vector(const ComplexVector& v, const std::string& path,
                 const std::string& label = "", const std::string& source = "");

}  // namespace sicpath
