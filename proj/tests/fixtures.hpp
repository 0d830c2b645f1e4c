#pragma once

#include <string>

#include "diffmod/io.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(DIFFMOD_DATA_DIR) + "/" + name; }

inline diffmod::AlgebraPtr load(const std::string& name) { return diffmod::io::load_algebra(data_path(name)); }

inline diffmod::AlgebraPtr dual_numbers() { return load("f2_dual_numbers.json"); }
inline diffmod::AlgebraPtr cubic() { return load("f3_x3.json"); }
inline diffmod::AlgebraPtr a2() { return load("a2_path.json"); }
inline diffmod::AlgebraPtr t2() { return load("t2_gorenstein.json"); }

inline const char* const kBundled[] = {"f2_dual_numbers.json", "f3_x3.json", "a2_path.json", "t2_gorenstein.json"};

}  // namespace fixtures
