#pragma once

#include <fstream>

#include "json.hpp"

namespace bandsim::test {

// Reference values produced by tests/oracles/generate.py.
inline const nlohmann::json& oracles() {
  static const nlohmann::json j = [] {
    std::ifstream in(BANDSIM_ORACLES);
    return nlohmann::json::parse(in);
  }();
  return j;
}

template <class T>
std::vector<T> vec(const nlohmann::json& j) {
  return j.get<std::vector<T>>();
}

}  // namespace bandsim::test
