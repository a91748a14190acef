// Copyright 2026 The correq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "correq/io.hpp"

#include <fstream>

namespace correq {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

bool json_all_rational(const json& j) {
  if (j.is_number()) return j.is_number_integer();
  if (j.is_array() || j.is_object()) {
    for (const auto& child : j) {
      if (!json_all_rational(child)) return false;
    }
  }
  return true;
}

}  // namespace correq
