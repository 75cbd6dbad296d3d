// Copyright 2026 The pnf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes the bundled fixture systems as JSON input files.

#include <filesystem>
#include <iostream>

#include "pnf/fixtures.hpp"
#include "pnf/io.hpp"

int main(int argc, char** argv) {
  if (argc > 2 || (argc == 2 && argv[1][0] == '-')) {
    std::cerr << "usage: pnf_fixtures [output-dir]\n";
    return 1;
  }
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const std::string& name : pnf::fixture_names()) {
    const auto path = dir / (name + ".json");
    pnf::write_text(path.string(), pnf::canonical_dump(pnf::system_to_json(pnf::fixture_by_name(name))));
    std::cout << path.string() << "\n";
  }
  return 0;
}
