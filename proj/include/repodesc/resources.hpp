// Copyright 2026 The repodesc Authors.
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

#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "repodesc/error.hpp"

#ifndef REPODESC_DEFAULT_DATA_DIR
#define REPODESC_DEFAULT_DATA_DIR "data"
#endif

namespace repodesc {

// Directory holding the shipped lexicons and dictionaries. The environment
// variable REPODESC_DATA_DIR overrides the compiled-in location.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("REPODESC_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return REPODESC_DEFAULT_DATA_DIR;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return contents;
}

// Reads a data file line by line. Blank lines and lines starting with '#'
// are skipped; a trailing '\r' is dropped.
inline std::vector<std::string> read_data_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    lines.push_back(line);
  }
  return lines;
}

}  // namespace repodesc
