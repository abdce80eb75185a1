// Copyright 2026 The basisrisk Authors
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

#ifndef BASISRISK_TOOLS_OUTPUT_HPP_
#define BASISRISK_TOOLS_OUTPUT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace basisrisk::cli {

// Shortest round-trip form; "nan" and "inf" spelled out.
std::string format_number(double v);

// RFC 4180 writer with LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  CsvWriter& row(std::span<const double> values);
  CsvWriter& row(const std::vector<std::string>& cells);
  const std::string& str() const { return text_; }

 private:
  static std::string quote(const std::string& cell);
  std::string text_;
};

std::string cell(std::optional<double> v);

// Files are held in memory and written together at the end so that a
// failing run leaves nothing behind.
class OutputBundle {
 public:
  void add(const std::string& name, std::string content);
  void add_json(const std::string& name, const nlohmann::json& j);
  std::vector<std::string> names() const;

  // Each file goes to a temporary name in `dir` and is renamed into place.
  void write(const std::filesystem::path& dir) const;

 private:
  std::map<std::string, std::string> files_;
};

}  // namespace basisrisk::cli

#endif  // BASISRISK_TOOLS_OUTPUT_HPP_
