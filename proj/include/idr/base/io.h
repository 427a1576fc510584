// include/idr/base/io.h

// Copyright 2026  The idrkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef IDR_BASE_IO_H_
#define IDR_BASE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace idr {

std::string read_file(const std::filesystem::path &path);
// Writes via a temporary sibling and rename, creating parent directories.
void write_file(const std::filesystem::path &path, std::string_view content);

// One JSON value per non-blank line. Errors carry the line number.
std::vector<nlohmann::json> parse_jsonl(std::string_view content);
std::string to_jsonl(const std::vector<nlohmann::json> &rows);

}  // namespace idr

#endif  // IDR_BASE_IO_H_
