// Copyright 2026 The SimCleaner Authors
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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

// UTF-8 helpers shared by the metrics, the table reader and the profiler.
// All positions are code points unless a name says "byte".

namespace simcleaner::unicode {

// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
std::u32string to_code_points(std::string_view utf8);

std::string to_utf8(std::u32string_view code_points);

// Byte offset of the first ill-formed sequence, or nullopt if `bytes` is
// well-formed UTF-8.
std::optional<std::size_t> first_invalid_byte(std::string_view bytes);

std::size_t code_point_count(std::string_view utf8);

// First code point of `utf8`, or 0 for the empty string.
char32_t first_code_point(std::string_view utf8);

// Length of the longest run of one repeated code point.
std::size_t longest_run(std::string_view utf8);

// Trims Unicode white space from both ends.
std::string trim(std::string_view utf8);

}  // namespace simcleaner::unicode
