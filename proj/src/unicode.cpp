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

#include "simcleaner/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace simcleaner::unicode {
namespace {

// Calls fn(code_point, byte_offset) for each code point; ill-formed sequences
// are reported as negative values, as U8_NEXT does.
template <typename Fn>
void for_each_code_point(std::string_view s, Fn&& fn) {
  const auto* data = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(data, i, length, c);
    if (!fn(c, static_cast<std::size_t>(start))) return;
  }
}

}  // namespace

std::u32string to_code_points(std::string_view utf8) {
  std::u32string out;
  out.reserve(utf8.size());
  for_each_code_point(utf8, [&](UChar32 c, std::size_t) {
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
    return true;
  });
  return out;
}

std::string to_utf8(std::u32string_view code_points) {
  std::string out;
  out.reserve(code_points.size());
  for (char32_t c : code_points) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      n = 0;
      U8_APPEND_UNSAFE(buf, n, 0xFFFD);
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

std::optional<std::size_t> first_invalid_byte(std::string_view bytes) {
  std::optional<std::size_t> bad;
  for_each_code_point(bytes, [&](UChar32 c, std::size_t offset) {
    if (c < 0) {
      bad = offset;
      return false;
    }
    return true;
  });
  return bad;
}

std::size_t code_point_count(std::string_view utf8) {
  std::size_t n = 0;
  for_each_code_point(utf8, [&](UChar32, std::size_t) {
    ++n;
    return true;
  });
  return n;
}

char32_t first_code_point(std::string_view utf8) {
  char32_t first = 0;
  for_each_code_point(utf8, [&](UChar32 c, std::size_t) {
    first = c < 0 ? U'�' : static_cast<char32_t>(c);
    return false;
  });
  return first;
}

std::size_t longest_run(std::string_view utf8) {
  std::size_t best = 0;
  std::size_t run = 0;
  UChar32 prev = -1;
  for_each_code_point(utf8, [&](UChar32 c, std::size_t) {
    run = (run > 0 && c == prev) ? run + 1 : 1;
    prev = c;
    if (run > best) best = run;
    return true;
  });
  return best;
}

std::string trim(std::string_view utf8) {
  std::u32string cps = to_code_points(utf8);
  std::size_t begin = 0;
  std::size_t end = cps.size();
  while (begin < end && u_isUWhiteSpace(static_cast<UChar32>(cps[begin]))) ++begin;
  while (end > begin && u_isUWhiteSpace(static_cast<UChar32>(cps[end - 1]))) --end;
  if (begin == 0 && end == cps.size()) return std::string(utf8);
  return to_utf8(std::u32string_view(cps).substr(begin, end - begin));
}

}  // namespace simcleaner::unicode
