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

#include "simcleaner/table_io.hpp"

#include <sstream>

#include "simcleaner/error.hpp"
#include "simcleaner/unicode.hpp"

namespace simcleaner {
namespace {

constexpr std::size_t kChunk = 1 << 16;
constexpr std::string_view kBom = "\xEF\xBB\xBF";

std::string encode(char32_t c) { return unicode::to_utf8(std::u32string(1, c)); }

}  // namespace

std::size_t resolve_column(const std::vector<std::string>& header,
                           std::string_view name) {
  std::size_t found = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != name) continue;
    if (found != header.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "column name '" + std::string(name) + "' is not unique");
    }
    found = i;
  }
  if (found == header.size()) {
    std::string available;
    for (const auto& h : header) {
      if (!available.empty()) available += ", ";
      available += h;
    }
    throw Error(ErrorCode::kNotFound,
                "unknown column '" + std::string(name) + "'; available: " + available,
                header);
  }
  return found;
}

void DelimitedTextConfig::validate() const {
  auto bad = [](char32_t c) {
    return c == U'\n' || c == U'\r' || c == 0 || c > 0x10FFFF ||
           (c >= 0xD800 && c <= 0xDFFF);
  };
  if (delimiter == quote) {
    throw Error(ErrorCode::kInvalidArgument, "delimiter and quote must differ");
  }
  if (bad(delimiter) || bad(quote)) {
    throw Error(ErrorCode::kInvalidArgument,
                "delimiter and quote must be single code points other than CR/LF");
  }
}

DelimitedReader::DelimitedReader(std::unique_ptr<std::istream> in,
                                 DelimitedTextConfig cfg, std::string name)
    : in_(std::move(in)),
      cfg_(cfg),
      name_(std::move(name)),
      delimiter_(encode(cfg.delimiter)),
      quote_(encode(cfg.quote)) {
  cfg_.validate();
  if (ensure(kBom.size()) && std::string_view(buffer_).substr(0, 3) == kBom) {
    pos_ = kBom.size();
  }
  Row first;
  if (!read_record(first)) return;
  if (cfg_.has_header) {
    header_ = std::move(first);
    return;
  }
  for (std::size_t i = 0; i < first.size(); ++i) header_.push_back(std::to_string(i + 1));
  pending_ = std::move(first);
  has_pending_ = true;
}

bool DelimitedReader::ensure(std::size_t n) {
  while (buffer_.size() - pos_ < n && !eof_) {
    if (pos_ > 0) {
      consumed_before_buffer_ += pos_;
      buffer_.erase(0, pos_);
      pos_ = 0;
    }
    const std::size_t old = buffer_.size();
    buffer_.resize(old + kChunk);
    in_->read(buffer_.data() + old, kChunk);
    const auto got = static_cast<std::size_t>(in_->gcount());
    buffer_.resize(old + got);
    if (got == 0) eof_ = true;
  }
  return buffer_.size() - pos_ >= n;
}

bool DelimitedReader::at(std::string_view token) {
  return ensure(token.size()) &&
         std::string_view(buffer_).substr(pos_, token.size()) == token;
}

bool DelimitedReader::at_line_end() { return at("\n") || at("\r\n"); }

void DelimitedReader::consume_line_end() {
  const std::size_t n = buffer_[pos_] == '\r' ? 2 : 1;
  raw_record_.append(buffer_, pos_, n);
  pos_ += n;
}

bool DelimitedReader::read_record(Row& cells) {
  cells.clear();
  for (;;) {
    if (!ensure(1)) return false;
    ++record_ordinal_;
    if (!at_line_end()) break;
    consume_line_end();
    defects_.push_back({record_ordinal_, "blank line skipped"});
  }

  raw_record_.clear();
  const std::size_t record_offset = consumed_before_buffer_ + pos_;
  auto take = [&](std::string& field, std::size_t n) {
    field.append(buffer_, pos_, n);
    raw_record_.append(buffer_, pos_, n);
    pos_ += n;
  };
  auto skip = [&](std::size_t n) {
    raw_record_.append(buffer_, pos_, n);
    pos_ += n;
  };

  for (;;) {
    std::string field;
    if (at(quote_)) {
      const std::size_t open_offset = consumed_before_buffer_ + pos_;
      skip(quote_.size());
      for (;;) {
        if (!ensure(1)) {
          throw Error(ErrorCode::kParse,
                      name_ + ": unterminated quoted field opened at byte " +
                          std::to_string(open_offset) + " (row " +
                          std::to_string(record_ordinal_) + ")");
        }
        if (at(quote_)) {
          skip(quote_.size());
          if (at(quote_)) {
            take(field, quote_.size());
            continue;
          }
          break;
        }
        take(field, 1);
      }
    }
    // Unquoted field, or text trailing a closing quote (kept verbatim).
    while (ensure(1) && !at(delimiter_) && !at_line_end()) take(field, 1);
    cells.push_back(std::move(field));

    if (at(delimiter_)) {
      skip(delimiter_.size());
      continue;
    }
    if (ensure(1)) consume_line_end();
    break;
  }

  if (auto bad = unicode::first_invalid_byte(raw_record_)) {
    throw Error(ErrorCode::kParse,
                name_ + ": invalid UTF-8 at byte " +
                    std::to_string(record_offset + *bad) + " (row " +
                    std::to_string(record_ordinal_) + ")");
  }
  return true;
}

bool DelimitedReader::next(Row& row) {
  if (has_pending_) {
    row = std::move(pending_);
    has_pending_ = false;
    row_number_ = 1;
    return true;
  }
  if (!read_record(row)) return false;
  row_number_ = record_ordinal_;
  if (row.size() > header_.size()) {
    throw Error(ErrorCode::kParse,
                name_ + ": row " + std::to_string(row_number_) + " has " +
                    std::to_string(row.size()) + " cells, header has " +
                    std::to_string(header_.size()));
  }
  if (row.size() < header_.size()) {
    defects_.push_back({row_number_, "row padded from " + std::to_string(row.size()) +
                                         " to " + std::to_string(header_.size()) +
                                         " cells"});
    row.resize(header_.size());
  }
  return true;
}

std::unique_ptr<TableSource> open_delimited(const std::filesystem::path& path,
                                            const DelimitedTextConfig& cfg) {
  auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!*in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return std::make_unique<DelimitedReader>(std::move(in), cfg, path.string());
}

std::unique_ptr<TableSource> open_delimited_text(std::string text,
                                                 const DelimitedTextConfig& cfg) {
  return std::make_unique<DelimitedReader>(
      std::make_unique<std::istringstream>(std::move(text)), cfg, "<memory>");
}

std::string format_record(std::span<const std::string> cells,
                          const DelimitedTextConfig& cfg) {
  const std::string delimiter = encode(cfg.delimiter);
  const std::string quote = encode(cfg.quote);
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += delimiter;
    const std::string& cell = cells[i];
    const bool needs_quotes =
        cell.find(delimiter) != std::string::npos ||
        cell.find(quote) != std::string::npos ||
        cell.find_first_of("\r\n") != std::string::npos ||
        (cells.size() == 1 && cell.empty());
    if (!needs_quotes) {
      line += cell;
      continue;
    }
    line += quote;
    std::size_t start = 0;
    for (std::size_t hit; (hit = cell.find(quote, start)) != std::string::npos;) {
      line.append(cell, start, hit - start);
      line += quote;
      line += quote;
      start = hit + quote.size();
    }
    line.append(cell, start);
    line += quote;
  }
  line += '\n';
  return line;
}

DelimitedWriter::DelimitedWriter(const std::filesystem::path& path,
                                 std::size_t width, DelimitedTextConfig cfg)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), width_(width), cfg_(cfg) {
  cfg_.validate();
  if (!out_) throw Error(ErrorCode::kIo, "cannot write " + path.string());
}

void DelimitedWriter::write(std::span<const std::string> cells) {
  if (cells.size() != width_) {
    throw Error(ErrorCode::kInvalidArgument,
                "row has " + std::to_string(cells.size()) + " cells, expected " +
                    std::to_string(width_));
  }
  out_ << format_record(cells, cfg_);
}

void DelimitedWriter::close() {
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIo, "write failed: " + path_.string());
  out_.close();
}

void write_delimited(std::span<const Row> rows, const Row& header,
                     const std::filesystem::path& path,
                     const DelimitedTextConfig& cfg) {
  DelimitedWriter writer(path, header.size(), cfg);
  writer.write(header);
  for (const auto& row : rows) writer.write(row);
  writer.close();
}

}  // namespace simcleaner
