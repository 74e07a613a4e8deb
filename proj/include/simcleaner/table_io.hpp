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
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace simcleaner {

using Row = std::vector<std::string>;

// A recoverable defect found while reading, e.g. a short row that was padded.
struct TableDefect {
  std::size_t row = 0;  // 1-based record number, the header is record 1
  std::string message;
};

// Forward-only stream of rows. Every row returned by next() has exactly
// header().size() cells. Adapters for other formats implement this interface.
class TableSource {
 public:
  virtual ~TableSource() = default;

  virtual const std::vector<std::string>& header() const = 0;

  // Reads the next row into `row`. Returns false at end of input.
  virtual bool next(Row& row) = 0;

  // Record number of the row last returned by next().
  virtual std::size_t row_number() const = 0;

  virtual const std::vector<TableDefect>& defects() const = 0;

  // Human-readable origin (a path, or "<memory>").
  virtual const std::string& name() const = 0;
};

// Index of the column called `name`. Throws kNotFound listing the available
// headers, or kInvalidArgument when the name is not unique.
std::size_t resolve_column(const std::vector<std::string>& header,
                           std::string_view name);

struct DelimitedTextConfig {
  char32_t delimiter = U',';
  char32_t quote = U'"';
  bool has_header = true;  // otherwise columns are named "1", "2", ...

  void validate() const;
};

// RFC 4180 style reader: quoted fields may hold delimiters, quotes (doubled)
// and line breaks; LF and CRLF both end a record; a UTF-8 BOM is skipped.
// Short rows are padded with empty cells and recorded as defects, long rows
// and ill-formed UTF-8 are errors. Blank lines are skipped and recorded.
class DelimitedReader final : public TableSource {
 public:
  DelimitedReader(std::unique_ptr<std::istream> in, DelimitedTextConfig cfg,
                  std::string name);

  const std::vector<std::string>& header() const override { return header_; }
  bool next(Row& row) override;
  std::size_t row_number() const override { return row_number_; }
  const std::vector<TableDefect>& defects() const override { return defects_; }
  const std::string& name() const override { return name_; }

 private:
  bool ensure(std::size_t n);
  bool at(std::string_view token);
  bool at_line_end();
  void consume_line_end();
  bool read_record(Row& cells);

  std::unique_ptr<std::istream> in_;
  DelimitedTextConfig cfg_;
  std::string name_;
  std::string delimiter_;
  std::string quote_;

  std::string buffer_;
  std::size_t pos_ = 0;
  std::size_t consumed_before_buffer_ = 0;
  bool eof_ = false;

  std::string raw_record_;
  std::size_t record_ordinal_ = 0;

  std::vector<std::string> header_;
  Row pending_;  // first data row when there is no header line
  bool has_pending_ = false;
  std::size_t row_number_ = 0;
  std::vector<TableDefect> defects_;
};

std::unique_ptr<TableSource> open_delimited(const std::filesystem::path& path,
                                            const DelimitedTextConfig& cfg = {});
std::unique_ptr<TableSource> open_delimited_text(std::string text,
                                                 const DelimitedTextConfig& cfg = {});

// One encoded record including its trailing LF. Fields holding the delimiter,
// the quote, CR or LF are quoted; a lone empty cell is written as "" so it is
// not mistaken for a blank line.
std::string format_record(std::span<const std::string> cells,
                          const DelimitedTextConfig& cfg = {});

class DelimitedWriter {
 public:
  DelimitedWriter(const std::filesystem::path& path, std::size_t width,
                  DelimitedTextConfig cfg = {});

  // Throws kInvalidArgument when the row width differs from the header.
  void write(std::span<const std::string> cells);
  // Flushes and reports write failures as kIo.
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t width_;
  DelimitedTextConfig cfg_;
};

void write_delimited(std::span<const Row> rows, const Row& header,
                     const std::filesystem::path& path,
                     const DelimitedTextConfig& cfg = {});

}  // namespace simcleaner
