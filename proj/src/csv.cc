/*
 * Copyright 2026 The TukeyEM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "text_util.h"
#include "tukeyem/errors.h"
#include "tukeyem/harness.h"

namespace tukeyem {

namespace {

using Record = std::vector<std::string>;

[[noreturn]] void ingest_error(const std::filesystem::path& path,
                               const std::string& what) {
  throw Error(ErrorCode::kIngestion, path.string() + ": " + what);
}

// RFC 4180 records: comma separated, optional double-quoted fields with ""
// escapes, CRLF or LF line endings. Quoted fields may span lines.
std::vector<Record> parse_records(const std::string& text,
                                  const std::filesystem::path& path) {
  std::vector<Record> records;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  const auto end_field = [&] {
    current.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  const auto end_record = [&] {
    end_field();
    // Skip blank lines.
    if (!(current.size() == 1 && current[0].empty())) {
      records.push_back(std::move(current));
    }
    current.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !internal::trim(field).empty()) {
          ingest_error(path, "stray quote on line " + std::to_string(line));
        }
        field.clear();
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) ingest_error(path, "unterminated quoted field");
  if (field_started || !field.empty() || !current.empty()) end_record();
  return records;
}

std::size_t resolve_label(const Record& header, std::string_view label,
                          const std::filesystem::path& path) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (internal::trim(header[c]) == label) return c;
  }
  const auto index = internal::parse_double(label);
  if (index && *index >= 0 && std::floor(*index) == *index &&
      *index < static_cast<double>(header.size())) {
    return static_cast<std::size_t>(*index);
  }
  ingest_error(path, "label column '" + std::string(label) + "' not found");
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path,
                 std::string_view label_column, bool add_intercept) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ingest_error(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();
  if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);  // UTF-8 BOM

  const auto records = parse_records(text, path);
  if (records.empty()) ingest_error(path, "file is empty");
  const Record& header = records.front();
  if (records.size() < 2) ingest_error(path, "no data rows after the header");
  if (header.size() < 2) {
    ingest_error(path, "need a label column and at least one feature column");
  }
  const std::size_t label = resolve_label(header, label_column, path);

  const auto n = static_cast<Eigen::Index>(records.size() - 1);
  const auto d_raw = static_cast<Eigen::Index>(header.size() - 1);
  const Eigen::Index d = d_raw + (add_intercept ? 1 : 0);
  Matrix x(n, d);
  Vector y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Record& rec = records[static_cast<std::size_t>(r) + 1];
    const std::string row_name = "row " + std::to_string(r + 1);
    if (rec.size() != header.size()) {
      ingest_error(path, row_name + " has " + std::to_string(rec.size()) +
                             " fields, header has " +
                             std::to_string(header.size()));
    }
    Eigen::Index col = 0;
    for (std::size_t c = 0; c < rec.size(); ++c) {
      const auto value = internal::parse_double(rec[c]);
      if (!value || !std::isfinite(*value)) {
        ingest_error(path, "non-numeric value '" + rec[c] + "' at " + row_name +
                               ", column '" + header[c] + "'");
      }
      if (c == label) {
        y(r) = *value;
      } else {
        x(r, col++) = *value;
      }
    }
    if (add_intercept) x(r, d_raw) = 1.0;
  }
  return Dataset(std::move(x), std::move(y));
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIo, path.string() + ": cannot open for writing");
  }
  const Matrix& x = data.features();
  for (Eigen::Index j = 0; j < x.cols(); ++j) out << 'x' << j << ',';
  out << "y\n";
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out << internal::format_double(x(r, j)) << ',';
    }
    out << internal::format_double(data.labels()(r)) << '\n';
  }
  if (!out) throw Error(ErrorCode::kIo, path.string() + ": write failed");
}

}  // namespace tukeyem
