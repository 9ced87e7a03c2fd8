// Copyright 2026 The ssmkit Authors
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

#ifndef SSMKIT__IO_HPP_
#define SSMKIT__IO_HPP_

#include "ssmkit/core.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ssm
{

/// Column layout of the trajectory table: one row per sample, leader and
/// follower kinematics side by side.
inline constexpr const char * kTrajectoryCsvHeader = "series_id,t,x_L,v_L,a_L,x_F,v_F,a_F";

/// Structured syntax error with the 1-based line number it occurred on.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::size_t line, const std::string & message)
  : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
  {
  }

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Structured I/O failure carrying the path it happened on.
class IoError : public std::runtime_error
{
public:
  IoError(const std::filesystem::path & path, const std::string & message)
  : std::runtime_error(path.string() + ": " + message), path_(path)
  {
  }

  const std::filesystem::path & path() const { return path_; }

private:
  std::filesystem::path path_;
};

/// Shortest decimal form that parses back to the identical double, so
/// emit/ingest round-trips are field-exact.
inline std::string format_double(const double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double_field(
  const std::string_view field, const std::size_t line, const char * name)
{
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("malformed ") + name + " value '" + std::string(field) + "'");
  }
  return value;
}

inline std::uint64_t parse_u64_field(
  const std::string_view field, const std::size_t line, const char * name)
{
  std::uint64_t value = 0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("malformed ") + name + " value '" + std::string(field) + "'");
  }
  return value;
}

/// One ingested series: its id from the file plus the trajectory rows in
/// file order.
struct SeriesRecord
{
  std::uint64_t id{0};
  PairTrajectory trajectory;
};

/// Emits trajectories as the flat long-format table; series ids are the
/// trajectory positions (0-based).
inline void emit_batch_csv(std::ostream & os, const std::vector<PairTrajectory> & trajectories)
{
  os << kTrajectoryCsvHeader << '\n';
  for (std::size_t id = 0; id < trajectories.size(); ++id) {
    for (const PairSample & s : trajectories[id].samples) {
      os << id << ',' << format_double(s.t) << ',' << format_double(s.leader.x) << ','
         << format_double(s.leader.v) << ',' << format_double(s.leader.a) << ','
         << format_double(s.follower.x) << ',' << format_double(s.follower.v) << ','
         << format_double(s.follower.a) << '\n';
    }
  }
}

namespace detail
{

inline std::vector<std::string_view> split_fields(const std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view strip_cr(const std::string & line)
{
  std::string_view v{line};
  if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
  return v;
}

}  // namespace detail

/// Parses the trajectory table. Series are grouped by id, ordered by first
/// appearance; rows keep file order within a series. Syntax problems throw
/// ParseError with the offending line number; semantic problems (timestamps,
/// finiteness) are left to validate_trajectory.
inline std::vector<SeriesRecord> parse_batch_csv(std::istream & is)
{
  std::vector<SeriesRecord> records;
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(is, raw)) {
    throw ParseError(1, "missing header");
  }
  ++line_no;
  if (detail::strip_cr(raw) != kTrajectoryCsvHeader) {
    throw ParseError(1, std::string("expected header '") + kTrajectoryCsvHeader + "'");
  }

  while (std::getline(is, raw)) {
    ++line_no;
    const std::string_view line = detail::strip_cr(raw);
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line);
    if (fields.size() != 8) {
      throw ParseError(
        line_no, "expected 8 fields, got " + std::to_string(fields.size()));
    }
    const std::uint64_t id = parse_u64_field(fields[0], line_no, "series_id");
    PairSample s;
    s.t = parse_double_field(fields[1], line_no, "t");
    s.leader.x = parse_double_field(fields[2], line_no, "x_L");
    s.leader.v = parse_double_field(fields[3], line_no, "v_L");
    s.leader.a = parse_double_field(fields[4], line_no, "a_L");
    s.follower.x = parse_double_field(fields[5], line_no, "x_F");
    s.follower.v = parse_double_field(fields[6], line_no, "v_F");
    s.follower.a = parse_double_field(fields[7], line_no, "a_F");

    const auto it = index_of.find(id);
    if (it == index_of.end()) {
      index_of.emplace(id, records.size());
      records.push_back({id, PairTrajectory{{s}}});
    } else {
      records[it->second].trajectory.samples.push_back(s);
    }
  }
  return records;
}

/// Writes a whole file atomically: the content goes to a temporary sibling
/// first and is renamed into place, so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path & path, const std::string & content)
{
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) {
      throw IoError(tmp, "cannot open for writing");
    }
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) {
      throw IoError(tmp, "write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    throw IoError(path, "rename failed: " + ec.message());
  }
}

/// Reads a whole file; throws IoError with path context on failure.
inline std::string read_file(const std::filesystem::path & path)
{
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw IoError(path, "cannot open for reading");
  }
  std::string content(
    (std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  if (is.bad()) {
    throw IoError(path, "read failed");
  }
  return content;
}

}  // namespace ssm

#endif  // SSMKIT__IO_HPP_
