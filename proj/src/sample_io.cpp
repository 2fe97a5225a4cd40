/*
 * Copyright 2026 The clwe-lab Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clwe/sample_io.hpp"

#include <bit>
#include <cstring>
#include <filesystem>
#include <stdexcept>

#include <json.hpp>

#include "clwe/reduction.hpp"

namespace clwe::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "sample files are little-endian; add byte swapping for this "
              "platform");

void append_u64(std::string& buf, std::uint64_t v) {
  char bytes[8];
  std::memcpy(bytes, &v, 8);
  buf.append(bytes, 8);
}

void append_f64(std::string& buf, double v) {
  char bytes[8];
  std::memcpy(bytes, &v, 8);
  buf.append(bytes, 8);
}

std::string header_bytes(const char magic[5], const FileHeader& h) {
  std::string buf(magic, 5);
  append_u64(buf, h.d);
  append_u64(buf, h.m);
  append_f64(buf, h.period);
  return buf;
}

FileHeader read_header(std::ifstream& in, const char expected_magic[5],
                       const std::string& path) {
  char magic[5];
  std::uint64_t d = 0, m = 0;
  double period = 0.0;
  in.read(magic, 5);
  in.read(reinterpret_cast<char*>(&d), 8);
  in.read(reinterpret_cast<char*>(&m), 8);
  in.read(reinterpret_cast<char*>(&period), 8);
  if (!in || std::memcmp(magic, expected_magic, 5) != 0)
    throw std::runtime_error("bad or mismatched file header: " + path);
  if (d == 0 || !(period > 0.0))
    throw std::runtime_error("corrupt file header: " + path);
  return {static_cast<std::size_t>(d), static_cast<std::size_t>(m), period};
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  return f;
}

}  // namespace

std::string sidecar_path(const std::string& data_path) {
  return data_path + ".json";
}

void write_sidecar(const std::string& data_path, const SampleFileMeta& meta) {
  nlohmann::ordered_json j;
  j["kind"] = meta.kind;
  j["hypothesis"] = meta.hypothesis;
  j["d"] = meta.d;
  j["m"] = meta.m;
  j["sigma"] = meta.sigma;
  j["period"] = meta.period;
  j["seed"] = meta.seed;
  if (meta.has_secret) j["secret"] = meta.secret;
  auto f = open_out(sidecar_path(data_path));
  f << j.dump(2) << "\n";
  if (!f) throw std::runtime_error("write failed: " + sidecar_path(data_path));
}

SampleFileMeta read_sidecar(const std::string& data_path) {
  auto f = open_in(sidecar_path(data_path));
  nlohmann::json j;
  f >> j;
  SampleFileMeta meta;
  meta.kind = j.at("kind").get<std::string>();
  meta.hypothesis = j.at("hypothesis").get<std::string>();
  meta.d = j.at("d").get<std::size_t>();
  meta.m = j.at("m").get<std::size_t>();
  meta.sigma = j.at("sigma").get<double>();
  meta.period = j.at("period").get<double>();
  meta.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("secret")) {
    meta.has_secret = true;
    meta.secret = j.at("secret").get<std::vector<double>>();
  }
  return meta;
}

SampleFileWriter::SampleFileWriter(const std::string& path,
                                   const FileHeader& header)
    : out_(open_out(path)), path_(path), header_(header) {
  const auto bytes = header_bytes(kSampleMagic, header);
  out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void SampleFileWriter::append(std::span<const double> xs,
                              std::span<const double> y_prime) {
  const std::size_t rows = y_prime.size();
  if (xs.size() != rows * header_.d)
    throw std::invalid_argument("SampleFileWriter: block shape mismatch");
  std::string buf;
  buf.reserve(rows * (header_.d + 1) * 8);
  for (std::size_t i = 0; i < rows; ++i) {
    buf.append(reinterpret_cast<const char*>(xs.data() + i * header_.d),
               header_.d * 8);
    append_f64(buf, y_prime[i]);
  }
  out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out_) throw std::runtime_error("write failed: " + path_);
  rows_written_ += rows;
}

void SampleFileWriter::finish() {
  if (rows_written_ != header_.m)
    throw std::runtime_error("SampleFileWriter: row count mismatch for " +
                             path_);
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
  out_.close();
}

ExampleFileWriter::ExampleFileWriter(const std::string& path,
                                     const FileHeader& header)
    : out_(open_out(path)), path_(path), header_(header) {
  const auto bytes = header_bytes(kExampleMagic, header);
  out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void ExampleFileWriter::append(std::span<const double> xs,
                               std::span<const std::int8_t> y) {
  const std::size_t rows = y.size();
  if (xs.size() != rows * header_.d)
    throw std::invalid_argument("ExampleFileWriter: block shape mismatch");
  std::string buf;
  buf.reserve(rows * (header_.d * 8 + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    buf.append(reinterpret_cast<const char*>(xs.data() + i * header_.d),
               header_.d * 8);
    buf.push_back(static_cast<char>(y[i]));
  }
  out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out_) throw std::runtime_error("write failed: " + path_);
  rows_written_ += rows;
}

void ExampleFileWriter::finish() {
  if (rows_written_ != header_.m)
    throw std::runtime_error("ExampleFileWriter: row count mismatch for " +
                             path_);
  out_.flush();
  if (!out_) throw std::runtime_error("write failed: " + path_);
  out_.close();
}

void write_sample_file(const std::string& path, const SampleSet& set,
                       double period) {
  SampleFileWriter writer(path, {set.d, set.size(), period});
  writer.append(set.xs, set.y_prime);
  writer.finish();
}

LoadedSamples read_sample_file(const std::string& path) {
  auto in = open_in(path);
  const auto header = read_header(in, kSampleMagic, path);
  LoadedSamples loaded;
  loaded.period = header.period;
  loaded.set.d = header.d;
  loaded.set.xs.resize(header.m * header.d);
  loaded.set.y_prime.resize(header.m);
  std::vector<double> row(header.d + 1);
  for (std::size_t i = 0; i < header.m; ++i) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * 8));
    if (!in) throw std::runtime_error("truncated sample file: " + path);
    std::copy(row.begin(), row.end() - 1,
              loaded.set.xs.begin() + static_cast<std::ptrdiff_t>(i * header.d));
    loaded.set.y_prime[i] = row.back();
  }
  return loaded;
}

void write_example_file(const std::string& path, const BinaryExampleSet& set,
                        double period) {
  ExampleFileWriter writer(path, {set.d, set.size(), period});
  writer.append(set.xs, set.y);
  writer.finish();
}

LoadedExamples read_example_file(const std::string& path) {
  auto in = open_in(path);
  const auto header = read_header(in, kExampleMagic, path);
  LoadedExamples loaded;
  loaded.period = header.period;
  loaded.set.d = header.d;
  loaded.set.xs.resize(header.m * header.d);
  loaded.set.y.resize(header.m);
  for (std::size_t i = 0; i < header.m; ++i) {
    in.read(reinterpret_cast<char*>(loaded.set.xs.data() + i * header.d),
            static_cast<std::streamsize>(header.d * 8));
    char label = 0;
    in.read(&label, 1);
    if (!in) throw std::runtime_error("truncated example file: " + path);
    if (label != 1 && label != -1)
      throw std::runtime_error("corrupt label in example file: " + path);
    loaded.set.y[i] = static_cast<std::int8_t>(label);
  }
  return loaded;
}

std::string read_file_kind(const std::string& path) {
  auto in = open_in(path);
  char magic[5];
  in.read(magic, 5);
  if (!in) throw std::runtime_error("cannot read header: " + path);
  if (std::memcmp(magic, kSampleMagic, 5) == 0) return "LWES1";
  if (std::memcmp(magic, kExampleMagic, 5) == 0) return "LWEB1";
  throw std::runtime_error("unrecognized file magic: " + path);
}

void reduce_file(const std::string& in_path, const std::string& out_path,
                 std::size_t block_rows) {
  if (block_rows == 0)
    throw std::invalid_argument("reduce_file: block size must be positive");
  const bool in_place = in_path == out_path;
  const std::string target = in_place ? out_path + ".tmp" : out_path;
  {
    auto in = open_in(in_path);
    const auto header = read_header(in, kSampleMagic, in_path);
    ExampleFileWriter writer(target, header);
    std::vector<double> xs(block_rows * header.d);
    std::vector<double> y_prime(block_rows);
    std::vector<double> row(header.d + 1);
    std::vector<std::int8_t> labels(block_rows);
    std::size_t done = 0;
    while (done < header.m) {
      const std::size_t rows = std::min(block_rows, header.m - done);
      for (std::size_t i = 0; i < rows; ++i) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(row.size() * 8));
        if (!in) throw std::runtime_error("truncated sample file: " + in_path);
        std::copy(row.begin(), row.end() - 1, xs.begin() + i * header.d);
        y_prime[i] = row.back();
      }
      reduction::binarize_span({y_prime.data(), rows}, header.period,
                               {labels.data(), rows}, done);
      writer.append({xs.data(), rows * header.d}, {labels.data(), rows});
      done += rows;
    }
    writer.finish();
  }
  if (in_place) std::filesystem::rename(target, out_path);
}

}  // namespace clwe::io
