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

#ifndef CLWE_SAMPLE_IO_HPP_
#define CLWE_SAMPLE_IO_HPP_

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "clwe/types.hpp"

namespace clwe::io {

// Columnar binary formats, all fields little-endian:
//   sampler file:  magic "LWES1", u64 d, u64 m, f64 period,
//                  then m rows of (d+1) f64 (x coords, then y').
//   example file:  magic "LWEB1", u64 d, u64 m, f64 period,
//                  then m rows of d f64 followed by one int8 label (+1/-1).
inline constexpr char kSampleMagic[5] = {'L', 'W', 'E', 'S', '1'};
inline constexpr char kExampleMagic[5] = {'L', 'W', 'E', 'B', '1'};

struct FileHeader {
  std::size_t d = 0;
  std::size_t m = 0;
  double period = 0.0;
};

// JSON sidecar (written next to the data file as <path>.json) recording the
// generating parameters. The secret is stored only when the caller permits.
struct SampleFileMeta {
  std::string kind = "continuous";  // or "discrete"
  std::string hypothesis = "null";  // or "alternative"
  std::size_t d = 0;
  std::size_t m = 0;
  double sigma = 0.0;
  double period = 0.0;
  std::uint64_t seed = 0;
  bool has_secret = false;
  std::vector<double> secret;
};

std::string sidecar_path(const std::string& data_path);
void write_sidecar(const std::string& data_path, const SampleFileMeta& meta);
SampleFileMeta read_sidecar(const std::string& data_path);

// Incremental writers so generation can stream to disk in bounded memory.
class SampleFileWriter {
 public:
  SampleFileWriter(const std::string& path, const FileHeader& header);
  // xs holds rows*d coordinates row-major; y_prime holds rows labels.
  void append(std::span<const double> xs, std::span<const double> y_prime);
  void finish();

 private:
  std::ofstream out_;
  std::string path_;
  FileHeader header_;
  std::size_t rows_written_ = 0;
};

class ExampleFileWriter {
 public:
  ExampleFileWriter(const std::string& path, const FileHeader& header);
  void append(std::span<const double> xs, std::span<const std::int8_t> y);
  void finish();

 private:
  std::ofstream out_;
  std::string path_;
  FileHeader header_;
  std::size_t rows_written_ = 0;
};

struct LoadedSamples {
  SampleSet set;
  double period = 0.0;
};

struct LoadedExamples {
  BinaryExampleSet set;
  double period = 0.0;
};

void write_sample_file(const std::string& path, const SampleSet& set,
                       double period);
LoadedSamples read_sample_file(const std::string& path);

void write_example_file(const std::string& path, const BinaryExampleSet& set,
                        double period);
LoadedExamples read_example_file(const std::string& path);

// Peek at the 5-byte magic; returns "LWES1", "LWEB1" or throws.
std::string read_file_kind(const std::string& path);

// Streaming reduce: converts a sampler file into an example file block by
// block. in_path == out_path rewrites through a temporary file.
void reduce_file(const std::string& in_path, const std::string& out_path,
                 std::size_t block_rows);

}  // namespace clwe::io

#endif  // CLWE_SAMPLE_IO_HPP_
