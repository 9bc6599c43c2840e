#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "prover/gbt.hpp"

namespace prover {

/// Sparse training line: `label index:value ...`, label in {1,0}, indices
/// strictly ascending, values positive integers.
std::string format_example_line(const Example& e);
Example parse_example_line(const std::string& line, uint32_t dimension);

void write_examples(std::ostream& out, const std::vector<Example>& data);
std::vector<Example> read_examples(std::istream& in, uint32_t dimension);
std::vector<Example> read_examples_file(const std::filesystem::path& path, uint32_t dimension);

/// Sidecar metadata describing how the vectors were built.
struct DataMeta {
  uint32_t hash_base = 1u << 15;
  uint32_t walk_length = 3;
  bool count_features = true;
  bool conjecture_embedding = true;

  uint32_t dimension() const {
    return conjecture_embedding ? 2 * hash_base : hash_base;
  }
};

void write_data_meta(const std::filesystem::path& path, const DataMeta& meta);
DataMeta read_data_meta(const std::filesystem::path& path);
std::filesystem::path meta_path_for(const std::filesystem::path& data_path);

}  // namespace prover
