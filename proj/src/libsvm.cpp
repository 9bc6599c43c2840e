#include "prover/libsvm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace prover {

std::string format_example_line(const Example& e) {
  std::string line = e.label ? "1" : "0";
  for (const auto& [index, value] : e.vector.entries) {
    line += ' ';
    line += std::to_string(index);
    line += ':';
    // clause-feature values are occurrence counts
    line += std::to_string(static_cast<long long>(std::llround(value)));
  }
  return line;
}

Example parse_example_line(const std::string& line, uint32_t dimension) {
  std::istringstream in(line);
  Example e;
  e.vector.dimension = dimension;
  int label;
  if (!(in >> label) || (label != 0 && label != 1))
    throw std::runtime_error("bad label in training line: " + line);
  e.label = static_cast<uint8_t>(label);
  std::string pair;
  long long prev = -1;
  while (in >> pair) {
    size_t colon = pair.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("bad index:value pair in training line: " + line);
    long long index = std::stoll(pair.substr(0, colon));
    double value = std::stod(pair.substr(colon + 1));
    if (index <= prev) throw std::runtime_error("indices not strictly ascending: " + line);
    if (index >= static_cast<long long>(dimension))
      throw std::runtime_error("feature index out of range: " + line);
    if (value <= 0) throw std::runtime_error("feature values must be positive: " + line);
    e.vector.entries.emplace_back(static_cast<uint32_t>(index), value);
    prev = index;
  }
  return e;
}

void write_examples(std::ostream& out, const std::vector<Example>& data) {
  for (const Example& e : data) out << format_example_line(e) << '\n';
}

std::vector<Example> read_examples(std::istream& in, uint32_t dimension) {
  std::vector<Example> data;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    data.push_back(parse_example_line(line, dimension));
  }
  return data;
}

std::vector<Example> read_examples_file(const std::filesystem::path& path, uint32_t dimension) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open training data file: " + path.string());
  return read_examples(in, dimension);
}

void write_data_meta(const std::filesystem::path& path, const DataMeta& meta) {
  nlohmann::json j{{"hash_base", meta.hash_base},
                   {"walk_length", meta.walk_length},
                   {"count_features", meta.count_features},
                   {"conjecture_embedding", meta.conjecture_embedding}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write metadata file: " + path.string());
  out << j.dump(2) << '\n';
}

DataMeta read_data_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metadata file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    DataMeta meta;
    meta.hash_base = j.at("hash_base").get<uint32_t>();
    meta.walk_length = j.at("walk_length").get<uint32_t>();
    meta.count_features = j.at("count_features").get<bool>();
    meta.conjecture_embedding = j.at("conjecture_embedding").get<bool>();
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed metadata file " + path.string() + ": " + e.what());
  }
}

std::filesystem::path meta_path_for(const std::filesystem::path& data_path) {
  std::filesystem::path p = data_path;
  p += ".meta.json";
  return p;
}

}  // namespace prover
