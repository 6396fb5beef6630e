#include "skualloc/results.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "skualloc/errors.hpp"

namespace skualloc {

using ordered_json = nlohmann::ordered_json;

std::string rle_encode(const std::vector<std::uint8_t>& bits) {
  std::string out;
  size_t i = 0;
  while (i < bits.size()) {
    size_t j = i;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    if (!out.empty()) out.push_back(',');
    out += std::to_string(j - i);
    out.push_back('x');
    out.push_back(bits[i] ? '1' : '0');
    i = j;
  }
  return out;
}

std::vector<std::uint8_t> rle_decode(const std::string& text) {
  std::vector<std::uint8_t> bits;
  std::istringstream iss(text);
  std::string token;
  while (std::getline(iss, token, ',')) {
    const auto x = token.find('x');
    if (x == std::string::npos || x + 2 != token.size())
      throw ArgumentError("bad RLE token: " + token);
    long count = 0;
    try {
      count = std::stol(token.substr(0, x));
    } catch (const std::exception&) {
      throw ArgumentError("bad RLE token: " + token);
    }
    const char bit = token[x + 1];
    if (count < 0 || (bit != '0' && bit != '1'))
      throw ArgumentError("bad RLE token: " + token);
    bits.insert(bits.end(), count, bit == '1' ? 1 : 0);
  }
  return bits;
}

void write_result_json(const std::string& path, const std::string& solver,
                       std::uint64_t seed,
                       const std::map<std::string, std::string>& config_echo,
                       double best_value,
                       const std::vector<std::uint8_t>& best_bits,
                       const std::vector<double>& per_read_energies) {
  ordered_json j;
  j["solver"] = solver;
  j["seed"] = seed;
  ordered_json cfg;
  for (const auto& [k, v] : config_echo) cfg[k] = v;
  j["config"] = cfg;
  j["best_energy_or_fitness"] = best_value;
  j["best_bits"] = rle_encode(best_bits);
  j["per_read_energies"] = per_read_energies;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write result file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace skualloc
