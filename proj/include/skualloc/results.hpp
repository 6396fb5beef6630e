#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skualloc/anneal.hpp"

namespace skualloc {

// Run-length encoding of a 0/1 vector: comma-separated `<count>x<bit>`
// tokens, e.g. "5x0,3x1". Empty vector encodes to "".
std::string rle_encode(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> rle_decode(const std::string& text);

// Solver results JSON: solver name, seed, config echo, best energy/fitness,
// RLE best bits and per-read energies (empty for single-shot solvers).
void write_result_json(const std::string& path, const std::string& solver,
                       std::uint64_t seed,
                       const std::map<std::string, std::string>& config_echo,
                       double best_value,
                       const std::vector<std::uint8_t>& best_bits,
                       const std::vector<double>& per_read_energies);

}  // namespace skualloc
