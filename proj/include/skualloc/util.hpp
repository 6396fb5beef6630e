#pragma once

#include <string>
#include <vector>

namespace skualloc {

// 17-significant-digit decimal; round-trips IEEE doubles exactly.
std::string format_double(double v);

std::vector<std::string> split_csv_line(const std::string& line);

std::string trim(const std::string& s);

}  // namespace skualloc
