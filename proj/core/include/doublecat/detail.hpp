#pragma once

#include <string>
#include <vector>

namespace dc::detail {

inline std::string name_of(const std::vector<std::string>& names, int i) {
  if (i >= 0 && i < static_cast<int>(names.size())) return names[i];
  return "#" + std::to_string(i);
}

inline bool is_bijection(const std::vector<int>& map, int n) {
  if (static_cast<int>(map.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int v : map) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

}  // namespace dc::detail
