#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace dc {

struct Violation {
  std::string law;
  std::string witness;
};

// Collects law violations. Keeps the first `cap` entries but counts all of them;
// validators stop scanning once `stop()` is true.
struct ValidationReport {
  std::vector<Violation> items;
  std::size_t total = 0;
  std::size_t cap = 64;

  ValidationReport() = default;
  explicit ValidationReport(std::size_t c) : cap(c) {}

  void add(std::string law, std::string witness);
  void merge(const ValidationReport& other, const std::string& prefix = {});
  bool ok() const { return total == 0; }
  bool stop() const { return total >= cap; }
  std::string str() const;
};

}  // namespace dc
