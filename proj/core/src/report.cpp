#include "doublecat/report.hpp"

#include <sstream>

namespace dc {

void ValidationReport::add(std::string law, std::string witness) {
  if (items.size() < cap) items.push_back({std::move(law), std::move(witness)});
  ++total;
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.items) {
    if (items.size() < cap) items.push_back({prefix + v.law, v.witness});
  }
  total += other.total;
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : items) os << v.law << ": " << v.witness << "\n";
  if (total > items.size()) os << "(" << (total - items.size()) << " more)\n";
  return os.str();
}

}  // namespace dc
