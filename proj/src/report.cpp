#include "hypopq/report.hpp"

#include <algorithm>
#include <utility>

namespace hypopq {

void ResidualReport::add(std::string name, std::size_t n, BigReal residual, BigReal tolerance) {
  entries_.push_back({std::move(name), n, std::move(residual), std::move(tolerance)});
}

void ResidualReport::merge(const ResidualReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::vector<std::string> ResidualReport::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (std::find(out.begin(), out.end(), e.name) == out.end()) out.push_back(e.name);
  }
  return out;
}

std::optional<ResidualEntry> ResidualReport::worst() const {
  const ResidualEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (!best || e.residual > best->residual) best = &e;
  }
  if (!best) return std::nullopt;
  return *best;
}

std::optional<ResidualEntry> ResidualReport::worst(const std::string& name) const {
  const ResidualEntry* best = nullptr;
  for (const auto& e : entries_) {
    if (e.name != name) continue;
    if (!best || e.residual > best->residual) best = &e;
  }
  if (!best) return std::nullopt;
  return *best;
}

const ResidualEntry* ResidualReport::find(const std::string& name, std::size_t n) const {
  for (const auto& e : entries_) {
    if (e.name == name && e.n == n) return &e;
  }
  return nullptr;
}

bool ResidualReport::passes() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return e.passes(); });
}

}  // namespace hypopq
