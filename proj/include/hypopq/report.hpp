#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypopq/big_real.hpp"

namespace hypopq {

struct ResidualEntry {
  std::string name;
  std::size_t n = 0;
  BigReal residual;
  BigReal tolerance;

  bool passes() const { return residual < tolerance; }
};

/// Named, per-index residuals together with the tolerance each one was held to.
class ResidualReport {
public:
  void add(std::string name, std::size_t n, BigReal residual, BigReal tolerance);
  void merge(const ResidualReport& other);

  const std::vector<ResidualEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  /// Identity names in first-seen order.
  std::vector<std::string> names() const;

  /// Largest residual overall, or for one identity. Empty report -> nullopt.
  std::optional<ResidualEntry> worst() const;
  std::optional<ResidualEntry> worst(const std::string& name) const;
  const ResidualEntry* find(const std::string& name, std::size_t n) const;

  bool passes() const;

private:
  std::vector<ResidualEntry> entries_;
};

}  // namespace hypopq
