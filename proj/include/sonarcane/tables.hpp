// Exhaustive check of the classifiers against the published band tables.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace sonarcane::tables {

struct TableCheck {
  std::string channel;
  std::vector<std::string> transitions;  // e.g. "150->1/151->0"
  std::size_t points = 0;
  std::size_t mismatches = 0;
  std::string first_mismatch;

  bool pass() const { return points > 0 && mismatches == 0; }
};

struct TableReport {
  std::vector<TableCheck> checks;

  bool pass() const;
};

/// Sweeps 0..300 cm in 0.5 cm steps (plus NoEcho) through every classifier
/// and compares with the tables written out row by row.
TableReport verify_tables();

std::string format_report(const TableReport& report);

}  // namespace sonarcane::tables
