#include "sonarcane/tables.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include "sonarcane/classify.hpp"

namespace sonarcane::tables {

using classify::AdvisoryKind;
using sensing::Reading;

namespace {

constexpr double kStep = 0.5;
constexpr double kSweepMax = 300.0;

// One printed row of a proximity table: "0 to <upper> ... level".
struct NestedRow {
  double upper;
  int level;
};

constexpr std::array<NestedRow, 4> kChestRows = {{{150, 1}, {87, 2}, {60, 3}, {40, 4}}};
constexpr std::array<NestedRow, 3> kKneeRows = {{{60, 1}, {30, 2}, {10, 3}}};
constexpr std::array<NestedRow, 3> kToeRows = {{{40, 1}, {20, 2}, {10, 3}}};

// Pothole table: depth strictly past `lower` reaches `level`.
struct DepthRow {
  double lower;
  int level;
  AdvisoryKind reaction;
};
constexpr std::array<DepthRow, 4> kDepthRows = {{{-1.0, 0, AdvisoryKind::MoveForward},
                                                 {10, 1, AdvisoryKind::MoveForwardCaution},
                                                 {20, 2, AdvisoryKind::AlternatePath},
                                                 {40, 3, AdvisoryKind::StopImmediately}}};

// Stair truth table, one entry per (knee reflects, toe reflects) cell.
struct StairRow {
  bool knee_reflects;
  bool toe_reflects;
  int knee_bit;
  int toe_bit;
  bool check_window;
};
constexpr std::array<StairRow, 4> kStairRows = {{{true, true, 1, 1, true},
                                                 {true, false, 1, 0, false},
                                                 {false, true, 0, 1, false},
                                                 {false, false, 0, 0, false}}};
constexpr double kKneeGate = 40.0;
constexpr double kToeGate = 20.0;

template <std::size_t N>
int nested_level(const std::array<NestedRow, N>& rows, Reading r) {
  int level = 0;
  if (!r) return level;
  for (const auto& row : rows) {
    if (*r <= row.upper) level = std::max(level, row.level);
  }
  return level;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<Reading> sweep() {
  std::vector<Reading> out{std::nullopt};
  for (int i = 0; i * kStep <= kSweepMax; ++i) out.emplace_back(i * kStep);
  return out;
}

std::string show(Reading r) { return r ? num(*r) : "NoEcho"; }

template <std::size_t N>
TableCheck check_band(const std::string& channel, const std::array<NestedRow, N>& rows,
                      const std::function<int(Reading)>& classifier) {
  TableCheck c;
  c.channel = channel;
  for (Reading r : sweep()) {
    ++c.points;
    const int want = nested_level(rows, r);
    const int got = classifier(r);
    if (want != got && c.mismatches++ == 0) {
      c.first_mismatch = show(r) + ": want " + std::to_string(want) + " got " + std::to_string(got);
    }
  }
  std::vector<double> bounds;
  for (const auto& row : rows) bounds.push_back(row.upper);
  std::sort(bounds.begin(), bounds.end());
  for (double b : bounds) {
    c.transitions.push_back(num(b) + "->" + std::to_string(classifier(b)) + "/" + num(b + 1) +
                            "->" + std::to_string(classifier(b + 1)));
  }
  return c;
}

TableCheck check_depth() {
  TableCheck c;
  c.channel = "pothole";
  for (Reading r : sweep()) {
    if (!r) continue;
    ++c.points;
    const DepthRow* want = &kDepthRows[0];
    for (const auto& row : kDepthRows) {
      if (*r > row.lower) want = &row;
    }
    const auto got = classify::classify_depth(*r);
    if ((got.level != want->level || got.advisory.kind != want->reaction) && c.mismatches++ == 0) {
      c.first_mismatch = show(r) + ": want level " + std::to_string(want->level) + " got " +
                         std::to_string(got.level);
    }
  }
  for (double b : {10.0, 20.0, 40.0}) {
    c.transitions.push_back(num(b) + "->" + std::to_string(classify::classify_depth(b).level) +
                            "/" + num(b + 1) + "->" +
                            std::to_string(classify::classify_depth(b + 1).level));
  }
  return c;
}

TableCheck check_downstep() {
  TableCheck c;
  c.channel = "downstep";
  for (Reading r : sweep()) {
    if (!r) continue;
    ++c.points;
    const double metres = *r / 100.0;
    const bool want = metres >= 0.15 && metres <= 0.30;
    const bool got = classify::is_downstep(*r);
    // A down-step always falls inside the caution or alternate-path band.
    const int level = classify::classify_depth(*r).level;
    const bool consistent = !got || level == 1 || level == 2;
    if ((want != got || !consistent) && c.mismatches++ == 0) {
      c.first_mismatch = show(r) + ": want " + std::to_string(want) + " got " + std::to_string(got);
    }
  }
  auto flag = [](double d) { return std::string(classify::is_downstep(d) ? "1" : "0"); };
  c.transitions.push_back("14->" + flag(14) + "/15->" + flag(15));
  c.transitions.push_back("30->" + flag(30) + "/31->" + flag(31));
  return c;
}

TableCheck check_stairs() {
  TableCheck c;
  c.channel = "stairs";
  const auto values = sweep();
  for (Reading knee : values) {
    for (Reading toe : values) {
      ++c.points;
      const bool kr = knee && *knee <= kKneeGate;
      const bool tr = toe && *toe <= kToeGate;
      const StairRow* row = nullptr;
      for (const auto& candidate : kStairRows) {
        if (candidate.knee_reflects == kr && candidate.toe_reflects == tr) row = &candidate;
      }
      const bool want_up = row->check_window && (*knee - *toe) > 24.0 && (*knee - *toe) < 26.0;
      const auto got = classify::detect_upstairs(knee, toe);
      const bool ok = got.upstairs == want_up && static_cast<int>(got.knee_bit) == row->knee_bit &&
                      static_cast<int>(got.toe_bit) == row->toe_bit;
      if (!ok && c.mismatches++ == 0) c.first_mismatch = "knee " + show(knee) + " toe " + show(toe);
    }
  }
  auto cell = [](Reading knee, Reading toe) {
    const auto s = classify::detect_upstairs(knee, toe);
    return "(" + show(knee) + "," + show(toe) + ")->" + std::to_string(s.knee_bit) +
           std::to_string(s.toe_bit) + (s.upstairs ? " up" : "");
  };
  c.transitions = {cell(40.0, 15.0), cell(39.0, 15.0), cell(35.0, std::nullopt),
                   cell(std::nullopt, 15.0), cell(std::nullopt, std::nullopt)};
  return c;
}

TableCheck check_upper_level() {
  TableCheck c;
  c.channel = "upper-level";
  for (Reading r : sweep()) {
    if (!r) continue;
    ++c.points;
    const int level = nested_level(kChestRows, r);
    const auto want = level == 1   ? classify::UpperLevel::Waist
                      : level == 2 ? classify::UpperLevel::Head
                      : level == 3 ? classify::UpperLevel::Chest
                                   : classify::UpperLevel::Unknown;
    if (classify::infer_upper_level(*r) != want && c.mismatches++ == 0) {
      c.first_mismatch = show(r);
    }
  }
  for (double d : {100.0, 70.0, 50.0}) {
    c.transitions.push_back(num(d) + "->" + classify::to_string(classify::infer_upper_level(d)));
  }
  return c;
}

}  // namespace

bool TableReport::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const TableCheck& c) { return c.pass(); });
}

TableReport verify_tables() {
  TableReport report;
  report.checks.push_back(check_band("chest", kChestRows, classify::classify_chest));
  report.checks.push_back(check_band("knee", kKneeRows, classify::classify_knee));
  report.checks.push_back(check_band("toe", kToeRows, classify::classify_toe));
  report.checks.push_back(check_depth());
  report.checks.push_back(check_stairs());
  report.checks.push_back(check_downstep());
  report.checks.push_back(check_upper_level());
  return report;
}

std::string format_report(const TableReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << (c.pass() ? "PASS " : "FAIL ") << c.channel << " (" << c.points << " points)";
    for (const auto& t : c.transitions) out << "  " << t;
    if (!c.pass()) out << "  first mismatch: " << c.first_mismatch;
    out << '\n';
  }
  out << (report.pass() ? "all tables match\n" : "table mismatch\n");
  return out.str();
}

}  // namespace sonarcane::tables
