#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "foragesim/env.hpp"
#include "foragesim/ra.hpp"

namespace foragesim {

struct Counters {
  std::int64_t downloaded = 0;
  std::int64_t sent = 0;
  std::int64_t relevant = 0;   // accepted by the RA
  std::int64_t found_urls = 0; // distinct urls that ever entered a frontier or visited set
  bool operator==(const Counters&) const = default;
};

Counters accumulate(const ExperimentLog& log);

struct Summary {
  std::int64_t downloaded = 0;
  std::int64_t sent = 0;
  std::int64_t relevant = 0;
  std::int64_t found_urls = 0;
  double download_efficiency = 0.0;  // relevant / downloaded
  double sent_efficiency = 0.0;      // relevant / sent
  double relative_found_url = 0.0;   // found_urls / downloaded
  double freshness = 1.0;
  double age_hours = 0.0;
};

// A found document is current when its stored version is still the url's live
// version at eval_time; obsolete documents age from the url's last change.
// Returns (freshness, mean age in hours); freshness of an empty set is 1.
std::pair<double, double> freshness_age(
    const std::vector<std::pair<VersionId, double>>& found_relevants,
    const Environment& env, double eval_time);

struct WindowRow {
  double window_start = 0.0;
  std::int64_t downloaded = 0;
  std::int64_t sent = 0;
  std::int64_t relevant = 0;
  double download_efficiency = 0.0;
  double sent_efficiency = 0.0;
  double freshness = 1.0;   // cumulative found set, judged at window end
  double age_hours = 0.0;
};

struct WindowSeries {
  double window_length = 10800.0;
  std::vector<WindowRow> rows;  // contiguous, covering [0, total_time)
};

WindowSeries windowed_series(const ExperimentLog& log, const Environment& env,
                             double window_length);

// Whole-run ratios; freshness and age are the duration-weighted average of
// the 3-hour window series.
Summary summarize(const ExperimentLog& log, const Environment& env);

// The nine headline fields as doubles, in CSV column order.
std::array<double, 9> summary_fields(const Summary& s);

// Population mean and standard deviation, fieldwise.
std::pair<std::array<double, 9>, std::array<double, 9>> summary_moments(
    const std::vector<Summary>& summaries);

// summary.csv: per policy, one row per replica followed by mean and std rows;
// the nine headline columns in fixed order.
void write_summary_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<Summary>>>& groups);

struct WindowsCsvRow {
  std::string policy;
  int replica = 0;
  WindowRow row;
};

void write_windows_csv(const std::string& path, const std::vector<WindowsCsvRow>& rows);

}  // namespace foragesim
