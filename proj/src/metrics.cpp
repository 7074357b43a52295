#include "foragesim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "foragesim/errors.hpp"

namespace foragesim {

namespace {

double ratio(std::int64_t num, std::int64_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

Counters accumulate(const ExperimentLog& log) {
  Counters c;
  std::set<UrlId> found;
  for (const StepEvent& e : log.steps) {
    c.downloaded += e.downloads;
    found.insert(e.url);
    found.insert(e.discovered.begin(), e.discovered.end());
  }
  for (const SendEvent& e : log.sends) {
    ++c.sent;
    if (e.accepted) ++c.relevant;
  }
  c.found_urls = static_cast<std::int64_t>(found.size());
  return c;
}

std::pair<double, double> freshness_age(
    const std::vector<std::pair<VersionId, double>>& found_relevants,
    const Environment& env, double eval_time) {
  if (found_relevants.empty()) return {1.0, 0.0};
  std::int64_t current = 0;
  double age_sum = 0.0;
  for (const auto& [version_id, found_time] : found_relevants) {
    (void)found_time;
    const PageVersion& stored = env.version(version_id);
    const PageVersion& live = fetch_page(env, stored.url, eval_time);
    if (live.version_id == version_id) {
      ++current;
    } else {
      age_sum += eval_time - live.created_at;  // time since the url's last refresh
    }
  }
  double n = static_cast<double>(found_relevants.size());
  return {static_cast<double>(current) / n, age_sum / n / 3600.0};
}

WindowSeries windowed_series(const ExperimentLog& log, const Environment& env,
                             double window_length) {
  if (!(window_length > 0.0)) throw ConfigError("window_length must be positive");
  WindowSeries series;
  series.window_length = window_length;
  if (log.total_time <= 0.0) return series;
  auto n_windows =
      static_cast<std::size_t>(std::ceil(log.total_time / window_length - 1e-12));
  series.rows.resize(n_windows);
  for (std::size_t i = 0; i < n_windows; ++i)
    series.rows[i].window_start = static_cast<double>(i) * window_length;

  auto window_of = [&](double t) {
    auto w = static_cast<std::size_t>(std::max(0.0, t / window_length));
    return std::min(w, n_windows - 1);
  };
  for (const StepEvent& e : log.steps) series.rows[window_of(e.t)].downloaded += e.downloads;

  std::vector<std::pair<VersionId, double>> found;  // accepted versions
  for (const SendEvent& e : log.sends) {
    WindowRow& row = series.rows[window_of(e.t)];
    ++row.sent;
    if (e.accepted) {
      ++row.relevant;
      found.emplace_back(e.version, e.t);
    }
  }
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });

  std::size_t upto = 0;  // found[0..upto) lie within closed windows
  for (std::size_t i = 0; i < n_windows; ++i) {
    WindowRow& row = series.rows[i];
    row.download_efficiency = ratio(row.relevant, row.downloaded);
    row.sent_efficiency = ratio(row.relevant, row.sent);
    double window_end =
        std::min(log.total_time, (static_cast<double>(i) + 1.0) * window_length);
    while (upto < found.size() && found[upto].second <= window_end) ++upto;
    std::vector<std::pair<VersionId, double>> cumulative(found.begin(),
                                                         found.begin() + upto);
    auto [fresh, age] = freshness_age(cumulative, env, window_end);
    row.freshness = fresh;
    row.age_hours = age;
  }
  return series;
}

Summary summarize(const ExperimentLog& log, const Environment& env) {
  Counters c = accumulate(log);
  Summary s;
  s.downloaded = c.downloaded;
  s.sent = c.sent;
  s.relevant = c.relevant;
  s.found_urls = c.found_urls;
  s.download_efficiency = ratio(c.relevant, c.downloaded);
  s.sent_efficiency = ratio(c.relevant, c.sent);
  s.relative_found_url = ratio(c.found_urls, c.downloaded);

  WindowSeries series = windowed_series(log, env, 10800.0);
  if (series.rows.empty()) return s;
  double weight_sum = 0.0, fresh_sum = 0.0, age_sum = 0.0;
  for (const WindowRow& row : series.rows) {
    double end = std::min(log.total_time, row.window_start + series.window_length);
    double w = end - row.window_start;
    weight_sum += w;
    fresh_sum += w * row.freshness;
    age_sum += w * row.age_hours;
  }
  s.freshness = fresh_sum / weight_sum;
  s.age_hours = age_sum / weight_sum;
  return s;
}

std::array<double, 9> summary_fields(const Summary& s) {
  return {static_cast<double>(s.downloaded), static_cast<double>(s.sent),
          static_cast<double>(s.relevant),   static_cast<double>(s.found_urls),
          s.download_efficiency,             s.sent_efficiency,
          s.relative_found_url,              s.freshness,
          s.age_hours};
}

std::pair<std::array<double, 9>, std::array<double, 9>> summary_moments(
    const std::vector<Summary>& summaries) {
  std::array<double, 9> mean{}, sd{};
  if (summaries.empty()) return {mean, sd};
  double n = static_cast<double>(summaries.size());
  for (const Summary& s : summaries) {
    auto f = summary_fields(s);
    for (std::size_t i = 0; i < f.size(); ++i) mean[i] += f[i];
  }
  for (double& m : mean) m /= n;
  for (const Summary& s : summaries) {
    auto f = summary_fields(s);
    for (std::size_t i = 0; i < f.size(); ++i) {
      double d = f[i] - mean[i];
      sd[i] += d * d;
    }
  }
  for (double& v : sd) v = std::sqrt(v / n);
  return {mean, sd};
}

void write_summary_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<Summary>>>& groups) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "policy,replica,downloaded,sent,relevant,found_urls,download_efficiency,"
         "sent_efficiency,relative_found_url,freshness,age_hours\n";
  for (const auto& [policy, summaries] : groups) {
    for (std::size_t r = 0; r < summaries.size(); ++r) {
      const Summary& s = summaries[r];
      out << policy << ',' << r << ',' << s.downloaded << ',' << s.sent << ','
          << s.relevant << ',' << s.found_urls << ',' << fmt(s.download_efficiency)
          << ',' << fmt(s.sent_efficiency) << ',' << fmt(s.relative_found_url) << ','
          << fmt(s.freshness) << ',' << fmt(s.age_hours) << '\n';
    }
    auto [mean, sd] = summary_moments(summaries);
    for (const char* label : {"mean", "std"}) {
      const auto& row = std::string(label) == "mean" ? mean : sd;
      out << policy << ',' << label;
      for (double x : row) out << ',' << fmt(x);
      out << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed while writing " + path);
}

void write_windows_csv(const std::string& path, const std::vector<WindowsCsvRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "window_start,policy,replica,downloaded,sent,relevant,download_efficiency,"
         "sent_efficiency,freshness,age_hours\n";
  for (const WindowsCsvRow& r : rows) {
    const WindowRow& w = r.row;
    out << fmt(w.window_start) << ',' << r.policy << ',' << r.replica << ','
        << w.downloaded << ',' << w.sent << ',' << w.relevant << ','
        << fmt(w.download_efficiency) << ',' << fmt(w.sent_efficiency) << ','
        << fmt(w.freshness) << ',' << fmt(w.age_hours) << '\n';
  }
  if (!out) throw std::runtime_error("failed while writing " + path);
}

}  // namespace foragesim
