#include "foragesim/forager.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "foragesim/errors.hpp"

namespace foragesim {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void canonicalize(Weblog& weblog) {
  std::sort(weblog.entries.begin(), weblog.entries.end(),
            [](const WeblogEntry& a, const WeblogEntry& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.url < b.url;
            });
  if (weblog.entries.size() > kWeblogSize) weblog.entries.resize(kWeblogSize);
}

}  // namespace

std::vector<UrlId> starting_list(const Weblog& weblog) {
  std::size_t n = std::min(kStartSize, weblog.entries.size());
  std::vector<UrlId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = weblog.entries[i].url;
  return out;
}

ForagerState init_forager(int id, const std::vector<UrlId>& seeds,
                          PolicyFlags policy, int k, Rng& rng) {
  ForagerState s;
  s.id = id;
  s.policy = policy;
  s.weights.resize(static_cast<std::size_t>(k));
  for (double& w : s.weights) w = rng.uniform(-1.0, 1.0);
  std::set<UrlId> seen;
  for (UrlId u : seeds)
    if (seen.insert(u).second) s.weblog.entries.push_back({u, 0.0});
  canonicalize(s.weblog);
  return s;
}

Weblog weblog_update(const Weblog& weblog, const PathRecord& path) {
  if (path.steps.empty()) return weblog;
  if (path.steps.size() != path.step_rewards.size())
    throw LifecycleError("path record length mismatch");
  std::vector<double> cum(path.steps.size());
  double acc = 0.0;
  for (std::size_t i = path.steps.size(); i-- > 0;) {
    acc += path.step_rewards[i];
    cum[i] = acc;
  }
  std::map<UrlId, double> path_value;  // first occurrence wins
  for (std::size_t i = 0; i < path.steps.size(); ++i)
    path_value.emplace(path.steps[i], cum[i]);

  std::map<UrlId, double> merged;
  for (const WeblogEntry& e : weblog.entries) merged[e.url] = e.value;
  for (const auto& [url, value] : path_value) {
    auto it = merged.find(url);
    if (it != merged.end())
      it->second = (1.0 - kWeblogBlend) * it->second + kWeblogBlend * value;
    else
      merged[url] = value;
  }
  Weblog out;
  out.entries.reserve(merged.size());
  for (const auto& [url, value] : merged) out.entries.push_back({url, value});
  canonicalize(out);
  return out;
}

void store_page_info(const std::vector<PageVersion>& pages, PageInfoStore& store) {
  for (const PageVersion& p : pages) store[p.url] = p.state;
}

UrlId url_ordering(const std::set<UrlId>& frontier, const PageInfoStore& store,
                   const std::vector<double>& weights) {
  if (frontier.empty()) throw LifecycleError("url ordering over an empty frontier");
  bool first = true;
  double best = 0.0;
  UrlId best_url = 0;
  for (UrlId u : frontier) {  // ascending, so ties keep the lowest url
    auto it = store.find(u);
    if (it == store.end())
      throw LifecycleError("frontier url " + std::to_string(u) + " has no stored state");
    double v = dot(weights, it->second);
    if (first || v > best) {
      best = v;
      best_url = u;
      first = false;
    }
  }
  return best_url;
}

std::vector<double> url_ordering_update(const std::vector<double>& weights,
                                        const std::vector<double>& state_n,
                                        const std::vector<double>& state_next,
                                        double r) {
  if (state_n.size() != weights.size() || state_next.size() != weights.size())
    throw NumericError("state dimension disagrees with weight vector");
  auto finite = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
  };
  if (!std::isfinite(r) || !finite(weights) || !finite(state_n) || !finite(state_next))
    throw NumericError("non-finite input to value update");
  double delta = r + kDiscount * dot(weights, state_next) - dot(weights, state_n);
  std::vector<double> out(weights);
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] += kLearningRate * delta * state_n[i];
  return out;
}

std::vector<PageVersion> document_relevancy(const std::vector<PageVersion>& pages,
                                            ForagerState& state, double now,
                                            double horizon) {
  std::vector<PageVersion> out;
  for (const PageVersion& p : pages) {
    if (now - p.created_at > horizon) continue;
    if (!state.seen_relevant.insert(p.version_id).second) continue;
    out.push_back(p);
  }
  return out;
}

UrlId url_selection(ForagerState& state, Rng& rng) {
  if (state.path_step <= kMaxStep && !state.frontier.empty()) {
    UrlId u = url_ordering(state.frontier, state.store, state.weights);
    ++state.path_step;
    return u;
  }
  if (state.policy.use_weblog_update && !state.path.steps.empty())
    state.weblog = weblog_update(state.weblog, state.path);
  state.path = PathRecord{};
  std::vector<UrlId> starts = starting_list(state.weblog);
  if (starts.empty()) {
    if (state.frontier.empty())
      throw StuckForagerError("forager " + std::to_string(state.id) +
                              " has no starting url and an empty frontier");
    // Unusable weblog: the new path continues on the live frontier instead.
    UrlId u = url_ordering(state.frontier, state.store, state.weights);
    state.path_step = 2;
    state.has_prev = false;
    return u;
  }
  UrlId u = starts[rng.below(starts.size())];
  state.frontier.clear();
  state.visited.clear();
  state.path_step = 1;
  state.has_prev = false;
  return u;
}

StepOutcome forager_step(ForagerState& state, const Environment& env, double now,
                         const RaChannel& ra, Rng& rng) {
  StepOutcome out;
  UrlId step = url_selection(state, rng);
  out.step_url = step;
  out.restarted = state.path_step == 1 && state.path.steps.empty();
  state.frontier.erase(step);
  state.visited.insert(step);

  const PageVersion& page = fetch_page(env, step, now);
  out.downloads = 1;
  std::vector<PageVersion> downloaded{page};
  std::vector<PageVersion> new_pages;
  for (UrlId l : page.links) {
    if (l == step) continue;
    const PageVersion* linked = nullptr;
    try {
      linked = &fetch_page(env, l, now);
    } catch (const FetchError&) {
      continue;  // link ahead of its page's creation (rewired timelines)
    }
    downloaded.push_back(*linked);
    ++out.downloads;
    if (!state.visited.count(l)) {
      new_pages.push_back(*linked);
      if (state.frontier.insert(l).second) out.discovered.push_back(l);
    }
  }
  store_page_info(new_pages, state.store);

  std::vector<PageVersion> relevant =
      document_relevancy(downloaded, state, now, env.config().relevance_horizon);
  double reward_sum = 0.0;
  for (const PageVersion& p : relevant) {
    double r = ra(p, state.id, now);
    out.sent.push_back(p.version_id);
    out.reinforcements.push_back(r);
    reward_sum += r;
  }

  if (state.policy.use_rl_update) {
    if (state.has_prev)
      state.weights = url_ordering_update(state.weights, state.prev_state,
                                          page.state, reward_sum);
    state.prev_state = page.state;
    state.has_prev = true;
  }
  state.path.steps.push_back(step);
  state.path.step_rewards.push_back(reward_sum);
  out.time_consumed = env.config().download_time * out.downloads;
  return out;
}

ForagerState multiplication(ForagerState& parent, int child_id, Rng& rng) {
  std::size_t n = parent.weblog.entries.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);
  std::size_t child_share = (n + 1) / 2;
  std::vector<bool> to_child(n, false);
  for (std::size_t i = 0; i < child_share; ++i) to_child[order[i]] = true;

  Weblog parent_log, child_log;
  for (std::size_t i = 0; i < n; ++i)
    (to_child[i] ? child_log : parent_log).entries.push_back(parent.weblog.entries[i]);

  ForagerState child;
  child.id = child_id;
  child.policy = parent.policy;
  child.weblog = std::move(child_log);  // subsequence of a sorted list stays sorted
  if (parent.policy.use_rl_update) {
    child.weights = parent.weights;
  } else {
    child.weights.resize(parent.weights.size());
    for (double& w : child.weights) w = rng.uniform(-1.0, 1.0);
  }
  parent.weblog = std::move(parent_log);
  return child;
}

}  // namespace foragesim
