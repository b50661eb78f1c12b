#include "etf/channel.hpp"

#include "etf/errors.hpp"
#include "etf/parallel.hpp"
#include "etf/rng.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

namespace etf {

namespace {

struct TrialOutcome {
  double error = 0.0;
  IndexSet pattern;
};

// Each trial owns substream (seed, trial); the unit vector is always drawn
// before the pattern so random and exhaustive modes consume the stream alike.
TrialOutcome run_trial(const AnalysisOperator& V, const SimulationConfig& cfg,
                       std::uint64_t trial, std::uint64_t total_patterns) {
  SplitMix64 rng = SplitMix64::substream(cfg.seed, trial);
  const Vector x = random_unit_vector(rng, V.k);
  IndexSet pattern;
  if (cfg.pattern_mode == PatternMode::exhaustive) {
    pattern = unrank_combination(trial % total_patterns, V.n, cfg.m);
  } else {
    pattern = random_subset(rng, V.n, cfg.m);
  }
  Matrix W(cfg.m, V.k);
  for (int i = 0; i < cfg.m; ++i) {
    W.row(i) = V.entries.row(pattern[static_cast<size_t>(i)]);
  }
  const Vector kept = W * x;  // coordinates of Vx hit by the erasure
  TrialOutcome out;
  out.error = (W.adjoint() * kept).norm();  // ||V* D V x||
  out.pattern = std::move(pattern);
  return out;
}

}  // namespace

SimulationResult simulate(const AnalysisOperator& V, const SimulationConfig& cfg) {
  if (cfg.trials < 1) throw BadConfig("simulation needs at least one trial");
  if (cfg.m < 1 || cfg.m > V.n) throw BadConfig("erasure level m must lie in 1..n");
  const std::uint64_t total_patterns =
      cfg.pattern_mode == PatternMode::exhaustive ? binomial_guarded(V.n, cfg.m) : 0;

  SimulationResult out;
  out.analytic_e_max = erasure_sweep(V.gram(), cfg.m, std::nullopt, cfg.threads).e_max;

  struct ChunkStats {
    double max = -std::numeric_limits<double>::infinity();
    std::uint64_t argmax = 0;
    double sum = 0.0;  // accumulated in trial order
  };
  std::vector<ChunkStats> chunks(static_cast<size_t>(chunk_count(cfg.trials)));
  parallel_chunks(cfg.trials, cfg.threads,
                  [&](std::uint64_t ci, std::uint64_t begin, std::uint64_t end) {
    ChunkStats st;
    for (std::uint64_t t = begin; t < end; ++t) {
      const TrialOutcome o = run_trial(V, cfg, t, total_patterns);
      if (o.error > st.max) {
        st.max = o.error;
        st.argmax = t;
      }
      st.sum += o.error;
    }
    chunks[static_cast<size_t>(ci)] = st;
  });

  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t best_trial = 0;
  double sum = 0.0;
  for (const ChunkStats& st : chunks) {
    if (st.max > best) {
      best = st.max;
      best_trial = st.argmax;
    }
    sum += st.sum;
  }
  out.empirical_max_error = best;
  out.empirical_mean_error = sum / static_cast<double>(cfg.trials);
  out.trials_run = cfg.trials;
  out.worst_pattern = run_trial(V, cfg, best_trial, total_patterns).pattern;
  return out;
}

FrameComparison compare_frames(const std::vector<AnalysisOperator>& frames,
                               const SimulationConfig& cfg) {
  if (frames.empty()) throw BadConfig("comparison needs at least one frame");
  for (const AnalysisOperator& f : frames) {
    if (f.n != frames.front().n) {
      throw MixedSizes("all frames in a comparison must share n");
    }
  }
  FrameComparison cmp;
  cmp.results.reserve(frames.size());
  for (const AnalysisOperator& f : frames) cmp.results.push_back(simulate(f, cfg));
  cmp.ranking.resize(frames.size());
  std::iota(cmp.ranking.begin(), cmp.ranking.end(), 0);
  std::sort(cmp.ranking.begin(), cmp.ranking.end(), [&](int a, int b) {
    const SimulationResult& ra = cmp.results[static_cast<size_t>(a)];
    const SimulationResult& rb = cmp.results[static_cast<size_t>(b)];
    if (ra.empirical_max_error != rb.empirical_max_error) {
      return ra.empirical_max_error < rb.empirical_max_error;
    }
    if (ra.analytic_e_max != rb.analytic_e_max) {
      return ra.analytic_e_max < rb.analytic_e_max;
    }
    return a < b;
  });
  return cmp;
}

}  // namespace etf
