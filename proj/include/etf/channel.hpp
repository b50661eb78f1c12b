#pragma once

#include <cstdint>
#include <vector>

#include "etf/erasure.hpp"
#include "etf/etf.hpp"
#include "etf/types.hpp"

namespace etf {

enum class PatternMode { random, exhaustive };

struct SimulationConfig {
  int m = 1;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  PatternMode pattern_mode = PatternMode::random;
  int threads = 0;  // 0 = auto
};

struct SimulationResult {
  double empirical_max_error = 0.0;
  double empirical_mean_error = 0.0;
  double analytic_e_max = 0.0;
  std::uint64_t trials_run = 0;
  IndexSet worst_pattern;
};

// Encode/erase/decode channel: x -> Vx -> EVx -> V*EVx with E zeroing the
// erased coordinates, so the reconstruction error is ||V* D V x||. Each trial
// draws x uniform on the unit sphere of C^k from substream (seed, trial);
// patterns are uniform m-subsets (random mode) or cycle lexicographically
// (exhaustive mode). Bit-identical results at any thread count.
SimulationResult simulate(const AnalysisOperator& V, const SimulationConfig& cfg);

struct FrameComparison {
  std::vector<SimulationResult> results;  // input order
  std::vector<int> ranking;  // ascending by (empirical max, analytic, index)
};

// MixedSizes unless all frames share n.
FrameComparison compare_frames(const std::vector<AnalysisOperator>& frames,
                               const SimulationConfig& cfg);

}  // namespace etf
