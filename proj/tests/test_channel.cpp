#include <cmath>

#include "doctest.h"
#include "etf/channel.hpp"
#include "etf/erasure.hpp"
#include "etf/errors.hpp"
#include "etf/etf.hpp"
#include "etf/seidel.hpp"

using namespace etf;

namespace {

AnalysisOperator frame_of(const SeidelMatrix& Q) {
  auto p = is_etf_seidel(Q);
  REQUIRE(p.has_value());
  return frame_from_seidel(Q, *p);
}

bool identical(const SimulationResult& a, const SimulationResult& b) {
  return a.empirical_max_error == b.empirical_max_error &&
         a.empirical_mean_error == b.empirical_mean_error &&
         a.analytic_e_max == b.analytic_e_max && a.trials_run == b.trials_run &&
         a.worst_pattern == b.worst_pattern;
}

}  // namespace

TEST_CASE("single erasures on the flat (4,1) frame never exceed 1/4") {
  AnalysisOperator V = frame_of(trivial_seidel(4, 1));
  SimulationConfig cfg;
  cfg.m = 1;
  cfg.trials = 2000;
  cfg.seed = 3;
  SimulationResult r = simulate(V, cfg);
  CHECK(r.analytic_e_max == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.empirical_max_error <= r.analytic_e_max + 1e-9);
  // k = 1: the error operator is rank one, so every unit input attains it.
  CHECK(r.empirical_max_error == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.empirical_mean_error == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("erasing everything loses the whole signal") {
  AnalysisOperator V = frame_of(trivial_seidel(4, 1));
  SimulationConfig cfg;
  cfg.m = 4;
  cfg.trials = 50;
  cfg.seed = 9;
  SimulationResult r = simulate(V, cfg);
  CHECK(r.empirical_max_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.empirical_mean_error == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.worst_pattern == IndexSet{0, 1, 2, 3});
}

TEST_CASE("skew-4 triple erasures approach the analytic worst case") {
  AnalysisOperator V = frame_of(fixture("skew-4"));
  SimulationConfig cfg;
  cfg.m = 3;
  cfg.trials = 10000;
  cfg.seed = 1;
  SimulationResult r = simulate(V, cfg);
  CHECK(r.analytic_e_max == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.empirical_max_error <= 1.0 + 1e-9);
  CHECK(r.empirical_max_error >= 0.95);
  CHECK(r.trials_run == 10000);
}

TEST_CASE("exhaustive pattern mode closes within one percent") {
  AnalysisOperator V = frame_of(fixture("skew-4"));
  SimulationConfig cfg;
  cfg.m = 3;
  cfg.trials = 100000;
  cfg.seed = 5;
  cfg.pattern_mode = PatternMode::exhaustive;
  SimulationResult r = simulate(V, cfg);
  CHECK(r.empirical_max_error >= 0.99 * r.analytic_e_max);
  CHECK(r.empirical_max_error <= r.analytic_e_max + 1e-9);
}

TEST_CASE("empirical never beats analytic across fixtures and seeds") {
  for (const char* name : {"bp-9-3-F", "skew-8"}) {
    AnalysisOperator V = frame_of(fixture(name));
    for (int m = 1; m <= 4; ++m) {
      for (std::uint64_t seed : {0ULL, 17ULL}) {
        SimulationConfig cfg;
        cfg.m = m;
        cfg.trials = 400;
        cfg.seed = seed;
        SimulationResult r = simulate(V, cfg);
        CHECK(r.empirical_max_error <= r.analytic_e_max + 1e-9);
        CHECK(r.empirical_mean_error <= r.empirical_max_error);
        CHECK(static_cast<int>(r.worst_pattern.size()) == m);
      }
    }
  }
}

TEST_CASE("simulation is bit-identical across repeats and thread counts") {
  AnalysisOperator V = frame_of(fixture("skew-8"));
  SimulationConfig cfg;
  cfg.m = 3;
  cfg.trials = 5000;
  cfg.seed = 123;

  cfg.threads = 1;
  SimulationResult a = simulate(V, cfg);
  SimulationResult a2 = simulate(V, cfg);
  CHECK(identical(a, a2));

  cfg.threads = 2;
  SimulationResult b = simulate(V, cfg);
  cfg.threads = 8;
  SimulationResult c = simulate(V, cfg);
  CHECK(identical(a, b));
  CHECK(identical(a, c));
}

TEST_CASE("simulation config validation") {
  AnalysisOperator V = frame_of(fixture("skew-4"));
  SimulationConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(simulate(V, cfg), BadConfig);

  cfg.trials = 1;
  cfg.m = 0;
  CHECK_THROWS_AS(simulate(V, cfg), BadConfig);
  cfg.m = 5;
  CHECK_THROWS_AS(simulate(V, cfg), BadConfig);
}

TEST_CASE("frame comparison ranks the tighter frame first") {
  std::vector<AnalysisOperator> frames;
  frames.push_back(frame_of(fixture("bp-9-3-F")));
  frames.push_back(frame_of(fixture("bp-9-3-G")));
  SimulationConfig cfg;
  cfg.m = 3;
  cfg.trials = 84000;
  cfg.seed = 7;
  cfg.pattern_mode = PatternMode::exhaustive;
  FrameComparison cmp = compare_frames(frames, cfg);
  REQUIRE(cmp.results.size() == 2);
  CHECK(cmp.results[0].analytic_e_max < cmp.results[1].analytic_e_max);
  CHECK(cmp.results[0].empirical_max_error < cmp.results[1].empirical_max_error);
  CHECK(cmp.ranking == std::vector<int>{0, 1});
}

TEST_CASE("frame comparison analytic values at two erasures") {
  std::vector<AnalysisOperator> frames;
  frames.push_back(frame_of(fixture("skew-8")));
  frames.push_back(frame_of(trivial_seidel(8, 1)));
  SimulationConfig cfg;
  cfg.m = 2;
  cfg.trials = 500;
  cfg.seed = 2;
  FrameComparison cmp = compare_frames(frames, cfg);
  CHECK(cmp.results[0].analytic_e_max == doctest::Approx(0.5 + 1.0 / std::sqrt(28.0)).epsilon(1e-9));
  CHECK(cmp.results[1].analytic_e_max == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(cmp.ranking[0] == 1);

  FrameComparison single = compare_frames({frames[0]}, cfg);
  CHECK(single.ranking == std::vector<int>{0});
}

TEST_CASE("frame comparison rejects mixed sizes") {
  std::vector<AnalysisOperator> frames;
  frames.push_back(frame_of(fixture("skew-4")));
  frames.push_back(frame_of(fixture("skew-8")));
  SimulationConfig cfg;
  cfg.m = 2;
  cfg.trials = 10;
  CHECK_THROWS_AS(compare_frames(frames, cfg), MixedSizes);
}
