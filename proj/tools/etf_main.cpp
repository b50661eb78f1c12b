// Command-line front end: verify / erasure / gen / classify / simulate.
// Reports go to stdout as canonical JSON; diagnostics go to stderr.
// Exit codes: 0 success, 2 input/config error, 3 domain validation failure,
// 4 resource guard, 1 unexpected internal failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "etf/channel.hpp"
#include "etf/erasure.hpp"
#include "etf/errors.hpp"
#include "etf/etf.hpp"
#include "etf/io.hpp"
#include "etf/seidel.hpp"
#include "etf/types.hpp"

namespace {

int g_exit_code = 0;

struct MatrixInput {
  etf::Matrix entries;
  std::string digest;
};

// Fixtures hash their canonical file form, so `--fixture NAME` and a file
// produced by `gen fixture --name NAME` report the same digest.
MatrixInput load_matrix(const std::string& fixture_name, const std::string& input_path) {
  if (!fixture_name.empty()) {
    const etf::RootOfUnityGrid grid = etf::fixture_grid(fixture_name);
    return {etf::matrix_from_grid(grid), etf::fnv1a_hex(etf::matrix_file_rou(grid))};
  }
  const std::string bytes = etf::read_file(input_path);
  return {etf::parse_matrix_json(bytes), etf::fnv1a_hex(bytes)};
}

void require_one_source(int given) {
  if (given != 1) throw etf::BadConfig("exactly one input source is required");
}

etf::SeidelMatrix require_etf(const etf::Matrix& entries, etf::EtfParameters& params_out) {
  etf::SeidelMatrix Q = etf::SeidelMatrix::validate(entries);
  const std::optional<etf::EtfParameters> p = etf::is_etf_seidel(Q);
  if (!p) throw etf::NotEtf("input is not an equiangular tight frame");
  params_out = *p;
  return Q;
}

void print_report(const std::string& command, const std::string& digest, etf::Json payload) {
  std::cout << etf::dump_json(etf::make_report(command, digest, std::move(payload))) << "\n";
}

std::string fixture_help() {
  std::string help = "built-in matrix name (";
  bool first = true;
  for (const std::string& name : etf::fixture_names()) {
    if (!first) help += ", ";
    first = false;
    help += name;
  }
  return help + ")";
}

std::string three_c_name(etf::ThreeCVerdict v) {
  switch (v) {
    case etf::ThreeCVerdict::trivial: return "trivial";
    case etf::ThreeCVerdict::skew_class: return "skew_class";
    case etf::ThreeCVerdict::not_3c: return "not_3c";
  }
  return "not_3c";
}

void run_verify(const std::string& fixture_name, const std::string& input_path) {
  const MatrixInput in = load_matrix(fixture_name, input_path);
  etf::Json payload;
  int code = 0;
  try {
    const etf::SeidelMatrix Q = etf::SeidelMatrix::validate(in.entries);
    payload = etf::to_json(etf::verify_etf_seidel(Q));
  } catch (const etf::Error& e) {
    if (e.category() != etf::ErrorCategory::validation) throw;
    payload["seidel_valid"] = false;
    payload["is_etf"] = false;
    payload["params"] = nullptr;
    payload["residual"] = nullptr;
    payload["violation"] = e.what();
    code = 3;
  }
  print_report("verify", in.digest, std::move(payload));
  g_exit_code = code;
}

void run_erasure(const std::string& fixture_name, const std::string& input_path,
                 const std::string& frame_path, int m, int max_m, int threads) {
  if ((m > 0) == (max_m > 0))
    throw etf::BadConfig("exactly one of --m and --max-m is required");

  etf::Matrix G;
  std::optional<etf::EtfParameters> params;
  std::string digest;
  if (!frame_path.empty()) {
    const std::string bytes = etf::read_file(frame_path);
    digest = etf::fnv1a_hex(bytes);
    G = etf::parse_frame_json(bytes).gram();
  } else {
    const MatrixInput in = load_matrix(fixture_name, input_path);
    digest = in.digest;
    etf::EtfParameters p;
    const etf::SeidelMatrix Q = require_etf(in.entries, p);
    G = etf::gram_from_seidel(Q, p);
    params = p;
  }

  std::vector<etf::ErasureReport> reports;
  if (m > 0)
    reports.push_back(etf::erasure_sweep(G, m, params, threads));
  else
    reports = etf::classify_uniformity(G, max_m, params, threads);

  etf::Json payload;
  payload["params"] = params ? etf::to_json(*params) : etf::Json(nullptr);
  etf::Json list = etf::Json::array();
  for (const etf::ErasureReport& r : reports) list.push_back(etf::to_json(r));
  payload["reports"] = std::move(list);
  print_report("erasure", digest, std::move(payload));
}

void run_gen(const std::string& kind, etf::Json parameters, const etf::SeidelMatrix& Q,
             int grid_order, const std::string& out_path) {
  std::string content;
  if (kind == "fixture") {
    content = etf::matrix_file_rou(etf::fixture_grid(parameters.at("name").get<std::string>()));
  } else {
    const std::optional<etf::RootOfUnityGrid> grid = etf::grid_from_matrix(Q.matrix(), grid_order);
    if (!grid) throw etf::BadConfig("generated matrix left the root-of-unity lattice");
    content = etf::matrix_file_rou(*grid);
  }
  etf::write_file(out_path, content);
  const std::string digest = etf::fnv1a_hex(content);

  etf::Json payload;
  payload["kind"] = kind;
  payload["parameters"] = std::move(parameters);
  payload["digest"] = digest;
  payload["path"] = out_path;
  print_report("gen", digest, std::move(payload));
}

void run_classify(const std::string& fixture_name, const std::string& input_path) {
  const MatrixInput in = load_matrix(fixture_name, input_path);
  etf::EtfParameters p;
  const etf::SeidelMatrix Q = require_etf(in.entries, p);

  const etf::ThreeCVerdict three = etf::check_3c_classification(Q);
  const etf::FourCVerdict four = etf::check_4c_exhaustive(Q);
  const auto [R, transform] = etf::standard_form(Q);
  (void)transform;

  const std::vector<etf::Complex> sums = etf::row_sum_check(R);
  bool row_sums_ok = R.n() >= 2;
  for (size_t i = 1; i < sums.size(); ++i)
    if (std::abs(sums[i] - etf::Complex(1.0, 0.0)) > 1e-9) row_sums_ok = false;

  etf::Json payload;
  payload["three_c_verdict"] = three_c_name(three);
  payload["four_c_verdict"] = four == etf::FourCVerdict::four_c ? "four_c" : "not_four_c";
  payload["standard_form_digest"] = etf::fnv1a_hex(etf::matrix_file_dense(R.matrix()));
  payload["row_sums_ok"] = row_sums_ok;
  print_report("classify", in.digest, std::move(payload));
}

void run_simulate(const std::string& fixture_name, const std::string& input_path,
                  const std::string& frame_path, const etf::SimulationConfig& cfg) {
  std::optional<etf::AnalysisOperator> V;
  std::string digest;
  if (!frame_path.empty()) {
    const std::string bytes = etf::read_file(frame_path);
    digest = etf::fnv1a_hex(bytes);
    V = etf::parse_frame_json(bytes);
  } else {
    const MatrixInput in = load_matrix(fixture_name, input_path);
    digest = in.digest;
    etf::EtfParameters p;
    const etf::SeidelMatrix Q = require_etf(in.entries, p);
    V = etf::frame_from_seidel(Q, p);
  }
  print_report("simulate", digest, etf::to_json(etf::simulate(*V, cfg)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equiangular tight frame toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", etf::kToolVersion);
  const std::string fixture_desc = fixture_help();

  // verify
  std::string verify_fixture, verify_input;
  CLI::App* verify = app.add_subcommand("verify", "check the two-eigenvalue frame condition");
  verify->add_option("--fixture", verify_fixture, fixture_desc);
  verify->add_option("--input", verify_input, "matrix file (dense or rou format)");
  verify->callback([&] {
    require_one_source(!verify_fixture.empty() + !verify_input.empty());
    run_verify(verify_fixture, verify_input);
  });

  // erasure
  std::string erasure_fixture, erasure_input, erasure_frame;
  int erasure_m = 0, erasure_max_m = 0, erasure_threads = 0;
  CLI::App* erasure = app.add_subcommand("erasure", "exact worst-case erasure error sweep");
  erasure->add_option("--fixture", erasure_fixture, fixture_desc);
  erasure->add_option("--input", erasure_input, "matrix file (dense or rou format)");
  erasure->add_option("--frame", erasure_frame, "analysis-operator file (frame format)");
  erasure->add_option("--m", erasure_m, "erase exactly m coordinates")->check(CLI::PositiveNumber);
  erasure->add_option("--max-m", erasure_max_m, "sweep all levels 1..max-m")
      ->check(CLI::PositiveNumber);
  erasure->add_option("--threads", erasure_threads, "worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);
  erasure->callback([&] {
    require_one_source(!erasure_fixture.empty() + !erasure_input.empty() +
                       !erasure_frame.empty());
    run_erasure(erasure_fixture, erasure_input, erasure_frame, erasure_m, erasure_max_m,
                erasure_threads);
  });

  // gen
  CLI::App* gen = app.add_subcommand("gen", "write a matrix file for a known construction");
  gen->require_subcommand(1);

  int gen_n = 0, gen_k = 0;
  std::string gen_trivial_out;
  CLI::App* gen_trivial = gen->add_subcommand("trivial", "rank-one-complement matrix J - I or I - J");
  gen_trivial->add_option("--n", gen_n, "frame size")->required()->check(CLI::PositiveNumber);
  gen_trivial->add_option("--k", gen_k, "dimension (1 or n-1)")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_trivial->add_option("--out", gen_trivial_out, "output path")->required();
  gen_trivial->callback([&] {
    etf::Json parameters;
    parameters["n"] = gen_n;
    parameters["k"] = gen_k;
    run_gen("trivial", std::move(parameters), etf::trivial_seidel(gen_n, gen_k), 2,
            gen_trivial_out);
  });

  int gen_q = 0;
  std::string gen_paley_out;
  CLI::App* gen_paley = gen->add_subcommand("paley", "skew matrix i*A from a quadratic-residue tournament");
  gen_paley->add_option("--q", gen_q, "prime congruent to 3 mod 4")
      ->required()
      ->check(CLI::PositiveNumber);
  gen_paley->add_option("--out", gen_paley_out, "output path")->required();
  gen_paley->callback([&] {
    etf::Json parameters;
    parameters["q"] = gen_q;
    run_gen("paley", std::move(parameters), etf::paley_skew_seidel(gen_q), 4, gen_paley_out);
  });

  std::string gen_name, gen_fixture_out;
  CLI::App* gen_fixture = gen->add_subcommand("fixture", "copy of a built-in matrix");
  gen_fixture->add_option("--name", gen_name, fixture_desc)->required();
  gen_fixture->add_option("--out", gen_fixture_out, "output path")->required();
  gen_fixture->callback([&] {
    etf::Json parameters;
    parameters["name"] = gen_name;
    run_gen("fixture", std::move(parameters), etf::fixture(gen_name), 12, gen_fixture_out);
  });

  // classify
  std::string classify_fixture, classify_input;
  CLI::App* classify = app.add_subcommand("classify", "uniformity class and standard-form facts");
  classify->add_option("--fixture", classify_fixture, fixture_desc);
  classify->add_option("--input", classify_input, "matrix file (dense or rou format)");
  classify->callback([&] {
    require_one_source(!classify_fixture.empty() + !classify_input.empty());
    run_classify(classify_fixture, classify_input);
  });

  // simulate
  std::string sim_fixture, sim_input, sim_frame, sim_mode = "random";
  std::uint64_t sim_trials = 10000, sim_seed = 0;
  int sim_m = 0, sim_threads = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "encode/erase/decode channel trials");
  simulate->add_option("--fixture", sim_fixture, fixture_desc);
  simulate->add_option("--input", sim_input, "matrix file (dense or rou format)");
  simulate->add_option("--frame", sim_frame, "analysis-operator file (frame format)");
  simulate->add_option("--m", sim_m, "erased coordinates per trial")
      ->required()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trials", sim_trials, "number of trials (default 10000)");
  simulate->add_option("--seed", sim_seed, "stream seed (default 0)");
  simulate->add_option("--mode", sim_mode, "pattern mode: random | exhaustive")
      ->check(CLI::IsMember({"random", "exhaustive"}));
  simulate->add_option("--threads", sim_threads, "worker threads (0 = auto)")
      ->check(CLI::NonNegativeNumber);
  simulate->callback([&] {
    require_one_source(!sim_fixture.empty() + !sim_input.empty() + !sim_frame.empty());
    etf::SimulationConfig cfg;
    cfg.m = sim_m;
    cfg.trials = sim_trials;
    cfg.seed = sim_seed;
    cfg.pattern_mode =
        sim_mode == "exhaustive" ? etf::PatternMode::exhaustive : etf::PatternMode::random;
    cfg.threads = sim_threads;
    run_simulate(sim_fixture, sim_input, sim_frame, cfg);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const etf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.category()) {
      case etf::ErrorCategory::config: return 2;
      case etf::ErrorCategory::validation: return 3;
      case etf::ErrorCategory::guard: return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit_code;
}
