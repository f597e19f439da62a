#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "coxflow/experiment.hpp"
#include "coxflow/oracle.hpp"

namespace {

using namespace coxflow;

constexpr int kExitUsage = 1;
constexpr int kExitCheckFailure = 2;

FeatureMatrix features_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open features file: " + path);
  std::string header;
  if (!std::getline(in, header))
    throw std::invalid_argument("features CSV: empty file");
  int B = 0;
  {
    std::stringstream ss(header);
    std::string col;
    while (std::getline(ss, col, ','))
      if (col.rfind("Phi_", 0) == 0) ++B;
  }
  if (B == 0) throw std::invalid_argument("features CSV: no Phi_ columns");
  FeatureMatrix fm;
  fm.B = B;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string tok;
    std::getline(ss, tok, ',');  // i
    std::getline(ss, tok, ',');
    fm.labels.push_back(std::stoi(tok));
    for (int j = 0; j < B; ++j) {
      std::getline(ss, tok, ',');
      fm.phi.push_back(std::stod(tok));
    }
    for (int j = 0; j < B; ++j) {
      std::getline(ss, tok, ',');
      fm.psi.push_back(std::stod(tok));
    }
  }
  fm.n = static_cast<int>(fm.labels.size());
  return fm;
}

bool looks_like_feature_csv(const std::string& path) {
  std::ifstream in(path);
  std::string head;
  std::getline(in, head);
  return head.rfind("i,y,", 0) == 0;
}

FeatureMatrix features_from_dataset(const Dataset& data, int B, int threads) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  const Dictionary dict =
      cosine_dictionary(data.front().z.dim, data.front().x.horizon);
  return feature_matrix(data, dict, B, data.front().x.cap, threads);
}

int run(int argc, char** argv) {
  CLI::App app{"Cox-process functional classification pipeline"};
  app.require_subcommand(1);

  std::string config_path, out_path, data_path, coeffs_path, features_path;
  std::string scenario = "affine-1d";
  long seed_flag = -1;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  int B = 1;
  long reps = 100000;

  app.add_option("--threads", threads, "worker threads");

  auto* cmd_sim = app.add_subcommand("simulate", "draw a labeled dataset");
  cmd_sim->add_option("--config", config_path)->required();
  cmd_sim->add_option("--out", out_path)->required();
  cmd_sim->add_option("--seed", seed_flag, "override config seed");

  auto* cmd_fit = app.add_subcommand("fit", "ERM fit at a fixed class radius");
  cmd_fit->add_option("--features", features_path, "features CSV or dataset")
      ->required();
  cmd_fit->add_option("--B", B)->required();
  cmd_fit->add_option("--out", out_path)->required();

  auto* cmd_sel = app.add_subcommand("select", "penalized model selection");
  cmd_sel->add_option("--data", data_path)->required();
  cmd_sel->add_option("--config", config_path)->required();
  cmd_sel->add_option("--out", out_path)->required();

  auto* cmd_eval = app.add_subcommand("evaluate", "risk report on an eval set");
  cmd_eval->add_option("--data", data_path)->required();
  cmd_eval->add_option("--coeffs", coeffs_path)->required();
  cmd_eval->add_option("--scenario", scenario);
  cmd_eval->add_option("--out", out_path)->required();

  auto* cmd_exp = app.add_subcommand("experiment", "consistency curves over n");
  cmd_exp->add_option("--config", config_path)->required();
  cmd_exp->add_option("--out", out_path, "output directory");
  cmd_exp->add_option("--seed", seed_flag, "override config seed");

  auto* cmd_gir =
      app.add_subcommand("check-girsanov", "importance-weighting identity");
  cmd_gir->add_option("--seed", seed_flag);
  cmd_gir->add_option("--reps", reps);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (cmd_sim->parsed()) {
    auto kv = read_config(config_path);
    SimConfig cfg = sim_config_from(kv);
    cfg.threads = threads;
    if (seed_flag >= 0) cfg.seed = static_cast<std::uint64_t>(seed_flag);
    const IntensityModel model = scenario_by_name(cfg.scenario, cfg.p_plus);
    write_dataset_file(out_path, simulate_dataset(model, cfg));
    return 0;
  }

  if (cmd_fit->parsed()) {
    FeatureMatrix fm = looks_like_feature_csv(features_path)
                           ? features_from_csv(features_path)
                           : features_from_dataset(
                                 read_dataset_file(features_path), B, threads);
    if (B > fm.B)
      throw std::invalid_argument("--B exceeds available feature columns");
    const FitReport rep = fit_erm(fm, B);
    write_coefficients_file(out_path, rep.coef);
    std::fprintf(stderr, "risk=%.12g iters=%ld converged=%d\n", rep.risk,
                 rep.iterations, rep.converged ? 1 : 0);
    return 0;
  }

  if (cmd_sel->parsed()) {
    auto kv = read_config(config_path);
    SimConfig sim = sim_config_from(kv);
    sim.threads = threads;
    SelectionPlan plan = selection_plan_from(kv, sim);
    const Dataset data = read_dataset_file(data_path);
    const Dictionary dict = cosine_dictionary(sim.dim, sim.horizon);
    const SelectionReport report = fit_penalized(data, dict, plan, sim.u);
    std::ofstream out(out_path);
    write_selection_csv(out, report);
    write_coefficients_file(out_path + ".coeffs", report.final);
    return 0;
  }

  if (cmd_eval->parsed()) {
    const Dataset eval_set = read_dataset_file(data_path);
    const Coefficients coef = read_coefficients_file(coeffs_path);
    const IntensityModel model = scenario_by_name(scenario);
    const Dictionary dict = cosine_dictionary(eval_set.front().z.dim,
                                              eval_set.front().x.horizon);
    const RiskEstimate risk =
        mc_risk(classifier_from(coef, dict), eval_set);
    const RiskEstimate bayes = mc_bayes_risk(model, eval_set);
    const double phi_risk = mc_phi_risk(coef, dict, eval_set);
    const double phi_star = mc_phi_risk_star(model, eval_set);
    std::ofstream out(out_path);
    out << "risk,se,bayes_risk,bayes_se,phi_risk,phi_risk_star\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  risk.value, risk.std_error, bayes.value, bayes.std_error,
                  phi_risk, phi_star);
    out << buf;
    return 0;
  }

  if (cmd_exp->parsed()) {
    auto kv = read_config(config_path);
    ExperimentConfig cfg = experiment_config_from(kv);
    cfg.sim.threads = threads;
    if (seed_flag >= 0) cfg.sim.seed = static_cast<std::uint64_t>(seed_flag);
    if (!out_path.empty()) cfg.out_dir = out_path;
    const ExperimentReport report = run_experiment(cfg);
    std::ofstream runs(cfg.out_dir + "/runs.csv");
    std::ofstream agg(cfg.out_dir + "/aggregate.csv");
    if (!runs || !agg)
      throw std::invalid_argument("cannot write to out dir: " + cfg.out_dir);
    write_experiment_csv(runs, agg, report);
    for (const auto& [n, mean, se] : report.aggregate)
      std::printf("n=%d mean_excess=%.6f se=%.6f\n", n, mean, se);
    return 0;
  }

  if (cmd_gir->parsed()) {
    const std::uint64_t seed =
        seed_flag >= 0 ? static_cast<std::uint64_t>(seed_flag) : 20240601u;
    const auto checks = run_girsanov_check(seed, reps, threads);
    bool all_pass = true;
    for (const auto& c : checks) {
      std::printf("[%s] %s / %s  z=%.3f\n", c.pass ? "PASS" : "FAIL",
                  c.scenario.c_str(), c.functional.c_str(), c.z_score);
      all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : kExitCheckFailure;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "check failure: %s\n", e.what());
    return kExitCheckFailure;
  }
}
