#ifndef COXFLOW_EXPERIMENT_HPP_
#define COXFLOW_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "coxflow/select.hpp"
#include "coxflow/simulate.hpp"

namespace coxflow {

// Flat "key = value" config files; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(std::istream& in);

SimConfig sim_config_from(const std::map<std::string, std::string>& kv);
SelectionPlan selection_plan_from(const std::map<std::string, std::string>& kv,
                                  const SimConfig& sim);

struct ExperimentConfig {
  SimConfig sim;
  SelectionPlan plan;
  std::vector<int> n_grid = {250, 1000, 4000};
  int replications = 20;
  long eval_size = 100000;
  std::string out_dir = ".";
};

ExperimentConfig experiment_config_from(
    const std::map<std::string, std::string>& kv);

struct ExperimentRow {
  int n = 0;
  int replication = 0;
  int k_hat = 0;
  int B_hat = 0;
  double risk = 0.0;        // L-hat(fhat_n) on the shared eval set
  double excess = 0.0;      // risk - L-hat*
};

struct ExperimentReport {
  double bayes_risk = 0.0;
  double bayes_se = 0.0;
  std::vector<ExperimentRow> runs;
  // per-n aggregates: n -> (mean excess, SE of the mean)
  std::vector<std::tuple<int, double, double>> aggregate;
};

// simulate -> features -> select -> evaluate over the n grid, all runs
// scored on one shared eval set. Deterministic given config.
ExperimentReport run_experiment(const ExperimentConfig& config);

void write_experiment_csv(std::ostream& runs_out, std::ostream& agg_out,
                          const ExperimentReport& report);

struct GirsanovCheck {
  std::string scenario;
  std::string functional;
  double z_score = 0.0;
  bool pass = false;
};

// Importance-weighting identity E_mu[e^W g] = E_nu[g] for three path
// functionals, under a constant and a covariate-driven intensity.
std::vector<GirsanovCheck> run_girsanov_check(std::uint64_t seed, long reps,
                                              int threads = 1);

}  // namespace coxflow

#endif  // COXFLOW_EXPERIMENT_HPP_
