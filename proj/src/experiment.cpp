#include "coxflow/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coxflow/oracle.hpp"
#include "coxflow/parallel.hpp"

namespace coxflow {
namespace {

double get_double(const std::map<std::string, std::string>& kv,
                  const std::string& key, double fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stod(it->second);
}

long get_long(const std::map<std::string, std::string>& kv,
              const std::string& key, long fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : std::stol(it->second);
}

std::string get_str(const std::map<std::string, std::string>& kv,
                    const std::string& key, const std::string& fallback) {
  auto it = kv.find(key);
  return it == kv.end() ? fallback : it->second;
}

std::string trim(const std::string& s) {
  std::size_t lo = s.find_first_not_of(" \t\r");
  if (lo == std::string::npos) return "";
  std::size_t hi = s.find_last_not_of(" \t\r");
  return s.substr(lo, hi - lo + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  return parse_config(in);
}

SimConfig sim_config_from(const std::map<std::string, std::string>& kv) {
  SimConfig c;
  c.seed = static_cast<std::uint64_t>(get_long(kv, "seed", 0));
  c.n = static_cast<int>(get_long(kv, "n", 1));
  c.horizon = get_double(kv, "T", 1.0);
  c.u = static_cast<int>(get_long(kv, "u", 20));
  c.dim = static_cast<int>(get_long(kv, "d", 1));
  c.grid_steps = static_cast<int>(get_long(kv, "grid_steps", 16));
  c.scenario = get_str(kv, "scenario", "affine-1d");
  c.covariate_kind = get_str(kv, "covariate_kind", "logistic-OU");
  c.p_plus = get_double(kv, "p_plus", 0.5);
  c.validate();
  return c;
}

SelectionPlan selection_plan_from(const std::map<std::string, std::string>& kv,
                                  const SimConfig& sim) {
  SelectionPlan p;
  p.alpha = get_double(kv, "alpha", 1.0);
  p.k_max = static_cast<int>(get_long(kv, "k_max", 8));
  p.delta = get_double(kv, "delta", -1.0);
  p.c_pen = get_double(kv, "c_pen", 1.0);
  p.selector = get_str(kv, "selector", "penalized");
  p.holdout_fraction = get_double(kv, "holdout_fraction", 0.25);
  p.fit.tolerance = get_double(kv, "fit_tolerance", p.fit.tolerance);
  p.fit.max_iters = get_long(kv, "fit_max_iters", p.fit.max_iters);
  p.threads = sim.threads;
  return p;
}

ExperimentConfig experiment_config_from(
    const std::map<std::string, std::string>& kv) {
  ExperimentConfig c;
  c.sim = sim_config_from(kv);
  c.plan = selection_plan_from(kv, c.sim);
  c.replications = static_cast<int>(get_long(kv, "replications", 20));
  c.eval_size = get_long(kv, "eval_size", 100000);
  c.out_dir = get_str(kv, "out_dir", ".");
  const std::string grid = get_str(kv, "n_grid", "250,1000,4000");
  c.n_grid.clear();
  std::stringstream ss(grid);
  std::string tok;
  while (std::getline(ss, tok, ','))
    c.n_grid.push_back(std::stoi(trim(tok)));
  for (std::size_t i = 1; i < c.n_grid.size(); ++i)
    if (c.n_grid[i] <= c.n_grid[i - 1])
      throw std::invalid_argument("n_grid must be strictly increasing");
  if (c.replications < 1 || c.eval_size < 1 || c.n_grid.empty())
    throw std::invalid_argument("experiment: sizes must be positive");
  return c;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  const IntensityModel model =
      scenario_by_name(config.sim.scenario, config.sim.p_plus);
  const Dictionary dict = cosine_dictionary(config.sim.dim, config.sim.horizon);
  const int B_max = default_schedule(config.plan.alpha, config.plan.k_max);

  // One shared eval set for every run, so between-n comparisons are not
  // polluted by evaluation noise.
  SimConfig eval_cfg = config.sim;
  eval_cfg.n = static_cast<int>(config.eval_size);
  eval_cfg.seed = derive_seed(config.sim.seed, 0x65761CULL);  // eval stream
  const Dataset eval_set = simulate_dataset(model, eval_cfg);
  const FeatureMatrix eval_fm =
      feature_matrix(eval_set, dict, B_max, config.sim.u, config.sim.threads);
  const RiskEstimate bayes = mc_bayes_risk(model, eval_set);

  ExperimentReport report;
  report.bayes_risk = bayes.value;
  report.bayes_se = bayes.std_error;

  const long total_runs =
      static_cast<long>(config.n_grid.size()) * config.replications;
  report.runs.resize(total_runs);

  parallel_for(total_runs, config.sim.threads, [&](long run) {
    const int ni = static_cast<int>(run / config.replications);
    const int rep = static_cast<int>(run % config.replications);
    const int n = config.n_grid[ni];

    SimConfig train_cfg = config.sim;
    train_cfg.n = n;
    train_cfg.threads = 1;
    train_cfg.seed = derive_seed(config.sim.seed, static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(rep) + 1);
    const Dataset train = simulate_dataset(model, train_cfg);
    FeatureMatrix fm = feature_matrix(train, dict, B_max, config.sim.u, 1);

    SelectionPlan plan = config.plan;
    plan.threads = 1;
    const SelectionReport sel = fit_penalized(fm, plan);

    long errors = 0;
    for (int i = 0; i < eval_fm.n; ++i) {
      const double f =
          sel.final.evaluate(eval_fm.phi_row(i), eval_fm.psi_row(i));
      const int g = f > 0 ? 1 : -1;
      if (g != eval_fm.labels[i]) ++errors;
    }
    const double risk = static_cast<double>(errors) / eval_fm.n;

    ExperimentRow row;
    row.n = n;
    row.replication = rep;
    row.k_hat = sel.k_hat;
    row.B_hat = sel.trace[sel.k_hat - 1].B;
    row.risk = risk;
    row.excess = risk - bayes.value;
    report.runs[run] = row;
  });

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    double sum = 0.0, sq = 0.0;
    for (int rep = 0; rep < config.replications; ++rep) {
      const double e = report.runs[ni * config.replications + rep].excess;
      sum += e;
      sq += e * e;
    }
    const int R = config.replications;
    const double mean = sum / R;
    const double var = R > 1 ? std::max(0.0, (sq - R * mean * mean) / (R - 1))
                             : 0.0;
    report.aggregate.emplace_back(config.n_grid[ni], mean,
                                  std::sqrt(var / R));
  }
  return report;
}

void write_experiment_csv(std::ostream& runs_out, std::ostream& agg_out,
                          const ExperimentReport& report) {
  char buf[128];
  runs_out << "n,replication,k_hat,B_hat,risk,excess\n";
  for (const auto& r : report.runs) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g", r.risk, r.excess);
    runs_out << r.n << ',' << r.replication << ',' << r.k_hat << ',' << r.B_hat
             << ',' << buf << '\n';
  }
  agg_out << "n,mean_excess,se,bayes_risk,bayes_se\n";
  for (const auto& [n, mean, se] : report.aggregate) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", mean, se,
                  report.bayes_risk, report.bayes_se);
    agg_out << n << ',' << buf << '\n';
  }
}

std::vector<GirsanovCheck> run_girsanov_check(std::uint64_t seed, long reps,
                                              int threads) {
  struct Scenario {
    std::string name;
    IntensityFn lambda;
    std::string covariate_kind;
  };
  const std::vector<Scenario> scenarios = {
      {"constant-2",
       [](double, std::span<const double>) { return 2.0; }, "constant-half"},
      {"affine-2+2z",
       [](double, std::span<const double> z) { return 2.0 + 2.0 * z[0]; },
       "logistic-OU"},
  };
  struct Functional {
    std::string name;
    std::function<double(const CountingPath&)> g;
  };
  const int u = 10;
  const double T = 1.0;
  const std::vector<Functional> functionals = {
      {"min(count,u)",
       [u](const CountingPath& x) {
         return std::min<double>(static_cast<double>(x.jump_times.size()), u);
       }},
      {"indicator(count=0)",
       [](const CountingPath& x) { return x.jump_times.empty() ? 1.0 : 0.0; }},
      {"min(first-jump,T)",
       [T](const CountingPath& x) {
         return x.jump_times.empty() ? T : std::min(x.jump_times.front(), T);
       }},
  };

  std::vector<GirsanovCheck> out;
  const double dmax = 4.0;
  for (const auto& sc : scenarios) {
    // weighted side: X ~ Poisson(lambda(.,z)) stopped at u
    const std::size_t nf = functionals.size();
    std::vector<double> wsum(nf, 0.0), wsq(nf, 0.0);
    std::vector<double> usum(nf, 0.0), usq(nf, 0.0);
    std::vector<std::vector<double>> wvals(nf), uvals(nf);
    for (auto& v : wvals) v.resize(reps);
    for (auto& v : uvals) v.resize(reps);

    parallel_for(reps, threads, [&](long i) {
      RngStream rng(seed, 0xA11CEULL, static_cast<std::uint64_t>(i) + 1);
      CovariatePath z = simulate_covariate(sc.covariate_kind, 1, T, 16, rng);
      CountingPath x = simulate_cox(sc.lambda, z, dmax, T, u, rng);
      const double w = std::exp(girsanov_log_weight(sc.lambda, x, z));
      for (std::size_t f = 0; f < nf; ++f) wvals[f][i] = w * functionals[f].g(x);

      // reference side: unit-rate Poisson stopped at u
      RngStream rng2(seed, 0xB0B0ULL, static_cast<std::uint64_t>(i) + 1);
      CovariatePath z2 = simulate_covariate(sc.covariate_kind, 1, T, 16, rng2);
      CountingPath x2 =
          simulate_cox([](double, std::span<const double>) { return 1.0; }, z2,
                       1.0, T, u, rng2);
      for (std::size_t f = 0; f < nf; ++f) uvals[f][i] = functionals[f].g(x2);
    });

    for (std::size_t f = 0; f < nf; ++f) {
      for (long i = 0; i < reps; ++i) {
        wsum[f] += wvals[f][i];
        wsq[f] += wvals[f][i] * wvals[f][i];
        usum[f] += uvals[f][i];
        usq[f] += uvals[f][i] * uvals[f][i];
      }
      const double mw = wsum[f] / reps, mu = usum[f] / reps;
      const double vw = std::max(0.0, wsq[f] - reps * mw * mw) / (reps - 1.0);
      const double vu = std::max(0.0, usq[f] - reps * mu * mu) / (reps - 1.0);
      GirsanovCheck chk;
      chk.scenario = sc.name;
      chk.functional = functionals[f].name;
      const double se = std::sqrt(vw / reps + vu / reps);
      chk.z_score = se > 0 ? (mw - mu) / se : 0.0;
      chk.pass = std::fabs(chk.z_score) <= 4.0;
      out.push_back(chk);
    }
  }
  return out;
}

}  // namespace coxflow
