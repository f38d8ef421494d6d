#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmvs/csv.hpp"
#include "bmvs/dataset.hpp"
#include "bmvs/dcsis.hpp"
#include "bmvs/errors.hpp"
#include "bmvs/gibbs.hpp"
#include "bmvs/hyperparams.hpp"
#include "bmvs/metrics.hpp"
#include "bmvs/model_select.hpp"
#include "bmvs/replicates.hpp"
#include "bmvs/report.hpp"
#include "bmvs/simgen.hpp"

namespace {

struct ChainFlags {
  std::int64_t burn_in = 1000;
  std::int64_t iters = 5000;
  std::int64_t thin = 1;
  std::uint64_t seed = 0;
  std::string init = "zero";
  bool random_scan = false;
};

struct HyperFlags {
  std::optional<double> alpha1;
  std::optional<double> alpha2;
  std::optional<double> nu;
  std::optional<double> phi;
  std::optional<double> tau0_sq;
  std::optional<double> tau1_sq;
  bool displayed_ig_update = false;
};

struct SelectFlags {
  std::string rule = "aicc";
  std::int64_t max_model_size = -1;
};

struct SimFlags {
  int setting = 1;
  std::int64_t n = 200;
  std::int64_t p = 500;
  std::int64_t q = 0;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> true_size;
  std::optional<double> beta_min;
  std::optional<double> beta_max;
  std::optional<double> sigma_rho;
  std::optional<double> x_rho;
};

void add_chain_flags(CLI::App* cmd, ChainFlags& cf, bool with_seed = true) {
  cmd->add_option("--burn-in", cf.burn_in, "Burn-in sweeps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--iters", cf.iters, "Post-burn-in sweeps to keep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--thin", cf.thin, "Keep every thin-th sweep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  if (with_seed) {
    cmd->add_option("--seed", cf.seed, "RNG seed")->capture_default_str();
  }
  cmd->add_option("--init", cf.init, "Chain initialization")
      ->check(CLI::IsMember({"zero", "ridge", "random"}))
      ->capture_default_str();
  cmd->add_flag("--random-scan", cf.random_scan,
                "Visit predictors in a fresh random order each sweep");
}

void add_hyper_flags(CLI::App* cmd, HyperFlags& hf) {
  cmd->add_option("--alpha1", hf.alpha1, "sigma_beta^2 prior shape");
  cmd->add_option("--alpha2", hf.alpha2, "sigma_beta^2 prior scale");
  cmd->add_option("--nu", hf.nu, "Sigma_Y prior degrees of freedom");
  cmd->add_option("--phi", hf.phi, "Prior inclusion probability override");
  cmd->add_option("--tau0-sq", hf.tau0_sq, "Spike prior variance override");
  cmd->add_option("--tau1-sq", hf.tau1_sq, "Slab prior variance override");
  cmd->add_flag("--displayed-ig-update", hf.displayed_ig_update,
                "Use the un-halved sigma_beta^2 update parameters");
}

void add_select_flags(CLI::App* cmd, SelectFlags& sf) {
  cmd->add_option("--rule", sf.rule, "Selection rule")
      ->check(CLI::IsMember({"aicc", "median"}))
      ->capture_default_str();
  cmd->add_option("--max-model-size", sf.max_model_size,
                  "Largest ranked-path model (-1: min(50, n-q-2))")
      ->capture_default_str();
}

void add_sim_flags(CLI::App* cmd, SimFlags& sf) {
  cmd->add_option("--setting", sf.setting, "Simulation setting")
      ->required()
      ->check(CLI::Range(1, 4));
  cmd->add_option("--n", sf.n, "Observations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--p", sf.p, "Predictors")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--q", sf.q, "Responses (0: setting default)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--seed", sf.seed, "RNG seed")->capture_default_str();
  cmd->add_option("--true-size", sf.true_size, "True-model size override");
  cmd->add_option("--beta-min", sf.beta_min, "Coefficient range lower end");
  cmd->add_option("--beta-max", sf.beta_max, "Coefficient range upper end");
  cmd->add_option("--sigma-rho", sf.sigma_rho, "Sigma_Y AR parameter");
  cmd->add_option("--x-rho", sf.x_rho, "Setting-3 design AR parameter");
}

bmvs::SimSpec make_sim_spec(const SimFlags& sf) {
  bmvs::SimSpec spec;
  spec.setting = sf.setting;
  spec.n = sf.n;
  spec.p = sf.p;
  spec.q = sf.q;
  spec.seed = sf.seed;
  if (sf.true_size) spec.overrides.true_size = *sf.true_size;
  spec.overrides.beta_min = sf.beta_min;
  spec.overrides.beta_max = sf.beta_max;
  spec.overrides.sigma_rho = sf.sigma_rho;
  spec.overrides.x_rho = sf.x_rho;
  return spec;
}

bmvs::InitMode parse_init(const std::string& name) {
  if (name == "ridge") return bmvs::InitMode::kRidge;
  if (name == "random") return bmvs::InitMode::kRandom;
  return bmvs::InitMode::kZero;
}

bmvs::ChainConfig make_chain_config(const ChainFlags& cf) {
  bmvs::ChainConfig cfg;
  cfg.burn_in = cf.burn_in;
  cfg.keep_iters = cf.iters;
  cfg.thin = cf.thin;
  cfg.seed = cf.seed;
  cfg.init_mode = parse_init(cf.init);
  cfg.random_scan = cf.random_scan;
  return cfg;
}

bmvs::HyperParams make_hp(const bmvs::DataSet& data, const HyperFlags& hf) {
  double tau0_sq;
  double tau1_sq;
  if (hf.tau0_sq && hf.tau1_sq) {
    tau0_sq = *hf.tau0_sq;
    tau1_sq = *hf.tau1_sq;
  } else {
    auto [t0, t1] = bmvs::compute_tau(data);
    tau0_sq = hf.tau0_sq.value_or(t0);
    tau1_sq = hf.tau1_sq.value_or(t1);
  }
  const double phi =
      hf.phi ? *hf.phi
             : bmvs::calibrate_phi(data.p(), static_cast<double>(data.n()));
  bmvs::HyperParams hp{
      .tau0_sq = tau0_sq,
      .tau1_sq = tau1_sq,
      .phi = phi,
      .alpha1 = hf.alpha1.value_or(0.01),
      .alpha2 = hf.alpha2.value_or(0.01),
      .nu = hf.nu.value_or(static_cast<double>(data.q() + 1)),
      .lambda = bmvs::SpdMatrix::identity(data.q()),
      .displayed_ig_update = hf.displayed_ig_update,
  };
  hp.validate(data.q());
  return hp;
}

bmvs::SelectionRule parse_rule(const std::string& rule) {
  return rule == "median" ? bmvs::SelectionRule::kMedian
                          : bmvs::SelectionRule::kAicc;
}

nlohmann::json hp_to_json(const bmvs::HyperParams& hp) {
  return nlohmann::json{{"tau0_sq", hp.tau0_sq},
                        {"tau1_sq", hp.tau1_sq},
                        {"phi", hp.phi},
                        {"alpha1", hp.alpha1},
                        {"alpha2", hp.alpha2},
                        {"nu", hp.nu},
                        {"displayed_ig_update", hp.displayed_ig_update}};
}

bmvs::DataSet load_dataset(const std::string& x_path,
                           const std::string& y_path, bool genotype,
                           double maf_min) {
  bmvs::DataSet data;
  if (genotype) {
    bmvs::GenotypeMatrix g = bmvs::read_genotype_csv(x_path, maf_min);
    if (!g.dropped.empty()) {
      std::cerr << "note: dropped " << g.dropped.size()
                << " low-MAF genotype columns\n";
    }
    data.x = std::move(g.values);
    data.x_names = std::move(g.names);
  } else {
    bmvs::CsvMatrix x = bmvs::read_matrix_csv(x_path);
    data.x = std::move(x.values);
    data.x_names = std::move(x.names);
  }
  bmvs::CsvMatrix y = bmvs::read_matrix_csv(y_path);
  data.y = std::move(y.values);
  data.y_names = std::move(y.names);
  data.validate();
  return data;
}

int run_simulate(const SimFlags& sf, const std::string& out_dir) {
  const bmvs::SimSpec spec = make_sim_spec(sf);
  auto [data, truth] = bmvs::generate(spec);
  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  bmvs::write_matrix_csv((dir / "X.csv").string(), data.x);
  bmvs::write_matrix_csv((dir / "Y.csv").string(), data.y);
  bmvs::write_truth_json((dir / "truth.json").string(), spec, truth);
  std::cout << "wrote " << (dir / "X.csv").string() << " (" << data.n() << "x"
            << data.p() << "), " << (dir / "Y.csv").string() << " ("
            << data.n() << "x" << data.q() << "), "
            << (dir / "truth.json").string() << "\n";
  return 0;
}

int run_screen(const std::string& x_path, const std::string& y_path,
               bool genotype, double maf_min, std::int64_t d, int threads,
               const std::string& out_path) {
  const bmvs::DataSet data = load_dataset(x_path, y_path, genotype, maf_min);
  const bmvs::ScreenReport report = bmvs::screen(data, d, threads);
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  bmvs::write_screen_json(out_path, report);
  std::cout << "kept " << report.kept.size() << " of " << data.p()
            << " columns; wrote " << out_path << "\n";
  return 0;
}

int run_fit(const std::string& x_path, const std::string& y_path,
            bool genotype, double maf_min,
            std::optional<std::int64_t> screen_d, const ChainFlags& cf,
            const HyperFlags& hf, const SelectFlags& sf,
            const std::string& out_path) {
  const auto t_start = std::chrono::steady_clock::now();
  const bmvs::DataSet data = load_dataset(x_path, y_path, genotype, maf_min);

  std::vector<std::string> warnings;
  std::vector<Eigen::Index> kept;
  const bmvs::DataSet* chain_data = &data;
  bmvs::DataSet screened;
  if (screen_d) {
    bmvs::ScreenReport sr = bmvs::screen(data, *screen_d, 1);
    warnings.insert(warnings.end(), sr.warnings.begin(), sr.warnings.end());
    kept = std::move(sr.kept);
    screened = bmvs::subset_columns(data, kept);
    chain_data = &screened;
  }

  const bmvs::HyperParams hp = make_hp(*chain_data, hf);
  const bmvs::ChainConfig cfg = make_chain_config(cf);
  bmvs::ChainResult result = bmvs::run_chain(*chain_data, hp, cfg);
  warnings.insert(warnings.end(), result.warnings.begin(),
                  result.warnings.end());

  std::vector<double> aicc_path;
  bmvs::ModelIndex selected;
  if (parse_rule(sf.rule) == bmvs::SelectionRule::kAicc) {
    selected = bmvs::select_by_aicc(result, *chain_data, sf.max_model_size,
                                    &warnings, &aicc_path);
  } else {
    selected = bmvs::select_by_median_probability(result, *chain_data);
  }

  Eigen::VectorXd inclusion = result.inclusion_prob;
  if (screen_d) {
    inclusion = Eigen::VectorXd::Zero(data.p());
    for (std::size_t j = 0; j < kept.size(); ++j) {
      inclusion(kept[j]) = result.inclusion_prob(static_cast<Eigen::Index>(j));
    }
    for (Eigen::Index& idx : selected.indices) {
      idx = kept[static_cast<std::size_t>(idx)];
    }
    std::sort(selected.indices.begin(), selected.indices.end());
  }
  const auto t_end = std::chrono::steady_clock::now();

  bmvs::FitReport report;
  report.config = nlohmann::json{
      {"x", x_path},
      {"y", y_path},
      {"genotype", genotype},
      {"maf", maf_min},
      {"screen_d", screen_d ? nlohmann::json(*screen_d) : nlohmann::json()},
      {"burn_in", cf.burn_in},
      {"keep_iters", cf.iters},
      {"thin", cf.thin},
      {"seed", cf.seed},
      {"init", cf.init},
      {"random_scan", cf.random_scan},
      {"rule", sf.rule},
      {"max_model_size", sf.max_model_size},
      {"n", data.n()},
      {"p", data.p()},
      {"q", data.q()},
      {"hyperparams", hp_to_json(hp)}};
  report.seed = cf.seed;
  report.inclusion_prob = std::move(inclusion);
  report.selected = selected.indices;
  report.selected_aicc = selected.aicc;
  report.aicc_path = std::move(aicc_path);
  report.wall_time_seconds =
      std::chrono::duration<double>(t_end - t_start).count();
  report.kept_draws = result.kept_draws;
  report.screen_kept = std::move(kept);
  report.warnings = warnings;
  bmvs::write_report_json(out_path, report);

  for (const std::string& w : warnings) {
    std::cerr << "warning: " << w << "\n";
  }
  std::cout << "selected " << selected.indices.size() << " predictors:";
  for (Eigen::Index i : selected.indices) {
    std::cout << ' ' << i + 1;
  }
  std::cout << "\nwrote " << out_path << "\n";
  return 0;
}

int run_study(const SimFlags& simf, int reps, int threads,
              std::optional<std::int64_t> screen_d, ChainFlags cf,
              const HyperFlags& hf, const SelectFlags& sf,
              const std::string& out_path) {
  cf.seed = simf.seed;  // one master seed; streams separate data and chains
  const bmvs::SimSpec spec = make_sim_spec(simf);
  bmvs::DataGenerator gen = [spec](int rep) {
    return bmvs::generate(spec,
                          bmvs::kDataStreamBase +
                              static_cast<std::uint64_t>(rep));
  };
  bmvs::ReplicateOptions opts;
  opts.threads = threads;
  if (screen_d) opts.screen_d = *screen_d;
  opts.rule = parse_rule(sf.rule);
  opts.max_model_size = sf.max_model_size;
  opts.hp_policy = [hf](const bmvs::DataSet& d) { return make_hp(d, hf); };

  const bmvs::ReplicateSummary summary =
      bmvs::run_replicates(gen, make_chain_config(cf), reps, opts);

  std::vector<bmvs::MetricsRow> rows;
  for (const bmvs::ReplicateOutcome& o : summary.outcomes) {
    if (o.failed) {
      std::cerr << "replicate " << o.rep + 1 << " failed: " << o.error
                << "\n";
    } else if (o.metrics) {
      rows.push_back(*o.metrics);
    }
  }
  bmvs::write_metrics_json(out_path, rows, summary.aggregate_metrics,
                           summary.failure_count);
  std::cout << bmvs::metrics_text_table(rows, summary.aggregate_metrics);
  if (summary.failure_count > 0) {
    std::cout << summary.failure_count << " of " << reps
              << " replicates failed\n";
  }
  std::cout << "wrote " << out_path << "\n";
  if (summary.failure_count == reps) {
    throw bmvs::NumericError("study: every replicate failed");
  }
  return 0;
}

int run_evaluate(const std::string& report_path,
                 const std::string& truth_path,
                 const std::string& out_path) {
  const bmvs::FitReport report = bmvs::read_report_json(report_path);
  const bmvs::SimTruth truth = bmvs::read_truth_json(truth_path);
  bmvs::ChainResult result{report.inclusion_prob,
                           Eigen::MatrixXd::Zero(report.inclusion_prob.size(),
                                                 1),
                           bmvs::SpdMatrix::identity(1),
                           0.0,
                           {},
                           {},
                           report.kept_draws,
                           {}};
  bmvs::ModelIndex selected;
  selected.indices = report.selected;
  const bmvs::MetricsRow row = bmvs::evaluate(selected, truth, result);
  const nlohmann::json j = bmvs::metrics_to_json(row);
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) {
      throw bmvs::DataError("cannot open file for writing: " + out_path);
    }
    out << j.dump(2) << "\n";
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian multivariate variable selection"};
  app.require_subcommand(1);

  SimFlags sim_flags;
  std::string sim_out_dir = ".";
  CLI::App* sim = app.add_subcommand(
      "simulate", "Generate a simulation dataset with known truth");
  add_sim_flags(sim, sim_flags);
  sim->add_option("--out-dir", sim_out_dir, "Output directory")
      ->capture_default_str();
  sim->callback([&] { run_simulate(sim_flags, sim_out_dir); });

  std::string scr_x, scr_y;
  bool scr_genotype = false;
  double scr_maf = 0.05;
  std::int64_t scr_d = 200;
  int scr_threads = 1;
  std::string scr_out = "screen.json";
  CLI::App* scr =
      app.add_subcommand("screen", "Distance-correlation screening");
  scr->add_option("--x", scr_x, "Predictor CSV")->required();
  scr->add_option("--y", scr_y, "Response CSV")->required();
  scr->add_flag("--genotype", scr_genotype,
                "Treat X as genotype codes (0/1/2 or AA/Aa/aa)");
  scr->add_option("--maf", scr_maf, "Minor-allele-frequency cutoff")
      ->capture_default_str();
  scr->add_option("--d", scr_d, "Columns to keep")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scr->add_option("--threads", scr_threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scr->add_option("--out", scr_out, "Report path")->capture_default_str();
  scr->callback([&] {
    run_screen(scr_x, scr_y, scr_genotype, scr_maf, scr_d, scr_threads,
               scr_out);
  });

  std::string fit_x, fit_y;
  bool fit_genotype = false;
  double fit_maf = 0.05;
  std::optional<std::int64_t> fit_screen_d;
  ChainFlags fit_chain;
  HyperFlags fit_hyper;
  SelectFlags fit_select;
  std::string fit_out = "report.json";
  CLI::App* fit = app.add_subcommand("fit", "Run the Gibbs sampler");
  fit->set_config("--config", "",
                  "Read options from a key=value file (flags win)");
  fit->allow_config_extras(false);
  fit->add_option("--x", fit_x, "Predictor CSV")->required();
  fit->add_option("--y", fit_y, "Response CSV")->required();
  fit->add_flag("--genotype", fit_genotype,
                "Treat X as genotype codes (0/1/2 or AA/Aa/aa)");
  fit->add_option("--maf", fit_maf, "Minor-allele-frequency cutoff")
      ->capture_default_str();
  fit->add_option("--screen-d", fit_screen_d,
                  "Screen to this many columns first");
  add_chain_flags(fit, fit_chain);
  add_hyper_flags(fit, fit_hyper);
  add_select_flags(fit, fit_select);
  fit->add_option("--out", fit_out, "Report path")->capture_default_str();
  fit->callback([&] {
    run_fit(fit_x, fit_y, fit_genotype, fit_maf, fit_screen_d, fit_chain,
            fit_hyper, fit_select, fit_out);
  });

  SimFlags study_sim;
  int study_reps = 0;
  int study_threads = 1;
  std::optional<std::int64_t> study_screen_d;
  ChainFlags study_chain;
  HyperFlags study_hyper;
  SelectFlags study_select;
  std::string study_out = "metrics.json";
  CLI::App* study =
      app.add_subcommand("study", "Replicated simulation study");
  study->set_config("--config", "",
                    "Read options from a key=value file (flags win)");
  study->allow_config_extras(false);
  add_sim_flags(study, study_sim);
  study->add_option("--reps", study_reps, "Replicates")
      ->required()
      ->check(CLI::PositiveNumber);
  study->add_option("--threads", study_threads, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  study->add_option("--screen-d", study_screen_d,
                    "Screen to this many columns first");
  add_chain_flags(study, study_chain, /*with_seed=*/false);
  add_hyper_flags(study, study_hyper);
  add_select_flags(study, study_select);
  study->add_option("--out", study_out, "Metrics path")
      ->capture_default_str();
  study->callback([&] {
    run_study(study_sim, study_reps, study_threads, study_screen_d,
              study_chain, study_hyper, study_select, study_out);
  });

  std::string eval_report, eval_truth, eval_out;
  CLI::App* eval = app.add_subcommand(
      "evaluate", "Metrics for a fit report against a known truth");
  eval->add_option("--report", eval_report, "report.json path")->required();
  eval->add_option("--truth", eval_truth, "truth.json path")->required();
  eval->add_option("--out", eval_out, "Metrics row path (default: stdout)");
  eval->callback([&] { run_evaluate(eval_report, eval_truth, eval_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const bmvs::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bmvs::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
