// erpclass: ingest ERP/EEG/demographic tables, rank features by entropy,
// train and cross-validate the three classifiers, run the feature ablation
// experiments, and synthesize calibration cohorts.
//
// Exit codes: 0 success, 1 data or runtime error, 2 usage error.
//
//   erpclass synth --n-hc 32 --n-sz 49 --effect-size 3 --seed 7 --out data/
//   erpclass evaluate --data data/ --all --out results/
//   erpclass ablate --data data/ --mode leave-one-out --plot-data --out ablation/

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "erpclass/ablation.hpp"
#include "erpclass/classifiers.hpp"
#include "erpclass/entropy.hpp"
#include "erpclass/error.hpp"
#include "erpclass/evaluation.hpp"
#include "erpclass/synthetic.hpp"
#include "erpclass/table_io.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace erpclass::cli {
namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct InputOptions {
  std::string data_dir;
  std::string erp;
  std::string eeg;
  std::string demo;

  DatasetPaths resolve() const {
    DatasetPaths p;
    if (!data_dir.empty()) p = DatasetPaths::in_directory(data_dir);
    if (!erp.empty()) p.erp = erp;
    if (!eeg.empty()) p.eeg = eeg;
    if (!demo.empty()) p.demographics = demo;
    if (p.erp.empty() || p.eeg.empty() || p.demographics.empty()) {
      throw CLI::ValidationError("inputs", "give --data DIR or all of --erp, --eeg, --demo");
    }
    return p;
  }
};

struct CommonOptions {
  std::uint64_t seed = 42;
  std::size_t bins = 10;
  std::string split = "trial";
  std::string scheme = "kfold:10";
  std::string model = "dt";
  std::string group = "all";
  bool no_standardize = false;
  std::string out = ".";
  std::size_t threads = 1;

  // Hyperparameters.
  std::string k = "auto";
  double C = 1.0;
  std::string gamma = "scale";
  double tolerance = 1e-3;
  std::size_t max_passes = 100;
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
};

DatasetGroup parse_group(const std::string& g) {
  if (g == "erp") return DatasetGroup::kErpOnly;
  if (g == "eeg-demo") return DatasetGroup::kEegDemographic;
  return DatasetGroup::kAll;
}

std::string group_flag(DatasetGroup g) {
  switch (g) {
    case DatasetGroup::kErpOnly: return "erp";
    case DatasetGroup::kEegDemographic: return "eeg-demo";
    case DatasetGroup::kAll: return "all";
  }
  return "all";
}

SplitPolicy make_policy(const CommonOptions& o) {
  SplitPolicy p;
  p.mode = o.split == "subject" ? SplitMode::kSubject : SplitMode::kTrial;
  p.seed = o.seed;
  const auto colon = o.scheme.find(':');
  const std::string kind = o.scheme.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : o.scheme.substr(colon + 1);
  try {
    if (kind == "kfold") {
      p.scheme = KFold{arg.empty() ? 10 : static_cast<std::size_t>(std::stoul(arg)), true};
    } else if (kind == "holdout") {
      p.scheme = Holdout{arg.empty() ? 0.2 : std::stod(arg)};
    } else {
      throw CLI::ValidationError("--scheme", "expected holdout:F or kfold:K, got " + o.scheme);
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("--scheme", "expected holdout:F or kfold:K, got " + o.scheme);
  }
  return p;
}

ModelSpec make_spec(const std::string& model, const CommonOptions& o) {
  ModelSpec spec;
  spec.standardize = !o.no_standardize;
  try {
    if (model == "dt") {
      TreeConfig c;
      if (o.max_depth > 0) c.max_depth = o.max_depth;
      c.min_samples_split = o.min_samples_split;
      spec.config = c;
    } else if (model == "knn") {
      KnnConfig c;
      if (o.k != "auto") c.k = static_cast<std::size_t>(std::stoul(o.k));
      spec.config = c;
    } else {
      SvmConfig c;
      c.C = o.C;
      if (o.gamma != "scale") c.gamma = std::stod(o.gamma);
      c.tolerance = o.tolerance;
      c.max_passes = o.max_passes;
      c.seed = o.seed;
      spec.config = c;
    }
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("model options", "non-numeric hyperparameter");
  }
  validate(spec.config);
  return spec;
}

std::vector<std::string> echo_args(int argc, char** argv) {
  std::vector<std::string> args{"erpclass"};
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return args;
}

FeatureMatrix load_inputs(const InputOptions& in, RunManifest& manifest) {
  const DatasetPaths paths = in.resolve();
  IngestStats stats;
  FeatureMatrix m = load_dataset(paths, &stats);
  manifest.add_input(paths.erp);
  manifest.add_input(paths.eeg);
  manifest.add_input(paths.demographics);
  manifest.add_config("ingest", {{"observation_rows", stats.observation_rows},
                                 {"dropped_missing", stats.dropped_missing},
                                 {"rows", m.rows()},
                                 {"columns", m.cols()}});
  if (stats.dropped_missing > 0) {
    std::cerr << "dropped " << stats.dropped_missing << " of " << stats.observation_rows
              << " rows with missing cells\n";
  }
  return m;
}

void add_common_configs(RunManifest& manifest, const ModelSpec& spec, const SplitPolicy& policy) {
  manifest.add_config("model", ordered_json::parse(model_spec_to_json(spec)));
  manifest.add_config("split", ordered_json::parse(split_policy_to_json(policy)));
}

// ---------------------------------------------------------------------------

int cmd_ingest_check(const InputOptions& in, const CommonOptions& o, RunManifest& manifest) {
  const DatasetPaths paths = in.resolve();
  std::vector<std::string> violations;
  std::optional<RawTable> erp, eeg, demo;
  auto try_load = [&](const fs::path& p, TableKind kind, std::optional<RawTable>& slot) {
    try {
      slot = load_table(p, kind);
      manifest.add_input(p);
    } catch (const Error& e) {
      violations.emplace_back(e.what());
    }
  };
  try_load(paths.erp, TableKind::kErpAverages, erp);
  try_load(paths.eeg, TableKind::kEegTrials, eeg);
  try_load(paths.demographics, TableKind::kDemographics, demo);

  ordered_json report;
  if (erp && eeg && demo) {
    try {
      IngestStats stats;
      const FeatureMatrix m = merge(*erp, *eeg, *demo, &stats);
      const auto sz = std::count(m.labels().begin(), m.labels().end(), Label::SZ);
      std::set<std::string> subjects(m.subject_ids().begin(), m.subject_ids().end());
      report["rows"] = m.rows();
      report["columns"] = m.cols();
      report["subjects"] = subjects.size();
      report["rows_sz"] = sz;
      report["rows_hc"] = static_cast<long>(m.rows()) - sz;
      report["observation_rows"] = stats.observation_rows;
      report["dropped_missing"] = stats.dropped_missing;
    } catch (const Error& e) {
      violations.emplace_back(e.what());
    }
  }
  report["violations"] = violations;
  manifest.write_output(o.out, "ingest_report.json", report.dump(2) + "\n");
  for (const auto& v : violations) std::cerr << "violation: " << v << '\n';
  if (violations.empty()) {
    std::cout << "ok: " << report["rows"] << " rows, " << report["columns"] << " columns, "
              << report["subjects"] << " subjects\n";
  }
  return violations.empty() ? 0 : kExitRuntime;
}

int cmd_rank(const InputOptions& in, const CommonOptions& o, RunManifest& manifest) {
  const FeatureMatrix m = select_group(load_inputs(in, manifest), parse_group(o.group));
  manifest.add_config("bins", {{"bin_count", o.bins}, {"strategy", "equal_width"}});
  manifest.write_output(o.out, "ranking.csv", ranking_to_csv(rank_features(m, {o.bins})));
  return 0;
}

int cmd_train(const InputOptions& in, const CommonOptions& o, RunManifest& manifest) {
  const FeatureMatrix m = select_group(load_inputs(in, manifest), parse_group(o.group));
  const ModelSpec spec = make_spec(o.model, o);
  manifest.add_config("model", ordered_json::parse(model_spec_to_json(spec)));
  manifest.write_output(o.out, "model.json", model_to_json(fit_model(m, spec)));
  return 0;
}

int cmd_evaluate(const InputOptions& in, const CommonOptions& o, bool all,
                 RunManifest& manifest) {
  const FeatureMatrix full = load_inputs(in, manifest);
  const SplitPolicy policy = make_policy(o);
  manifest.add_config("split", ordered_json::parse(split_policy_to_json(policy)));

  std::vector<std::pair<std::string, DatasetGroup>> cells;
  if (all) {
    for (const std::string model : {"svm", "dt", "knn"}) {
      for (DatasetGroup g :
           {DatasetGroup::kErpOnly, DatasetGroup::kEegDemographic, DatasetGroup::kAll}) {
        cells.emplace_back(model, g);
      }
    }
  } else {
    cells.emplace_back(o.model, parse_group(o.group));
  }

  std::string csv = eval_csv_header();
  std::vector<GridCell> grid;
  for (const auto& [model, group] : cells) {
    const ModelSpec spec = make_spec(model, o);
    manifest.add_config("model_" + model, ordered_json::parse(model_spec_to_json(spec)));
    const EvalResult r = evaluate(select_group(full, group), spec, policy, o.threads);
    csv += eval_to_csv_row(r, to_string(group));
    grid.push_back({model, group, r.accuracy});
    manifest.write_output(o.out, "eval_" + model + "_" + group_flag(group) + ".json",
                          eval_to_json(r));
    std::cout << model << ' ' << to_string(group) << ' ' << format_number(r.accuracy) << '\n';
  }
  manifest.write_output(o.out, "results.csv", csv);
  if (all) manifest.write_output(o.out, "results_grid.csv", results_grid_csv(grid));
  return 0;
}

int cmd_ablate(const InputOptions& in, const CommonOptions& o, const std::string& mode,
               bool plot_data, RunManifest& manifest) {
  const FeatureMatrix m = select_group(load_inputs(in, manifest), parse_group(o.group));
  const ModelSpec spec = make_spec(o.model, o);
  const SplitPolicy policy = make_policy(o);
  add_common_configs(manifest, spec, policy);
  const AblationReport report =
      mode == "leave-one-out"
          ? run_leave_one_out(m, spec, policy, o.threads)
          : run_entropy_incremental(m, spec, policy, BinningConfig{o.bins}, o.threads);
  const std::string stem = "ablation_" + std::string(to_string(report.mode));
  manifest.write_output(o.out, stem + ".csv", report_to_csv(report));
  manifest.write_output(o.out, stem + ".json", report_to_json(report));
  if (plot_data) manifest.write_output(o.out, stem + "_plot.csv", report_plot_data(report));
  std::cout << "baseline " << format_number(report.baseline_accuracy) << ", "
            << report.records.size() << " records\n";
  return 0;
}

int cmd_synth(const SynthConfig& cfg, const CommonOptions& o, RunManifest& manifest) {
  const SyntheticCohort cohort = generate(cfg);
  manifest.add_config("synth", ordered_json::parse(synth_config_to_json(cfg)));
  auto text = [](const RawTable& t) {
    std::ostringstream s;
    write_table(s, t);
    return s.str();
  };
  manifest.write_output(o.out, std::string(default_file_name(TableKind::kErpAverages)),
                        text(cohort.erp));
  manifest.write_output(o.out, std::string(default_file_name(TableKind::kEegTrials)),
                        text(cohort.eeg));
  manifest.write_output(o.out, std::string(default_file_name(TableKind::kDemographics)),
                        text(cohort.demographics));
  std::cout << "bayes_accuracy " << format_number(bayes_accuracy(cfg)) << '\n';
  return 0;
}

void add_input_flags(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--data", in.data_dir, "Directory holding the three canonical CSVs");
  cmd->add_option("--erp", in.erp, "ERP averages CSV");
  cmd->add_option("--eeg", in.eeg, "EEG trials CSV");
  cmd->add_option("--demo", in.demo, "Demographics CSV");
}

void add_common_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--seed", o.seed, "Seed for every random choice");
  cmd->add_option("--bins", o.bins, "Equal-width bins for entropy")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  cmd->add_option("--split", o.split, "Split unit")->check(CLI::IsMember({"trial", "subject"}));
  cmd->add_option("--scheme", o.scheme, "holdout:F or kfold:K");
  cmd->add_option("--model", o.model, "Classifier")->check(CLI::IsMember({"dt", "knn", "svm"}));
  cmd->add_option("--group", o.group, "Feature group")
      ->check(CLI::IsMember({"erp", "eeg-demo", "all"}));
  cmd->add_flag("--no-standardize", o.no_standardize, "Feed raw values to kNN and SVM");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--k", o.k, "kNN neighbours (odd) or auto");
  cmd->add_option("--C", o.C, "SVM box constraint");
  cmd->add_option("--gamma", o.gamma, "RBF gamma or scale");
  cmd->add_option("--tolerance", o.tolerance, "SVM stopping tolerance");
  cmd->add_option("--max-passes", o.max_passes, "SVM pass budget");
  cmd->add_option("--max-depth", o.max_depth, "Tree depth cap, 0 = unlimited");
  cmd->add_option("--min-samples-split", o.min_samples_split, "Tree minimum node size to split");
}

}  // namespace
}  // namespace erpclass::cli

int main(int argc, char** argv) {
  using namespace erpclass;
  using namespace erpclass::cli;

  CLI::App app{"ERP/EEG schizophrenia classification toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  app.option_defaults()->always_capture_default();

  InputOptions in;
  CommonOptions common;
  bool eval_all = false;
  std::string ablate_mode;
  bool plot_data = false;
  SynthConfig synth;

  auto* ingest = app.add_subcommand("ingest-check", "Validate and merge the three input tables");
  add_input_flags(ingest, in);
  add_common_flags(ingest, common);

  auto* rank = app.add_subcommand("rank", "Rank features by marginal entropy");
  add_input_flags(rank, in);
  add_common_flags(rank, common);

  auto* train = app.add_subcommand("train", "Fit one model on all rows and save it as JSON");
  add_input_flags(train, in);
  add_common_flags(train, common);

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Cross-validate model x group cells");
  add_input_flags(evaluate_cmd, in);
  add_common_flags(evaluate_cmd, common);
  evaluate_cmd->add_flag("--all", eval_all, "Run the full 3x3 model x group grid");

  auto* ablate = app.add_subcommand("ablate", "Feature ablation experiments");
  add_input_flags(ablate, in);
  add_common_flags(ablate, common);
  ablate->add_option("--mode", ablate_mode, "Ablation mode")
      ->required()
      ->check(CLI::IsMember({"leave-one-out", "entropy-incremental"}));
  ablate->add_flag("--plot-data", plot_data, "Also write (step, accuracy) pairs");

  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic two-class cohort");
  add_common_flags(synth_cmd, common);
  synth_cmd->add_option("--n-hc", synth.n_hc, "Healthy controls");
  synth_cmd->add_option("--n-sz", synth.n_sz, "Patients");
  synth_cmd->add_option("--effect-size", synth.effect_size, "N100 mean separation in SDs");
  synth_cmd->add_option("--trials", synth.trials_per_subject, "Rows per subject");
  synth_cmd->add_option("--n100-informative", synth.n100_informative,
                        "Number of N100 columns carrying the effect");
  synth_cmd->add_flag("--informative-noise", synth.noise_dims_informative,
                      "Give other ERP/raw columns a quarter-size effect");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  const auto* sub = app.get_subcommands().front();
  RunManifest manifest(sub->get_name(), echo_args(argc, argv));
  manifest.set_seed(common.seed);
  try {
    int rc = 0;
    if (sub == ingest) {
      rc = cmd_ingest_check(in, common, manifest);
    } else if (sub == rank) {
      rc = cmd_rank(in, common, manifest);
    } else if (sub == train) {
      rc = cmd_train(in, common, manifest);
    } else if (sub == evaluate_cmd) {
      rc = cmd_evaluate(in, common, eval_all, manifest);
    } else if (sub == ablate) {
      rc = cmd_ablate(in, common, ablate_mode, plot_data, manifest);
    } else {
      synth.seed = common.seed;
      rc = cmd_synth(synth, common, manifest);
    }
    manifest.finish(common.out);
    return rc;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << sub->help();
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
