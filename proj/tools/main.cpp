// multigroup: command-line front end for the multi-group learners.
//
// Subcommands: fit, tune, experiment, dp-audit, bounds. Every invocation
// writes a manifest with the fully resolved configuration next to its
// outputs; feeding that manifest back through --config reproduces the run.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"

#include "multigroup/dp/audit.hpp"
#include "multigroup/experiments/generators.hpp"
#include "multigroup/experiments/scenario.hpp"
#include "multigroup/experiments/tune.hpp"
#include "multigroup/io/csv.hpp"
#include "multigroup/io/svg.hpp"
#include "multigroup/learners/learners.hpp"
#include "multigroup/learners/sleeping.hpp"
#include "multigroup/ops.hpp"
#include "multigroup/rng.hpp"
#include "multigroup/theory/theory.hpp"
#include "multigroup/version.hpp"

namespace fs = std::filesystem;
using namespace multigroup;
using json = nlohmann::json;

namespace {

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("MULTIGROUP_THREADS")) {
    const int want = std::atoi(env);
    if (want >= 1) omp_set_num_threads(std::min(want, omp_get_max_threads()));
  }
#endif
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty numeric list: " + csv);
  return out;
}

std::vector<std::string> parse_name_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

// Manifest = resolved subcommand configuration in flat key=value form under
// the subcommand's section header; `multigroup --config <manifest>` replays
// the run (command-line flags override manifest values).
void write_manifest(CLI::App* sub, const std::string& dir,
                    const std::string& prefix,
                    const std::vector<std::string>& outputs) {
  std::ofstream f(out_path(dir, prefix + "_manifest.txt"));
  f << "# multigroup " << MULTIGROUP_VERSION << "\n";
  for (const auto& o : outputs) f << "# output: " << o << "\n";
  f << "[" << sub->get_name() << "]\n";
  f << sub->config_to_str(true, false);
}

core::BoundedLoss loss_from_flags(const std::string& name, double scale) {
  return core::BoundedLoss::from_name(name, scale);
}

core::HypothesisClass hypotheses_for_data(const core::Dataset& d, double step) {
  double lo = d.y(0), hi = d.y(0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    lo = std::min(lo, d.y(i));
    hi = std::max(hi, d.y(i));
  }
  lo = std::floor(lo / step) * step;
  hi = std::ceil(hi / step) * step;
  return core::HypothesisClass::constant_grid(lo, hi, step);
}

json chain_to_json(const core::UpdateChain& chain) {
  json j;
  j["base"] = {{"id", chain.base.id}};
  if (chain.base.value) j["base"]["value"] = *chain.base.value;
  j["updates"] = json::array();
  for (const auto& u : chain.updates) {
    json ju;
    ju["eta"] = u.eta;
    ju["group"] = {{"id", u.group.id}};
    if (u.group.interval) {
      ju["group"]["lo"] = u.group.interval->lo;
      ju["group"]["hi"] = u.group.interval->hi;
    }
    ju["hyp"] = {{"id", u.hyp.id}};
    if (u.hyp.value) ju["hyp"]["value"] = *u.hyp.value;
    j["updates"].push_back(ju);
  }
  return j;
}

// Shared fit/tune inputs.
struct DataFlags {
  std::string data_file;
  std::string groups_file;
  double center_step = 0.05;
  double length_step = 0.05;
  double hyp_step = 0.1;
  std::string loss_name = "squared";
  double loss_scale = 1.0;
};

void add_data_flags(CLI::App* sub, DataFlags& df) {
  sub->add_option("--data", df.data_file, "dataset CSV (features..., y)")
      ->required();
  sub->add_option("--groups", df.groups_file,
                  "interval groups CSV (id,lo,hi); default: the interval "
                  "grid on [0,1]");
  sub->add_option("--center-step", df.center_step, "interval grid center step");
  sub->add_option("--length-step", df.length_step, "interval grid length step");
  sub->add_option("--hyp-step", df.hyp_step,
                  "constant-hypothesis grid step over the label range");
  sub->add_option("--loss", df.loss_name, "squared | absolute | zero_one");
  sub->add_option("--loss-scale", df.loss_scale,
                  "scale keeping squared/absolute losses in [0,1]");
}

struct LoadedProblem {
  core::Dataset data;
  core::GroupFamily groups;
  core::HypothesisClass hyps;
  core::BoundedLoss loss;
};

LoadedProblem load_problem(const DataFlags& df) {
  core::Dataset data = io::read_dataset_csv(df.data_file);
  core::GroupFamily groups =
      df.groups_file.empty()
          ? experiments::interval_grid_groups(df.center_step, df.length_step)
          : io::read_groups_csv(df.groups_file);
  core::HypothesisClass hyps = hypotheses_for_data(data, df.hyp_step);
  return {std::move(data), std::move(groups), std::move(hyps),
          loss_from_flags(df.loss_name, df.loss_scale)};
}

// Deterministic train/val split for `tune` when no --val-data is given.
std::pair<core::Dataset, core::Dataset> split_dataset(const core::Dataset& d,
                                                      double val_frac,
                                                      std::uint64_t seed) {
  const std::size_t n = d.size();
  auto n_val = static_cast<std::size_t>(std::floor(val_frac * n));
  n_val = std::max<std::size_t>(1, std::min(n_val, n - 1));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  util::Rng rng(seed ^ 0x5eedf00dULL);
  rng.shuffle(idx);

  const auto take = [&](std::size_t from, std::size_t to) {
    std::vector<double> xs, ys;
    for (std::size_t k = from; k < to; ++k) {
      for (double v : d.x(idx[k])) xs.push_back(v);
      ys.push_back(d.y(idx[k]));
    }
    return core::Dataset(std::move(xs), std::move(ys), d.dim());
  };
  return {take(n_val, n), take(0, n_val)};
}

// ---- fit -------------------------------------------------------------------

struct FitFlags {
  DataFlags df;
  std::string method = "group_prepend";
  double lambda = 0.0;
  double sigma = 0.0;
  double eta = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double learning_rate = 4.0;
  std::uint64_t seed = 1;
  std::size_t max_iters = 0;
  std::string out_dir = ".";
  std::string prefix = "fit";
};

int run_fit(const FitFlags& ff, CLI::App* sub) {
  const LoadedProblem p = load_problem(ff.df);
  learners::LearnerConfig cfg;
  cfg.lambda = ff.lambda;
  cfg.sigma = ff.sigma;
  cfg.eta = ff.eta;
  cfg.epsilon = ff.epsilon;
  cfg.delta = ff.delta;
  cfg.learning_rate = ff.learning_rate;
  cfg.seed = ff.seed;
  cfg.max_iters = ff.max_iters;

  const auto method = learners::method_from_name(ff.method);
  std::vector<std::string> outputs;

  json dump;
  dump["version"] = MULTIGROUP_VERSION;
  dump["method"] = ff.method;
  dump["seed"] = ff.seed;

  if (method == learners::Method::SleepingExpert) {
    const auto res =
        learners::sleeping_expert(p.data, p.groups, p.hyps, p.loss, cfg);
    dump["alpha"] = res.trace.alpha;
    const std::string pred =
        out_path(ff.out_dir, ff.prefix + "_predictor.json");
    std::ofstream(pred) << dump.dump(2) << "\n";
    const std::string trace = out_path(ff.out_dir, ff.prefix + "_trace.csv");
    io::write_trace_csv(trace, res.trace);
    outputs = {pred, trace};
  } else {
    learners::FitResult res;
    try {
      res = learners::fit(method, p.data, p.groups, p.hyps, p.loss, cfg);
    } catch (const learners::LearnerError& e) {
      // Surface the partial trace before failing: it is the evidence.
      io::write_trace_csv(out_path(ff.out_dir, ff.prefix + "_trace.csv"),
                          e.partial_trace);
      throw std::runtime_error(std::string(e.what()) + " (partial trace with " +
                               std::to_string(e.partial_trace.num_updates) +
                               " updates written)");
    }
    dump["alpha"] = res.trace.alpha;
    dump["num_updates"] = res.trace.num_updates;
    dump["chain"] = chain_to_json(res.chain);
    const std::string pred =
        out_path(ff.out_dir, ff.prefix + "_predictor.json");
    std::ofstream(pred) << dump.dump(2) << "\n";
    const std::string trace = out_path(ff.out_dir, ff.prefix + "_trace.csv");
    io::write_trace_csv(trace, res.trace);
    const std::string cert =
        out_path(ff.out_dir, ff.prefix + "_certificate.txt");
    std::ofstream(cert) << theory::format_report(
        theory::certify_trace(res.trace, cfg));
    outputs = {pred, trace, cert};
    std::cout << "method=" << ff.method << " updates=" << res.trace.num_updates
              << " alpha=" << res.trace.alpha << "\n";
  }

  write_manifest(sub, ff.out_dir, ff.prefix, outputs);
  return 0;
}

// ---- tune ------------------------------------------------------------------

struct TuneFlags {
  DataFlags df;
  std::string val_file;
  double val_frac = 0.25;
  std::string method = "group_prepend";
  std::string lambda_grid = "0.005,0.01,0.02,0.05,0.1";
  std::string sigma_grid = "0";
  std::string eta_grid = "1";
  std::string rate_grid = "4";
  std::string criterion = "total_loss";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string prefix = "tune";
};

int run_tune(const TuneFlags& tf, CLI::App* sub) {
  const LoadedProblem p = load_problem(tf.df);

  core::Dataset train = p.data;
  core::Dataset val = p.data;
  if (tf.val_file.empty()) {
    auto [tr, va] = split_dataset(p.data, tf.val_frac, tf.seed);
    train = std::move(tr);
    val = std::move(va);
  } else {
    val = io::read_dataset_csv(tf.val_file);
  }

  const auto grid = experiments::make_grid(
      parse_double_list(tf.lambda_grid), parse_double_list(tf.sigma_grid),
      parse_double_list(tf.eta_grid), parse_double_list(tf.rate_grid));
  const auto out = experiments::tune(
      train, val, learners::method_from_name(tf.method), grid,
      experiments::criterion_from_name(tf.criterion), p.loss, tf.seed,
      p.groups, p.hyps);

  const std::string table = out_path(tf.out_dir, tf.prefix + "_table.csv");
  io::write_tune_csv(table, out.table);

  std::cout << "best index=" << out.best_index << " lambda=" << out.best.lambda
            << " sigma=" << out.best.sigma << " eta=" << out.best.eta
            << " rate=" << out.best.learning_rate
            << " val_total=" << out.table[out.best_index].val_total
            << " val_worst=" << out.table[out.best_index].val_worst << "\n";

  write_manifest(sub, tf.out_dir, tf.prefix, {table});
  return 0;
}

// ---- experiment ------------------------------------------------------------

struct ExperimentFlags {
  std::string scenario;
  std::size_t runs = 0;  // 0: preset
  std::size_t n = 0;
  std::size_t n_val = 0;
  std::size_t n_test = 0;
  double noise = -1.0;
  std::uint64_t seed = 1;
  std::string methods;    // comma list; empty: preset
  std::string criterion;  // empty: preset (both for criterion_selection)
  bool large = false;
  bool plot_fit = false;
  std::string out_dir = ".";
  std::string prefix;
};

void plot_fits(const experiments::ScenarioConfig& cfg,
               const std::string& out_dir, const std::string& prefix,
               std::vector<std::string>& outputs) {
  // Refit run 0 per method at its tuned point and plot against the truth.
  const auto train = experiments::make_instance(
      cfg, cfg.n_train, experiments::train_seed(cfg, 0), false);
  const auto val = experiments::make_instance(
      cfg, cfg.n_val, experiments::val_seed(cfg, 0), false);
  const auto hyps = experiments::scenario_hypotheses(cfg);
  const auto target = experiments::spatial_target();

  for (const auto& spec : cfg.methods) {
    const auto tuned =
        experiments::tune(train.data, val.data, spec.method, spec.grid,
                          cfg.criterion, cfg.loss(), cfg.seed, train.groups,
                          hyps);
    io::XySeries truth{"target", {}, true, "#ff7f0e"};
    io::XySeries fitln{"prediction", {}, true, "#1f77b4"};
    for (double x = 0.0; x <= 1.0; x += 0.002) {
      const std::vector<double> xv{x};
      truth.points.emplace_back(x, target(x));
      fitln.points.emplace_back(x, tuned.predictor(xv));
    }
    io::XySeries obs{"observations", {}, false, "#7f7f7f"};
    for (std::size_t i = 0; i < train.data.size(); ++i) {
      obs.points.emplace_back(train.data.x(i)[0], train.data.y(i));
    }
    const std::string name =
        prefix + "_fit_" + learners::method_name(spec.method) + ".svg";
    const std::string path = out_path(out_dir, name);
    io::write_xy_svg(path, learners::method_name(spec.method), "x", "y",
                     {obs, truth, fitln});
    outputs.push_back(path);
  }
}

int run_experiment(const ExperimentFlags& ef, CLI::App* sub) {
  const auto scenario = experiments::scenario_from_name(ef.scenario);
  experiments::ScenarioConfig cfg =
      (scenario == experiments::Scenario::CriterionSelection && ef.large)
          ? experiments::preset_criterion_large()
          : experiments::preset(scenario);
  if (ef.runs > 0) cfg.runs = ef.runs;
  if (ef.n > 0) cfg.n_train = ef.n;
  if (ef.n_val > 0) cfg.n_val = ef.n_val;
  if (ef.n_test > 0) cfg.n_test = ef.n_test;
  if (ef.noise >= 0.0) cfg.noise_sd = ef.noise;
  cfg.seed = ef.seed;

  if (!ef.methods.empty()) {
    std::vector<experiments::MethodSpec> picked;
    for (const auto& name : parse_name_list(ef.methods)) {
      const auto m = learners::method_from_name(name);
      bool found = false;
      for (const auto& spec : cfg.methods) {
        if (spec.method == m) {
          picked.push_back(spec);
          found = true;
        }
      }
      if (!found) {
        throw CLI::ValidationError("method not in this scenario's preset: " +
                                   name);
      }
    }
    cfg.methods = std::move(picked);
  }

  std::vector<experiments::Criterion> criteria;
  if (!ef.criterion.empty()) {
    criteria.push_back(experiments::criterion_from_name(ef.criterion));
  } else if (scenario == experiments::Scenario::CriterionSelection) {
    criteria = {experiments::Criterion::TotalLoss,
                experiments::Criterion::WorstGroupLoss};
  } else {
    criteria.push_back(cfg.criterion);
  }

  const std::string prefix = ef.prefix.empty() ? ef.scenario : ef.prefix;
  std::vector<std::string> outputs;
  std::vector<experiments::RunRow> all_rows;

  for (const auto crit : criteria) {
    cfg.criterion = crit;
    const auto result = experiments::run_scenario(cfg);
    all_rows.insert(all_rows.end(), result.rows.begin(), result.rows.end());

    const std::string tag =
        criteria.size() > 1 ? "_" + experiments::criterion_name(crit) : "";
    const std::string agg_path =
        out_path(ef.out_dir, prefix + tag + "_aggregates.csv");
    io::write_aggregates_csv(agg_path, result.aggregates);
    outputs.push_back(agg_path);

    std::vector<io::ErrorBarEntry> total_bars, worst_bars;
    for (const auto& a : result.aggregates) {
      total_bars.push_back({a.method, a.total_mean, a.total_se});
      worst_bars.push_back({a.method, a.worst_mean, a.worst_se});
    }
    const std::string svg_total =
        out_path(ef.out_dir, prefix + tag + "_total_loss.svg");
    const std::string svg_worst =
        out_path(ef.out_dir, prefix + tag + "_worst_group_loss.svg");
    io::write_error_bar_svg(svg_total,
                            ef.scenario + tag + ": total loss (mean +/- SE)",
                            "total loss", total_bars);
    io::write_error_bar_svg(
        svg_worst, ef.scenario + tag + ": worst-group loss (mean +/- SE)",
        "worst-group loss", worst_bars);
    outputs.push_back(svg_total);
    outputs.push_back(svg_worst);

    for (const auto& a : result.aggregates) {
      std::cout << prefix << tag << " " << a.method << ": total "
                << a.total_mean << " +/- " << a.total_se << ", worst "
                << a.worst_mean << " +/- " << a.worst_se << "\n";
    }
  }

  const std::string rows_path = out_path(ef.out_dir, prefix + "_rows.csv");
  io::write_rows_csv(rows_path, all_rows);
  outputs.insert(outputs.begin(), rows_path);

  if (ef.plot_fit) {
    if (scenario != experiments::Scenario::Spatial &&
        scenario != experiments::Scenario::FractionalAblation) {
      throw CLI::ValidationError("--plot-fit needs a spatial-style scenario");
    }
    cfg.criterion = criteria.front();
    plot_fits(cfg, ef.out_dir, prefix, outputs);
  }

  write_manifest(sub, ef.out_dir, prefix, outputs);
  return 0;
}

// ---- dp-audit ----------------------------------------------------------------

struct AuditFlags {
  std::size_t n = 8;
  std::size_t trials = 100000;
  double lambda = 0.3;
  double beta = 0.05;
  std::uint64_t seed = 1;
  std::size_t max_events = 24;
  std::size_t max_len = 12;
  std::string out_dir = ".";
  std::string prefix = "dp_audit";
};

int run_dp_audit(const AuditFlags& af, CLI::App* sub) {
  // Tiny fixed instance: x on a grid, two halves as groups, two constants.
  std::vector<double> xs(af.n), ys(af.n);
  for (std::size_t i = 0; i < af.n; ++i) {
    xs[i] = af.n == 1
                ? 0.0
                : static_cast<double>(i) / static_cast<double>(af.n - 1);
    ys[i] = i % 2 == 0 ? 0.25 : 0.75;
  }
  const auto d = core::Dataset::univariate(std::move(xs), std::move(ys));
  const auto dprime = d.with_record(0, d.x(0), 0.9);  // one label changed

  core::GroupFamily fam;
  fam.groups.push_back(core::Group::interval_group(0, 0.0, 0.5));
  fam.groups.push_back(core::Group::interval_group(1, 0.5, 1.0));
  const auto hyps =
      core::HypothesisClass::constants(std::vector<double>{0.25, 0.75});
  const auto loss = core::BoundedLoss::clamped_squared(1.0);

  // Noise scale from the analysis recipe at this instance size; the
  // threshold stays a free knob so crossings actually happen at tiny n.
  const auto recipe =
      theory::recipe_shaky(af.n, fam.size(), hyps.size(), af.beta);
  learners::LearnerConfig mech_cfg;
  mech_cfg.lambda = af.lambda;
  mech_cfg.sigma = recipe.sigma;

  const dp::MechanismRunner runner = [&](const core::Dataset& data,
                                         std::uint64_t seed) {
    learners::LearnerConfig c = mech_cfg;
    c.seed = seed;
    return learners::shaky_transcript(data, fam, hyps, loss, c);
  };

  // alpha on D drives the theory envelope eps * sqrt(2 alpha / lambda).
  const auto& h0 = core::erm(d, hyps, loss);
  const double alpha =
      core::conditional_loss(d, h0.predict, loss, core::Group::all(0));
  const double envelope = recipe.epsilon * std::sqrt(2.0 * alpha / af.lambda);

  auto events = dp::collect_prefix_events(
      runner, d, 16, af.seed + 0x10000000ULL, af.max_len, af.max_events);
  const auto results = dp::empirical_privacy_audit(runner, d, dprime, events,
                                                   af.trials, af.seed);
  // sanity row: identical datasets must sit at ratio zero
  const auto self = dp::empirical_privacy_audit(runner, d, d, events.front(),
                                                af.trials / 10, af.seed);

  std::size_t within = 0;
  std::ostringstream table;
  table << "event,p_d,p_dprime,lo_d,hi_d,lo_dprime,hi_dprime,ln_ratio,"
           "ln_ratio_conservative,envelope,within_envelope\n";
  for (const auto& r : results) {
    const bool ok = r.ln_ratio_conservative <= envelope;
    within += ok;
    table << r.event << "," << io::format_double(r.p_d) << ","
          << io::format_double(r.p_dprime) << "," << io::format_double(r.lo_d)
          << "," << io::format_double(r.hi_d) << ","
          << io::format_double(r.lo_dprime) << ","
          << io::format_double(r.hi_dprime) << ","
          << io::format_double(r.ln_ratio) << ","
          << io::format_double(r.ln_ratio_conservative) << ","
          << io::format_double(envelope) << "," << (ok ? 1 : 0) << "\n";
  }

  const std::string csv = out_path(af.out_dir, af.prefix + ".csv");
  std::ofstream(csv) << table.str();

  std::cout << "n=" << af.n << " lambda=" << af.lambda
            << " sigma=" << recipe.sigma << " epsilon=" << recipe.epsilon
            << " alpha=" << alpha << " envelope=" << envelope << "\n"
            << "self-audit ln_ratio=" << self.ln_ratio << " (expected 0)\n"
            << "events within envelope: " << within << "/" << results.size()
            << "\n"
            << table.str();

  write_manifest(sub, af.out_dir, af.prefix, {csv});
  return 0;
}

// ---- bounds ------------------------------------------------------------------

struct BoundsFlags {
  std::size_t n = 1000;
  std::size_t groups = 10;
  std::size_t hyps = 10;
  double beta = 0.05;
  double delta = 0.05;
  std::size_t count = 0;  // member count for the width table; 0 = skip
  std::string out_dir;
  std::string prefix = "bounds";
};

int run_bounds(const BoundsFlags& bf, CLI::App* sub) {
  const auto p = theory::recipe_shaky(bf.n, bf.groups, bf.hyps, bf.beta);
  const auto gp =
      theory::recipe_group_prepend(bf.n, bf.groups, bf.hyps, bf.delta);

  std::ostringstream os;
  os << "inputs: n=" << bf.n << " groups=" << bf.groups << " hyps=" << bf.hyps
     << " beta=" << bf.beta << " delta=" << bf.delta << "\n"
     << "shaky recipe:\n"
     << "  epsilon        " << io::format_double(p.epsilon) << "\n"
     << "  delta          " << io::format_double(p.delta) << "\n"
     << "  lambda         " << io::format_double(p.lambda) << "\n"
     << "  lambda_simple  " << io::format_double(p.lambda_simple) << "\n"
     << "  sigma          " << io::format_double(p.sigma) << "\n"
     << "  envelope       " << io::format_double(p.envelope)
     << "   (x 1/P_n(g))\n"
     << "group-prepend recipe:\n"
     << "  lambda         " << io::format_double(gp.lambda) << "\n"
     << "  envelope       " << io::format_double(gp.envelope)
     << "   (x 1/sqrt(P_n(g)))\n";
  if (bf.count > 0) {
    const auto w =
        theory::bound_width(bf.n, bf.count, bf.groups, bf.hyps, bf.delta);
    os << "uniform-convergence width at member count " << bf.count << ": "
       << io::format_double(w.width) << (w.vacuous ? " (vacuous)" : "")
       << "\n";
  }
  std::cout << os.str();

  if (!bf.out_dir.empty()) {
    const std::string path = out_path(bf.out_dir, bf.prefix + ".txt");
    std::ofstream(path) << os.str();
    write_manifest(sub, bf.out_dir, bf.prefix, {path});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"multi-group learning toolkit"};
  app.set_version_flag("--version", MULTIGROUP_VERSION);
  app.option_defaults()->always_capture_default(true);
  app.set_config("--config", "",
                 "replay a run from a manifest (flags take precedence)");
  app.require_subcommand(1);

  FitFlags ff;
  auto* fit = app.add_subcommand("fit", "fit one learner on a dataset file");
  fit->configurable(true);
  add_data_flags(fit, ff.df);
  fit->add_option("--method", ff.method,
                  "prepend | group_prepend | shaky_prepend | "
                  "fractional_prepend | fractional_group_prepend | "
                  "fractional_shaky_prepend | sleeping_expert");
  fit->add_option("--lambda", ff.lambda, "error bound / threshold")
      ->required();
  fit->add_option("--sigma", ff.sigma, "noise scale (shaky)");
  fit->add_option("--eta", ff.eta, "step size (fractional)");
  fit->add_option("--epsilon", ff.epsilon,
                  "privacy epsilon (fractional shaky)");
  fit->add_option("--delta", ff.delta, "privacy delta (fractional shaky)");
  fit->add_option("--rate", ff.learning_rate,
                  "learning rate (sleeping expert)");
  fit->add_option("--seed", ff.seed, "rng seed");
  fit->add_option("--max-iters", ff.max_iters, "update cap (0 = default)");
  fit->add_option("--out-dir", ff.out_dir, "output directory");
  fit->add_option("--prefix", ff.prefix, "output file prefix");

  TuneFlags tf;
  auto* tune = app.add_subcommand("tune", "grid-tune one learner");
  tune->configurable(true);
  add_data_flags(tune, tf.df);
  tune->add_option("--val-data", tf.val_file, "validation CSV");
  tune->add_option("--val-frac", tf.val_frac,
                   "validation fraction when splitting --data");
  tune->add_option("--method", tf.method, "learner to tune");
  tune->add_option("--lambda-grid", tf.lambda_grid, "comma list");
  tune->add_option("--sigma-grid", tf.sigma_grid, "comma list");
  tune->add_option("--eta-grid", tf.eta_grid, "comma list");
  tune->add_option("--rate-grid", tf.rate_grid, "comma list");
  tune->add_option("--criterion", tf.criterion,
                   "total_loss | worst_group_loss");
  tune->add_option("--seed", tf.seed, "rng seed");
  tune->add_option("--out-dir", tf.out_dir, "output directory");
  tune->add_option("--prefix", tf.prefix, "output file prefix");

  ExperimentFlags ef;
  auto* exp = app.add_subcommand("experiment", "run a simulation study");
  exp->configurable(true);
  exp->add_option("scenario", ef.scenario,
                  "criterion_selection | unbalanced | spatial | "
                  "fractional_ablation")
      ->required();
  exp->add_option("--runs", ef.runs, "independent runs (0 = preset)");
  exp->add_option("--n", ef.n, "training points per run (0 = preset)");
  exp->add_option("--n-val", ef.n_val, "validation points per run");
  exp->add_option("--n-test", ef.n_test, "fixed test set size");
  exp->add_option("--noise", ef.noise, "observation noise sd (-1 = preset)");
  exp->add_option("--seed", ef.seed, "base seed");
  exp->add_option("--methods", ef.methods, "comma list; default preset");
  exp->add_option("--criterion", ef.criterion,
                  "tuning criterion; default preset (criterion_selection "
                  "runs both)");
  exp->add_flag("--large", ef.large,
                "criterion_selection: 26,000-point preset");
  exp->add_flag("--plot-fit", ef.plot_fit,
                "also plot predictions against the target (spatial)");
  exp->add_option("--out-dir", ef.out_dir, "output directory");
  exp->add_option("--prefix", ef.prefix, "output file prefix");

  AuditFlags af;
  auto* aud = app.add_subcommand(
      "dp-audit", "Monte-Carlo privacy audit on a tiny neighbor pair");
  aud->configurable(true);
  aud->add_option("--n", af.n, "records in the audited dataset")
      ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  aud->add_option("--trials", af.trials, "Monte-Carlo trials per dataset")
      ->check(CLI::Range(std::size_t{1000}, std::size_t{100000000}));
  aud->add_option("--lambda", af.lambda, "mechanism threshold");
  aud->add_option("--beta", af.beta, "recipe confidence parameter");
  aud->add_option("--seed", af.seed, "base seed");
  aud->add_option("--events", af.max_events, "max prefix events");
  aud->add_option("--max-len", af.max_len, "max prefix length");
  aud->add_option("--out-dir", af.out_dir, "output directory");
  aud->add_option("--prefix", af.prefix, "output file prefix");

  BoundsFlags bf;
  auto* bounds = app.add_subcommand(
      "bounds", "print analysis-recommended parameters and widths");
  bounds->configurable(true);
  bounds->add_option("--n", bf.n, "sample size")->required();
  bounds->add_option("--groups", bf.groups, "number of groups")->required();
  bounds->add_option("--hyps", bf.hyps, "number of hypotheses")->required();
  bounds->add_option("--beta", bf.beta, "confidence parameter");
  bounds->add_option("--delta", bf.delta,
                     "confidence parameter (width / group-prepend)");
  bounds->add_option("--count", bf.count,
                     "group member count for the width table");
  bounds->add_option("--out-dir", bf.out_dir,
                     "also write a text report here");
  bounds->add_option("--prefix", bf.prefix, "output file prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  try {
    if (fit->parsed()) return run_fit(ff, fit);
    if (tune->parsed()) return run_tune(tf, tune);
    if (exp->parsed()) return run_experiment(ef, exp);
    if (aud->parsed()) return run_dp_audit(af, aud);
    if (bounds->parsed()) return run_bounds(bf, bounds);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
