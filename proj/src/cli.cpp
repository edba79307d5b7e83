#include "walkspectra/cli.hpp"

#include "walkspectra/analysis.hpp"
#include "walkspectra/group_oracle.hpp"
#include "walkspectra/limits.hpp"
#include "walkspectra/simulator.hpp"
#include "walkspectra/spectra.hpp"
#include "walkspectra/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace walkspectra {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_quote(const std::string& text) { return "\"" + text + "\""; }

// Resolved configuration of one run: the subcommand plus every option with
// its parsed or default value, in declaration order.
struct Metadata {
  std::string command;
  std::vector<std::pair<std::string, std::string>> options;

  void write_csv_header(std::ostream& os) const {
    os << "# command: " << command << "\n";
    os << "# version: " << kVersion << "\n";
    for (const auto& [name, value] : options) os << "# option " << name << "=" << value << "\n";
  }

  Json to_json() const {
    Json opts = Json::object();
    for (const auto& [name, value] : options) opts[name] = value;
    return Json{{"command", command}, {"version", kVersion}, {"options", opts}};
  }
};

Metadata collect_metadata(const CLI::App& parent, const CLI::App& sub) {
  Metadata meta;
  meta.command = sub.get_name();
  auto add_options = [&](const CLI::App& app) {
    for (const CLI::Option* opt : app.get_options()) {
      if (opt == app.get_help_ptr() || opt == app.get_version_ptr()) continue;
      std::string value;
      if (opt->count() > 0) {
        const auto& results = opt->results();
        for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
      } else {
        value = opt->get_default_str();
        if (value.empty()) value = "(unset)";
      }
      meta.options.emplace_back(opt->get_name(), value);
    }
  };
  add_options(parent);
  add_options(sub);
  return meta;
}

// Output sink: the --out file when given, otherwise the stream passed in.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream file(path);
  if (!file) throw std::invalid_argument("cannot open summary file '" + path + "'");
  file << doc.dump(2) << "\n";
}

std::vector<double> c_grid(const std::vector<double>& c_list, std::optional<double> from, std::optional<double> to,
                           std::optional<double> step) {
  if (!c_list.empty()) {
    if (from || to || step) throw std::invalid_argument("--c cannot be combined with --c-from/--c-to/--c-step");
    return c_list;
  }
  if (!from || !to || !step) throw std::invalid_argument("give either --c or all of --c-from, --c-to, --c-step");
  if (!(*step > 0.0)) throw std::invalid_argument("--c-step must be positive");
  if (*to < *from) throw std::invalid_argument("--c-to must not be below --c-from");
  const auto count = static_cast<long long>(std::floor((*to - *from) / *step + 1e-9)) + 1;
  std::vector<double> grid;
  for (long long i = 0; i < count; ++i) grid.push_back(*from + static_cast<double>(i) * *step);
  return grid;
}

// ---------------------------------------------------------------- spectrum

struct SpectrumOptions {
  std::string walk;
  int n = 0;
  std::string irrep;
  bool aggregate = false;
  std::string out;
  std::string format = "csv";
};

Json entries_json(const std::vector<SpectrumEntry>& entries) {
  Json list = Json::array();
  for (const SpectrumEntry& e : entries) {
    list.push_back({{"eigenvalue", e.eigenvalue.to_string()}, {"multiplicity", e.multiplicity.to_string()}});
  }
  return list;
}

int run_spectrum(const SpectrumOptions& o, const Metadata& meta, std::ostream& out) {
  const bool is_ag = o.walk == "ag";
  std::vector<IrrepSpectrum> per_irrep;
  std::vector<BlockSpectrum> blocks;
  std::vector<SpectrumEntry> aggregate;

  if (is_ag) {
    if (!o.irrep.empty()) throw std::invalid_argument("--irrep is not available for --walk ag");
    aggregate = ag_spectrum(o.n);
  } else {
    const Walk walk = parse_walk(o.walk);
    std::vector<IrrepLabel> labels;
    if (!o.irrep.empty()) {
      IrrepLabel label = parse_irrep(o.irrep);
      validate_label(label);
      if (label.shape.n() != o.n) throw std::invalid_argument("--irrep " + o.irrep + " is not a shape of " + std::to_string(o.n));
      labels.push_back(label);
    } else {
      labels = irreducible_labels(o.n);
    }
    for (const IrrepLabel& label : labels) {
      per_irrep.push_back(walk_spectrum(walk, label, o.n));
      if (walk == Walk::TPrime) blocks.push_back(tprime_blocks(label, o.n));
    }
    if (o.aggregate) aggregate = regular_spectrum_aggregate(walk, o.n);
  }

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  if (o.format == "json") {
    Json doc{{"metadata", meta.to_json()}};
    Json irreps = Json::array();
    for (std::size_t i = 0; i < per_irrep.size(); ++i) {
      const IrrepSpectrum& s = per_irrep[i];
      Json item{{"label", s.label.to_string()},
                {"shape", s.label.shape.to_string()},
                {"variant", to_string(s.label.variant)},
                {"dimension", irrep_dimension(s.label).str()},
                {"eigenvalues", entries_json(s.entries)}};
      if (!blocks.empty()) {
        Json block_list = Json::array();
        for (const Block& b : blocks[i].blocks) {
          block_list.push_back({{"a", b.a.to_string()},
                                {"b", b.b.to_string()},
                                {"kappa", b.kappa.to_string()},
                                {"multiplicity", b.multiplicity.to_string()}});
        }
        item["blocks"] = block_list;
      }
      irreps.push_back(item);
    }
    if (!is_ag) doc["irreps"] = irreps;
    if (is_ag || o.aggregate) doc["aggregate"] = entries_json(aggregate);
    os << doc.dump(2) << "\n";
    return kExitOk;
  }

  meta.write_csv_header(os);
  os << "shape,variant,eigenvalue_num,eigenvalue_den,multiplicity_or_log\n";
  for (const IrrepSpectrum& s : per_irrep) {
    for (const SpectrumEntry& e : s.entries) {
      os << csv_quote(s.label.shape.to_string()) << "," << to_string(s.label.variant) << "," << e.eigenvalue.num()
         << "," << e.eigenvalue.den() << "," << e.multiplicity.to_string() << "\n";
    }
  }
  for (const SpectrumEntry& e : aggregate) {
    os << csv_quote("*") << ",regular," << e.eigenvalue.num() << "," << e.eigenvalue.den() << ","
       << e.multiplicity.to_string() << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------- tv

struct TvOptions {
  std::string walk;
  int n = 0;
  int kmax = 0;
  std::string mode = "both";
  std::string out;
};

int run_tv(const TvOptions& o, const Metadata& meta, std::ostream& out) {
  const Walk walk = parse_walk(o.walk);
  if (o.kmax < 0) throw std::invalid_argument("--kmax must be >= 0");
  const bool want_exact = o.mode == "exact" || o.mode == "both";
  const bool want_bound = o.mode == "bound" || o.mode == "both";
  std::vector<double> exact;
  if (want_exact) {
    if (o.n > 9) throw std::invalid_argument("--mode exact requires --n <= 9");
    exact = exact_tv_curve(walk, o.n, o.kmax);
  }
  std::optional<SpectralBound> bound;
  if (want_bound) bound.emplace(walk, o.n);

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  meta.write_csv_header(os);
  os << "n,k,walk,quantity,value\n";
  for (int k = 0; k <= o.kmax; ++k) {
    if (want_exact) os << o.n << "," << k << "," << o.walk << ",exact_tv," << fmt(exact[static_cast<std::size_t>(k)]) << "\n";
    if (want_bound) os << o.n << "," << k << "," << o.walk << ",bound," << fmt(bound->at(k)) << "\n";
  }
  return kExitOk;
}

// ----------------------------------------------------------- profile/compare

void write_pair_rows(std::ostream& os, Pair pair, const std::vector<int>& n_list, const std::vector<double>& cs,
                     int split_m, int threads, TimeForm form) {
  const std::string tag = to_string(pair);
  for (int n : n_list) {
    std::vector<ComparisonConfig> configs;
    for (double c : cs) configs.push_back({pair, c, split_m});
    for (const ComparisonSum& s : comparison_sums(n, configs, threads, form)) {
      const std::string prefix = std::to_string(n) + "," + fmt(s.c) + "," + tag + ",";
      os << prefix << "k_first," << s.k_first << "\n";
      os << prefix << "k_second," << s.k_second << "\n";
      os << prefix << "sum," << fmt(s.sum) << "\n";
      os << prefix << "log_sum," << fmt(s.log_sum) << "\n";
      if (split_m > 0) {
        os << prefix << "sum1," << fmt(s.sum1) << "\n";
        os << prefix << "sum2," << fmt(s.sum2) << "\n";
      }
      os << prefix << "tv_difference_bound," << fmt(0.5 * std::sqrt(std::max(0.0, s.sum))) << "\n";
    }
  }
}

struct ProfileOptions {
  std::string walk;
  std::string pair;
  std::vector<int> n_list;
  std::vector<double> c_list;
  std::optional<double> c_from;
  std::optional<double> c_to;
  std::optional<double> c_step;
  std::string time_form = "shifted";
  bool exact = false;
  bool bound = false;
  int split_m = 0;
  std::string out;
};

int run_profile(const ProfileOptions& o, const Metadata& meta, int threads, std::ostream& out) {
  if (o.walk.empty() == o.pair.empty()) throw std::invalid_argument("give exactly one of --walk or --pair");
  if (o.n_list.empty()) throw std::invalid_argument("--n-list must not be empty");
  const std::vector<double> cs = c_grid(o.c_list, o.c_from, o.c_to, o.c_step);
  const TimeForm form = parse_time_form(o.time_form);
  if (o.split_m < 0) throw std::invalid_argument("--split-M must be >= 0");

  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  meta.write_csv_header(os);
  os << "n,c,walk_or_pair,quantity,value\n";
  if (!o.pair.empty()) {
    write_pair_rows(os, parse_pair(o.pair), o.n_list, cs, o.split_m, threads, form);
    return kExitOk;
  }
  const Walk walk = parse_walk(o.walk);
  for (int n : o.n_list) {
    if (o.exact && n > 9) throw std::invalid_argument("--exact requires every n <= 9");
    std::optional<SpectralBound> bound;
    if (o.bound) bound.emplace(walk, n);
    std::vector<double> curve;
    for (double c : cs) {
      const std::int64_t k = schedule(walk, n, c, form);
      const std::string prefix = std::to_string(n) + "," + fmt(c) + "," + o.walk + ",";
      os << prefix << "tau," << fmt(schedule_tau(walk, n, c, form)) << "\n";
      os << prefix << "steps," << k << "\n";
      os << prefix << "profile_f," << fmt(limit_profile_f(c)) << "\n";
      if (bound) os << prefix << "bound," << fmt(bound->at(k)) << "\n";
      if (o.exact) {
        if (static_cast<std::int64_t>(curve.size()) <= k) curve = exact_tv_curve(walk, n, static_cast<int>(k));
        os << prefix << "exact_tv," << fmt(curve[static_cast<std::size_t>(k)]) << "\n";
      }
    }
  }
  return kExitOk;
}

struct CompareOptions {
  std::string pair;
  std::vector<int> n_list;
  std::vector<double> c_list;
  int split_m = 0;
  std::string time_form = "shifted";
  std::string out;
};

int run_compare(const CompareOptions& o, const Metadata& meta, int threads, std::ostream& out) {
  if (o.split_m < 0) throw std::invalid_argument("--split-M must be >= 0");
  const Pair pair = parse_pair(o.pair);
  const TimeForm form = parse_time_form(o.time_form);
  Sink sink(o.out, out);
  std::ostream& os = sink.get();
  meta.write_csv_header(os);
  os << "n,c,walk_or_pair,quantity,value\n";
  write_pair_rows(os, pair, o.n_list, o.c_list, o.split_m, threads, form);
  return kExitOk;
}

// ------------------------------------------------------------------ oracle

struct OracleOptions {
  int n = 0;
  std::string check = "all";
  std::string out;
};

int run_oracle(const OracleOptions& o, const Metadata& meta, std::ostream& out) {
  const std::vector<CheckResult> results = run_oracle_checks(o.n, parse_oracle_check(o.check));
  bool ok = true;
  Json checks = Json::array();
  for (const CheckResult& r : results) {
    if (r.status == "fail") ok = false;
    checks.push_back({{"check_name", r.check_name},
                      {"n", r.n},
                      {"status", r.status},
                      {"max_residual", r.max_residual},
                      {"detail", r.detail}});
  }
  Json doc{{"metadata", meta.to_json()}, {"checks", checks}, {"all_passed", ok}};
  Sink sink(o.out, out);
  sink.get() << doc.dump(2) << "\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string experiment;
  int n = 0;
  std::int64_t trials = 1000;
  std::uint64_t seed = 42;
  std::optional<std::int64_t> steps;
  std::string walk = "tt2r";
  double c = 0.0;
  std::string out;
  std::string summary;
};

Json stats_json(const SummaryStats& s) {
  return Json{{"mean", s.mean},     {"variance", s.variance}, {"min", s.min},    {"max", s.max},
              {"q05", s.q05},       {"q25", s.q25},           {"median", s.median}, {"q75", s.q75},
              {"q95", s.q95}};
}

int run_simulate(const SimulateOptions& o, const Metadata& meta, std::ostream& out) {
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (o.steps && *o.steps < 0) throw std::invalid_argument("--steps must be >= 0");
  Json summary{{"metadata", meta.to_json()}};
  Sink sink(o.out, out);
  std::ostream& os = sink.get();

  if (o.experiment == "marking") {
    if (o.walk != "tt2r") throw std::invalid_argument("the marking experiment is defined for --walk tt2r only");
    const MarkingResult result = marking_experiment(o.n, o.trials, o.seed);
    meta.write_csv_header(os);
    os << "# statistic: low_position_marks\n";
    os << "trial,n,steps_or_completion,statistic\n";
    for (std::size_t t = 0; t < result.trials.size(); ++t) {
      os << t << "," << o.n << "," << result.trials[t].completion_steps << "," << result.trials[t].low_position_marks
         << "\n";
    }
    summary["completion"] = stats_json(result.completion);
    summary["normalized_mean"] = result.normalized_mean;
    summary["low_mark_rate"] = result.low_mark_rate;
    summary["low_mark_expected"] = result.low_mark_expected;
    summary["low_mark_std_error"] = result.low_mark_std_error;
    summary["all_monotone"] = result.all_monotone;
  } else if (o.experiment == "fixedpoints") {
    const SimWalk walk = parse_sim_walk(o.walk);
    std::int64_t steps = 0;
    if (o.steps) {
      steps = *o.steps;
    } else if (walk != SimWalk::Uniform) {
      steps = schedule(parse_walk(o.walk), o.n, o.c);
    }
    const std::vector<int> counts = fixed_point_samples(walk, o.n, steps, o.trials, o.seed);
    meta.write_csv_header(os);
    os << "# statistic: fixed_points\n";
    os << "trial,n,steps_or_completion,statistic\n";
    std::vector<std::int64_t> histogram(static_cast<std::size_t>(o.n) + 1, 0);
    std::vector<double> values;
    for (std::size_t t = 0; t < counts.size(); ++t) {
      os << t << "," << o.n << "," << steps << "," << counts[t] << "\n";
      ++histogram[static_cast<std::size_t>(counts[t])];
      values.push_back(counts[t]);
    }
    summary["steps"] = steps;
    summary["fixed_points"] = stats_json(summarize(values));
    summary["histogram"] = histogram;
    summary["tv_to_poisson_1"] = histogram_poisson_tv(histogram, 1.0);
    summary["tv_to_poisson_1_plus_exp_minus_c"] = histogram_poisson_tv(histogram, 1.0 + std::exp(-o.c));
  } else if (o.experiment == "empirical") {
    const Walk walk = parse_walk(o.walk);
    if (o.n > 9) throw std::invalid_argument("the empirical experiment requires --n <= 9");
    const std::int64_t steps = o.steps.value_or(8);
    const double gap = empirical_tv_gap(walk, o.n, static_cast<int>(steps), o.trials, o.seed);
    meta.write_csv_header(os);
    os << "# statistic: tv_gap_to_exact_convolution over all samples\n";
    os << "trial,n,steps_or_completion,statistic\n";
    os << "all," << o.n << "," << steps << "," << fmt(gap) << "\n";
    summary["steps"] = steps;
    summary["tv_gap"] = gap;
  } else {
    throw std::invalid_argument("unknown experiment '" + o.experiment + "'");
  }
  if (!o.summary.empty()) write_json_file(o.summary, summary);
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, comparison sums and simulations for random walks on the alternating group", "walkspectra"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1, 1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads for the comparison sums (0 = all cores)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  const std::vector<std::string> walks{"tt2r", "cycles3", "tprime"};
  const std::vector<std::string> pairs{"PQ", "PPprime"};
  const std::vector<std::string> forms{"shifted", "linear", "section4", "theorem1"};

  SpectrumOptions spec;
  auto* spectrum = app.add_subcommand("spectrum", "Closed-form eigenvalues per irreducible module");
  spectrum->add_option("--walk", spec.walk, "tt2r, cycles3, tprime or ag")
      ->required()
      ->check(CLI::IsMember({"tt2r", "cycles3", "tprime", "ag"}));
  spectrum->add_option("--n", spec.n, "Size of the deck")->required();
  spectrum->add_option("--irrep", spec.irrep, "Single module, e.g. (3,1) or (2,2)+");
  spectrum->add_flag("--aggregate", spec.aggregate, "Also emit the regular-representation multiset");
  spectrum->add_option("--out", spec.out, "Write to this file instead of standard output");
  spectrum->add_option("--format", spec.format, "csv or json")->capture_default_str()->check(CLI::IsMember({"csv", "json"}));

  TvOptions tv;
  auto* tv_cmd = app.add_subcommand("tv", "Exact total variation and the spectral upper bound");
  tv_cmd->add_option("--walk", tv.walk)->required()->check(CLI::IsMember(walks));
  tv_cmd->add_option("--n", tv.n)->required();
  tv_cmd->add_option("--kmax", tv.kmax)->required();
  tv_cmd->add_option("--mode", tv.mode)->capture_default_str()->check(CLI::IsMember({"exact", "bound", "both"}));
  tv_cmd->add_option("--out", tv.out);

  ProfileOptions prof;
  auto* profile = app.add_subcommand("profile", "Schedules, limit profile and comparison sums over a c-grid");
  auto* prof_walk = profile->add_option("--walk", prof.walk)->check(CLI::IsMember(walks));
  profile->add_option("--pair", prof.pair)->check(CLI::IsMember(pairs))->excludes(prof_walk);
  profile->add_option("--n-list", prof.n_list, "Comma-separated sizes")->required()->delimiter(',');
  auto* prof_c = profile->add_option("--c", prof.c_list, "Comma-separated window offsets")->delimiter(',');
  profile->add_option("--c-from", prof.c_from)->excludes(prof_c);
  profile->add_option("--c-to", prof.c_to)->excludes(prof_c);
  profile->add_option("--c-step", prof.c_step)->excludes(prof_c);
  profile->add_option("--time-form", prof.time_form)->capture_default_str()->check(CLI::IsMember(forms));
  profile->add_flag("--exact", prof.exact, "Add exact TV at the scheduled step (n <= 9)");
  profile->add_flag("--bound", prof.bound, "Add the spectral upper bound at the scheduled step");
  profile->add_option("--split-M", prof.split_m)->capture_default_str();
  profile->add_option("--out", prof.out);

  CompareOptions cmp;
  auto* compare = app.add_subcommand("compare", "Comparison sums for one pair");
  compare->add_option("--pair", cmp.pair)->required()->check(CLI::IsMember(pairs));
  compare->add_option("--n-list", cmp.n_list)->required()->delimiter(',');
  compare->add_option("--c", cmp.c_list)->required()->delimiter(',');
  compare->add_option("--split-M", cmp.split_m)->capture_default_str();
  compare->add_option("--time-form", cmp.time_form)->capture_default_str()->check(CLI::IsMember(forms));
  compare->add_option("--out", cmp.out);

  OracleOptions orc;
  auto* oracle = app.add_subcommand("oracle", "Closed forms against brute force; exit 1 on any failure");
  oracle->add_option("--n", orc.n)->required();
  oracle->add_option("--check", orc.check)
      ->capture_default_str()
      ->check(CLI::IsMember({"spectra", "plancherel", "algebra", "tv", "all"}));
  oracle->add_option("--out", orc.out);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiments");
  simulate->add_option("--experiment", sim.experiment)
      ->required()
      ->check(CLI::IsMember({"marking", "fixedpoints", "empirical"}));
  simulate->add_option("--n", sim.n)->required();
  simulate->add_option("--trials", sim.trials)->capture_default_str();
  simulate->add_option("--seed", sim.seed)->capture_default_str();
  simulate->add_option("--steps", sim.steps);
  simulate->add_option("--walk", sim.walk)
      ->capture_default_str()
      ->check(CLI::IsMember({"tt2r", "cycles3", "tprime", "uniform"}));
  simulate->add_option("--c", sim.c, "Window offset used when --steps is omitted")->capture_default_str();
  simulate->add_option("--out", sim.out);
  simulate->add_option("--summary", sim.summary, "Write summary statistics as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (spectrum->parsed()) return run_spectrum(spec, collect_metadata(app, *spectrum), out);
    if (tv_cmd->parsed()) return run_tv(tv, collect_metadata(app, *tv_cmd), out);
    if (profile->parsed()) return run_profile(prof, collect_metadata(app, *profile), threads, out);
    if (compare->parsed()) return run_compare(cmp, collect_metadata(app, *compare), threads, out);
    if (oracle->parsed()) return run_oracle(orc, collect_metadata(app, *oracle), out);
    if (simulate->parsed()) return run_simulate(sim, collect_metadata(app, *simulate), out);
  } catch (const std::exception& e) {
    // Bad values, unavailable closed forms, and resource guards are all
    // reported as usage errors.
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace walkspectra
