// wavecorr command-line front end: file ingestion, transforms,
// correlograms, covariance decomposition and simulation, with CSV/JSON
// output meant for external plotting.
//
// Exit codes: 0 success (possibly with per-level warnings on stderr),
// 1 data or numeric error, 2 usage error.

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wavecorr/wavecorr.hpp"

namespace fs = std::filesystem;
using namespace wavecorr;
using io::JsonValue;

namespace {

Scheme scheme_from_flag(const std::string& s) {
  if (s == "dwt") return Scheme::orthogonal;
  if (s == "ndwt") return Scheme::nondecimated;
  throw InvalidInputError("unknown scheme '" + s + "'; use dwt or ndwt");
}

JsonValue row_json(const LevelEstimate& row) {
  JsonValue o = JsonValue::object();
  if (row.estimate)
    o.set("estimate", *row.estimate);
  else
    o.set("estimate", nullptr);
  if (row.interval) {
    o.set("lower", row.interval->lower);
    o.set("upper", row.interval->upper);
    o.set("method", to_string(row.interval->method));
  } else {
    o.set("lower", nullptr);
    o.set("upper", nullptr);
    o.set("method", nullptr);
  }
  o.set("status", row.status);
  o.set("note", row.note);
  return o;
}

JsonValue correlogram_json(const Correlogram& cg, std::size_t runs) {
  JsonValue obj = JsonValue::object();
  obj.set("type", "wavecorr.correlogram");
  obj.set("version", 1);
  obj.set("measure", to_string(cg.measure));
  obj.set("scheme", to_string(cg.scheme));
  obj.set("wavelet", cg.wavelet);
  obj.set("levels", cg.L);
  obj.set("n", cg.n);
  obj.set("alpha", cg.alpha);
  obj.set("runs", runs);
  JsonValue controls = JsonValue::array();
  for (const auto& c : cg.controls) controls.push(c);
  obj.set("controls", std::move(controls));
  JsonValue rows = JsonValue::array();
  for (const auto& row : cg.rows) {
    JsonValue full = JsonValue::object();
    full.set("level", row.label);
    full.set("n_eff", row.n_eff);
    full.set("estimate", row.estimate ? JsonValue(*row.estimate) : JsonValue(nullptr));
    full.set("lower", row.interval ? JsonValue(row.interval->lower) : JsonValue(nullptr));
    full.set("upper", row.interval ? JsonValue(row.interval->upper) : JsonValue(nullptr));
    full.set("method",
             row.interval ? JsonValue(to_string(row.interval->method)) : JsonValue(nullptr));
    full.set("status", row.status);
    full.set("note", row.note);
    rows.push(std::move(full));
  }
  obj.set("rows", std::move(rows));
  return obj;
}

std::string correlogram_csv(const Correlogram& cg) {
  std::string out = "level,estimate,lower,upper,n_eff,status\n";
  for (const auto& row : cg.rows) {
    out += row.label;
    out += ',';
    if (row.estimate) out += io::fmt17(*row.estimate);
    out += ',';
    if (row.interval) out += io::fmt17(row.interval->lower);
    out += ',';
    if (row.interval) out += io::fmt17(row.interval->upper);
    out += ',';
    out += std::to_string(row.n_eff);
    out += ',';
    out += row.status;
    out += '\n';
  }
  return out;
}

void warn_degenerate(const Correlogram& cg, const std::string& what) {
  for (const auto& row : cg.rows)
    if (row.status != "ok")
      std::cerr << "warning: " << what << " level " << row.label << ": " << row.note << "\n";
}

// ---------------------------------------------------------------- transform

struct TransformArgs {
  std::string input;
  std::string wavelet = "haar";
  int levels = 0;
  std::string scheme = "dwt";
  std::string out;
};

void run_transform(const TransformArgs& args) {
  const auto series = io::read_series_csv(args.input);
  const FilterBank fb = get_filter(args.wavelet);
  const Scheme scheme = scheme_from_flag(args.scheme);
  const Decomposition1D dec = scheme == Scheme::orthogonal
                                  ? dwt_forward(series, fb, args.levels)
                                  : ndwt_forward(series, fb, args.levels);

  JsonValue obj = JsonValue::object();
  obj.set("type", "wavecorr.coefficients");
  obj.set("version", 1);
  obj.set("scheme", to_string(dec.scheme));
  obj.set("wavelet", fb.name);
  obj.set("n", dec.n);
  obj.set("levels", dec.L);
  JsonValue subs = JsonValue::array();
  auto emit = [&](const std::string& label, const std::vector<double>& v) {
    JsonValue s = JsonValue::object();
    s.set("label", label);
    s.set("length", v.size());
    JsonValue vals = JsonValue::array();
    for (double x : v) vals.push(x);
    s.set("values", std::move(vals));
    subs.push(std::move(s));

    double energy = 0.0;
    for (double x : v) energy += x * x;
    std::printf("level %-7s length %6zu  energy %s\n", label.c_str(), v.size(),
                io::fmt17(energy).c_str());
  };
  emit("smooth", dec.smooth);
  for (std::size_t i = 0; i < dec.details.size(); ++i)
    emit("d" + std::to_string(dec.L - static_cast<int>(i)), dec.details[i]);
  obj.set("subvectors", std::move(subs));
  io::atomic_write_file(args.out, obj.dump());
}

// ---------------------------------------------------------------- correlate

struct CorrelateArgs {
  std::vector<std::string> series;
  std::vector<std::string> controls;
  std::string wavelet = "haar";
  int levels = 0;
  std::string scheme = "dwt";
  std::string measure = "pearson";
  double alpha = 0.05;
  std::size_t bc_threshold = 30;
  std::string out;
  std::string csv;
};

void run_correlate(const CorrelateArgs& args) {
  if (args.series.size() < 2) throw InvalidInputError("correlate: need two series files");
  const auto x = io::read_series_csv(args.series[0]);
  const auto y = io::read_series_csv(args.series[1]);
  std::vector<std::string> control_paths(args.series.begin() + 2, args.series.end());
  control_paths.insert(control_paths.end(), args.controls.begin(), args.controls.end());
  std::vector<std::vector<double>> controls;
  for (const auto& p : control_paths) controls.push_back(io::read_series_csv(p));

  const FilterBank fb = get_filter(args.wavelet);
  CorrelogramOptions opts;
  opts.alpha = args.alpha;
  opts.bias_correction_threshold = args.bc_threshold;
  const Correlogram cg =
      correlogram(x, y, fb, args.levels, scheme_from_flag(args.scheme),
                  measure_from_string(args.measure), opts, controls, control_paths);
  warn_degenerate(cg, "correlate");
  io::atomic_write_file(args.out, correlogram_json(cg, 1).dump());
  if (!args.csv.empty()) io::atomic_write_file(args.csv, correlogram_csv(cg));
  std::printf("wrote %s (%zu levels)\n", args.out.c_str(), cg.rows.size());
}

// -------------------------------------------------------------- correlate2d

struct Correlate2dArgs {
  std::vector<std::string> images;
  std::string control;
  std::string manifest;
  std::string wavelet = "coif6";
  int levels = 5;
  std::string scheme = "ndwt";
  std::string measure = "pearson";
  double alpha = 0.05;
  std::string out;
  std::string csv;
};

struct DayResult {
  Correlogram corr;
  std::optional<Correlogram> partial;
};

DayResult correlate_one_day(const fs::path& a_path, const fs::path& b_path,
                            const std::optional<fs::path>& c_path, const Correlate2dArgs& args) {
  const Matrix a = io::read_matrix_csv(a_path);
  const Matrix b = io::read_matrix_csv(b_path);
  const FilterBank fb = get_filter(args.wavelet);
  const Scheme scheme = scheme_from_flag(args.scheme);
  const Measure measure = measure_from_string(args.measure);
  CorrelogramOptions opts;
  opts.alpha = args.alpha;

  DayResult day;
  day.corr = correlogram2d(a, b, fb, args.levels, scheme, measure, opts);
  if (c_path) {
    const Matrix c = io::read_matrix_csv(*c_path);
    day.partial = correlogram2d(a, b, fb, args.levels, scheme, measure, opts, {c},
                                {c_path->string()});
  }
  return day;
}

void run_correlate2d(const Correlate2dArgs& args) {
  std::vector<std::array<std::optional<fs::path>, 3>> days;
  if (!args.manifest.empty()) {
    if (!args.images.empty())
      throw InvalidInputError("correlate2d: give either image files or --average, not both");
    std::ifstream in(args.manifest);
    if (!in) throw io::IoError("cannot open manifest: " + args.manifest);
    const fs::path base = fs::path(args.manifest).parent_path();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      const auto fields = io::detail::split_csv_line(line);
      if (fields.size() != 2 && fields.size() != 3)
        throw io::IoError(args.manifest + ":" + std::to_string(lineno) +
                          ": expected 2 or 3 paths per line");
      std::array<std::optional<fs::path>, 3> day;
      for (std::size_t i = 0; i < fields.size(); ++i)
        day[i] = base / fs::path(fields[i]);
      days.push_back(day);
    }
    if (days.empty()) throw io::IoError(args.manifest + ": empty manifest");
  } else {
    if (args.images.size() < 2 || args.images.size() > 3)
      throw InvalidInputError("correlate2d: need two or three image files (third is the control)");
    std::array<std::optional<fs::path>, 3> day;
    day[0] = args.images[0];
    day[1] = args.images[1];
    if (args.images.size() == 3) day[2] = args.images[2];
    if (!args.control.empty()) {
      if (day[2]) throw InvalidInputError("correlate2d: control given twice");
      day[2] = args.control;
    }
    days.push_back(day);
  }

  std::vector<Correlogram> corr_runs;
  std::vector<Correlogram> partial_runs;
  const bool has_control = days.front()[2].has_value();
  for (const auto& day : days) {
    if (day[2].has_value() != has_control)
      throw InvalidInputError("correlate2d: control must be present on every manifest line or none");
    const DayResult res = correlate_one_day(*day[0], *day[1], day[2], args);
    corr_runs.push_back(res.corr);
    if (res.partial) partial_runs.push_back(*res.partial);
  }

  Correlogram corr = corr_runs.size() == 1 ? corr_runs.front() : average_correlogram(corr_runs);
  std::optional<Correlogram> partial;
  if (has_control)
    partial = partial_runs.size() == 1 ? partial_runs.front() : average_correlogram(partial_runs);
  warn_degenerate(corr, "correlate2d");
  if (partial) warn_degenerate(*partial, "correlate2d partial");

  JsonValue obj = JsonValue::object();
  obj.set("type", "wavecorr.correlogram2d");
  obj.set("version", 1);
  obj.set("measure", to_string(corr.measure));
  obj.set("scheme", to_string(corr.scheme));
  obj.set("wavelet", corr.wavelet);
  obj.set("levels", corr.L);
  obj.set("n", corr.n);
  obj.set("alpha", corr.alpha);
  obj.set("runs", days.size());
  JsonValue rows = JsonValue::array();
  for (std::size_t i = 0; i < corr.rows.size(); ++i) {
    JsonValue r = JsonValue::object();
    r.set("level", corr.rows[i].label);
    r.set("n_eff", corr.rows[i].n_eff);
    r.set("corr", row_json(corr.rows[i]));
    r.set("partial_corr", partial ? row_json(partial->rows[i]) : JsonValue(nullptr));
    rows.push(std::move(r));
  }
  obj.set("rows", std::move(rows));
  io::atomic_write_file(args.out, obj.dump());

  if (!args.csv.empty()) {
    std::string out =
        "level,corr_estimate,corr_lower,corr_upper,corr_status,"
        "partial_estimate,partial_lower,partial_upper,partial_status,n_eff\n";
    auto cell = [&](const LevelEstimate& row) {
      std::string s;
      if (row.estimate) s += io::fmt17(*row.estimate);
      s += ',';
      if (row.interval) s += io::fmt17(row.interval->lower);
      s += ',';
      if (row.interval) s += io::fmt17(row.interval->upper);
      s += ',';
      s += row.status;
      return s;
    };
    for (std::size_t i = 0; i < corr.rows.size(); ++i) {
      out += corr.rows[i].label;
      out += ',';
      out += cell(corr.rows[i]);
      out += ',';
      if (partial)
        out += cell(partial->rows[i]);
      else
        out += ",,,";
      out += ',';
      out += std::to_string(corr.rows[i].n_eff);
      out += '\n';
    }
    io::atomic_write_file(args.csv, out);
  }
  std::printf("wrote %s (%zu levels, %zu run%s)\n", args.out.c_str(), corr.rows.size(),
              days.size(), days.size() == 1 ? "" : "s");
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
  int system = 0;
  std::size_t n = 512;
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;
  std::string out_dir = ".";
};

void run_simulate(const SimulateArgs& args) {
  ARSystem cfg;
  cfg.system_id = args.system;
  cfg.n = args.n;
  cfg.seed = args.seed;
  cfg.burn_in = args.burn_in;
  const auto [x, y] = simulate_ar_pair(cfg);

  const fs::path dir(args.out_dir);
  fs::create_directories(dir);
  io::atomic_write_file(dir / "x.csv", io::series_to_csv(x));
  io::atomic_write_file(dir / "y.csv", io::series_to_csv(y));

  JsonValue meta = JsonValue::object();
  meta.set("type", "wavecorr.simulation");
  meta.set("version", 1);
  meta.set("system", cfg.system_id);
  meta.set("n", cfg.n);
  meta.set("seed", static_cast<std::int64_t>(cfg.seed));
  meta.set("burn_in", cfg.burn_in);
  meta.set("generator", generator_identity());
  meta.set("y_seed_rule", "seed xor 0x9E3779B97F4A7C15");
  JsonValue files = JsonValue::object();
  files.set("x", "x.csv");
  files.set("y", "y.csv");
  meta.set("files", std::move(files));
  io::atomic_write_file(dir / "meta.json", meta.dump());
  std::printf("wrote %s/{x.csv,y.csv,meta.json} (system %d, n %zu, seed %llu)\n",
              args.out_dir.c_str(), cfg.system_id, cfg.n,
              static_cast<unsigned long long>(cfg.seed));
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
  std::vector<std::string> series;
  std::string wavelet = "haar";
  int levels = 0;
  std::string out;
};

void run_decompose(const DecomposeArgs& args) {
  const auto x = io::read_series_csv(args.series[0]);
  const auto y = io::read_series_csv(args.series[1]);
  const ScaleDecomposition sd = scale_decomposition(x, y, get_filter(args.wavelet), args.levels);

  std::string out = "level,weight,level_correlation,weighted_contribution\n";
  for (const auto& row : sd.rows) {
    out += row.label;
    out += ',';
    out += io::fmt17(row.weight);
    out += ',';
    out += io::fmt17(row.correlation);
    out += ',';
    out += io::fmt17(row.contribution);
    out += '\n';
  }
  out += "weight_sum," + io::fmt17(sd.weight_sum) + "\n";
  out += "recovered_rho," + io::fmt17(sd.recovered_correlation) + "\n";
  out += "direct_rho," + io::fmt17(sd.direct_correlation) + "\n";
  io::atomic_write_file(args.out, out);
  std::printf("wrote %s (recovered rho %s, direct rho %s)\n", args.out.c_str(),
              io::fmt17(sd.recovered_correlation).c_str(),
              io::fmt17(sd.direct_correlation).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-resolved dependence analysis of signals and images"};
  app.require_subcommand(1);

  TransformArgs targs;
  CLI::App* transform = app.add_subcommand("transform", "wavelet-transform one series");
  transform->add_option("--input", targs.input, "single-column CSV series")->required();
  transform->add_option("--wavelet", targs.wavelet, "haar|db4|la8|coif6");
  transform->add_option("--levels", targs.levels, "decomposition depth")->required();
  transform->add_option("--scheme", targs.scheme, "dwt|ndwt")
      ->check(CLI::IsMember({"dwt", "ndwt"}));
  transform->add_option("--out", targs.out, "coefficient JSON path")->required();

  CorrelateArgs cargs;
  CLI::App* correlate =
      app.add_subcommand("correlate", "levelwise correlogram of two series");
  correlate->add_option("series", cargs.series, "x.csv y.csv [controls...]")
      ->required()
      ->expected(2, -1);
  correlate->add_option("--control", cargs.controls, "control series (repeatable)");
  correlate->add_option("--wavelet", cargs.wavelet, "haar|db4|la8|coif6");
  correlate->add_option("--levels", cargs.levels, "decomposition depth")->required();
  correlate->add_option("--scheme", cargs.scheme, "dwt|ndwt")
      ->check(CLI::IsMember({"dwt", "ndwt"}));
  correlate->add_option("--measure", cargs.measure, "pearson|kendall|blomqvist")
      ->check(CLI::IsMember({"pearson", "kendall", "blomqvist"}));
  correlate->add_option("--alpha", cargs.alpha, "confidence complement (default 0.05)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  correlate->add_option("--fisher-bc-threshold", cargs.bc_threshold,
                        "bias-correct Fisher CIs below this level size (0 = never)");
  correlate->add_option("--out", cargs.out, "correlogram JSON path")->required();
  correlate->add_option("--csv", cargs.csv, "also write CSV table here");

  Correlate2dArgs iargs;
  CLI::App* correlate2d =
      app.add_subcommand("correlate2d", "levelwise correlogram of two images");
  correlate2d->add_option("images", iargs.images, "a.csv b.csv [control.csv]")->expected(0, 3);
  correlate2d->add_option("--control", iargs.control, "control image");
  correlate2d->add_option("--average", iargs.manifest,
                          "manifest of per-day image pairs/triples to average");
  correlate2d->add_option("--wavelet", iargs.wavelet, "haar|db4|la8|coif6 (default coif6)");
  correlate2d->add_option("--levels", iargs.levels, "decomposition depth (default 5)");
  correlate2d->add_option("--scheme", iargs.scheme, "dwt|ndwt (default ndwt)")
      ->check(CLI::IsMember({"dwt", "ndwt"}));
  correlate2d->add_option("--measure", iargs.measure, "pearson|kendall|blomqvist")
      ->check(CLI::IsMember({"pearson", "kendall", "blomqvist"}));
  correlate2d->add_option("--alpha", iargs.alpha, "confidence complement (default 0.05)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  correlate2d->add_option("--out", iargs.out, "correlogram JSON path")->required();
  correlate2d->add_option("--csv", iargs.csv, "also write CSV table here");

  SimulateArgs sargs;
  CLI::App* simulate = app.add_subcommand("simulate", "generate a coupled AR(1) pair");
  simulate->add_option("--system", sargs.system, "1 or 2")->required()
      ->check(CLI::IsMember({1, 2}));
  simulate->add_option("--n", sargs.n, "series length (default 512)");
  simulate->add_option("--seed", sargs.seed, "generator seed")->required();
  simulate->add_option("--burn-in", sargs.burn_in, "discarded warmup samples (default 1000)");
  simulate->add_option("--out-dir", sargs.out_dir, "output directory (default .)");

  DecomposeArgs dargs;
  CLI::App* decompose =
      app.add_subcommand("decompose", "exact cross-scale covariance decomposition");
  decompose->add_option("series", dargs.series, "x.csv y.csv")->required()->expected(2);
  decompose->add_option("--wavelet", dargs.wavelet, "haar|db4|la8|coif6");
  decompose->add_option("--levels", dargs.levels, "decomposition depth")->required();
  decompose->add_option("--out", dargs.out, "decomposition CSV path")->required();

  try {
    app.parse(argc, argv);
    if (*transform) run_transform(targs);
    if (*correlate) run_correlate(cargs);
    if (*correlate2d) run_correlate2d(iargs);
    if (*simulate) run_simulate(sargs);
    if (*decompose) run_decompose(dargs);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
