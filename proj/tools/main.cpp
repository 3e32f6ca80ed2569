// Batch front end: stability thresholds, decay traces and plots for the
// porous channel, written as CSV/JSON/SVG files.
//
// Exit codes: 0 success, 2 usage error, 3 failed property check,
// 4 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/cache.hpp"
#include "brinkstab/config.hpp"
#include "brinkstab/csvio.hpp"
#include "brinkstab/energystab.hpp"
#include "brinkstab/errors.hpp"
#include "brinkstab/evolve.hpp"
#include "brinkstab/jsonio.hpp"
#include "brinkstab/linstab.hpp"
#include "brinkstab/parallel.hpp"
#include "brinkstab/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace brinkstab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitAssert = 3;
constexpr int kExitNumerical = 4;

void write_text(const std::string& path, const std::string& text) {
  if (!path.empty()) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string cell;
  std::istringstream is(text);
  while (std::getline(is, cell, ',')) {
    if (cell.empty()) continue;
    try {
      out.push_back(std::stod(cell));
    } catch (...) {
      throw UsageError(std::string(what) + ": bad number '" + cell + "'");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

json config_echo(const Config& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.items()) j[k] = v;
  return j;
}

// ---------------------------------------------------------------- baseflow
int cmd_baseflow(const Config& cfg) {
  if (!cfg.has("M")) throw UsageError("baseflow: --M is required");
  const double M = cfg.get_double("M", 0.0);
  const int N = cfg.get_int("N", 65);
  const std::string out = cfg.get_string("out", "profile.csv");
  const SpectralGrid g = build_grid(N);
  std::vector<double> nodes(g.nodes.data(), g.nodes.data() + g.N);
  write_text(out, profile_table_csv(profile_table(M, nodes)));
  std::printf("baseflow: wrote %s (M=%g, N=%d)\n", out.c_str(), M, N);
  return kExitOk;
}

// ---------------------------------------------------------------- critical
json critical_payload(const CriticalPoint& cp) {
  json p;
  p["critical_point"] = json::parse(jsonio::critical_point_json(cp));
  return p;
}

int cmd_critical(const Config& cfg) {
  if (!cfg.has("M")) throw UsageError("critical: --M is required");
  const std::string kind_name = cfg.get_string("kind", "linear");
  const ProblemKind kind = parse_problem_kind(kind_name);
  if (kind != ProblemKind::linear && kind != ProblemKind::energy_spanwise) {
    throw UsageError("critical: kind must be 'linear' or 'energy'");
  }
  const std::vector<double> Ms = cfg.get_list("M");
  if (Ms.empty()) throw UsageError("critical: --M list is empty");
  const int N = cfg.get_int("N", 0);
  const std::string outdir = cfg.get_string("out", "results");
  const bool reuse = cfg.get_string("cache", "reuse") == "reuse";
  ResultCache cache(cfg.get_string("cache-dir", ""));

  fs::create_directories(outdir);
  std::vector<CriticalPoint> points(Ms.size());
  std::vector<std::string> records(Ms.size());

  for (std::size_t i = 0; i < Ms.size(); ++i) {
    Config keycfg;
    keycfg.set("cmd", "critical");
    keycfg.set("kind", kind_name);
    keycfg.set("M", csv::format(Ms[i]));
    keycfg.set("N", std::to_string(N));
    const std::string key = keycfg.canonical();
    if (reuse && cache.enabled()) {
      if (auto hit = cache.lookup(key)) {
        records[i] = *hit;
        const json j = json::parse(*hit);
        const json& cp = j["payload"]["critical_point"];
        points[i] = {parse_problem_kind(cp["kind"].get<std::string>()),
                     cp["M"].get<double>(), cp["a_c"].get<double>(),
                     cp["R_c"].get<double>(), cp["N"].get<int>(),
                     cp.value("convergence", 0.0), cp["converged"].get<bool>()};
        continue;
      }
    }
    CriticalPoint cp;
    if (kind == ProblemKind::linear) {
      CriticalSearch s;
      if (N > 0) s.N = N;
      cp = critical_point_linear(Ms[i], s);
    } else {
      EnergyCriticalSearch s;
      if (N > 0) s.N = N;
      cp = critical_point_energy_spanwise(Ms[i], s);
    }
    points[i] = cp;
    records[i] = jsonio::result_record("critical_point", config_echo(cfg).dump(),
                                       critical_payload(cp).dump());
    cache.store(key, records[i]);
  }

  std::ostringstream summary;
  summary << "kind,M,a_c,R_c,N,converged\n";
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const auto& cp = points[i];
    const std::string rec_path =
        (fs::path(outdir) / ("critical_" + kind_name + "_M" + csv::format(cp.M) + ".json")).string();
    write_text(rec_path, records[i]);
    summary << to_string(cp.kind) << ',' << csv::format(cp.M) << ',' << csv::format(cp.a_c)
            << ',' << csv::format(cp.R_c) << ',' << cp.grid_order << ','
            << (cp.converged ? "1" : "0") << '\n';
  }
  const std::string sum_path = (fs::path(outdir) / ("critical_" + kind_name + ".csv")).string();
  write_text(sum_path, summary.str());
  std::printf("critical: wrote %s (%zu point%s)\n", sum_path.c_str(), Ms.size(),
              Ms.size() == 1 ? "" : "s");

  if (cfg.get_bool("neutral-curve", false)) {
    if (kind != ProblemKind::linear) {
      throw UsageError("critical: --neutral-curve applies to kind=linear");
    }
    std::ostringstream all;
    all << "M,a,Re_neutral\n";
    for (std::size_t i = 0; i < Ms.size(); ++i) {
      NeutralSearch ns;
      ns.N = N > 0 ? N : default_linear_order(Ms[i]);
      std::vector<double> avals;
      const double a0 = points[i].a_c;
      for (int k = -8; k <= 8; ++k) avals.push_back(a0 * std::pow(1.12, k));
      for (const auto& np : neutral_curve(Ms[i], avals, ns)) {
        all << csv::format(np.M) << ',' << csv::format(np.a) << ',' << csv::format(np.Re)
            << '\n';
      }
    }
    const std::string nc_path = (fs::path(outdir) / "neutral_curve.csv").string();
    write_text(nc_path, all.str());
    std::printf("critical: wrote %s\n", nc_path.c_str());
  }
  return kExitOk;
}

// ------------------------------------------------------------ squire-check
int cmd_squire_check(const Config& cfg) {
  const double M = cfg.get_double("M", 0.0);
  const int N = cfg.get_int("N", 48);
  std::vector<double> a_grid, b_grid;
  if (cfg.has("a-grid")) {
    a_grid = cfg.get_list("a-grid");
  } else {
    for (double a = 0.5; a <= 4.01; a += 0.5) a_grid.push_back(a);
  }
  if (cfg.has("b-grid")) {
    b_grid = cfg.get_list("b-grid");
  } else {
    b_grid = {0.0, 0.5, 1.0, 2.0};
  }
  const std::string outdir = cfg.get_string("out", "results");
  fs::create_directories(outdir);

  const SquireReport rep = verify_squire_energy(M, a_grid, b_grid, N);
  const std::string table_path =
      (fs::path(outdir) / ("squire_M" + csv::format(M) + ".csv")).string();
  write_text(table_path, squire_table_csv(rep));

  json payload;
  payload["squire"] = {{"passed", rep.passed}, {"max_m", rep.max_m},
                       {"max_a", rep.max_a},   {"max_b", rep.max_b},
                       {"cells", static_cast<int>(rep.table.size())}};
  const std::string rec = jsonio::result_record("squire_check", config_echo(cfg).dump(),
                                                payload.dump());
  write_text((fs::path(outdir) / ("squire_M" + csv::format(M) + ".json")).string(), rec);

  if (!rep.passed) {
    std::fprintf(stderr,
                 "squire-check: FAILED, maximum off the b=0 axis at (a=%g, b=%g)\n",
                 rep.offending_a, rep.offending_b);
    return kExitAssert;
  }
  std::printf("squire-check: PASSED, max m=%.9g at a=%g on b=0 (table %s)\n", rep.max_m,
              rep.max_a, table_path.c_str());
  return kExitOk;
}

// ----------------------------------------------------------------- evolve
int cmd_evolve(const Config& cfg) {
  EvolveConfig ec;
  ec.M = cfg.get_double("M", 0.0);
  ec.a = cfg.get_double("a", 2.0);
  ec.N = cfg.get_int("N", 48);
  ec.dt = cfg.get_double("dt", 1e-3);
  ec.T = cfg.get_double("T", 5.0);
  ec.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  ec.ic = parse_initial_condition(cfg.get_string("ic", "optimal"));
  ec.known_R_E = cfg.get_double("R_E", 0.0);
  if (cfg.has("R")) {
    ec.R = cfg.get_double("R", 0.0);
  } else if (cfg.has("R-factor")) {
    // R as a multiple of the energy threshold at this M
    double re = ec.known_R_E;
    if (!(re > 0.0)) {
      EnergyCriticalSearch es;
      es.N = ec.N;
      re = critical_point_energy_spanwise(ec.M, es).R_c;
      ec.known_R_E = re;
    }
    ec.R = cfg.get_double("R-factor", 0.9) * re;
  } else {
    throw UsageError("evolve: provide --R or --R-factor");
  }

  const std::string outdir = cfg.get_string("out", "results");
  fs::create_directories(outdir);
  const EnergyTrace tr = energy_trace(ec);
  const std::string csv_path = (fs::path(outdir) / "trace.csv").string();
  write_text(csv_path, energy_trace_csv(tr));

  json payload;
  payload["trace"] = {{"monotone", tr.monotone},
                      {"under_envelope", tr.under_envelope},
                      {"envelope_valid", tr.envelope_valid},
                      {"R_E", tr.R_E},
                      {"samples", static_cast<int>(tr.t.size())}};
  write_text((fs::path(outdir) / "trace_manifest.json").string(),
             jsonio::result_record("energy_trace", config_echo(cfg).dump(), payload.dump()));
  std::printf("evolve: %zu samples, monotone=%s under_envelope=%s (R=%g, R_E=%g)\n",
              tr.t.size(), tr.monotone ? "true" : "false",
              tr.under_envelope ? "true" : "false", ec.R, tr.R_E);
  return kExitOk;
}

// ------------------------------------------------------------------- plot
int cmd_plot(const Config& cfg) {
  const std::string kind = cfg.get_string("kind", "xy");
  const std::string out = cfg.get_string("out", "plot.svg");
  svg::PlotOptions opts;
  opts.title = cfg.get_string("title", "");
  opts.log_y = cfg.get_bool("log-y", kind != "xy");

  std::vector<svg::Series> series;
  if (kind == "xy") {
    const csv::Table t = csv::read_file(cfg.get_string("in", ""));
    if (t.empty() || t.header.size() < 2) throw UsageError("plot: need a two-column CSV");
    svg::Series s;
    s.label = t.header[1];
    for (const auto& row : t.rows) {
      if (row.size() < 2) continue;
      s.x.push_back(row[0]);
      s.y.push_back(row[1]);
    }
    opts.xlabel = t.header[0];
    opts.ylabel = t.header[1];
    series.push_back(std::move(s));
  } else if (kind == "neutral") {
    const csv::Table t = csv::read_file(cfg.get_string("in", ""));
    const int cm = t.column("M"), ca = t.column("a"), cr = t.column("Re_neutral");
    if (cm < 0 || ca < 0 || cr < 0) throw UsageError("plot: neutral needs M,a,Re_neutral");
    std::map<double, svg::Series> by_m;
    for (const auto& row : t.rows) {
      auto& s = by_m[row[cm]];
      if (s.label.empty()) s.label = "M=" + csv::format(row[cm]);
      s.x.push_back(row[ca]);
      s.y.push_back(row[cr]);
    }
    for (auto& [m, s] : by_m) series.push_back(std::move(s));
    opts.xlabel = "a";
    opts.ylabel = "Re";
    if (opts.title.empty()) opts.title = "Neutral curves";
  } else if (kind == "thresholds") {
    auto load = [&](const std::string& path, const std::string& label) {
      const csv::Table t = csv::read_file(path);
      const int cm = t.column("M"), cr = t.column("R_c");
      if (cm < 0 || cr < 0) throw UsageError("plot: thresholds need M,R_c columns");
      svg::Series s;
      s.label = label;
      for (const auto& row : t.rows) {
        s.x.push_back(row[cm]);
        s.y.push_back(row[cr]);
      }
      series.push_back(std::move(s));
    };
    if (cfg.has("linear")) load(cfg.get_string("linear", ""), "linear");
    if (cfg.has("energy")) load(cfg.get_string("energy", ""), "energy");
    if (series.empty()) throw UsageError("plot: thresholds needs --linear and/or --energy");
    opts.xlabel = "M";
    opts.ylabel = "R";
    if (opts.title.empty()) opts.title = "Stability thresholds";
  } else {
    throw UsageError("plot: unknown kind '" + kind + "'");
  }

  write_text(out, svg::line_plot(series, opts));
  std::printf("plot: wrote %s\n", out.c_str());
  return kExitOk;
}

Config gather(const CLI::App* sub, const std::vector<std::pair<std::string, std::string>>& kv) {
  Config cfg;
  if (sub->count("--config")) {
    cfg = Config::from_file(sub->get_option("--config")->as<std::string>());
  }
  for (const auto& [k, v] : kv) cfg.set(k, v);  // flags override file values
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability toolkit for pressure-driven flow in a porous channel"};
  app.require_subcommand(1);

  // Every subcommand takes --config plus typed flags; flags win over the file.
  struct SubState {
    CLI::App* sub;
    std::vector<std::pair<std::string, std::string>>* kv;
  };
  std::vector<std::unique_ptr<std::vector<std::pair<std::string, std::string>>>> stores;

  auto add_opt = [&](CLI::App* sub, std::vector<std::pair<std::string, std::string>>* kv,
                     const std::string& flag, const std::string& key, const std::string& help) {
    sub->add_option_function<std::string>(
        flag, [kv, key](const std::string& v) { kv->emplace_back(key, v); }, help);
  };

  auto make_sub = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    stores.push_back(std::make_unique<std::vector<std::pair<std::string, std::string>>>());
    auto* kv = stores.back().get();
    sub->add_option("--config", "flat key=value config file");
    add_opt(sub, kv, "--out", "out", "output file or directory");
    return SubState{sub, kv};
  };

  auto bf = make_sub("baseflow", "tabulate the laminar profile as CSV");
  add_opt(bf.sub, bf.kv, "--M", "M", "porous parameter");
  add_opt(bf.sub, bf.kv, "--N", "N", "node count");

  auto cr = make_sub("critical", "critical Reynolds numbers over an M list");
  add_opt(cr.sub, cr.kv, "--kind", "kind", "linear | energy");
  add_opt(cr.sub, cr.kv, "--M", "M", "comma-separated M list");
  add_opt(cr.sub, cr.kv, "--N", "N", "collocation order (0 = default)");
  add_opt(cr.sub, cr.kv, "--cache", "cache", "reuse | recompute");
  add_opt(cr.sub, cr.kv, "--cache-dir", "cache-dir", "cache directory (or BRINKSTAB_CACHE_DIR)");
  cr.sub->add_flag_function("--neutral-curve",
                            [kv = cr.kv](std::int64_t) { kv->emplace_back("neutral-curve", "true"); },
                            "also write the neutral curve around a_c");

  auto sq = make_sub("squire-check", "verify the spanwise maximum property on a grid");
  add_opt(sq.sub, sq.kv, "--M", "M", "porous parameter");
  add_opt(sq.sub, sq.kv, "--N", "N", "collocation order");
  add_opt(sq.sub, sq.kv, "--a-grid", "a-grid", "comma-separated streamwise wavenumbers");
  add_opt(sq.sub, sq.kv, "--b-grid", "b-grid", "comma-separated spanwise wavenumbers (must include 0)");

  auto ev = make_sub("evolve", "integrate the linearized dynamics and trace E(t)");
  add_opt(ev.sub, ev.kv, "--M", "M", "porous parameter");
  add_opt(ev.sub, ev.kv, "--R", "R", "Reynolds number");
  add_opt(ev.sub, ev.kv, "--R-factor", "R-factor", "R as multiple of R_E(M)");
  add_opt(ev.sub, ev.kv, "--R_E", "R_E", "skip the threshold search, use this R_E");
  add_opt(ev.sub, ev.kv, "--a", "a", "streamwise wavenumber");
  add_opt(ev.sub, ev.kv, "--N", "N", "collocation order");
  add_opt(ev.sub, ev.kv, "--dt", "dt", "time step");
  add_opt(ev.sub, ev.kv, "--T", "T", "horizon");
  add_opt(ev.sub, ev.kv, "--ic", "ic", "optimal | random | user");
  add_opt(ev.sub, ev.kv, "--seed", "seed", "seed for random IC");

  auto pl = make_sub("plot", "render CSV results as an SVG");
  add_opt(pl.sub, pl.kv, "--kind", "kind", "xy | neutral | thresholds");
  add_opt(pl.sub, pl.kv, "--in", "in", "input CSV");
  add_opt(pl.sub, pl.kv, "--linear", "linear", "linear summary CSV (thresholds)");
  add_opt(pl.sub, pl.kv, "--energy", "energy", "energy summary CSV (thresholds)");
  add_opt(pl.sub, pl.kv, "--title", "title", "plot title");
  add_opt(pl.sub, pl.kv, "--log-y", "log-y", "true | false");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (bf.sub->parsed()) return cmd_baseflow(gather(bf.sub, *bf.kv));
    if (cr.sub->parsed()) return cmd_critical(gather(cr.sub, *cr.kv));
    if (sq.sub->parsed()) return cmd_squire_check(gather(sq.sub, *sq.kv));
    if (ev.sub->parsed()) return cmd_evolve(gather(ev.sub, *ev.kv));
    if (pl.sub->parsed()) return cmd_plot(gather(pl.sub, *pl.kv));
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const DiagnosticError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const IntegratorError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
