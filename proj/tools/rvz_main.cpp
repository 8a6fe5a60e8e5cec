// Command-line driver: loads space/vertex files, runs the library operations,
// and emits one JSON report per run (deterministic modulo the timings block).

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "rvz/chebyshev.hpp"
#include "rvz/energy.hpp"
#include "rvz/errors.hpp"
#include "rvz/geometry.hpp"
#include "rvz/report.hpp"
#include "rvz/space_io.hpp"
#include "rvz/spaces.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitBudget = 4;

struct GlobalOpts {
  std::string out_path;
  std::string cache_dir;
  std::string csv_path;
  bool pretty = false;
  bool no_timings = false;
  bool no_cache = false;
  int threads = 0;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  }
};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

void write_text(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw rvz::InputError("cannot write '" + path + "'");
  out << bytes;
}

std::string cache_dir_of(const GlobalOpts& g) {
  return g.cache_dir.empty() ? rvz::default_cache_dir() : g.cache_dir;
}

// Emits the report (stdout and/or --out), updates the cache, and returns the
// exit code unchanged. Cached replays are byte-identical to fresh runs under
// --no-timings.
int emit_report(rvz::RunReport& rep, const GlobalOpts& g, const Timer& timer, int code,
                const std::string& pretty_text) {
  rep.timings["total_ms"] = timer.ms();
  const std::string cache_key =
      rvz::fnv1a_hex(rep.input_digest + "|" + rep.command + "|" + rep.version);
  if (!g.no_cache) rvz::cache_store(cache_dir_of(g), cache_key, rep.to_bytes(false));
  const std::string bytes = rep.to_bytes(!g.no_timings);
  if (!g.out_path.empty()) write_text(g.out_path, bytes);
  if (g.pretty) {
    std::cout << pretty_text << std::flush;
  } else {
    std::cout << bytes << std::flush;
  }
  return code;
}

// Returns the cached report body when a byte-identical replay is available.
std::optional<rvz::RunReport> cache_probe(const std::string& command,
                                          const std::string& input_digest, const GlobalOpts& g) {
  if (g.no_cache) return std::nullopt;
  const std::string key =
      rvz::fnv1a_hex(input_digest + "|" + command + "|" + std::string(rvz::kToolVersion));
  const auto hit = rvz::cache_lookup(cache_dir_of(g), key);
  if (!hit) return std::nullopt;
  json j = json::parse(*hit, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (j.value("command", "") != command || j.value("input_digest", "") != input_digest ||
      j.value("version", "") != std::string(rvz::kToolVersion))
    return std::nullopt;
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = input_digest;
  rep.results = j.value("results", json::object());
  rep.certificates = j.value("certificates", json::object());
  return rep;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json int_list_to_json(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x);
  return a;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw rvz::InputError("empty integer list '" + text + "'");
  return out;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ostringstream os;
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
  write_text(path, os.str());
}

// ---------------------------------------------------------------------------

int cmd_value(const GlobalOpts& g, const std::string& space_path, const std::string& Hname,
              const std::string& Lname, double tol) {
  Timer timer;
  const std::string input = rvz::read_file(space_path);
  const std::string command =
      "value --H " + Hname + " --L " + Lname + " --tol " + fmt_double(tol);
  const std::string digest = rvz::fnv1a_hex(input);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = digest;

  std::ostringstream pretty;
  if (auto cached = cache_probe(command, digest, g)) {
    rep = *cached;
    pretty << "value (cached): " << rep.results.dump() << "\n";
    return emit_report(rep, g, timer, kExitOk, pretty.str());
  }

  const rvz::FiniteKernelSpace space = rvz::space_from_json(json::parse(input));
  rvz::GameOptions opts;
  opts.tol = tol;
  const rvz::GameSolution game = rvz::game_value(space, Hname, Lname, opts);
  const rvz::Interval iv(game.value_lo, game.value_hi);

  rep.results["H"] = Hname;
  rep.results["L"] = Lname;
  rep.results["interval"] = rvz::interval_to_json(iv);
  rep.results["exact"] = game.diagonal && game.converged;
  if (game.diagonal) rep.results["rendezvous_number"] = game.value();
  rep.certificates["game"] = rvz::game_to_json(game);

  pretty << "average interval [q_lower, q] over L='" << Lname << "' w.r.t. H='" << Hname
         << "':\n  [" << fmt_double(game.value_lo) << ", " << fmt_double(game.value_hi)
         << "]  gap=" << fmt_double(game.gap) << (game.converged ? "" : "  (NOT CONVERGED)")
         << "\n";
  if (game.diagonal) pretty << "rendezvous number: " << fmt_double(game.value()) << "\n";
  return emit_report(rep, g, timer, game.converged ? kExitOk : kExitNonConvergence,
                     pretty.str());
}

int cmd_cheb(const GlobalOpts& g, const std::string& space_path, int n, const std::string& Hname,
             const std::string& Lname, double budget) {
  Timer timer;
  const std::string input = rvz::read_file(space_path);
  const std::string command = "cheb --n " + std::to_string(n) + " --H " + Hname + " --L " +
                              Lname + " --budget " + fmt_double(budget);
  const std::string digest = rvz::fnv1a_hex(input);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = digest;

  std::ostringstream pretty;
  if (auto cached = cache_probe(command, digest, g)) {
    rep = *cached;
    pretty << "cheb (cached): " << rep.results.dump() << "\n";
    return emit_report(rep, g, timer, kExitOk, pretty.str());
  }

  const rvz::FiniteKernelSpace space = rvz::space_from_json(json::parse(input));
  rvz::ChebOptions opts;
  opts.enumeration_budget = budget;
  opts.threads = g.threads;
  const rvz::ChebnResult r = rvz::cheb_n(space, Hname, Lname, n, opts);

  rep.results["n"] = n;
  rep.results["m_n"] = r.m_n;
  rep.results["m_bar_n"] = r.m_bar_n;
  rep.results["interval"] = rvz::interval_to_json(rvz::Interval(r.m_n, r.m_bar_n));
  rep.certificates["argmax_config"] = int_list_to_json(r.argmax_config);
  rep.certificates["argmin_config"] = int_list_to_json(r.argmin_config);

  pretty << "n=" << n << "  M_n=" << fmt_double(r.m_n) << "  dual M_n=" << fmt_double(r.m_bar_n)
         << "\n  argmax config:";
  for (int w : r.argmax_config) pretty << " " << w;
  pretty << "\n  argmin config:";
  for (int w : r.argmin_config) pretty << " " << w;
  pretty << "\n";
  return emit_report(rep, g, timer, kExitOk, pretty.str());
}

int cmd_center(const GlobalOpts& g, const std::string& vertices_path, const std::string& norm_txt,
               double tol, bool check_szekeres, double grid) {
  Timer timer;
  const std::string input = rvz::read_file(vertices_path);
  std::string command = "center --norm " + norm_txt + " --tol " + fmt_double(tol);
  if (check_szekeres) command += " --check-szekeres --grid " + fmt_double(grid);
  const std::string digest = rvz::fnv1a_hex(input);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = digest;

  std::ostringstream pretty;
  if (auto cached = cache_probe(command, digest, g)) {
    rep = *cached;
    pretty << "center (cached): " << rep.results.dump() << "\n";
    return emit_report(rep, g, timer, kExitOk, pretty.str());
  }

  const auto vertices = rvz::load_points_file(vertices_path);
  const rvz::NormSpec norm = rvz::parse_norm(norm_txt);
  const rvz::CenterResult center = rvz::chebyshev_center(vertices, norm, tol);

  rep.results["center"] = vector_to_json(center.ball.center);
  rep.results["radius"] = center.ball.radius;
  rep.results["norm"] = rvz::norm_to_json(norm);
  rep.results["converged"] = center.converged;
  rep.certificates["radius_lower_bound"] = center.lower_bound;
  rep.certificates["radius_upper_bound"] = center.ball.radius;

  pretty << "Chebyshev centre: " << rep.results["center"].dump() << "\n  radius "
         << fmt_double(center.ball.radius) << "  (lower bound " << fmt_double(center.lower_bound)
         << ")" << (center.converged ? "" : "  (NOT CONVERGED)") << "\n";

  bool all_ok = center.converged;
  if (check_szekeres) {
    const rvz::SzekeresReport sz = rvz::szekeres_check(vertices, norm, grid, tol);
    rep.results["szekeres"] = json{{"rho", sz.rho},
                                   {"r", sz.r},
                                   {"r_lo", sz.r_lo},
                                   {"r_hi", sz.r_hi},
                                   {"discrepancy", sz.discrepancy},
                                   {"resolution", sz.resolution},
                                   {"grid_points", sz.grid_points},
                                   {"game_converged", sz.game_converged}};
    pretty << "  radius vs grid rendezvous value: rho=" << fmt_double(sz.rho)
           << " r=" << fmt_double(sz.r) << " |r-rho|=" << fmt_double(sz.discrepancy) << "\n";
    all_ok = all_ok && sz.game_converged;
  }
  return emit_report(rep, g, timer, all_ok ? kExitOk : kExitNonConvergence, pretty.str());
}

int cmd_cover(const GlobalOpts& g, const std::string& space_path, double t,
              const std::string& mode_txt, const std::string& Hname, const std::string& Lname) {
  Timer timer;
  const std::string input = rvz::read_file(space_path);
  const std::string command = "cover --t " + fmt_double(t) + " --mode " + mode_txt + " --H " +
                              Hname + " --L " + Lname;
  const std::string digest = rvz::fnv1a_hex(input);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = digest;

  std::ostringstream pretty;
  if (auto cached = cache_probe(command, digest, g)) {
    rep = *cached;
    pretty << "cover (cached): " << rep.results.dump() << "\n";
    return emit_report(rep, g, timer, kExitOk, pretty.str());
  }

  if (mode_txt != "exact" && mode_txt != "greedy")
    throw rvz::InputError("cover: --mode must be 'exact' or 'greedy'");
  const rvz::FiniteKernelSpace space = rvz::space_from_json(json::parse(input));
  const rvz::CoverMode mode = mode_txt == "exact" ? rvz::CoverMode::Exact : rvz::CoverMode::Greedy;
  const rvz::CoveringResult cover = rvz::covering_number(space, Hname, Lname, t, mode);

  rep.results["t"] = t;
  rep.results["infinite"] = cover.infinite;
  if (!cover.infinite) {
    rep.results["n"] = cover.n;
    rep.results["minimal"] = cover.minimal;
    rep.results["budget_exceeded"] = cover.budget_exceeded;
    rep.certificates["centers"] = int_list_to_json(cover.centers);
  }
  json bounds = json::array();
  for (int nn = 1; nn <= 5; ++nn) {
    const double b = rvz::entropy_lower_bound(space, space.subset(Hname), space.subset(Lname), nn);
    bounds.push_back(json{{"n", nn}, {"m_bar_n_lower_bound", b}});
  }
  rep.results["entropy_bounds"] = bounds;

  pretty << "covering number N(" << fmt_double(t) << "): "
         << (cover.infinite ? std::string("infinite") : std::to_string(cover.n))
         << (cover.infinite ? "" : (cover.minimal ? " (minimal)" : " (greedy upper bound)"))
         << "\nentropy lower bounds for the dual Chebyshev constants:\n";
  for (const auto& row : bounds)
    pretty << "  n=" << row["n"] << ": m_bar_n >= " << fmt_double(row["m_bar_n_lower_bound"])
           << "\n";
  return emit_report(rep, g, timer, kExitOk, pretty.str());
}

int cmd_lp(const GlobalOpts& g, double p, const std::string& n_list_txt, int min_dim, int samples,
           std::uint64_t seed) {
  Timer timer;
  const auto n_list = parse_int_list(n_list_txt);
  const std::string command = "lp --p " + fmt_double(p) + " --n-list " + n_list_txt +
                              " --min-dim " + std::to_string(min_dim) + " --samples " +
                              std::to_string(samples) + " --seed " + std::to_string(seed);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = rvz::fnv1a_hex(command);

  const rvz::LpExperimentResult res = rvz::lp_experiment(p, n_list, min_dim, samples, seed);
  json rows = json::array();
  std::vector<std::string> csv_rows;
  bool all_within = true;
  std::ostringstream pretty;
  pretty << "lp envelope for p=" << fmt_double(p) << " (limit constant 2^(1/p)="
         << fmt_double(rvz::lp_sphere_constant(p)) << ")\n";
  pretty << "     n   dim        lower        upper   measured_max_U  within\n";
  for (const auto& r : res.rows) {
    rows.push_back(json{{"n", r.n},
                        {"dim", r.dim},
                        {"lower", r.lower},
                        {"upper", r.upper},
                        {"eta", r.eta},
                        {"measured_q", r.measured_q},
                        {"measured_min_u", r.measured_min_u},
                        {"provenance_bounds", "closed form"},
                        {"provenance_measurements", "measured"},
                        {"within_upper", r.within_upper}});
    char line[160];
    std::snprintf(line, sizeof line, "%6d %5d %12.6f %12.6f %16.6f  %s", r.n, r.dim, r.lower,
                  r.upper, r.measured_q, r.within_upper ? "yes" : "NO");
    pretty << line << "\n";
    csv_rows.push_back(std::to_string(r.n) + "," + std::to_string(r.dim) + "," +
                       fmt_double(r.lower) + "," + fmt_double(r.upper) + "," + fmt_double(r.eta) +
                       "," + fmt_double(r.measured_q) + "," + fmt_double(r.measured_min_u));
    all_within = all_within && r.within_upper;
  }
  rep.results["p"] = p;
  rep.results["rows"] = rows;
  rep.results["sample_count"] = samples;
  rep.results["seed"] = seed;
  rep.results["limit_constant"] = rvz::lp_sphere_constant(p);
  if (!g.csv_path.empty())
    write_csv(g.csv_path, "n,dim,lower,upper,eta,measured_q,measured_min_u", csv_rows);
  return emit_report(rep, g, timer, all_within ? kExitOk : kExitNonConvergence, pretty.str());
}

int cmd_converge(const GlobalOpts& g, const std::string& norm_txt, const std::string& dims_txt,
                 long budget, std::uint64_t seed) {
  Timer timer;
  const auto dims = parse_int_list(dims_txt);
  const std::string command = "converge --norm " + norm_txt + " --dims " + dims_txt +
                              " --budget " + std::to_string(budget) + " --seed " +
                              std::to_string(seed);
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = rvz::fnv1a_hex(command);

  const rvz::NormSpec norm = rvz::parse_norm(norm_txt);
  const rvz::ConvergenceResult res = rvz::subspace_convergence(norm, dims, budget, seed);
  json rows = json::array();
  std::vector<std::string> csv_rows;
  bool ok = !res.truncated;
  std::ostringstream pretty;
  pretty << "sphere rendezvous values under " << norm_txt
         << " (nested lp subspaces embed isometrically)\n";
  pretty << "  dim   points        value     bracket_lo     bracket_hi     mesh\n";
  for (const auto& r : res.rows) {
    rows.push_back(json{{"dim", r.dim},
                        {"points", r.sample_size},
                        {"value", r.value},
                        {"value_lo", r.value_lo},
                        {"value_hi", r.value_hi},
                        {"mesh", r.mesh},
                        {"provenance", "measured"},
                        {"converged", r.converged}});
    char line[160];
    std::snprintf(line, sizeof line, "%5d %8ld %12.6f %14.9f %14.9f %8.4f%s", r.dim,
                  r.sample_size, r.value, r.value_lo, r.value_hi, r.mesh,
                  r.converged ? "" : "  (NOT CONVERGED)");
    pretty << line << "\n";
    csv_rows.push_back(std::to_string(r.dim) + "," + std::to_string(r.sample_size) + "," +
                       fmt_double(r.value) + "," + fmt_double(r.value_lo) + "," +
                       fmt_double(r.value_hi) + "," + fmt_double(r.mesh));
    ok = ok && r.converged;
  }
  rep.results["norm"] = rvz::norm_to_json(norm);
  rep.results["rows"] = rows;
  rep.results["truncated"] = res.truncated;
  if (!g.csv_path.empty())
    write_csv(g.csv_path, "dim,points,value,value_lo,value_hi,mesh", csv_rows);
  return emit_report(rep, g, timer, ok ? kExitOk : kExitNonConvergence, pretty.str());
}

int cmd_constants(const GlobalOpts& g) {
  Timer timer;
  const std::string command = "constants";
  rvz::RunReport rep;
  rep.command = command;
  rep.input_digest = rvz::fnv1a_hex(command);

  json rows = json::array();
  std::ostringstream pretty;
  pretty << "named constants:\n";
  for (const auto& c : rvz::named_constants()) {
    json row{{"key", c.key},
             {"description", c.description},
             {"provenance", c.provenance},
             {"formula", c.formula}};
    if (c.key == "lp") {
      row["parametric"] = true;
    } else if (c.is_interval) {
      row["interval"] = json{{"lo", c.value_lo}, {"hi", c.value_hi}};
    } else {
      row["value"] = c.value_lo;
    }
    rows.push_back(row);
    pretty << "  " << c.key << ": ";
    if (c.key == "lp")
      pretty << c.formula;
    else if (c.is_interval)
      pretty << "[" << fmt_double(c.value_lo) << ", " << fmt_double(c.value_hi) << "]";
    else
      pretty << fmt_double(c.value_lo);
    pretty << "  (" << c.description << "; " << c.provenance << ")\n";
  }
  rep.results["constants"] = rows;
  return emit_report(rep, g, timer, kExitOk, pretty.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rendezvous numbers, Chebyshev constants and measure energies of finite kernel "
               "spaces"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--out", g.out_path, "write the JSON report to this file");
  app.add_option("--cache-dir", g.cache_dir,
                 "result cache directory (default $RVZ_CACHE_DIR or .rvzcache)");
  app.add_option("--csv", g.csv_path, "write experiment tables as CSV");
  app.add_flag("--pretty", g.pretty, "human-readable rendering instead of JSON on stdout");
  app.add_flag("--no-timings", g.no_timings, "omit the timings block (deterministic output)");
  app.add_flag("--no-cache", g.no_cache, "bypass the result cache");
  app.add_option("--threads", g.threads, "worker threads (0 = hardware)");

  std::string space_path, vertices_path, Hname = "H", Lname = "L";
  double tol = 1e-9;
  int n = 1;
  double cheb_budget = 2e7;
  std::string norm_txt = "lp:2";
  double center_tol = 1e-6;
  bool check_szekeres = false;
  double grid = 0.02;
  double cover_t = 1.0;
  std::string cover_mode = "exact";
  double lp_p = 2.0;
  std::string n_list_txt = "2,4,8,16";
  int min_dim = 2;
  int samples = 2000;
  std::uint64_t seed = rvz::kDefaultSeed;
  std::string dims_txt = "2";
  long budget = 1000;

  auto* value = app.add_subcommand("value", "certified average interval / rendezvous number");
  value->add_option("space", space_path)->required();
  value->add_option("--H", Hname);
  value->add_option("--L", Lname);
  value->add_option("--tol", tol);

  auto* cheb = app.add_subcommand("cheb", "exact n-th Chebyshev constants by enumeration");
  cheb->add_option("space", space_path)->required();
  cheb->add_option("--n", n)->required();
  cheb->add_option("--H", Hname);
  cheb->add_option("--L", Lname);
  cheb->add_option("--budget", cheb_budget);

  auto* center = app.add_subcommand("center", "Chebyshev centre of a vertex list");
  center->add_option("vertices", vertices_path)->required();
  center->add_option("--norm", norm_txt);
  center->add_option("--tol", center_tol);
  center->add_flag("--check-szekeres", check_szekeres);
  center->add_option("--grid", grid);

  auto* cover = app.add_subcommand("cover", "covering numbers and entropy lower bounds");
  cover->add_option("space", space_path)->required();
  cover->add_option("--t", cover_t)->required();
  cover->add_option("--mode", cover_mode);
  cover->add_option("--H", Hname);
  cover->add_option("--L", Lname);

  auto* lp = app.add_subcommand("lp", "lp-sphere bound envelope and witness measurements");
  lp->add_option("--p", lp_p)->required();
  lp->add_option("--n-list", n_list_txt);
  lp->add_option("--min-dim", min_dim);
  lp->add_option("--samples", samples);
  lp->add_option("--seed", seed);

  auto* converge = app.add_subcommand("converge", "sphere values across dimensions");
  converge->add_option("--norm", norm_txt);
  converge->add_option("--dims", dims_txt)->required();
  converge->add_option("--budget", budget);
  converge->add_option("--seed", seed);

  auto* constants = app.add_subcommand("constants", "named constants table");
  (void)constants;

  CLI11_PARSE(app, argc, argv);

  try {
    if (value->parsed()) return cmd_value(g, space_path, Hname, Lname, tol);
    if (cheb->parsed()) return cmd_cheb(g, space_path, n, Hname, Lname, cheb_budget);
    if (center->parsed())
      return cmd_center(g, vertices_path, norm_txt, center_tol, check_szekeres, grid);
    if (cover->parsed()) return cmd_cover(g, space_path, cover_t, cover_mode, Hname, Lname);
    if (lp->parsed()) return cmd_lp(g, lp_p, n_list_txt, min_dim, samples, seed);
    if (converge->parsed()) return cmd_converge(g, norm_txt, dims_txt, budget, seed);
    return cmd_constants(g);
  } catch (const rvz::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const rvz::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const rvz::UnsupportedOperation& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
