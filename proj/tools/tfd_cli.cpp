// Command-line front end: every quantity the library computes, exported as
// CSV or JSON with stable formatting so output files diff cleanly.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tfd/entropy.hpp"
#include "tfd/noclone.hpp"
#include "tfd/opexpr.hpp"
#include "tfd/thermal.hpp"

using nlohmann::ordered_json;
using namespace tfd;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ln(1e12): the Boltzmann tail e^{-bw(N+1)} drops below 1e-12 once
// bw * (N+1) clears this.
constexpr double kTailLog = 27.631021115928547;

bool tail_ok(double min_bw, int cutoff) { return min_bw * (cutoff + 1) > kTailLog; }

int tail_min_cutoff(double min_bw) {
  int n = static_cast<int>(std::floor(kTailLog / min_bw));
  while (!tail_ok(min_bw, n)) ++n;
  return std::max(n, 8);
}

std::string num12(double x) {
  if (!std::isfinite(x)) throw ConfigError("refusing to serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string num17(double x) {
  if (!std::isfinite(x)) throw ConfigError("refusing to serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ordered_json cpx(Complex z) { return ordered_json::array({num17(z.real()), num17(z.imag())}); }

// "start:stop:count:log|lin" with exact endpoints.
std::vector<double> parse_grid(const std::string& text) {
  double start = 0.0, stop = 0.0;
  int count = 0;
  char kind[8] = {0};
  if (std::sscanf(text.c_str(), "%lf:%lf:%d:%7s", &start, &stop, &count, kind) != 4)
    throw ConfigError("grid must look like start:stop:count:log|lin");
  std::string k = kind;
  if (k != "log" && k != "lin") throw ConfigError("grid kind must be log or lin");
  if (count < 1) throw ConfigError("grid needs at least one point");
  if (!std::isfinite(start) || !std::isfinite(stop)) throw ConfigError("grid bounds must be finite");
  if (k == "log" && (start <= 0.0 || stop <= 0.0))
    throw ConfigError("log grid needs positive bounds");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  for (int i = 0; i < count; ++i) {
    double f = static_cast<double>(i) / (count - 1);
    grid[i] = k == "log" ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                         : start + f * (stop - start);
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

Statistics parse_stat(const std::string& s) {
  if (s == "fermion") return Statistics::fermion;
  if (s == "boson") return Statistics::boson;
  throw ConfigError("stat must be fermion or boson");
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + tmp + " for writing");
    out << content;
    if (!out.flush()) throw ConfigError("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("cannot move " + tmp + " into place");
}

std::string sexpr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::scalar:
      return "(scalar " + num17(e->value.real()) + " " + num17(e->value.imag()) + ")";
    case ExprKind::atom:
      return "(atom " + e->name + ")";
    case ExprKind::dagger:
      return "(dagger " + sexpr(e->kids[0]) + ")";
    case ExprKind::tilde:
      return "(tilde " + sexpr(e->kids[0]) + ")";
    case ExprKind::scalar_mul:
      return "(scale " + num17(e->value.real()) + " " + num17(e->value.imag()) + " " +
             sexpr(e->kids[0]) + ")";
    case ExprKind::sum:
    case ExprKind::product: {
      std::string s = e->kind == ExprKind::sum ? "(sum" : "(product";
      for (const ExprPtr& kid : e->kids) s += " " + sexpr(kid);
      return s + ")";
    }
  }
  return "(?)";
}

struct CommonOpts {
  std::string stat = "fermion";
  std::vector<double> beta_omega;
  std::string grid;
  int cutoff = -1;  // -1: pick from the tail rule
  std::string format;  // empty: subcommand default
  std::string out;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

void require_json_only(const CommonOpts& opt) {
  if (opt.format.empty() || opt.format == "json") return;
  if (opt.format == "csv") throw ConfigError("this subcommand emits json; pass --format json");
  throw ConfigError("format must be csv or json");
}

int boson_cutoff_for(const CommonOpts& opt, double min_bw) {
  int needed = tail_min_cutoff(min_bw);
  if (opt.cutoff < 0) return needed;
  if (!tail_ok(min_bw, opt.cutoff) || opt.cutoff < 1)
    throw ConfigError("cutoff " + std::to_string(opt.cutoff) +
                      " leaves a Boltzmann tail above 1e-12 at beta*omega=" + num12(min_bw) +
                      "; need at least " + std::to_string(needed));
  return opt.cutoff;
}

int cmd_entropy_curve(const CommonOpts& opt) {
  if (parse_stat(opt.stat) != Statistics::fermion)
    throw ConfigError("the entropy curve is defined for the two-level mode; use --stat fermion");
  std::vector<double> grid =
      opt.grid.empty() ? default_temperature_grid() : parse_grid(opt.grid);
  for (double t : grid)
    if (t <= 0.0) throw ConfigError("temperatures must be positive");
  std::vector<EntropyPoint> curve = entropy_curve(grid);

  std::string fmt = opt.format.empty() ? "csv" : opt.format;
  std::string content;
  if (fmt == "csv") {
    content = "t_over_omega,entropy_nats\n";
    for (const EntropyPoint& p : curve)
      content += num12(p.t_over_omega) + "," + num12(p.entropy) + "\n";
  } else if (fmt == "json") {
    ordered_json doc;
    doc["subcommand"] = "entropy-curve";
    doc["stat"] = "fermion";
    doc["seed"] = opt.seed;
    ordered_json rows = ordered_json::array();
    for (const EntropyPoint& p : curve)
      rows.push_back({{"t_over_omega", num17(p.t_over_omega)}, {"entropy_nats", num17(p.entropy)}});
    doc["rows"] = rows;
    content = doc.dump(2) + "\n";
  } else {
    throw ConfigError("format must be csv or json");
  }
  write_output(opt.out, content);
  return 0;
}

int cmd_occupation(const CommonOpts& opt) {
  Statistics stat = parse_stat(opt.stat);
  std::vector<double> grid = opt.beta_omega;
  if (grid.empty()) grid = parse_grid(opt.grid.empty() ? "0.1:10:25:log" : opt.grid);
  double min_bw = grid.front();
  for (double bw : grid) {
    if (!(bw >= 0.0)) throw ConfigError("beta*omega must be nonnegative");
    if (stat == Statistics::boson && bw <= 0.0)
      throw ConfigError("the ladder mode needs beta*omega > 0");
    min_bw = std::min(min_bw, bw);
  }

  FockSpace space = stat == Statistics::fermion
                        ? make_space(stat)
                        : make_space(stat, boson_cutoff_for(opt, min_bw));
  DoubledSpace ds = doubled(space);
  Hamiltonian h = oscillator_hamiltonian(space, 1.0);
  Mat n_op = number_op(space);

  struct Row {
    double bw, mean, via, diff;
  };
  std::vector<Row> rows;
  bool violated = false;
  for (double bw : grid) {
    double mean = mean_occupation(bw, 1.0, stat);
    Vec vac = stat == Statistics::fermion
                  ? thermal_vacuum_unitary(ds, mixing_angle(bw, 1.0, stat)).ket
                  : thermal_vacuum_series(ds, bw, h).ket;
    double via = expectation(ds, vac, n_op).real();
    double diff = std::abs(mean - via);
    violated = violated || !(diff < opt.tol);
    rows.push_back({bw, mean, via, diff});
  }

  std::string fmt = opt.format.empty() ? "csv" : opt.format;
  std::string content;
  if (fmt == "csv") {
    content = "beta_omega,mean_occupation,via_expectation,abs_diff\n";
    for (const Row& r : rows)
      content +=
          num12(r.bw) + "," + num12(r.mean) + "," + num12(r.via) + "," + num12(r.diff) + "\n";
  } else if (fmt == "json") {
    ordered_json doc;
    doc["subcommand"] = "occupation";
    doc["stat"] = opt.stat;
    doc["seed"] = opt.seed;
    ordered_json jrows = ordered_json::array();
    for (const Row& r : rows)
      jrows.push_back({{"beta_omega", num17(r.bw)},
                       {"mean_occupation", num17(r.mean)},
                       {"via_expectation", num17(r.via)},
                       {"abs_diff", num17(r.diff)}});
    doc["rows"] = jrows;
    content = doc.dump(2) + "\n";
  } else {
    throw ConfigError("format must be csv or json");
  }
  write_output(opt.out, content);
  if (violated) {
    std::cerr << "occupation: a row exceeded the cross-check tolerance " << num12(opt.tol)
              << "\n";
    return 3;
  }
  return 0;
}

int cmd_vacuum(const CommonOpts& opt) {
  require_json_only(opt);
  Statistics stat = parse_stat(opt.stat);
  double bw = opt.beta_omega.empty() ? 1.0 : opt.beta_omega.back();
  if (!(bw > 0.0) || !std::isfinite(bw)) throw ConfigError("beta*omega must be positive");

  FockSpace space =
      stat == Statistics::fermion ? make_space(stat) : make_space(stat, boson_cutoff_for(opt, bw));
  DoubledSpace ds = doubled(space);
  if (ds.dim() > 10000)
    throw ConfigError("doubled dimension " + std::to_string(ds.dim()) +
                      " is past the dense-exponential budget; raise beta*omega or lower --cutoff");

  ThermalParams params = mixing_angle(bw, 1.0, stat);
  ThermalState series = thermal_vacuum_series(ds, bw, oscillator_hamiltonian(space, 1.0));
  ThermalState unit = thermal_vacuum_unitary(ds, params);

  ordered_json doc;
  doc["subcommand"] = "vacuum";
  doc["stat"] = opt.stat;
  doc["beta_omega"] = num17(bw);
  doc["dim_physical"] = space.dim;
  doc["theta"] = num17(params.theta);
  doc["z_series"] = num17(series.z_partition);
  doc["z_unitary"] = num17(unit.z_partition);
  ordered_json s_amp = ordered_json::array();
  ordered_json u_amp = ordered_json::array();
  for (int k = 0; k < ds.dim(); ++k) {
    s_amp.push_back(cpx(series.ket(k)));
    u_amp.push_back(cpx(unit.ket(k)));
  }
  doc["series_amplitudes"] = s_amp;
  doc["unitary_amplitudes"] = u_amp;
  doc["distance"] = num17((series.ket - unit.ket).norm());
  doc["seed"] = opt.seed;
  write_output(opt.out, doc.dump(2) + "\n");
  return 0;
}

int cmd_noclone_scan(const CommonOpts& opt, const std::string& target, const std::string& branch,
                     int resolution) {
  require_json_only(opt);
  Statistics stat = parse_stat(opt.stat);
  ScanTarget which;
  if (target == "d_tfd")
    which = ScanTarget::d_tfd;
  else if (target == "c_tfd")
    which = ScanTarget::c_tfd;
  else
    throw ConfigError("target must be d_tfd or c_tfd");
  TildeBranch tb;
  if (branch == "real")
    tb = TildeBranch::real;
  else if (branch == "conjugate")
    tb = TildeBranch::conjugate;
  else
    throw ConfigError("branch must be real or conjugate");

  double bw = opt.beta_omega.empty() ? 1.0 : opt.beta_omega.back();
  FockSpace space;
  if (stat == Statistics::fermion) {
    space = make_space(stat);
  } else if (which == ScanTarget::c_tfd) {
    space = make_space(stat, boson_cutoff_for(opt, bw));
  } else {
    space = make_space(stat, opt.cutoff < 0 ? 8 : opt.cutoff);
  }
  DoubledSpace ds = doubled(space);
  if (which == ScanTarget::c_tfd && ds.dim() > 10000)
    throw ConfigError("doubled dimension " + std::to_string(ds.dim()) +
                      " is past the dense-exponential budget; raise beta*omega or lower --cutoff");

  CloneReport report = scan(ds, which, tb, resolution, bw, opt.tol);

  ordered_json doc;
  doc["subcommand"] = "noclone-scan";
  doc["target"] = target;
  doc["branch"] = branch;
  doc["stat"] = opt.stat;
  doc["resolution"] = report.resolution;
  doc["beta_omega"] = num17(report.beta_omega);
  doc["tol"] = num17(report.tol);
  doc["seed"] = opt.seed;
  ordered_json entries = ordered_json::array();
  for (const CloneScanEntry& e : report.entries)
    entries.push_back({{"phi", num17(e.phi)},
                       {"z", cpx(e.z)},
                       {"w", cpx(e.w)},
                       {"residual", num17(e.residual)}});
  doc["entries"] = entries;
  doc["zero_locus"] = report.zero_locus;
  doc["min_nonzero"] = num17(report.min_nonzero);
  doc["max_residual"] = num17(report.max_residual);
  doc["phi_at_max"] = num17(report.phi_at_max);
  doc["corner_defect"] = num17(report.corner_defect);
  doc["nontrivial_zero"] = report.nontrivial_zero;
  write_output(opt.out, doc.dump(2) + "\n");

  if (report.nontrivial_zero) {
    std::cerr << "noclone-scan: zero locus extends beyond the trivial corners\n";
    return 3;
  }
  return 0;
}

int cmd_eval(const CommonOpts& opt, const std::string& text) {
  require_json_only(opt);
  Statistics stat = parse_stat(opt.stat);
  double bw = opt.beta_omega.empty() ? 1.0 : opt.beta_omega.back();
  if (!(bw > 0.0) || !std::isfinite(bw)) throw ConfigError("beta*omega must be positive");
  FockSpace space =
      stat == Statistics::fermion ? make_space(stat) : make_space(stat, boson_cutoff_for(opt, bw));
  DoubledSpace ds = doubled(space);
  if (ds.dim() > 10000)
    throw ConfigError("doubled dimension " + std::to_string(ds.dim()) +
                      " is past the dense-exponential budget; raise beta*omega or lower --cutoff");

  ExprPtr expr = parse(text);  // ParseError propagates to main
  MirrorResult mirrored = tilde_rewrite(expr);
  Mat value = evaluate(expr, ds);
  Vec vac = thermal_vacuum_unitary(ds, mixing_angle(bw, 1.0, stat)).ket;
  Complex expect = (vac.adjoint() * value * vac)(0, 0);

  ordered_json doc;
  doc["subcommand"] = "eval";
  doc["input"] = text;
  doc["parsed"] = format(expr);
  doc["sexpr"] = sexpr(expr);
  doc["rewritten"] = format(mirrored.expr);
  doc["rewritten_sexpr"] = sexpr(mirrored.expr);
  doc["double_mirrors_unwrapped"] = mirrored.unwrapped;
  doc["stat"] = opt.stat;
  doc["beta_omega"] = num17(bw);
  doc["dim"] = ds.dim();
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < value.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < value.cols(); ++j) row.push_back(cpx(value(i, j)));
    rows.push_back(row);
  }
  doc["matrix"] = rows;
  doc["expectation"] = cpx(expect);
  doc["seed"] = opt.seed;
  write_output(opt.out, doc.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal doubled-space toolbox"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::string target = "d_tfd";
  std::string branch = "real";
  int resolution = 101;
  std::string expr_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--stat", opt.stat, "fermion or boson");
    sub->add_option("--beta-omega", opt.beta_omega, "beta*omega value (repeatable)");
    sub->add_option("--grid", opt.grid, "start:stop:count:log|lin");
    sub->add_option("--cutoff", opt.cutoff, "highest ladder level kept (boson)");
    sub->add_option("--format", opt.format, "csv or json");
    sub->add_option("--out", opt.out, "output file (default stdout)");
    sub->add_option("--seed", opt.seed, "echoed into reports for bookkeeping");
    sub->add_option("--tol", opt.tol, "tolerance override");
  };

  CLI::App* curve = app.add_subcommand("entropy-curve", "entropy against temperature");
  add_common(curve);
  CLI::App* occ = app.add_subcommand("occupation", "mean occupation two ways");
  add_common(occ);
  CLI::App* vac = app.add_subcommand("vacuum", "thermal vacuum, series and rotation routes");
  add_common(vac);
  CLI::App* scan_cmd = app.add_subcommand("noclone-scan", "copying residual over a coefficient arc");
  add_common(scan_cmd);
  scan_cmd->add_option("--target", target, "d_tfd or c_tfd");
  scan_cmd->add_option("--branch", branch, "real or conjugate");
  scan_cmd->add_option("--resolution", resolution, "grid points along the arc");
  CLI::App* ev = app.add_subcommand("eval", "parse and evaluate an operator expression");
  add_common(ev);
  ev->add_option("expr", expr_text, "expression text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(curve)) return cmd_entropy_curve(opt);
    if (app.got_subcommand(occ)) return cmd_occupation(opt);
    if (app.got_subcommand(vac)) return cmd_vacuum(opt);
    if (app.got_subcommand(scan_cmd)) return cmd_noclone_scan(opt, target, branch, resolution);
    if (app.got_subcommand(ev)) return cmd_eval(opt, expr_text);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
