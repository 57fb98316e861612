#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "zeno/errors.hpp"
#include "zeno/euclidean.hpp"
#include "zeno/grid.hpp"
#include "zeno/matrix_zeno.hpp"
#include "zeno/operators.hpp"
#include "zeno/propagator.hpp"
#include "zeno/svg.hpp"
#include "zeno/table.hpp"
#include "zeno/version.hpp"
#include "zeno/zeno.hpp"

namespace zeno {

// ---------------------------------------------------------------------------
// Named, reproducible experiments. Each takes a plain parameter struct
// (defaults = the documented desk-scale runs), computes through the core
// modules, and returns result tables ready for CSV/SVG emission. All
// parameters are echoed, sorted, into the provenance header together with an
// FNV-1a fingerprint, so identical configurations yield identical bytes.
// ---------------------------------------------------------------------------

namespace detail {

// Shortest decimal form that round-trips the value exactly, so provenance
// echoes read like the flags the user typed.
inline std::string cfg_num(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

inline std::string cfg_int_list(const std::vector<int>& v) {
  std::string s;
  for (size_t j = 0; j < v.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(v[j]);
  }
  return s;
}

inline std::string cfg_real_list(const std::vector<double>& v) {
  std::string s;
  for (size_t j = 0; j < v.size(); ++j) {
    if (j) s += ",";
    s += cfg_num(v[j]);
  }
  return s;
}

// "%.6g" time tag for snapshot column names.
inline std::string time_tag(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", t);
  return buf;
}

}  // namespace detail

using config_echo = std::vector<std::pair<std::string, std::string>>;

// Standard provenance block: tool version, experiment name, a short anchor
// naming what the run demonstrates, the sorted config echo, and its hash.
inline config_echo provenance_header(const std::string& experiment,
                                     const std::string& anchor,
                                     config_echo cfg) {
  std::sort(cfg.begin(), cfg.end());
  std::string echo;
  for (size_t j = 0; j < cfg.size(); ++j) {
    if (j) echo += " ";
    echo += cfg[j].first + "=" + cfg[j].second;
  }
  config_echo out;
  out.emplace_back("tool", std::string("zeno-lab ") + ZENO_LAB_VERSION);
  out.emplace_back("experiment", experiment);
  out.emplace_back("anchor", anchor);
  out.emplace_back("config", echo);
  out.emplace_back("config_hash", hex64(fnv1a(experiment + "|" + echo)));
  return out;
}

// Comma-separated integer list ("8,16,32"); used for N ladders.
inline std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw parameter_error("cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) throw parameter_error("empty integer list");
  return out;
}

// Comma-separated real list ("1e-4,2e-4"); used for probe time ladders.
inline std::vector<double> parse_real_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw parameter_error("cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw parameter_error("empty number list");
  return out;
}

// ---------------------------------------------------------------------------
// fig1: a translating packet under pulsed confinement to [a, b] (full-line
// dynamics, leaking through the far wall) next to the twisted-boundary circle
// dynamics on [a, b] itself (unitary rigid rotation). Emits one density-
// profile table per setting, snapshot columns at 4 evenly spaced times.
// ---------------------------------------------------------------------------

struct fig1_params {
  int points = 2048;     // grid points (both the box and the circle)
  double box_min = -2.0, box_max = 2.0;
  double a = 0.0, b = 1.0;  // confinement region; also the circle
  double x0 = 0.5, sigma = 0.05, k0 = 0.0;
  double T = 0.6;        // total time
  int steps = 255;       // projection steps for the confined run
  double alpha = 0.0;    // boundary twist of the circle dynamics
};

inline std::vector<result_table> run_fig1(const fig1_params& p) {
  const config_echo cfg = {
      {"points", std::to_string(p.points)},
      {"box_min", detail::cfg_num(p.box_min)},
      {"box_max", detail::cfg_num(p.box_max)},
      {"a", detail::cfg_num(p.a)},
      {"b", detail::cfg_num(p.b)},
      {"x0", detail::cfg_num(p.x0)},
      {"sigma", detail::cfg_num(p.sigma)},
      {"k0", detail::cfg_num(p.k0)},
      {"T", detail::cfg_num(p.T)},
      {"steps", std::to_string(p.steps)},
      {"alpha", detail::cfg_num(p.alpha)},
  };

  // Confined full-line run: translation generator, projection after each step.
  const grid1d box = make_grid(p.box_min, p.box_max, p.points, true);
  const region A{p.a, p.b};
  zeno_plan plan;
  plan.hspec.v = variant::momentum;
  plan.hspec.b = boundary::full_line_box;
  plan.grid = box;
  plan.A = A;
  plan.initial = gaussian_packet(box, p.x0, p.sigma, p.k0);
  plan.T = p.T;
  plan.N = p.steps;
  const int stride = std::max(1, p.steps / 3);
  const zeno_trace tr = zeno_evolve(plan, stride);

  result_table line;
  line.name = "fig1_line";
  line.provenance = provenance_header("fig1", "pulsed-confinement-snapshots", cfg);
  line.columns.push_back("x");
  for (const auto& [t, s] : tr.snapshots)
    line.columns.push_back("prob_t" + detail::time_tag(t));
  line.rows.reserve(box.n_points);
  for (int j = 0; j < box.n_points; ++j) {
    std::vector<double> row;
    row.reserve(line.columns.size());
    row.push_back(box.point(j));
    for (const auto& [t, s] : tr.snapshots) row.push_back(std::norm(s.amp(j)));
    line.rows.push_back(std::move(row));
  }
  for (const auto& [t, s] : tr.snapshots)
    line.provenance.emplace_back("survival_t" + detail::time_tag(t),
                                 format_sci(norm2(s)));
  line.provenance.emplace_back(
      "oracle_survival",
      format_sci(translation_survival_oracle(plan.initial, A, p.T)));

  // Circle run: same packet on [a, b] with a twisted boundary, no projection.
  const grid1d circle = make_grid(p.a, p.b, p.points, true);
  hamiltonian_spec cspec;
  cspec.v = variant::momentum;
  cspec.b = boundary::periodic_phase;
  cspec.alpha = p.alpha;
  const propagator cprop = make_propagator(build_hamiltonian(circle, cspec));
  const state_vector psi0 = gaussian_packet(circle, p.x0, p.sigma, p.k0);

  result_table circ;
  circ.name = "fig1_circle";
  circ.provenance = provenance_header("fig1", "pulsed-confinement-snapshots", cfg);
  circ.columns.push_back("x");
  std::vector<std::pair<double, state_vector>> shots;
  for (int k = 0; k <= 3; ++k) {
    const double t = k * p.T / 3.0;
    shots.emplace_back(t, evolve(cprop, psi0, t));
    circ.columns.push_back("prob_t" + detail::time_tag(t));
  }
  circ.rows.reserve(circle.n_points);
  for (int j = 0; j < circle.n_points; ++j) {
    std::vector<double> row;
    row.reserve(circ.columns.size());
    row.push_back(circle.point(j));
    for (const auto& [t, s] : shots) row.push_back(std::norm(s.amp(j)));
    circ.rows.push_back(std::move(row));
  }
  for (const auto& [t, s] : shots)
    circ.provenance.emplace_back("norm_t" + detail::time_tag(t),
                                 format_sci(norm2(s)));

  std::vector<result_table> out;
  out.push_back(std::move(line));
  out.push_back(std::move(circ));
  return out;
}

// ---------------------------------------------------------------------------
// zeno-convergence: survival and distance to the compressed-generator limit
// as the number of projection steps grows.
// ---------------------------------------------------------------------------

struct convergence_params {
  int points = 2048;
  double box_min = -2.0, box_max = 2.0;
  double a = 0.0, b = 1.0;
  double x0 = 0.5, sigma = 0.07, k0 = 0.0;
  double mass = 1.0;
  double T = 0.5;
  std::vector<int> N_list = {8, 16, 32, 64, 128, 256};
};

inline std::vector<result_table> run_convergence(const convergence_params& p) {
  const config_echo cfg = {
      {"points", std::to_string(p.points)},
      {"box_min", detail::cfg_num(p.box_min)},
      {"box_max", detail::cfg_num(p.box_max)},
      {"a", detail::cfg_num(p.a)},
      {"b", detail::cfg_num(p.b)},
      {"x0", detail::cfg_num(p.x0)},
      {"sigma", detail::cfg_num(p.sigma)},
      {"k0", detail::cfg_num(p.k0)},
      {"mass", detail::cfg_num(p.mass)},
      {"T", detail::cfg_num(p.T)},
      {"N_list", detail::cfg_int_list(p.N_list)},
  };
  const grid1d box = make_grid(p.box_min, p.box_max, p.points, true);
  zeno_plan plan;
  plan.hspec.v = variant::free_line;
  plan.hspec.b = boundary::full_line_box;
  plan.hspec.mass = p.mass;
  plan.grid = box;
  plan.A = region{p.a, p.b};
  plan.initial = gaussian_packet(box, p.x0, p.sigma, p.k0);
  plan.T = p.T;
  plan.N = p.N_list.empty() ? 1 : p.N_list.back();
  const std::vector<sweep_row> rows = convergence_sweep(plan, p.N_list);

  result_table t;
  t.name = "zeno-convergence";
  t.provenance =
      provenance_header("zeno-convergence", "product-limit-convergence", cfg);
  t.columns = {"N", "survival", "distance_to_limit"};
  std::string regime;
  for (const sweep_row& r : rows) {
    t.rows.push_back({static_cast<double>(r.N), r.survival_value,
                      r.distance_to_limit});
    if (!regime.empty()) regime += " ";
    regime += "N=" + std::to_string(r.N) + ":" +
              (physical_step_regime(box, p.T, r.N) ? "coarse" : "sub-cell");
  }
  // Which rows take per-step displacements of at least four grid cells; below
  // that the fixed grid, not the continuum operator, sets the convergence rate.
  t.provenance.emplace_back("step_regime", regime);
  return {std::move(t)};
}

// ---------------------------------------------------------------------------
// spectrum: numeric vs closed-form eigenvalues for the hard-wall families and
// for the compressed full-line Hamiltonian (whose low modes approach the
// hard-wall values).
// ---------------------------------------------------------------------------

struct spectrum_params {
  std::string which = "free-dirichlet";  // free-dirichlet | momentum-quadratic | compressed-free
  int points = 0;  // 0 = per-variant default (511 hard-wall, 4096 compressed)
  int count = 0;   // 0 = per-variant default (5 hard-wall, 3 others)
  double mass = 1.0;
};

inline std::vector<result_table> run_spectrum(const spectrum_params& p) {
  int points = p.points;
  int count = p.count;
  std::vector<double> numeric;
  std::vector<double> analytic;

  if (p.which == "free-dirichlet") {
    if (points == 0) points = 511;
    if (count == 0) count = 5;
    hamiltonian_spec spec;
    spec.v = variant::free_dirichlet;
    spec.b = boundary::dirichlet;
    spec.mass = p.mass;
    const grid1d g = make_grid(0.0, 1.0, points, false);
    const spectrum sp = eigendecompose(build_hamiltonian(g, spec), false);
    for (int j = 0; j < count; ++j) numeric.push_back(sp.eigenvalues(j));
    analytic = analytic_spectrum(spec, count);
  } else if (p.which == "momentum-quadratic") {
    if (points == 0) points = 511;
    if (count == 0) count = 3;
    hamiltonian_spec spec;
    spec.v = variant::momentum_quadratic;
    spec.b = boundary::dirichlet;
    const grid1d g = make_grid(0.0, 1.0, points, false);
    const spectrum sp = eigendecompose(build_hamiltonian(g, spec), false);
    for (int j = 0; j < count; ++j) numeric.push_back(sp.eigenvalues(j));
    analytic = analytic_spectrum(spec, count);
  } else if (p.which == "compressed-free") {
    if (points == 0) points = 4096;
    if (count == 0) count = 3;
    hamiltonian_spec spec;
    spec.v = variant::free_line;
    spec.b = boundary::full_line_box;
    spec.mass = p.mass;
    const grid1d g = make_grid(-2.0, 2.0, points, true);
    const hamiltonian_op sub = compress(build_hamiltonian(g, spec), region{0.0, 1.0});
    const spectrum sp = eigendecompose(sub, false);
    for (int j = 0; j < count; ++j) numeric.push_back(sp.eigenvalues(j));
    hamiltonian_spec wall;  // hard-wall limit supplies the reference values
    wall.v = variant::free_dirichlet;
    wall.b = boundary::dirichlet;
    wall.mass = p.mass;
    analytic = analytic_spectrum(wall, count);
  } else {
    throw parameter_error(
        "spectrum: unknown variant '" + p.which +
        "' (expected free-dirichlet, momentum-quadratic, or compressed-free)");
  }

  const config_echo cfg = {
      {"variant", p.which},
      {"points", std::to_string(points)},
      {"count", std::to_string(count)},
      {"mass", detail::cfg_num(p.mass)},
  };
  result_table t;
  t.name = "spectrum";
  t.provenance = provenance_header("spectrum", "hard-wall-spectra", cfg);
  t.columns = {"n", "numeric", "analytic", "rel_error"};
  for (int j = 0; j < count; ++j)
    t.rows.push_back({static_cast<double>(j + 1), numeric[j], analytic[j],
                      std::abs(numeric[j] - analytic[j]) / std::abs(analytic[j])});
  return {std::move(t)};
}

// ---------------------------------------------------------------------------
// euclid: restricted diffusion products against the hard-wall series kernel;
// the distance column tracks the step-doubling ladder, the diagonal column a
// pointwise kernel value.
// ---------------------------------------------------------------------------

struct euclid_params {
  int points = 512;
  double box_min = 0.0, box_max = 1.0;
  double a = 0.0, b = 1.0;
  double tau = 0.1;    // total imaginary time
  double mass = 1.0;
  double x = 0.5;      // diagonal sample position
  int terms = 5;       // series terms for the reference value
  std::vector<int> N_list = {8, 16, 32, 64};
};

inline std::vector<result_table> run_euclid(const euclid_params& p) {
  const config_echo cfg = {
      {"points", std::to_string(p.points)},
      {"box_min", detail::cfg_num(p.box_min)},
      {"box_max", detail::cfg_num(p.box_max)},
      {"a", detail::cfg_num(p.a)},
      {"b", detail::cfg_num(p.b)},
      {"tau", detail::cfg_num(p.tau)},
      {"mass", detail::cfg_num(p.mass)},
      {"x", detail::cfg_num(p.x)},
      {"terms", std::to_string(p.terms)},
      {"N_list", detail::cfg_int_list(p.N_list)},
  };
  const grid1d g = make_grid(p.box_min, p.box_max, p.points, false);
  const region r{p.a, p.b};
  const int i = euclid_nearest_index(g, p.x);
  auto product_at = [&](int N) {
    return wiener_product(heat_step_kernel(g, r, p.tau / N, p.mass), N);
  };

  result_table t;
  t.name = "euclid";
  t.provenance = provenance_header("euclid", "restricted-heat-kernel", cfg);
  t.columns = {"N", "kernel_distance", "diag_value"};
  for (int N : p.N_list) {
    if (N < 1) throw parameter_error("euclid: every N must be >= 1");
    const kernel_matrix K = product_at(N);
    const kernel_matrix K2 = product_at(2 * N);
    t.rows.push_back({static_cast<double>(N), kernel_distance(K, K2),
                      kernel_value(K, i, i)});
  }
  const double x_unit = (p.x - p.box_min) / g.length();
  t.provenance.emplace_back(
      "series_diag",
      format_sci(dirichlet_heat_series(x_unit, x_unit, p.tau, p.mass, p.terms)));
  return {std::move(t)};
}

// ---------------------------------------------------------------------------
// leak-exponent: short-time leakage of an unprojected packet straddling the
// region edge, with the fitted power law in the provenance.
// ---------------------------------------------------------------------------

struct leak_params {
  std::string which = "free-line";  // free-line | momentum
  int points = 2048;
  double box_min = -2.0, box_max = 2.0;
  double a = 0.0, b = 1.0;
  double x0 = 1.0, sigma = 0.1, k0 = 0.0;
  double mass = 1.0;
  std::vector<double> t_list = {1e-4,    2e-4,    4e-4,   8e-4,
                                1.6e-3,  3.2e-3,  6.4e-3, 1.28e-2};
};

inline std::vector<result_table> run_leak(const leak_params& p) {
  const config_echo cfg = {
      {"variant", p.which},
      {"points", std::to_string(p.points)},
      {"box_min", detail::cfg_num(p.box_min)},
      {"box_max", detail::cfg_num(p.box_max)},
      {"a", detail::cfg_num(p.a)},
      {"b", detail::cfg_num(p.b)},
      {"x0", detail::cfg_num(p.x0)},
      {"sigma", detail::cfg_num(p.sigma)},
      {"k0", detail::cfg_num(p.k0)},
      {"mass", detail::cfg_num(p.mass)},
      {"t_list", detail::cfg_real_list(p.t_list)},
  };
  hamiltonian_spec spec;
  if (p.which == "free-line") {
    spec.v = variant::free_line;
    spec.mass = p.mass;
  } else if (p.which == "momentum") {
    spec.v = variant::momentum;
  } else {
    throw parameter_error("leak-exponent: unknown variant '" + p.which +
                          "' (expected free-line or momentum)");
  }
  spec.b = boundary::full_line_box;
  const grid1d g = make_grid(p.box_min, p.box_max, p.points, true);
  const state_vector packet = gaussian_packet(g, p.x0, p.sigma, p.k0);
  const leak_fit fit =
      leakage_exponent_probe(spec, packet, region{p.a, p.b}, p.t_list);

  result_table t;
  t.name = "leak-exponent";
  t.provenance =
      provenance_header("leak-exponent", "short-time-leakage-scaling", cfg);
  t.columns = {"t", "leakage"};
  for (const auto& [tt, leak] : fit.samples) t.rows.push_back({tt, leak});
  t.provenance.emplace_back("fitted_exponent", format_sci(fit.exponent));
  t.provenance.emplace_back("fit_intercept", format_sci(fit.intercept));
  t.provenance.emplace_back("fit_residual", format_sci(fit.residual));
  return {std::move(t)};
}

// ---------------------------------------------------------------------------
// twolevel: the two-state pulsed-projection product against its closed form
// cos(T/N)^{2N}.
// ---------------------------------------------------------------------------

struct twolevel_params {
  double T = 1.0;
  std::vector<int> N_list = {10, 100, 1000, 10000};
};

inline std::vector<result_table> run_twolevel(const twolevel_params& p) {
  const config_echo cfg = {
      {"T", detail::cfg_num(p.T)},
      {"N_list", detail::cfg_int_list(p.N_list)},
  };
  const Eigen::MatrixXcd H = two_level_hamiltonian();
  const Eigen::VectorXd mask = two_level_mask();

  result_table t;
  t.name = "twolevel";
  t.provenance = provenance_header("twolevel", "two-level-closed-form", cfg);
  t.columns = {"N", "survival", "closed_form", "abs_error"};
  for (int N : p.N_list) {
    if (N < 1) throw parameter_error("twolevel: every N must be >= 1");
    const Eigen::MatrixXcd V = matrix_zeno_product(H, mask, p.T, N);
    const double surv = std::norm(V(0, 0));  // initial state = the kept level
    const double closed = two_level_survival(p.T, N);
    t.rows.push_back({static_cast<double>(N), surv, closed,
                      std::abs(surv - closed)});
  }
  return {std::move(t)};
}

// ---------------------------------------------------------------------------
// Emission: <name>.csv always; <name>.svg on request, plotting every column
// against the first. The CSV is the deterministic contract; the SVG is a view.
// ---------------------------------------------------------------------------

inline std::vector<std::filesystem::path> write_table_outputs(
    const std::vector<result_table>& tables,
    const std::filesystem::path& out_dir, bool svg) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw io_error("cannot create output directory '" + out_dir.string() +
                   "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const result_table& t : tables) {
    const std::filesystem::path csv = out_dir / (t.name + ".csv");
    emit_csv(t, csv);
    written.push_back(csv);
    if (!svg) continue;
    if (t.columns.size() < 2 || t.rows.size() < 2) continue;  // nothing to plot
    std::vector<double> x;
    x.reserve(t.rows.size());
    for (const auto& row : t.rows) x.push_back(row[0]);
    std::vector<svg_series> series(t.columns.size() - 1);
    for (size_t c = 1; c < t.columns.size(); ++c) {
      series[c - 1].label = t.columns[c];
      series[c - 1].y.reserve(t.rows.size());
      for (const auto& row : t.rows) series[c - 1].y.push_back(row[c]);
    }
    const std::filesystem::path svg_path = out_dir / (t.name + ".svg");
    write_svg_lineplot(svg_path, t.name, t.columns[0], "value", x, series);
    written.push_back(svg_path);
  }
  return written;
}

}  // namespace zeno
