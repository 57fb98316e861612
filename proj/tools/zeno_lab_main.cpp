// zeno-lab: command-line front end for the pulsed-confinement laboratory.
//
//   zeno-lab <experiment> [--key value]... [--config file] [--out dir] [--svg]
//
// Experiments: fig1, zeno-convergence, spectrum, euclid, leak-exponent,
// twolevel. Each writes one CSV per result table into --out (default: the
// current directory) and, with --svg, a line-plot rendering of the same data.
// A config file holds flat key=value lines ('#' comments); command-line flags
// override file values, which override built-in defaults. The environment
// variable ZENO_LAB_THREADS caps internal linear-algebra parallelism.

#include <CLI11.hpp>

#include <Eigen/Core>

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "zeno/experiments.hpp"

namespace {

// Shared output options; every experiment gets the same emission interface.
struct output_options {
  std::string out_dir = ".";
  bool svg = false;
  std::string config_file;
};

void add_common_options(CLI::App* sub, output_options* out) {
  sub->add_option("--out", out->out_dir, "Output directory (created if missing)")
      ->capture_default_str();
  sub->add_flag("--svg", out->svg, "Also write SVG line plots");
  sub->add_option("--config", out->config_file,
                  "Config file with flat key=value lines ('#' comments); "
                  "keys are the experiment's option names; flags override "
                  "file values, which override defaults");
}

std::string trimmed(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Applies a flat key=value config file to the experiment's options. Values
// for options already set on the command line are skipped, so flags override
// file values, which override defaults. Unknown keys are hard errors: a typo
// must never silently fall back to a default.
void apply_config_file(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file)
    throw zeno::config_error("cannot read config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(file, line)) {
    ++lineno;
    const std::string entry = trimmed(line);
    if (entry.empty() || entry[0] == '#') continue;
    const std::size_t eq = entry.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw zeno::config_error(where + ": expected key=value, got '" + entry + "'");
    const std::string key = trimmed(entry.substr(0, eq));
    const std::string value = trimmed(entry.substr(eq + 1));
    if (key.empty())
      throw zeno::config_error(where + ": empty key");
    if (key == "config")
      throw zeno::config_error(where + ": a config file cannot chain to another");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt == nullptr)
      throw zeno::config_error(where + ": unknown key '" + key +
                               "' for experiment '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;  // the command-line flag wins
    opt->add_result(value);
    opt->run_callback();
  }
}

void report_written(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
}

// Applies the ZENO_LAB_THREADS cap; rejects non-numeric or non-positive
// values loudly rather than running with a silently ignored setting.
void apply_thread_cap() {
  const char* env = std::getenv("ZENO_LAB_THREADS");
  if (!env) return;
  const std::string s(env);
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || v < 1)
    throw zeno::config_error("ZENO_LAB_THREADS must be a positive integer, got '" +
                             s + "'");
  Eigen::setNbThreads(v);
}

}  // namespace

int main(int argc, char** argv) {
  // Deterministic number formatting regardless of the ambient locale.
  std::setlocale(LC_NUMERIC, "C");

  CLI::App app{"zeno-lab: projected-evolution (pulsed confinement) laboratory"};
  app.set_version_flag("--version", std::string("zeno-lab ") + ZENO_LAB_VERSION);
  app.require_subcommand(1);

  output_options out;

  // --- fig1 -----------------------------------------------------------------
  zeno::fig1_params fig1;
  CLI::App* sub_fig1 = app.add_subcommand(
      "fig1",
      "Snapshot densities: a translating packet under pulsed confinement to "
      "[a,b], next to the twisted-boundary circle dynamics on [a,b]");
  sub_fig1->add_option("--points", fig1.points, "Grid points")->capture_default_str();
  sub_fig1->add_option("--box-min", fig1.box_min, "Box lower edge")->capture_default_str();
  sub_fig1->add_option("--box-max", fig1.box_max, "Box upper edge")->capture_default_str();
  sub_fig1->add_option("--a", fig1.a, "Region lower edge")->capture_default_str();
  sub_fig1->add_option("--b", fig1.b, "Region upper edge")->capture_default_str();
  sub_fig1->add_option("--x0", fig1.x0, "Packet center")->capture_default_str();
  sub_fig1->add_option("--sigma", fig1.sigma, "Packet width (density std dev)")
      ->capture_default_str();
  sub_fig1->add_option("--k0", fig1.k0, "Packet carrier wavenumber")->capture_default_str();
  sub_fig1->add_option("--T", fig1.T, "Total time")->capture_default_str();
  sub_fig1->add_option("--steps", fig1.steps, "Projection steps")->capture_default_str();
  sub_fig1->add_option("--alpha", fig1.alpha, "Circle boundary twist, in [0, 2*pi)")
      ->capture_default_str();
  add_common_options(sub_fig1, &out);
  sub_fig1->callback([&] {
    apply_config_file(sub_fig1, out.config_file);
    report_written(zeno::write_table_outputs(zeno::run_fig1(fig1), out.out_dir, out.svg));
  });

  // --- zeno-convergence -------------------------------------------------------
  zeno::convergence_params conv;
  std::string conv_N = zeno::detail::cfg_int_list(conv.N_list);
  CLI::App* sub_conv = app.add_subcommand(
      "zeno-convergence",
      "Survival and distance to the compressed-generator limit as the number "
      "of projection steps grows");
  sub_conv->add_option("--points", conv.points, "Grid points")->capture_default_str();
  sub_conv->add_option("--box-min", conv.box_min, "Box lower edge")->capture_default_str();
  sub_conv->add_option("--box-max", conv.box_max, "Box upper edge")->capture_default_str();
  sub_conv->add_option("--a", conv.a, "Region lower edge")->capture_default_str();
  sub_conv->add_option("--b", conv.b, "Region upper edge")->capture_default_str();
  sub_conv->add_option("--x0", conv.x0, "Packet center")->capture_default_str();
  sub_conv->add_option("--sigma", conv.sigma, "Packet width")->capture_default_str();
  sub_conv->add_option("--k0", conv.k0, "Packet carrier wavenumber")->capture_default_str();
  sub_conv->add_option("--mass", conv.mass, "Particle mass")->capture_default_str();
  sub_conv->add_option("--T", conv.T, "Total time")->capture_default_str();
  sub_conv->add_option("--N-list", conv_N, "Comma-separated step counts, ascending")
      ->capture_default_str();
  add_common_options(sub_conv, &out);
  sub_conv->callback([&] {
    apply_config_file(sub_conv, out.config_file);
    conv.N_list = zeno::parse_int_list(conv_N);
    report_written(
        zeno::write_table_outputs(zeno::run_convergence(conv), out.out_dir, out.svg));
  });

  // --- spectrum ---------------------------------------------------------------
  zeno::spectrum_params spec;
  CLI::App* sub_spec = app.add_subcommand(
      "spectrum",
      "Numeric vs closed-form eigenvalues (hard-wall families; compressed "
      "full-line operator)");
  sub_spec
      ->add_option("--variant", spec.which,
                   "free-dirichlet | momentum-quadratic | compressed-free")
      ->capture_default_str();
  sub_spec->add_option("--points", spec.points,
                       "Grid points (0 = per-variant default: 511 hard-wall, "
                       "4096 compressed)")
      ->capture_default_str();
  sub_spec->add_option("--count", spec.count,
                       "Eigenvalues to report (0 = per-variant default)")
      ->capture_default_str();
  sub_spec->add_option("--mass", spec.mass, "Particle mass (massive families)")
      ->capture_default_str();
  add_common_options(sub_spec, &out);
  sub_spec->callback([&] {
    apply_config_file(sub_spec, out.config_file);
    report_written(
        zeno::write_table_outputs(zeno::run_spectrum(spec), out.out_dir, out.svg));
  });

  // --- euclid -----------------------------------------------------------------
  zeno::euclid_params euc;
  std::string euc_N = zeno::detail::cfg_int_list(euc.N_list);
  CLI::App* sub_euc = app.add_subcommand(
      "euclid",
      "Restricted diffusion products vs the hard-wall heat kernel series");
  sub_euc->add_option("--points", euc.points, "Grid points")->capture_default_str();
  sub_euc->add_option("--box-min", euc.box_min, "Box lower edge")->capture_default_str();
  sub_euc->add_option("--box-max", euc.box_max, "Box upper edge")->capture_default_str();
  sub_euc->add_option("--a", euc.a, "Region lower edge")->capture_default_str();
  sub_euc->add_option("--b", euc.b, "Region upper edge")->capture_default_str();
  sub_euc->add_option("--tau", euc.tau, "Total imaginary time")->capture_default_str();
  sub_euc->add_option("--mass", euc.mass, "Particle mass")->capture_default_str();
  sub_euc->add_option("--x", euc.x, "Diagonal sample position")->capture_default_str();
  sub_euc->add_option("--terms", euc.terms, "Series terms for the reference value")
      ->capture_default_str();
  sub_euc->add_option("--N-list", euc_N, "Comma-separated step counts")
      ->capture_default_str();
  add_common_options(sub_euc, &out);
  sub_euc->callback([&] {
    apply_config_file(sub_euc, out.config_file);
    euc.N_list = zeno::parse_int_list(euc_N);
    report_written(
        zeno::write_table_outputs(zeno::run_euclid(euc), out.out_dir, out.svg));
  });

  // --- leak-exponent ------------------------------------------------------------
  zeno::leak_params leak;
  std::string leak_t = zeno::detail::cfg_real_list(leak.t_list);
  CLI::App* sub_leak = app.add_subcommand(
      "leak-exponent",
      "Short-time leakage power law of a packet straddling the region edge");
  sub_leak->add_option("--variant", leak.which, "free-line | momentum")
      ->capture_default_str();
  sub_leak->add_option("--points", leak.points, "Grid points")->capture_default_str();
  sub_leak->add_option("--box-min", leak.box_min, "Box lower edge")->capture_default_str();
  sub_leak->add_option("--box-max", leak.box_max, "Box upper edge")->capture_default_str();
  sub_leak->add_option("--a", leak.a, "Region lower edge")->capture_default_str();
  sub_leak->add_option("--b", leak.b, "Region upper edge")->capture_default_str();
  sub_leak->add_option("--x0", leak.x0, "Packet center")->capture_default_str();
  sub_leak->add_option("--sigma", leak.sigma, "Packet width")->capture_default_str();
  sub_leak->add_option("--k0", leak.k0, "Packet carrier wavenumber")->capture_default_str();
  sub_leak->add_option("--mass", leak.mass, "Particle mass (free-line)")
      ->capture_default_str();
  sub_leak->add_option("--t-list", leak_t, "Comma-separated probe times")
      ->capture_default_str();
  add_common_options(sub_leak, &out);
  sub_leak->callback([&] {
    apply_config_file(sub_leak, out.config_file);
    leak.t_list = zeno::parse_real_list(leak_t);
    report_written(
        zeno::write_table_outputs(zeno::run_leak(leak), out.out_dir, out.svg));
  });

  // --- twolevel -----------------------------------------------------------------
  zeno::twolevel_params two;
  std::string two_N = zeno::detail::cfg_int_list(two.N_list);
  CLI::App* sub_two = app.add_subcommand(
      "twolevel", "Two-state pulsed-projection product vs cos(T/N)^(2N)");
  sub_two->add_option("--T", two.T, "Total time")->capture_default_str();
  sub_two->add_option("--N-list", two_N, "Comma-separated step counts")
      ->capture_default_str();
  add_common_options(sub_two, &out);
  sub_two->callback([&] {
    apply_config_file(sub_two, out.config_file);
    two.N_list = zeno::parse_int_list(two_N);
    report_written(
        zeno::write_table_outputs(zeno::run_twolevel(two), out.out_dir, out.svg));
  });

  try {
    apply_thread_cap();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);  // usage errors, --help, --version
  } catch (const zeno::error& e) {
    std::cerr << "zeno-lab: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "zeno-lab: internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
