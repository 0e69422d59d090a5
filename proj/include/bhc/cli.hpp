#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhc/bogoliubov.hpp"
#include "bhc/onsite.hpp"

namespace bhc::cli {

// Everything a run needs. Filled from the JSON config first, then from flags.
// Optional coordinates default to the located tip of the first lobe.
struct RunConfig {
  std::string subcommand;
  std::vector<int> lattice{100, 100};
  int n_trunc = 6;
  std::optional<int> n_trunc_override;  // set when the user gave n_trunc
  std::optional<double> t;
  std::optional<double> mu;
  std::vector<double> kappas{1.0, 2.0};
  int workers = 1;
  std::string out = "out";

  std::string scan_axis = "t";
  std::optional<std::pair<double, double>> scan_range;
  int scan_steps = 31;

  std::vector<std::string> fit_models{"log1"};
  std::optional<std::pair<double, double>> fit_window;
  std::string fit_side = "both";
  int fit_points = 15;

  std::vector<std::vector<double>> path;  // fractions of 2 pi
  int path_samples = 100;
  std::vector<std::vector<double>> momenta;  // fractions of 2 pi

  std::vector<int> gauss_dims{2, 3};
  double omega0 = 1.0;
  std::vector<double> masses{0.0, 1e-3, 1e-2, 0.1, 0.5, 0.9, 1.0};

  int holo_d = 2;
  double holo_L = 1.0;
  double holo_G_N = 1.0;
  double holo_sigma_d = 1.0;
  double holo_nu = 0.5;
  std::vector<double> xi{1.0, 2.0, 4.0, 8.0, 16.0};
  std::vector<double> delta_t;

  std::string geometry = "chain";
  int sites = 2;

  SelfConsistencyOptions mean_field{};
  BogoliubovOptions bogoliubov{};

  void validate() const;
};

// Applies a JSON document (object) on top of `base`. Unknown keys and type
// mismatches throw InvalidArgument.
RunConfig apply_config_json(const std::string& text, RunConfig base = {});

// JSON echo of the settings that determine the numbers. Leaves out the
// output directory and the worker count so CSV bytes do not depend on them.
std::string config_echo(const RunConfig& cfg);

// 12 significant digits; nan and inf spelled out.
std::string format_number(double x);

std::string sha256_hex(const std::string& bytes);

std::vector<int> parse_lattice(const std::string& text);

// Parses argv, runs the subcommand, writes CSVs and manifest.json into --out.
// Returns 0 on success, 2 on configuration errors, 3 on numerical failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Recomputes every checksum listed in DIR/manifest.json. Empty on success,
// otherwise the list of mismatching or missing files.
std::vector<std::string> verify_manifest(const std::string& dir);

}  // namespace bhc::cli
