#pragma once

#include <map>
#include <string>
#include <vector>

#include "hcs/rootdata.hpp"

namespace hcs {

/// Run configuration parsed from the INI-style config file.  Sections:
/// [datum] family, rank, bullet, q; [kappa] <orbit>.<label> entries with
/// labels alpha, 2alpha, alpha1, 2alpha1; [numerics] trunc, factor_cutoff,
/// pole_guard, seed, samples, tol_scale; [suites] run; [output] path.
struct RunConfig {
  std::string family = "b-koornwinder";
  int rank = 2;
  std::string bullet = "t";
  double q = 0.5;
  std::map<std::string, KappaInput> kappa;

  int trunc = 24;
  double factor_cutoff = 1e-15;
  double pole_guard = 1e-8;
  uint64_t seed = 12345;
  int samples = 20;
  double tol_scale = 1.0;

  std::vector<std::string> suites;
  std::string out_path;

  InitialDatum build() const;
};

/// Parses key = value lines under [section] headers; '#' starts a comment.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Serializes the effective configuration (echoed into reports).
std::string config_to_json(const RunConfig& cfg);

}  // namespace hcs
