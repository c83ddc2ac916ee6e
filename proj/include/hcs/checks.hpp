#pragma once

#include <string>
#include <vector>

#include "hcs/config.hpp"
#include "hcs/rootdata.hpp"

namespace hcs {

/// One verified identity: name, the identity it certifies, measured residual
/// against the tolerance, and sampling metadata.
struct CheckRecord {
  std::string name;
  std::string anchor;  // which identity the residual certifies
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  int samples = 0;
  double ms = 0.0;
  std::string note;
};

struct CheckOptions {
  uint64_t seed = 12345;
  int samples = 20;
  double tol_scale = 1.0;
  int trunc = 24;
};

using Records = std::vector<CheckRecord>;

/// Suites exposed by the CLI `check` command.
std::vector<std::string> suite_names();

/// Some suites require structural features of the datum (rank, family,
/// lattice shape); returns false with a reason when not applicable.
bool suite_applicable(const InitialDatum& D, const std::string& suite,
                      std::string* reason);

/// Runs one suite against the datum.  Throws std::invalid_argument on an
/// unsupported suite/datum pairing.
Records run_suite(const InitialDatum& D, const std::string& suite,
                  const CheckOptions& opts);

/// The full acceptance battery on fixed reference data; every tolerance is
/// pinned here.  Independent of any configuration file.
Records acceptance_criteria();

/// Serialization of records (config echo optional).
std::string records_to_json(const Records& recs, const std::string& config_json = "");

}  // namespace hcs
