#include "hcs/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hcs {

namespace {
std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    auto as_double = [&] {
      try {
        return std::stod(val);
      } catch (...) {
        throw ConfigError("config line " + std::to_string(lineno) + ": bad number '" +
                          val + "'");
      }
    };
    if (section == "datum") {
      if (key == "family") cfg.family = val;
      else if (key == "rank") cfg.rank = int(as_double());
      else if (key == "bullet") cfg.bullet = val;
      else if (key == "q") cfg.q = as_double();
      else throw ConfigError("unknown [datum] key '" + key + "'");
    } else if (section == "kappa") {
      auto dotpos = key.find('.');
      if (dotpos == std::string::npos)
        throw ConfigError("kappa keys look like <orbit>.<label>, got '" + key + "'");
      std::string orbit = key.substr(0, dotpos);
      std::string label = key.substr(dotpos + 1);
      KappaInput& ki = cfg.kappa[orbit];
      double v = as_double();
      if (label == "alpha") ki.a = v;
      else if (label == "2alpha") ki.a2 = v;
      else if (label == "alpha1") ki.a1 = v;
      else if (label == "2alpha1") ki.a21 = v;
      else throw ConfigError("unknown kappa label '" + label + "'");
    } else if (section == "numerics") {
      if (key == "trunc") cfg.trunc = int(as_double());
      else if (key == "factor_cutoff") cfg.factor_cutoff = as_double();
      else if (key == "pole_guard") cfg.pole_guard = as_double();
      else if (key == "seed") cfg.seed = uint64_t(as_double());
      else if (key == "samples") cfg.samples = int(as_double());
      else if (key == "tol_scale") cfg.tol_scale = as_double();
      else throw ConfigError("unknown [numerics] key '" + key + "'");
    } else if (section == "suites") {
      if (key == "run") {
        std::istringstream ss(val);
        std::string tok;
        while (ss >> tok) {
          if (!tok.empty() && tok.back() == ',') tok.pop_back();
          if (!tok.empty()) cfg.suites.push_back(tok);
        }
      } else {
        throw ConfigError("unknown [suites] key '" + key + "'");
      }
    } else if (section == "output") {
      if (key == "path") cfg.out_path = val;
      else throw ConfigError("unknown [output] key '" + key + "'");
    } else {
      throw ConfigError("unknown section '" + section + "'");
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

InitialDatum RunConfig::build() const {
  Family fam;
  if (family == "gl") fam = Family::GL;
  else if (family == "a-semisimple") fam = Family::ASemisimple;
  else if (family == "b-koornwinder") fam = Family::BKoornwinder;
  else throw std::invalid_argument("unknown family '" + family + "'");
  Bullet b;
  if (bullet == "u") b = Bullet::U;
  else if (bullet == "t") b = Bullet::T;
  else throw std::invalid_argument("bullet must be 'u' or 't'");
  InitialDatum D = build_datum(fam, rank, b, kappa, q, factor_cutoff, pole_guard);
  return D;
}

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["datum"] = {{"family", cfg.family},
                {"rank", cfg.rank},
                {"bullet", cfg.bullet},
                {"q", cfg.q}};
  nlohmann::json jk;
  for (const auto& kv : cfg.kappa) {
    nlohmann::json o;
    if (kv.second.a) o["alpha"] = *kv.second.a;
    if (kv.second.a2) o["2alpha"] = *kv.second.a2;
    if (kv.second.a1) o["alpha1"] = *kv.second.a1;
    if (kv.second.a21) o["2alpha1"] = *kv.second.a21;
    jk[kv.first] = o;
  }
  j["kappa"] = jk;
  j["numerics"] = {{"trunc", cfg.trunc},
                   {"factor_cutoff", cfg.factor_cutoff},
                   {"pole_guard", cfg.pole_guard},
                   {"seed", cfg.seed},
                   {"samples", cfg.samples},
                   {"tol_scale", cfg.tol_scale}};
  j["suites"] = cfg.suites;
  if (!cfg.out_path.empty()) j["output"] = cfg.out_path;
  return j.dump(2);
}

}  // namespace hcs
