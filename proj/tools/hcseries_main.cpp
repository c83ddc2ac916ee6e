#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcs/checks.hpp"
#include "hcs/connection.hpp"
#include "hcs/cfunction.hpp"
#include "hcs/qkz.hpp"
#include "hcs/sampling.hpp"

using namespace hcs;

namespace {

nlohmann::json cplx(const Complex& c) { return nlohmann::json::array({c.real(), c.imag()}); }

CVec parse_point(const std::string& s, int dim) {
  // comma-separated coordinates "re[:im],re[:im],..."
  CVec out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    double re = std::stod(tok.substr(0, colon));
    double im = colon == std::string::npos ? 0.0 : std::stod(tok.substr(colon + 1));
    out.push_back(Complex{re, im});
  }
  if (int(out.size()) != dim)
    throw std::invalid_argument("point needs " + std::to_string(dim) + " coordinates");
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(path);
    f << text << "\n";
  }
}

int cmd_info(const RunConfig& cfg) {
  InitialDatum D = cfg.build();
  nlohmann::json j;
  j["family"] = family_name(D.family);
  j["rank"] = D.rank;
  j["bullet"] = bullet_name(D.bullet);
  j["q"] = D.q;
  j["ambient_dim"] = D.dim;
  j["num_roots"] = D.roots.size();
  j["weyl_order"] = D.W0.size();
  j["longest_length"] = D.W0.length[D.w_longest()];
  nlohmann::json roots = nlohmann::json::array();
  for (int p : D.positive) roots.push_back(D.roots[p]);
  j["positive_roots"] = roots;
  j["psi"] = D.roots[D.psi];
  j["theta"] = D.roots[D.theta];
  j["rho"] = D.rho;
  j["rho_tilde"] = D.rhotil;
  nlohmann::json istar = nlohmann::json::array();
  for (int i = 1; i <= D.rank; ++i) istar.push_back(D.istar[i]);
  j["istar"] = istar;
  nlohmann::json words = nlohmann::json::array();
  for (int e = 0; e < D.W0.size(); ++e) {
    std::string w;
    for (int letter : D.W0.words[e]) w += "s" + std::to_string(letter);
    words.push_back(w.empty() ? "e" : w);
  }
  j["weyl_elements"] = words;
  nlohmann::json aw = nlohmann::json::object();
  for (size_t o = 0; o < D.orbit_names.size(); ++o) {
    int rep = -1;
    for (size_t r = 0; r < D.roots.size(); ++r)
      if (D.orbit_id[r] == int(o) && D.is_positive_root(int(r))) {
        rep = int(r);
        break;
      }
    AwQuadruple a = D.aw(rep), at = D.aw_dual(rep);
    aw[D.orbit_names[o]] = {
        {"a", cplx(a.a)},       {"b", cplx(a.b)},       {"c", cplx(a.c)},
        {"d", cplx(a.d)},       {"a~", cplx(at.a)},     {"b~", cplx(at.b)},
        {"c~", cplx(at.c)},     {"d~", cplx(at.d)},     {"q_alpha", a.q_alpha},
        {"mu", D.mu(rep)},
    };
  }
  j["aw_parameters"] = aw;
  emit(j.dump(2), cfg.out_path);
  return 0;
}

int cmd_eval(const RunConfig& cfg, const std::string& target, const std::string& zs,
             const std::string& xis, int index, const std::string& nus,
             const std::string& lams) {
  InitialDatum D = cfg.build();
  nlohmann::json j;
  j["target"] = target;
  if (target == "phi") {
    CVec z = parse_point(zs, D.dim), xi = parse_point(xis, D.dim);
    HCSeries H(D, xi, cfg.trunc);
    Complex v = H.value(z);
    j["value"] = cplx(v);
    j["tail_ratio"] = H.tail_ratio(z);
    j["min_denominator"] = H.table().min_denom;
  } else if (target == "phi-rank1") {
    CVec z = parse_point(zs, D.dim), xi = parse_point(xis, D.dim);
    Complex x = dot(D.roots[D.simple[index - 1]], z);
    j["value"] = cplx(phi_rank_one(D, index, x, xi));
  } else if (target == "m") {
    CVec z = parse_point(zs, D.dim), xi = parse_point(xis, D.dim);
    MSimple m = m_simple(D, index, z, xi);
    j["m_ee"] = cplx(m.ee);
    j["m_off"] = cplx(m.off);
  } else if (target == "C") {
    CVec z = parse_point(zs, D.dim), xi = parse_point(xis, D.dim);
    CMat C(0);
    if (!nus.empty() || !lams.empty()) {
      // bispectral step matrix C_{(tau(nu), tau(lambda))}(z, xi)
      CVec nuc = nus.empty() ? CVec(D.dim, Complex{0.0, 0.0}) : parse_point(nus, D.dim);
      CVec lamc = lams.empty() ? CVec(D.dim, Complex{0.0, 0.0}) : parse_point(lams, D.dim);
      RVec nu(D.dim), lam(D.dim);
      for (int d = 0; d < D.dim; ++d) nu[d] = nuc[d].real(), lam[d] = lamc[d].real();
      if (!D.Lt.contains(nu)) throw std::invalid_argument("--nu must lie in Lambda~");
      if (!D.L.contains(lam)) throw std::invalid_argument("--lam must lie in Lambda");
      C = c_cocycle(D, D.ea_translation(nu), D.dual().ea_translation(lam), z, xi);
      j["pair"] = {{"nu", nu}, {"lambda", lam}};
    } else {
      C = c_left_simple(D, index, z, xi);
      j["generator"] = index;
    }
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < C.n; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < C.n; ++c) row.push_back(cplx(C(r, c)));
      rows.push_back(row);
    }
    j["matrix"] = rows;
  } else if (target == "c-sph") {
    CVec z = parse_point(zs, D.dim), xi = parse_point(xis, D.dim);
    j["value"] = cplx(c_sph(D, z, xi));
  } else if (target == "theta-lattice") {
    CVec z = parse_point(zs, D.dim);
    auto r = lattice_theta(D.L.basis, z, D.ctx);
    j["value"] = cplx(r.value);
    j["tail_estimate"] = r.tail_estimate;
    j["radius"] = r.radius;
  } else {
    throw std::invalid_argument("unknown eval target '" + target + "'");
  }
  emit(j.dump(2), cfg.out_path);
  return 0;
}

int cmd_check(const RunConfig& cfg, std::vector<std::string> suites,
              const std::string& csv_path) {
  InitialDatum D = cfg.build();
  if (suites.empty()) suites = cfg.suites;
  if (suites.empty()) suites = {"all"};
  CheckOptions opts;
  opts.seed = cfg.seed;
  opts.samples = cfg.samples;
  opts.tol_scale = cfg.tol_scale;
  opts.trunc = cfg.trunc;
  Records all;
  for (const auto& s : suites) {
    Records r = run_suite(D, s, opts);
    all.insert(all.end(), r.begin(), r.end());
  }
  std::string json = records_to_json(all, config_to_json(cfg));
  emit(json, cfg.out_path);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "name,anchor,residual,tol,pass,samples\n";
    for (const auto& r : all)
      csv << r.name << ',' << r.anchor << ',' << r.residual << ',' << r.tol << ','
          << (r.pass ? 1 : 0) << ',' << r.samples << "\n";
  }
  bool ok = true;
  for (const auto& r : all) {
    ok = ok && r.pass;
    std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "  residual=" << r.residual
              << " tol=" << r.tol;
    if (!r.pass && !r.note.empty()) std::cerr << "  (" << r.note << ")";
    std::cerr << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical engine and verification tool for basic Harish-Chandra "
               "series on root systems"};
  app.require_subcommand(1);

  std::string config_path;
  if (const char* env = std::getenv("HCSERIES_CONFIG")) config_path = env;
  std::string suite, out_path, target, zs, xis, nus, lams;
  int index = 1;
  uint64_t seed = 0;
  bool seed_set = false, trunc_set = false, samples_set = false, tol_set = false;
  int trunc = 0, samples = 0;
  double tol_scale = 1.0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file path");
    cmd->add_option("--out", out_path, "output path (defaults to stdout)");
    cmd->add_option("--seed", seed, "sampling seed")->each([&](const std::string&) {
      seed_set = true;
    });
    cmd->add_option("--trunc", trunc, "series truncation height")
        ->each([&](const std::string&) { trunc_set = true; });
    cmd->add_option("--samples", samples, "sample count per check")
        ->each([&](const std::string&) { samples_set = true; });
    cmd->add_option("--tol-scale", tol_scale, "tolerance multiplier")
        ->each([&](const std::string&) { tol_set = true; });
  };

  CLI::App* info = app.add_subcommand("info", "print the derived datum");
  add_common(info);
  CLI::App* eval = app.add_subcommand("eval", "evaluate one object at a point");
  add_common(eval);
  eval->add_option("--target", target,
                   "phi | phi-rank1 | m | C | c-sph | theta-lattice")
      ->required();
  eval->add_option("--z", zs, "point z as re:im,re:im,...");
  eval->add_option("--xi", xis, "point xi as re:im,re:im,...");
  eval->add_option("--i", index, "simple-root / generator index");
  eval->add_option("--nu", nus, "translation in Lambda~ for the C target");
  eval->add_option("--lam", lams, "translation in Lambda for the C target");
  CLI::App* check = app.add_subcommand("check", "run verification suites");
  add_common(check);
  check->add_option("--suite", suite, "suite name (repeatable via config)");
  std::string csv_path;
  check->add_option("--csv", csv_path, "also dump one CSV row per check");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (seed_set) cfg.seed = seed;
    if (trunc_set) cfg.trunc = trunc;
    if (samples_set) cfg.samples = samples;
    if (tol_set) cfg.tol_scale = tol_scale;
    if (!out_path.empty()) cfg.out_path = out_path;

    if (info->parsed()) return cmd_info(cfg);
    if (eval->parsed()) return cmd_eval(cfg, target, zs, xis, index, nus, lams);
    if (check->parsed()) {
      std::vector<std::string> suites;
      if (!suite.empty()) suites.push_back(suite);
      return cmd_check(cfg, suites, csv_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
