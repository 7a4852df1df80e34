#include "feff/cli/config.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "feff/fefferman/suites.hpp"
#include "feff/symcore/parser.hpp"
#include "feff/symcore/poly.hpp"

namespace feff {

namespace {

std::string key_name(const std::array<int, 3>& k) {
  return std::to_string(k[0]) + "," + std::to_string(k[1]) + "," + std::to_string(k[2]);
}

std::optional<std::array<int, 3>> parse_index(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream in(t);
  std::array<int, 3> k{};
  for (auto& x : k)
    if (!(in >> x)) return std::nullopt;
  std::string rest;
  if (in >> rest) return std::nullopt;
  return k;
}

template <class T>
std::optional<T> scalar(const YAML::Node& node, const std::string& where, std::vector<Diagnostic>& diags) {
  if (!node.IsScalar()) {
    diags.push_back({where, "expected a scalar"});
    return std::nullopt;
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    diags.push_back({where, "cannot read '" + node.Scalar() + "'"});
    return std::nullopt;
  }
}

std::string gamma_key(const std::array<int, 3>& k) { return "gamma." + key_name(k); }

}  // namespace

std::string to_string(const Diagnostic& d) { return d.where.empty() ? d.message : d.where + ": " + d.message; }

RunConfig parse_config(const std::string& text, std::vector<Diagnostic>& diags) {
  RunConfig cfg;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    diags.push_back({"line " + std::to_string(e.mark.line + 1), e.msg});
    return cfg;
  }
  if (!root.IsMap()) {
    diags.push_back({"", "top level must be a table"});
    return cfg;
  }
  bool have_n = false;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    const YAML::Node& v = kv.second;
    if (key == "n") {
      if (auto x = scalar<int>(v, "n", diags)) {
        cfg.n = *x;
        have_n = true;
      }
    } else if (key == "gamma") {
      if (v.IsNull()) continue;
      if (!v.IsMap()) {
        diags.push_back({"gamma", "expected a table of \"a,b,c\": expression"});
        continue;
      }
      for (const auto& e : v) {
        const std::string idx = e.first.as<std::string>();
        auto k = parse_index(idx);
        if (!k) {
          diags.push_back({"gamma." + idx, "index must be three integers a,b,c"});
          continue;
        }
        if (auto s = scalar<std::string>(e.second, gamma_key(*k), diags)) {
          if (cfg.gamma.count(*k)) diags.push_back({gamma_key(*k), "duplicate entry"});
          cfg.gamma[*k] = *s;
        }
      }
    } else if (key == "suites") {
      if (!v.IsSequence()) {
        diags.push_back({"suites", "expected a list"});
        continue;
      }
      for (std::size_t i = 0; i < v.size(); ++i)
        if (auto s = scalar<std::string>(v[i], "suites[" + std::to_string(i) + "]", diags)) cfg.suites.push_back(*s);
    } else if (key == "degree_cap") {
      if (auto x = scalar<int>(v, "degree_cap", diags)) cfg.degree_cap = *x;
    } else if (key == "output_path") {
      if (auto x = scalar<std::string>(v, "output_path", diags)) cfg.output_path = *x;
    } else if (key == "seed") {
      if (auto x = scalar<std::uint64_t>(v, "seed", diags)) cfg.seed = *x;
    } else {
      diags.push_back({key, "unknown key"});
    }
  }
  if (!have_n) diags.push_back({"n", "missing"});
  return cfg;
}

RunConfig load_config(const std::string& path, std::vector<Diagnostic>& diags) {
  std::ifstream in(path);
  if (!in) {
    diags.push_back({path, "cannot open file"});
    return {};
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), diags);
}

std::vector<Diagnostic> validate_config(const RunConfig& cfg) {
  std::vector<Diagnostic> out;
  const bool n_ok = cfg.n >= 2 && cfg.n <= kMaxBaseDim;
  if (!n_ok) out.push_back({"n", "must lie in [2, " + std::to_string(kMaxBaseDim) + "], got " + std::to_string(cfg.n)});
  if (cfg.degree_cap < 1 || cfg.degree_cap > 255) out.push_back({"degree_cap", "must lie in [1, 255]"});
  if (n_ok) {
    auto vars = base_vars(cfg.n);
    std::map<std::array<int, 3>, RatFunc> parsed;
    for (const auto& [k, expr] : cfg.gamma) {
      if (std::any_of(k.begin(), k.end(), [&](int i) { return i < 1 || i > cfg.n; })) {
        out.push_back({gamma_key(k), "index out of range 1.." + std::to_string(cfg.n)});
        continue;
      }
      try {
        parsed[k] = parse_expr(expr, vars);
      } catch (const ParseError& e) {
        out.push_back({gamma_key(k), e.what()});
      }
    }
    for (const auto& [k, f] : parsed) {
      std::array<int, 3> partner{k[0], k[2], k[1]};
      if (k[1] >= k[2]) continue;
      auto it = parsed.find(partner);
      if (it != parsed.end() && !(it->second == f))
        out.push_back({gamma_key(k), "asymmetric in (b,c): differs from entry " + key_name(partner)});
    }
  }
  std::set<std::string> seen;
  for (const auto& s : cfg.suites) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      out.push_back({"suites", "unknown suite '" + s + "'"});
      continue;
    }
    if (!seen.insert(s).second) out.push_back({"suites", "suite '" + s + "' listed twice"});
    if (suite_requires_dim2(s) && n_ok && cfg.n != 2)
      out.push_back({"suites", "suite '" + s + "' requires n = 2, got n = " + std::to_string(cfg.n)});
  }
  return out;
}

ProjectiveStructure build_structure(const RunConfig& cfg) {
  if (cfg.n < 2 || cfg.n > kMaxBaseDim) throw DomainError("n out of range");
  ProjectiveStructure ps = ProjectiveStructure::flat(cfg.n);
  auto vars = base_vars(cfg.n);
  for (const auto& [k, expr] : cfg.gamma) {
    RatFunc f = parse_expr(expr, vars);
    int a = k[0] - 1, b = k[1] - 1, c = k[2] - 1;
    if (a < 0 || b < 0 || c < 0 || a >= cfg.n || b >= cfg.n || c >= cfg.n) throw DomainError("gamma index out of range");
    ps.G(a, b, c) = f;
    if (!cfg.gamma.count({k[0], k[2], k[1]})) ps.G(a, c, b) = f;
  }
  ps.validate();
  return ps;
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json g = nlohmann::json::object();
  for (const auto& [k, expr] : cfg.gamma) g[key_name(k)] = expr;
  nlohmann::json j = {{"n", cfg.n}, {"gamma", g}, {"suites", cfg.suites}, {"degree_cap", cfg.degree_cap}};
  if (!cfg.output_path.empty()) j["output_path"] = cfg.output_path;
  return j;
}

RunResult run_config(const RunConfig& cfg, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  ProjectiveStructure ps = build_structure(cfg);
  std::vector<std::string> suites = cfg.suites;
  if (suites.empty())
    for (const auto& s : suite_names())
      if (!suite_requires_dim2(s) || cfg.n == 2) suites.push_back(s);
  int old_cap = degree_cap();
  set_degree_cap(cfg.degree_cap);
  RunResult res;
  nlohmann::json jsuites = nlohmann::json::array();
  try {
    SuiteOptions opt;
    opt.seed = seed;
    for (const auto& id : suites) {
      SuiteReport rep = run_suite(id, ps, opt);
      res.failed = res.failed || rep.failed();
      nlohmann::json claims = nlohmann::json::array();
      for (const auto& c : rep.claims) {
        nlohmann::json jc = {{"id", c.id}, {"status", to_string(c.status)}};
        if (!c.witness.empty()) jc["witness"] = c.witness;
        jc["millis"] = c.millis;
        claims.push_back(std::move(jc));
      }
      jsuites.push_back({{"id", rep.id}, {"claims", std::move(claims)}});
    }
  } catch (...) {
    set_degree_cap(old_cap);
    throw;
  }
  set_degree_cap(old_cap);
  res.report = {{"config", config_json(cfg)},
                {"suites", std::move(jsuites)},
                {"seed", seed},
                {"version", kVersion},
                {"runtime_millis", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  return res;
}

}  // namespace feff
