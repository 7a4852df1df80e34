#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "feff/cli/config.hpp"

using namespace feff;

namespace {

enum Exit { ok = 0, claim_failed = 1, bad_input = 2, cap_exceeded = 3 };

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << "error: " << to_string(d) << "\n";
}

void print_summary(const nlohmann::json& report) {
  for (const auto& s : report["suites"]) {
    std::size_t verified = 0, total = 0;
    for (const auto& c : s["claims"]) {
      ++total;
      const std::string st = c["status"];
      if (st == "verified") ++verified;
      if (st == "counterexample")
        std::cerr << "  FAIL " << s["id"].get<std::string>() << "/" << c["id"].get<std::string>() << ": "
                  << c.value("witness", "") << "\n";
    }
    std::cerr << s["id"].get<std::string>() << ": " << verified << "/" << total << " verified\n";
  }
}

int do_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed,
           std::optional<int> cap, const std::vector<std::string>& suites) {
  std::vector<Diagnostic> diags;
  RunConfig cfg = load_config(path, diags);
  if (cap) cfg.degree_cap = *cap;
  if (!suites.empty()) cfg.suites = suites;
  if (!out.empty()) cfg.output_path = out;
  auto more = validate_config(cfg);
  diags.insert(diags.end(), more.begin(), more.end());
  if (!diags.empty()) {
    print_diagnostics(diags);
    return bad_input;
  }
  std::uint64_t s = seed ? *seed : cfg.seed.value_or(1);
  RunResult res;
  try {
    res = run_config(cfg, s);
  } catch (const DegreeCapExceeded& e) {
    std::cerr << "degree cap exceeded: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return bad_input;
  }
  const std::string text = res.report.dump(2);
  if (cfg.output_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(cfg.output_path);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.output_path << "\n";
      return bad_input;
    }
    f << text << "\n";
  }
  print_summary(res.report);
  return res.failed ? claim_failed : ok;
}

int do_validate(const std::string& path) {
  std::vector<Diagnostic> diags;
  RunConfig cfg = load_config(path, diags);
  auto more = validate_config(cfg);
  diags.insert(diags.end(), more.begin(), more.end());
  if (!diags.empty()) {
    print_diagnostics(diags);
    return bad_input;
  }
  std::cout << path << ": ok\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fefferman-type construction: projective structures to (n,n) conformal spin structures"};
  app.require_subcommand(1);

  std::string run_path, out, validate_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> cap;
  std::vector<std::string> suites;
  auto* run = app.add_subcommand("run", "run verification suites and write a JSON report");
  run->add_option("config", run_path, "config file")->required();
  run->add_option("--out", out, "report path (stdout when absent)");
  run->add_option("--seed", seed, "seed for randomized checks");
  run->add_option("--degree-cap", cap, "total-degree cap for intermediate polynomials");
  run->add_option("--suite", suites, "suite to run (repeatable)")->take_all();

  auto* val = app.add_subcommand("validate", "check a config file without running");
  val->add_option("config", validate_path, "config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? ok : bad_input;
  }
  if (*run) return do_run(run_path, out, seed, cap, suites);
  return do_validate(validate_path);
}
