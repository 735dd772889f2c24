// Command-line front end: closed forms, spectra, reports, Green's-function
// sums and the verification cases.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "sumrules/errors.hpp"
#include "sumrules/greens.hpp"
#include "sumrules/potential.hpp"
#include "sumrules/powerlaw.hpp"
#include "sumrules/specialfn.hpp"
#include "sumrules/spectrum.hpp"
#include "sumrules/verify.hpp"

namespace {

using namespace sumrules;
using nlohmann::json;

// key = value lines, '#' comments.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (key != "N" && key != "terms" && key != "order" && key != "quad_tol" && key != "gamma")
      throw UsageError(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

double config_real(const std::map<std::string, std::string>& cfg, const std::string& key, double fallback) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw UsageError("config value for '" + key + "' is not a number: " + it->second);
  }
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eigenvalue sum rules for symmetric confining potentials"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file (N, terms, order, quad_tol, gamma)");

  std::optional<double> cf_N, cf_gamma;
  auto* closed = app.add_subcommand("closed-form", "closed-form S, S1, S2 for V = gamma |x|^N");
  closed->add_option("--N", cf_N, "exponent N > 0");
  closed->add_option("--gamma", cf_gamma, "strength gamma > 0");

  std::string sp_potential;
  std::string sp_parity = "both";
  int sp_count = 5;
  auto* spec_cmd = app.add_subcommand("spectrum", "parity-resolved eigenvalues as CSV");
  spec_cmd->add_option("--potential", sp_potential, "powerlaw:N=..[,gamma=..] | sho_shifted | box:half_width=.. | file:path")
      ->required();
  spec_cmd->add_option("--parity", sp_parity, "even, odd or both")->check(CLI::IsMember({"even", "odd", "both"}));
  spec_cmd->add_option("--count", sp_count, "levels per parity")->check(CLI::PositiveNumber);

  std::optional<double> rp_N;
  std::optional<int> rp_terms, rp_order;
  auto* report_cmd = app.add_subcommand("report", "partial sums with tails for a power law, as JSON");
  report_cmd->add_option("--N", rp_N, "exponent N > 0");
  report_cmd->add_option("--terms", rp_terms, "last exact index k (levels 0..k per parity)");
  report_cmd->add_option("--order", rp_order, "power p of the inverse eigenvalues");

  std::string gr_potential, gr_diag_csv;
  bool gr_second = false;
  auto* greens_cmd = app.add_subcommand("greens", "sum rules from zero-energy Green's functions, as JSON");
  greens_cmd->add_option("--potential", gr_potential, "potential spec string")->required();
  greens_cmd->add_flag("--second-order", gr_second, "also compute the second-order sums");
  greens_cmd->add_option("--diag-csv", gr_diag_csv, "write the diagonal G1, G2, G2 - G1 to this CSV file");

  std::vector<std::string> vf_cases;
  std::string vf_format = "json", vf_out;
  auto* verify_cmd = app.add_subcommand("verify", "run verification cases; exit status 0 iff all pass");
  verify_cmd->add_option("--case", vf_cases, "case id (repeatable); default all");
  verify_cmd->add_option("--format", vf_format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  verify_cmd->add_option("--out", vf_out, "write the report here instead of stdout");

  int az_count = 10;
  auto* airy_cmd = app.add_subcommand("airy-zeros", "zeros of Ai and Ai' as CSV");
  airy_cmd->add_option("--count", az_count, "zeros of each kind")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const auto cfg = config_path.empty() ? std::map<std::string, std::string>{} : read_config(config_path);

    if (*closed) {
      const double N = cf_N.value_or(config_real(cfg, "N", NAN));
      if (std::isnan(N)) throw UsageError("closed-form needs --N (or N in the config file)");
      const auto p = powerlaw::derive_params(N, cf_gamma.value_or(config_real(cfg, "gamma", 1.0)));
      const auto sums = powerlaw::closed_form_sums(p);
      json j{{"N", p.exponent},
             {"gamma", p.strength},
             {"beta", p.beta},
             {"nu", p.nu},
             {"S", sums.S},
             {"S1", optional_json(sums.S1)},
             {"S2", optional_json(sums.S2)},
             {"S1_divergent", sums.S1_divergent},
             {"S2_divergent", sums.S2_divergent}};
      std::cout << j.dump(2) << '\n';
    } else if (*spec_cmd) {
      const auto spec = parse_potential(sp_potential);
      std::vector<spectrum::Spectrum> spectra;
      if (sp_parity != "odd") spectra.push_back(spectrum::solve_spectrum(spec, spectrum::Parity::even, sp_count));
      if (sp_parity != "even") spectra.push_back(spectrum::solve_spectrum(spec, spectrum::Parity::odd, sp_count));
      std::cout << spectrum::to_csv(spectra);
    } else if (*report_cmd) {
      const double N = rp_N.value_or(config_real(cfg, "N", NAN));
      if (std::isnan(N)) throw UsageError("report needs --N (or N in the config file)");
      const int terms = rp_terms.value_or(static_cast<int>(config_real(cfg, "terms", 4)));
      const int order = rp_order.value_or(static_cast<int>(config_real(cfg, "order", 1)));
      const PotentialSpec spec(PowerLawPotential{N, config_real(cfg, "gamma", 1.0)});
      std::cout << spectrum::to_json(spectrum::assemble_report(spec, terms, order)).dump(2) << '\n';
    } else if (*greens_cmd) {
      const auto spec = parse_potential(gr_potential);
      const auto z = greens::build_zero_energy_solutions(spec);
      const auto sums = greens::general_sum_rules(z);
      const auto ref = greens::reference_sums(spec);
      const auto compact = greens::compact_form_check(z, ref);
      json j{{"potential", spec.describe()},
             {"c", z.c},
             {"S", sums.S},
             {"S1", optional_json(sums.S1)},
             {"S2", optional_json(sums.S2)},
             {"S1_divergent", sums.S1_divergent},
             {"S2_divergent", sums.S2_divergent},
             {"quadrature_error", {{"S", sums.S_error}, {"S1", sums.S1_error}, {"S2", sums.S2_error}}},
             {"wronskian_deviation", greens::wronskian_deviation(z)},
             {"reference", {{"S", optional_json(ref.S)}, {"S1", optional_json(ref.S1)},
                            {"S2", optional_json(ref.S2)}, {"source", ref.source}}},
             {"compact_form_max_residual", compact.max_residual}};
      if (gr_second) {
        for (const auto parity : {spectrum::Parity::even, spectrum::Parity::odd}) {
          const std::string key = "second_order_" + std::string(spectrum::to_string(parity));
          try {
            j[key] = greens::second_order_sum(z, parity);
          } catch (const DivergentSum&) {
            j[key] = nullptr;
          }
        }
      }
      if (auto p = spec.power_law()) {
        const auto sc = greens::power_law_structure_check(*p);
        j["structure"] = {{"jump_error", sc.jump_error},
                          {"dirichlet_error", sc.dirichlet_error},
                          {"neumann_error", sc.neumann_error},
                          {"equation_residual", sc.equation_residual}};
      }
      if (!gr_diag_csv.empty()) emit(greens::to_csv(greens::greens_diagonal(z)), gr_diag_csv);
      std::cout << j.dump(2) << '\n';
    } else if (*verify_cmd) {
      verify::RunOptions options;
      options.quartic_terms = static_cast<int>(config_real(cfg, "terms", options.quartic_terms));
      options.quad_tol = config_real(cfg, "quad_tol", options.quad_tol);
      const auto ids = vf_cases.empty() ? verify::default_case_ids() : vf_cases;
      const auto report = verify::run_all(options, ids);
      std::string text;
      if (vf_format == "json")
        text = verify::to_json(report).dump(2) + "\n";
      else if (vf_format == "csv")
        text = verify::to_csv(report);
      else
        text = verify::to_table(report);
      emit(text, vf_out);
      if (!report.pass) {
        for (const auto& c : report.cases) {
          if (c.pass) continue;
          std::cerr << "case " << c.id << " failed";
          if (c.error) std::cerr << ": " << *c.error;
          std::cerr << '\n';
          for (const auto& q : c.quantities)
            if (!q.pass)
              std::cerr << "  " << q.name << ": expected " << q.expected << ", got " << q.got << " (tol " << q.tol
                        << ")\n";
        }
        return 1;
      }
    } else if (*airy_cmd) {
      const auto t = specialfn::airy_zero_table(az_count);
      std::cout << "n,parity,zero\n" << std::setprecision(15);
      for (int n = 0; n < az_count; ++n) {
        std::cout << n << ",even," << t.ai_prime_zeros[n] << '\n';
        std::cout << n << ",odd," << t.ai_zeros[n] << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
