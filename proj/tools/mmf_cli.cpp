// Experiment CLI for the mmf shared library.  Builds a JSON config from flags
// (optionally overlaid on a --config file; flags win) and dispatches to the
// C API.  Exit codes: 0 success, 2 config error, 3 resource error, 4 numeric.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmf.h"

using nlohmann::json;

namespace {

int fail(mmf_status st) {
  std::cerr << "error: " << mmf_last_error() << "\n";
  return st;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read config file " << path << "\n";
    std::exit(MMF_ERR_CONFIG);
  }
  json cfg = json::parse(in, nullptr, false);
  if (cfg.is_discarded()) {
    std::cerr << "error: config file is not valid JSON\n";
    std::exit(MMF_ERR_CONFIG);
  }
  return cfg;
}

int emit_report(mmf_status st, char* report, const std::string& report_path) {
  if (st != MMF_OK) return fail(st);
  if (report_path.empty() || report_path == "-") {
    std::cout << report << "\n";
  } else {
    std::ofstream out(report_path);
    if (!out) {
      mmf_string_free(report);
      std::cerr << "error: cannot open report path " << report_path << "\n";
      return MMF_ERR_RESOURCE;
    }
    out << report << "\n";
  }
  mmf_string_free(report);
  return 0;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
  return out;
}

// "2,2;2,3" -> [[2,2],[2,3]]
json parse_moduli(const std::string& s) {
  json out = json::array();
  std::stringstream ss(s);
  std::string tuple;
  while (std::getline(ss, tuple, ';')) out.push_back(parse_int_list(tuple));
  return out;
}

struct FamilyFlags {
  std::string type;
  int d = 2;
  std::string n_list;
  int ell = 2;
  std::string tetra_a;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family-type", type, "family domain type (rectangle, hyperbolic, ball, ...)");
    cmd->add_option("--d", d, "dimension");
    cmd->add_option("--n-list", n_list, "comma-separated growth parameters, strictly increasing");
    cmd->add_option("--ell", ell, "symmetric polynomial index (sym_poly)");
    cmd->add_option("--coeffs", tetra_a, "tetrahedron coefficients, comma-separated");
  }

  void apply(json& cfg) const {
    if (type.empty() && !cfg.contains("family")) return;
    json fam = cfg.value("family", json::object());
    if (!type.empty()) fam["type"] = type;
    if (!fam.contains("d")) fam["d"] = d;
    if (!n_list.empty()) fam["n_list"] = parse_int_list(n_list);
    if (type == "sym_poly") fam["ell"] = ell;
    if (type == "tetrahedron" && !tetra_a.empty()) {
      json a = json::array();
      for (std::int64_t v : parse_int_list(tetra_a)) a.push_back(static_cast<double>(v));
      fam["a"] = a;
    }
    cfg["family"] = fam;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mmf: multiplicative arithmetic functions over finite integer domains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mmf_version()));

  int threads = 1;
  app.add_option("--threads", threads, "worker parallelism cap")->capture_default_str();

  // ---- domain ----
  auto* cmd_domain = app.add_subcommand("domain", "construct, count, enumerate a domain");
  std::string dom_type, dom_dims, dom_a, dom_spec_json, dom_out = "-";
  int dom_d = 2, dom_ell = 2;
  double dom_n = 0;
  bool do_count = false, do_enumerate = false, do_bbox = false;
  cmd_domain->add_option("--type", dom_type, "rectangle|hyperbolic|sym_poly|tetrahedron|ball|weyl");
  cmd_domain->add_option("--d", dom_d, "dimension");
  cmd_domain->add_option("--n", dom_n, "growth parameter / threshold");
  cmd_domain->add_option("--dims", dom_dims, "rectangle sides, comma-separated");
  cmd_domain->add_option("--a", dom_a, "tetrahedron coefficients, comma-separated");
  cmd_domain->add_option("--ell", dom_ell, "symmetric polynomial index");
  cmd_domain->add_option("--spec-json", dom_spec_json, "full domain spec as JSON (overrides flags)");
  cmd_domain->add_flag("--count", do_count, "print cardinality");
  cmd_domain->add_flag("--enumerate", do_enumerate, "stream members as CSV");
  cmd_domain->add_flag("--bbox", do_bbox, "print the bounding rectangle");
  cmd_domain->add_option("--out", dom_out, "CSV output path ('-' = stdout)");

  // ---- experiment commands ----
  std::string config_path, report_path;
  std::string fn_name = "gcd";
  double fn_s = 1.0;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file (flags override)");
    cmd->add_option("--report", report_path, "report output path ('-' = stdout)");
  };
  auto add_function = [&](CLI::App* cmd) {
    cmd->add_option("--function", fn_name, "builtin function name");
    cmd->add_option("--s", fn_s, "exponent for gcd_power");
  };

  auto* cmd_diag = app.add_subcommand("diagnose", "van Hove / uniformity / K-bound diagnostics");
  FamilyFlags diag_family;
  diag_family.attach(cmd_diag);
  add_common(cmd_diag);
  std::string moduli_str;
  std::int64_t a_max = 30, b_max = 30;
  double vh_threshold = 0.25;
  bool with_neighborhood = false;
  cmd_diag->add_option("--moduli", moduli_str, "moduli tuples, e.g. \"2,2;2,3\"");
  cmd_diag->add_option("--a-max", a_max, "K-estimate grid bound for a");
  cmd_diag->add_option("--b-max", b_max, "K-estimate grid bound for b");
  cmd_diag->add_option("--vanhove-threshold", vh_threshold, "final-ratio threshold for the flag");
  cmd_diag->add_flag("--neighborhood", with_neighborhood, "also report 1-neighborhood growth");

  auto* cmd_compare = app.add_subcommand("limit-compare", "distances to a limit law across a family");
  FamilyFlags cmp_family;
  cmp_family.attach(cmd_compare);
  add_common(cmd_compare);
  add_function(cmd_compare);
  std::string ref_type = "zeta_law";
  std::int64_t prime_cutoff = 1000, mc_samples = 100'000, exact_cap = 20'000'000,
               ref_samples = 100'000;
  std::uint64_t seed = 0;
  std::string hist_dir;
  cmd_compare->add_option("--reference", ref_type, "zeta_law|f_infinity");
  cmd_compare->add_option("--prime-cutoff", prime_cutoff, "prime cutoff for F_infinity");
  cmd_compare->add_option("--samples", mc_samples, "Monte Carlo draws per domain");
  cmd_compare->add_option("--ref-samples", ref_samples, "draws for a sampled reference");
  cmd_compare->add_option("--exact-cap", exact_cap, "enumerate exactly up to this cardinality");
  cmd_compare->add_option("--seed", seed, "rng seed");
  cmd_compare->add_option("--hist-dir", hist_dir, "write per-n histogram CSVs here");

  auto* cmd_mean = app.add_subcommand("mean-value", "truncated Euler product and empirical means");
  FamilyFlags mean_family;
  mean_family.attach(cmd_mean);
  add_common(cmd_mean);
  add_function(cmd_mean);
  std::int64_t mean_cutoff = 10'000;
  double tail_tol = 1e-8;
  int mean_d = 2;
  cmd_mean->add_option("--fd", mean_d, "function dimension (when no family is given)");
  cmd_mean->add_option("--prime-cutoff", mean_cutoff, "Euler product cutoff");
  cmd_mean->add_option("--tail-tol", tail_tol, "per-prime inner-sum tail tolerance");

  auto* cmd_series = app.add_subcommand("series-check", "three-series / two-series conditions");
  add_common(cmd_series);
  add_function(cmd_series);
  int series_d = 2;
  double series_a = 1.0, stabilize_tol = 0.05;
  std::string cutoffs_str = "10000";
  cmd_series->add_option("--d", series_d, "dimension");
  cmd_series->add_option("--a", series_a, "threshold A");
  cmd_series->add_option("--cutoffs", cutoffs_str, "prime cutoffs, comma-separated");
  cmd_series->add_option("--stabilize-tol", stabilize_tol, "decade stabilization tolerance");

  auto* cmd_sample = app.add_subcommand("sample-limit", "draw from a limit law");
  add_common(cmd_sample);
  add_function(cmd_sample);
  std::string law;
  int sample_d = 2;
  std::int64_t sample_n = 10'000, sample_cutoff = 1000;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  cmd_sample->add_option("--law", law, "zeta_law for the analytic sampler");
  cmd_sample->add_option("--d", sample_d, "dimension");
  cmd_sample->add_option("--samples", sample_n, "number of draws");
  cmd_sample->add_option("--prime-cutoff", sample_cutoff, "F_infinity prime cutoff");
  cmd_sample->add_option("--seed", sample_seed, "rng seed");
  cmd_sample->add_option("--out", sample_out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return MMF_ERR_CONFIG;
  }

  if (cmd_domain->parsed()) {
    json spec;
    if (!dom_spec_json.empty()) {
      spec = json::parse(dom_spec_json, nullptr, false);
      if (spec.is_discarded()) {
        std::cerr << "error: --spec-json is not valid JSON\n";
        return MMF_ERR_CONFIG;
      }
    } else {
      spec["type"] = dom_type;
      if (dom_type == "rectangle") {
        if (dom_dims.empty()) {
          std::cerr << "error: rectangle needs --dims\n";
          return MMF_ERR_CONFIG;
        }
        spec["dims"] = parse_int_list(dom_dims);
      } else if (dom_type == "tetrahedron") {
        json a = json::array();
        for (std::int64_t v : parse_int_list(dom_a)) a.push_back(static_cast<double>(v));
        spec["a"] = a;
        spec["n"] = dom_n;
      } else {
        spec["d"] = dom_d;
        spec["n"] = dom_n;
        if (dom_type == "sym_poly") spec["ell"] = dom_ell;
      }
    }
    mmf_domain* dom = nullptr;
    mmf_status st = mmf_domain_create(spec.dump().c_str(), &dom);
    if (st != MMF_OK) return fail(st);
    if (do_count) {
      int64_t card = 0;
      st = mmf_domain_cardinality(dom, &card);
      if (st != MMF_OK) { mmf_domain_free(dom); return fail(st); }
      std::cout << card << "\n";
    }
    if (do_bbox) {
      int32_t dim = 0;
      mmf_domain_dim(dom, &dim);
      std::vector<int64_t> lo(dim), hi(dim);
      st = mmf_domain_bounding_box(dom, lo.data(), hi.data());
      if (st != MMF_OK) { mmf_domain_free(dom); return fail(st); }
      json box = {{"lo", lo}, {"hi", hi}};
      std::cout << box.dump() << "\n";
    }
    if (do_enumerate) {
      st = mmf_domain_write_csv(dom, dom_out.c_str());
      if (st != MMF_OK) { mmf_domain_free(dom); return fail(st); }
    }
    if (!do_count && !do_bbox && !do_enumerate) {
      std::cerr << "error: choose --count, --enumerate or --bbox\n";
      mmf_domain_free(dom);
      return MMF_ERR_CONFIG;
    }
    mmf_domain_free(dom);
    return 0;
  }

  json cfg = config_path.empty() ? json::object() : load_config(config_path);
  if (app.count("--threads") > 0 || !cfg.contains("threads")) cfg["threads"] = threads;
  char* report = nullptr;

  if (cmd_diag->parsed()) {
    diag_family.apply(cfg);
    if (cmd_diag->count("--moduli") > 0 || !cfg.contains("moduli"))
      cfg["moduli"] = moduli_str.empty() ? json::array() : parse_moduli(moduli_str);
    if (cmd_diag->count("--a-max") > 0 || !cfg.contains("a_max")) cfg["a_max"] = a_max;
    if (cmd_diag->count("--b-max") > 0 || !cfg.contains("b_max")) cfg["b_max"] = b_max;
    if (cmd_diag->count("--vanhove-threshold") > 0 || !cfg.contains("vanhove_threshold"))
      cfg["vanhove_threshold"] = vh_threshold;
    if (with_neighborhood) cfg["neighborhood"] = true;
    mmf_status st = mmf_diagnose(cfg.dump().c_str(), &report);
    return emit_report(st, report, report_path);
  }

  auto apply_function = [&](CLI::App* cmd, int dim_value) {
    if (cmd->count("--function") > 0 || !cfg.contains("function"))
      cfg["function"] = {{"name", fn_name}, {"s", fn_s}};
    if (!cfg.contains("d")) cfg["d"] = dim_value;
  };

  if (cmd_compare->parsed()) {
    cmp_family.apply(cfg);
    apply_function(cmd_compare, cmp_family.d);
    if (cmd_compare->count("--reference") > 0 || !cfg.contains("reference"))
      cfg["reference"] = {{"type", ref_type},
                          {"prime_cutoff", prime_cutoff},
                          {"samples", ref_samples}};
    if (cmd_compare->count("--samples") > 0 || !cfg.contains("mc_samples"))
      cfg["mc_samples"] = mc_samples;
    if (cmd_compare->count("--exact-cap") > 0 || !cfg.contains("exact_cap"))
      cfg["exact_cap"] = exact_cap;
    if (cmd_compare->count("--seed") > 0 || !cfg.contains("seed")) cfg["seed"] = seed;
    if (!hist_dir.empty()) cfg["histogram_dir"] = hist_dir;
    mmf_status st = mmf_limit_compare(cfg.dump().c_str(), &report);
    return emit_report(st, report, report_path);
  }

  if (cmd_mean->parsed()) {
    mean_family.apply(cfg);
    apply_function(cmd_mean, cfg.contains("family") ? mean_family.d : mean_d);
    if (cmd_mean->count("--prime-cutoff") > 0 || !cfg.contains("prime_cutoff"))
      cfg["prime_cutoff"] = mean_cutoff;
    if (cmd_mean->count("--tail-tol") > 0 || !cfg.contains("tail_tol")) cfg["tail_tol"] = tail_tol;
    mmf_status st = mmf_mean_value(cfg.dump().c_str(), &report);
    return emit_report(st, report, report_path);
  }

  if (cmd_series->parsed()) {
    apply_function(cmd_series, series_d);
    if (cmd_series->count("--d") > 0) cfg["d"] = series_d;
    if (cmd_series->count("--a") > 0 || !cfg.contains("a")) cfg["a"] = series_a;
    if (cmd_series->count("--cutoffs") > 0 || !cfg.contains("cutoffs"))
      cfg["cutoffs"] = parse_int_list(cutoffs_str);
    if (cmd_series->count("--stabilize-tol") > 0 || !cfg.contains("stabilize_tol"))
      cfg["stabilize_tol"] = stabilize_tol;
    mmf_status st = mmf_series_check(cfg.dump().c_str(), &report);
    return emit_report(st, report, report_path);
  }

  if (cmd_sample->parsed()) {
    apply_function(cmd_sample, sample_d);
    if (cmd_sample->count("--d") > 0) cfg["d"] = sample_d;
    if (!law.empty()) cfg["law"] = law;
    if (cmd_sample->count("--samples") > 0 || !cfg.contains("samples"))
      cfg["samples"] = sample_n;
    if (cmd_sample->count("--prime-cutoff") > 0 || !cfg.contains("prime_cutoff"))
      cfg["prime_cutoff"] = sample_cutoff;
    if (cmd_sample->count("--seed") > 0 || !cfg.contains("seed")) cfg["seed"] = sample_seed;
    if (!sample_out.empty()) cfg["out"] = sample_out;
    mmf_status st = mmf_sample_limit(cfg.dump().c_str(), &report);
    return emit_report(st, report, report_path);
  }

  return MMF_ERR_CONFIG;
}
