#include "mmf/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "mmf/diagnostics.hpp"
#include "mmf/json_io.hpp"
#include "mmf/stats.hpp"

namespace mmf {

namespace {

using nlohmann::json;

json report_frame(const char* command, const json& config) {
  return {{"schema_version", kSchemaVersion},
          {"library", "mmf"},
          {"version", kLibraryVersion},
          {"command", command},
          {"config", config}};
}

std::uint64_t require_seed(const json& config) {
  if (!config.contains("seed") || !config["seed"].is_number())
    throw_config("config: Monte Carlo modes require an integer 'seed'");
  return config["seed"].get<std::uint64_t>();
}

SpfTable make_table(const json& config, std::int64_t needed) {
  std::int64_t limit = config.value("sieve_limit", SpfTable::kDefaultLimit);
  return SpfTable(std::max(limit, needed));
}

// largest coordinate any member point can carry, from bounding boxes
std::int64_t family_coord_bound(const DomainFamily& fam) {
  std::int64_t m = 2;
  for (const auto& [n, d] : fam.members)
    for (Coord c : d.box_hi()) m = std::max<std::int64_t>(m, c);
  return m;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw_resource("cannot open output file " + path);
  out << text;
}

}  // namespace

json run_diagnose(const json& config) {
  DomainFamily fam = family_from_json(config.at("family"));
  DiagnosticsOptions opt;
  opt.unit_shifts_only = config.value("unit_shifts_only", true);
  if (config.contains("moduli"))
    opt.moduli = config["moduli"].get<std::vector<std::vector<std::int64_t>>>();
  opt.a_max = config.value("a_max", std::int64_t(30));
  opt.b_max = config.value("b_max", std::int64_t(30));
  opt.with_k_estimate = config.value("k_estimate", true) &&
                        fam.members.front().second.dim() >= 2;
  opt.with_neighborhood = config.value("neighborhood", false);
  opt.vanhove_threshold = config.value("vanhove_threshold", 0.25);
  DiagnosticsReport rep = diagnose(fam, opt);
  json out = report_frame("diagnose", config);
  out.merge_patch(rep.to_json());
  return out;
}

json run_mean_value(const json& config) {
  int dim = config.at("d").get<int>();
  MultiplicativeFunction f = function_from_json(config.at("function"), dim);
  std::int64_t cutoff = config.value("prime_cutoff", std::int64_t(10'000));
  double tail_tol = config.value("tail_tol", 1e-8);
  MeanValueResult mv = mean_value(f, cutoff, tail_tol);
  json out = report_frame("mean-value", config);
  out["euler_product"] = {{"re", mv.value.real()}, {"im", mv.value.imag()}};
  out["truncation"] = {{"prime_cutoff", mv.prime_cutoff},
                       {"max_tail_bound", mv.max_tail_bound},
                       {"max_exponent_level", mv.max_level}};
  if (config.contains("family")) {
    DomainFamily fam = family_from_json(config["family"]);
    SpfTable table = make_table(config, family_coord_bound(fam));
    std::int64_t budget = config.value("enumeration_budget", std::int64_t(50'000'000));
    int threads = config.value("threads", 1);
    json means = json::array();
    for (const auto& [n, d] : fam.members) {
      std::complex<double> m = empirical_mean(f, d, table, budget, threads);
      means.push_back({{"n", n},
                       {"cardinality", d.cardinality()},
                       {"mean_re", m.real()},
                       {"mean_im", m.imag()}});
    }
    out["empirical_means"] = means;
  }
  return out;
}

json run_series_check(const json& config) {
  int dim = config.at("d").get<int>();
  MultiplicativeFunction f = function_from_json(config.at("function"), dim);
  double a = config.value("a", 1.0);
  double tol = config.value("stabilize_tol", 0.05);
  int allowance = config.value("branch_cut_allowance", 0);
  std::vector<std::int64_t> cutoffs;
  if (config.contains("cutoffs"))
    cutoffs = config["cutoffs"].get<std::vector<std::int64_t>>();
  else
    cutoffs = {config.value("cutoff", std::int64_t(10'000))};
  json rows = json::array();
  for (std::int64_t c : cutoffs) {
    SeriesCheckResult three = three_series_check(f, a, c, tol, allowance);
    SeriesCheckResult two = two_series_check(f, a, c, tol, allowance);
    rows.push_back({{"cutoff", c},
                    {"a", a},
                    {"three_series",
                     {{"s1", three.s1},
                      {"s2_re", three.s2.real()},
                      {"s2_im", three.s2.imag()},
                      {"s3", three.s3},
                      {"decades_s1", three.s1_decades},
                      {"decades_s2_abs", three.s2_abs_decades},
                      {"decades_s3", three.s3_decades},
                      {"convergent", three.convergent}}},
                    {"two_series",
                     {{"t1", two.t1},
                      {"t2", two.t2},
                      {"decades_t2", two.t2_decades},
                      {"convergent", two.convergent}}},
                    {"branch_cut_count", three.branch_cut_count},
                    {"singular_count", three.singular_count},
                    {"stabilize_tol", tol}});
  }
  json out = report_frame("series-check", config);
  out["results"] = rows;
  return out;
}

json run_limit_compare(const json& config) {
  int dim = config.at("d").get<int>();
  MultiplicativeFunction f = function_from_json(config.at("function"), dim);
  DomainFamily fam = family_from_json(config.at("family"));
  std::uint64_t seed = require_seed(config);
  RandomStream rng(seed);
  SpfTable table = make_table(config, family_coord_bound(fam));

  SweepBudget budget;
  budget.exact_cap = config.value("exact_cap", std::int64_t(20'000'000));
  budget.mc_samples = config.value("mc_samples", std::int64_t(100'000));
  DistributionOptions dopt;
  dopt.threads = config.value("threads", 1);
  SamplerOptions sopt;

  const json& ref_spec = config.at("reference");
  std::string ref_type = ref_spec.at("type").get<std::string>();
  EmpiricalDistribution reference = [&]() -> EmpiricalDistribution {
    if (ref_type == "zeta_law")
      return zeta_law_reference(ref_spec.value("d", dim), ref_spec.value("j_max", std::int64_t(100'000)));
    if (ref_type == "f_infinity") {
      LimitSampleConfig cfg;
      cfg.dim = dim;
      cfg.prime_cutoff = ref_spec.value("prime_cutoff", std::int64_t(1000));
      std::int64_t n = ref_spec.value("samples", std::int64_t(100'000));
      RandomStream ref_rng = rng.fork(0x5EEDFEEDULL);
      return f_infinity_distribution(f, cfg, n, ref_rng, dopt.bin_grid);
    }
    throw_config("reference: unknown type '" + ref_type + "'");
  }();
  std::string ref_desc = ref_type == "zeta_law"
                             ? "analytic zeta law"
                             : "sampled F_infinity, cutoff " +
                                   std::to_string(ref_spec.value("prime_cutoff", std::int64_t(1000)));

  std::function<void(std::int64_t, const EmpiricalDistribution&)> sink;
  if (config.contains("histogram_dir")) {
    std::string dir = config["histogram_dir"].get<std::string>();
    std::filesystem::create_directories(dir);
    sink = [dir](std::int64_t n, const EmpiricalDistribution& dist) {
      std::ofstream csv(dir + "/hist_n" + std::to_string(n) + ".csv");
      dist.write_csv(csv);
    };
  }
  ConvergenceReport rep =
      convergence_sweep(f, fam, reference, ref_desc, table, budget, rng, sopt, dopt, sink);

  json out = report_frame("limit-compare", config);
  out["seed"] = seed;
  out.merge_patch(rep.to_json());
  if (ref_type == "f_infinity")
    out["tail_bound"] =
        f_infinity_tail_bound(dim, ref_spec.value("prime_cutoff", std::int64_t(1000)));
  return out;
}

json run_sample_limit(const json& config) {
  int dim = config.at("d").get<int>();
  std::int64_t n = config.value("samples", std::int64_t(10'000));
  std::uint64_t seed = require_seed(config);
  RandomStream rng(seed);
  json out = report_frame("sample-limit", config);
  out["seed"] = seed;
  std::string csv = "value\n";
  if (config.value("law", "") == "zeta_law") {
    ZetaLawSampler sampler(dim);
    for (std::int64_t i = 0; i < n; ++i) csv += std::to_string(sampler.draw(rng)) + "\n";
    out["law"] = "zeta_law";
  } else {
    MultiplicativeFunction f = function_from_json(config.at("function"), dim);
    LimitSampleConfig cfg;
    cfg.dim = dim;
    cfg.prime_cutoff = config.value("prime_cutoff", std::int64_t(1000));
    for (std::int64_t i = 0; i < n; ++i)
      csv += sample_F_infinity(f, cfg, rng).value.to_string() + "\n";
    out["function"] = f.name();
    out["tail_bound"] = f_infinity_tail_bound(dim, cfg.prime_cutoff);
  }
  out["samples"] = n;
  if (config.contains("out")) {
    write_file(config["out"].get<std::string>(), csv);
    out["out"] = config["out"];
  } else {
    out["csv"] = csv;
  }
  return out;
}

}  // namespace mmf
