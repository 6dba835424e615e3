#include "mmf.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "mmf/domain.hpp"
#include "mmf/experiment.hpp"
#include "mmf/json_io.hpp"

struct mmf_domain {
  mmf::LatticeDomain domain;
};

struct mmf_rng {
  mmf::RandomStream stream;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
mmf_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return MMF_OK;
  } catch (const mmf::Error& e) {
    g_last_error = e.what();
    return e.code();
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MMF_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MMF_ERR_INTERNAL;
  }
}

mmf_status run_experiment(nlohmann::json (*runner)(const nlohmann::json&),
                          const char* config_json, char** report_json) {
  return guarded([&] {
    if (!config_json || !report_json) mmf::throw_config("null argument");
    nlohmann::json config = nlohmann::json::parse(config_json, nullptr, false);
    if (config.is_discarded()) mmf::throw_config("config is not valid JSON");
    *report_json = dup_string(runner(config).dump(2));
  });
}

}  // namespace

extern "C" {

const char* mmf_version(void) { return mmf::kLibraryVersion; }

const char* mmf_last_error(void) { return g_last_error.c_str(); }

void mmf_string_free(char* s) { delete[] s; }

mmf_status mmf_domain_create(const char* spec_json, mmf_domain** out) {
  return guarded([&] {
    if (!spec_json || !out) mmf::throw_config("null argument");
    nlohmann::json spec = nlohmann::json::parse(spec_json, nullptr, false);
    if (spec.is_discarded()) mmf::throw_config("domain spec is not valid JSON");
    *out = new mmf_domain{mmf::domain_from_json(spec)};
  });
}

void mmf_domain_free(mmf_domain* d) { delete d; }

mmf_status mmf_domain_dim(const mmf_domain* d, int32_t* out) {
  return guarded([&] {
    if (!d || !out) mmf::throw_config("null argument");
    *out = d->domain.dim();
  });
}

mmf_status mmf_domain_cardinality(const mmf_domain* d, int64_t* out) {
  return guarded([&] {
    if (!d || !out) mmf::throw_config("null argument");
    *out = d->domain.cardinality();
  });
}

mmf_status mmf_domain_bounding_box(const mmf_domain* d, int64_t* lo, int64_t* hi) {
  return guarded([&] {
    if (!d || !lo || !hi) mmf::throw_config("null argument");
    for (int i = 0; i < d->domain.dim(); ++i) {
      lo[i] = d->domain.box_lo()[i];
      hi[i] = d->domain.box_hi()[i];
    }
  });
}

mmf_status mmf_domain_contains(const mmf_domain* d, const int64_t* coords, int32_t dim,
                               int32_t* out) {
  return guarded([&] {
    if (!d || !coords || !out) mmf::throw_config("null argument");
    *out = d->domain.contains(std::span<const std::int64_t>(coords, static_cast<std::size_t>(dim)))
               ? 1
               : 0;
  });
}

mmf_status mmf_domain_write_csv(const mmf_domain* d, const char* path) {
  return guarded([&] {
    if (!d || !path) mmf::throw_config("null argument");
    if (std::strcmp(path, "-") == 0) {
      mmf::write_points_csv(d->domain, std::cout);
      return;
    }
    std::ofstream out(path);
    if (!out) mmf::throw_resource(std::string("cannot open output file ") + path);
    mmf::write_points_csv(d->domain, out);
  });
}

mmf_rng* mmf_rng_create(uint64_t seed) { return new (std::nothrow) mmf_rng{mmf::RandomStream(seed)}; }

void mmf_rng_free(mmf_rng* r) { delete r; }

mmf_status mmf_domain_sample(const mmf_domain* d, mmf_rng* rng, const char* strategy,
                             int64_t* out) {
  return guarded([&] {
    if (!d || !rng || !out) mmf::throw_config("null argument");
    mmf::SamplerOptions opt;
    if (strategy == nullptr || std::strcmp(strategy, "auto") == 0)
      opt.strategy = mmf::SampleStrategy::Auto;
    else if (std::strcmp(strategy, "materialized") == 0)
      opt.strategy = mmf::SampleStrategy::Materialized;
    else if (std::strcmp(strategy, "rejection") == 0)
      opt.strategy = mmf::SampleStrategy::Rejection;
    else
      mmf::throw_config(std::string("unknown sampling strategy '") + strategy + "'");
    std::vector<std::int64_t> buf;
    mmf::sample_uniform_into(d->domain, rng->stream, opt, buf);
    for (int i = 0; i < d->domain.dim(); ++i) out[i] = buf[static_cast<std::size_t>(i)];
  });
}

mmf_status mmf_diagnose(const char* config_json, char** report_json) {
  return run_experiment(&mmf::run_diagnose, config_json, report_json);
}

mmf_status mmf_limit_compare(const char* config_json, char** report_json) {
  return run_experiment(&mmf::run_limit_compare, config_json, report_json);
}

mmf_status mmf_mean_value(const char* config_json, char** report_json) {
  return run_experiment(&mmf::run_mean_value, config_json, report_json);
}

mmf_status mmf_series_check(const char* config_json, char** report_json) {
  return run_experiment(&mmf::run_series_check, config_json, report_json);
}

mmf_status mmf_sample_limit(const char* config_json, char** report_json) {
  return run_experiment(&mmf::run_sample_limit, config_json, report_json);
}

}  // extern "C"
