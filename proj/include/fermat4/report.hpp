#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fermat4/criteria.hpp"
#include "fermat4/density.hpp"
#include "fermat4/frey.hpp"

namespace fermat4 {

struct RunConfig {
  long exponent_bound = 10;
  unsigned long enumeration_ceiling = 1000000000UL;
  long discriminant_bound = 1000000;
  long sieve_cutoff = 1000000;
  std::string cache_path;             // empty: cache disabled
  std::string output_format = "json"; // json | csv | text
};

// Strict parse: unknown keys and non-positive numeric fields are rejected.
RunConfig load_config(const std::string& json_text);
nlohmann::json config_json(const RunConfig& cfg);

// Payload and notices are the deterministic comparison surface; the
// timestamp is informational only.
struct ReportEnvelope {
  std::string command;
  RunConfig config;
  std::string timestamp;
  nlohmann::json payload;             // payload["kind"] discriminates report types
  std::vector<std::string> discrepancy_notices;
};

nlohmann::json envelope_json(const ReportEnvelope& env);
std::string render_json(const ReportEnvelope& env);
std::string render_csv(const ReportEnvelope& env);
std::string render_text(const ReportEnvelope& env);
std::string render(const ReportEnvelope& env, const std::string& format);

// Content hash of the canonical command string plus the computational
// config fields (cache location and output format do not affect results).
std::string cache_key(const std::string& command, const RunConfig& cfg);
std::optional<nlohmann::json> cache_lookup(const std::string& path, const std::string& key);
void cache_store(const std::string& path, const std::string& key, const std::string& command,
                 const nlohmann::json& payload, const std::vector<std::string>& notices);

// Command drivers. d = 0 selects the rationals.
ReportEnvelope cmd_field(long d, const RunConfig& cfg);
ReportEnvelope cmd_sunit(long d, const std::vector<long>& primes, long bound,
                         const RunConfig& cfg);
ReportEnvelope cmd_frey(const mpz_class& a, const mpz_class& b, const mpz_class& c,
                        const mpz_class& n, long p, long d, const RunConfig& cfg);
ReportEnvelope cmd_check(const std::string& tag, const std::map<std::string, long>& args,
                         const RunConfig& cfg);
ReportEnvelope cmd_density(long cutoff, const std::vector<long>& sample_ds, long bound,
                           const RunConfig& cfg);

}  // namespace fermat4
