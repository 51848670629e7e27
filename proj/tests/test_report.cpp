#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "fermat4/report.hpp"

using namespace fermat4;
using nlohmann::json;

namespace {

template <typename F>
std::optional<Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// temp file path unique to this process; removed in the destructor
struct TempFile {
  std::string path;
  TempFile() {
    path = "/tmp/fermat4_report_test_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter++) + ".jsonl";
    std::remove(path.c_str());
  }
  ~TempFile() { std::remove(path.c_str()); }
  static int counter;
};
int TempFile::counter = 0;

}  // namespace

TEST_CASE("config parsing is strict") {
  RunConfig def = load_config("{}");
  CHECK(def.exponent_bound == 10);
  CHECK(def.enumeration_ceiling == 1000000000UL);
  CHECK(def.discriminant_bound == 1000000);
  CHECK(def.sieve_cutoff == 1000000);
  CHECK(def.cache_path.empty());
  CHECK(def.output_format == "json");

  RunConfig cfg = load_config(
      R"({"exponent_bound": 4, "enumeration_ceiling": 500, "discriminant_bound": 2000,
          "sieve_cutoff": 100, "cache_path": "/tmp/c.jsonl", "output_format": "csv"})");
  CHECK(cfg.exponent_bound == 4);
  CHECK(cfg.enumeration_ceiling == 500);
  CHECK(cfg.discriminant_bound == 2000);
  CHECK(cfg.sieve_cutoff == 100);
  CHECK(cfg.cache_path == "/tmp/c.jsonl");
  CHECK(cfg.output_format == "csv");

  CHECK(thrown_code([] { load_config(R"({"unknown_key": 1})"); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { load_config(R"({"exponent_bound": 0})"); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { load_config(R"({"exponent_bound": -3})"); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { load_config(R"({"exponent_bound": "five"})"); }) ==
        Errc::InvalidArgument);
  CHECK(thrown_code([] { load_config(R"({"output_format": "xml"})"); }) == Errc::InvalidArgument);
  CHECK(thrown_code([] { load_config("not json at all"); }) == Errc::InvalidArgument);

  // round-trip through config_json
  RunConfig back = load_config(config_json(cfg).dump());
  CHECK(back.exponent_bound == cfg.exponent_bound);
  CHECK(back.enumeration_ceiling == cfg.enumeration_ceiling);
  CHECK(back.discriminant_bound == cfg.discriminant_bound);
  CHECK(back.sieve_cutoff == cfg.sieve_cutoff);
  CHECK(back.cache_path == cfg.cache_path);
  CHECK(back.output_format == cfg.output_format);
}

TEST_CASE("cache keys depend on command and computational config only") {
  RunConfig cfg;
  std::string k1 = cache_key("field d=5", cfg);
  CHECK(k1.size() == 16);
  CHECK(k1.find_first_not_of("0123456789abcdef") == std::string::npos);

  CHECK(cache_key("field d=5", cfg) == k1);            // stable
  CHECK(cache_key("field d=-5", cfg) != k1);           // command matters

  RunConfig cfg2 = cfg;
  cfg2.exponent_bound = 11;
  CHECK(cache_key("field d=5", cfg2) != k1);           // computational config matters

  RunConfig cfg3 = cfg;
  cfg3.cache_path = "/elsewhere.jsonl";
  cfg3.output_format = "text";
  CHECK(cache_key("field d=5", cfg3) == k1);           // presentation config ignored
}

TEST_CASE("cache storage round-trips and append wins") {
  TempFile tf;
  CHECK(!cache_lookup(tf.path, "0123456789abcdef").has_value());

  json payload = {{"kind", "demo"}, {"value", 42}};
  cache_store(tf.path, "00000000000000aa", "demo one", payload, {"note 1"});
  auto hit = cache_lookup(tf.path, "00000000000000aa");
  REQUIRE(hit.has_value());
  CHECK((*hit)["payload"] == payload);
  CHECK((*hit)["command"] == "demo one");
  CHECK((*hit)["notices"] == json::array({"note 1"}));
  CHECK(!cache_lookup(tf.path, "00000000000000ab").has_value());

  // append-only: a later record with the same key wins
  json payload2 = {{"kind", "demo"}, {"value", 43}};
  cache_store(tf.path, "00000000000000aa", "demo one", payload2, {});
  auto hit2 = cache_lookup(tf.path, "00000000000000aa");
  REQUIRE(hit2.has_value());
  CHECK((*hit2)["payload"] == payload2);

  // two records in the file, one line each
  std::ifstream in(tf.path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == 2);
}

TEST_CASE("field reports") {
  RunConfig cfg;
  ReportEnvelope env = cmd_field(5, cfg);
  CHECK(env.command == "field d=5");
  CHECK(env.payload["kind"] == "field");
  CHECK(env.payload["descriptor"]["label"] == "Q(sqrt(5))");
  CHECK(env.payload["descriptor"]["degree"] == 2);
  CHECK(env.payload["descriptor"]["discriminant"] == "5");
  CHECK(env.payload["class_data"]["h"] == 1);
  CHECK(env.payload["class_data"]["h_plus"] == 1);
  CHECK(env.payload["class_data"]["unit_norm"] == -1);
  CHECK(env.discrepancy_notices.empty());

  ReportEnvelope m5 = cmd_field(-5, cfg);
  CHECK(m5.payload["class_data"]["h"] == 2);

  ReportEnvelope rat = cmd_field(0, cfg);
  CHECK(rat.payload["descriptor"]["kind"] == "rational");
  CHECK(rat.payload["class_data"]["h"] == 1);

  CHECK(thrown_code([&] { cmd_field(12, cfg); }) == Errc::NotSquarefree);

  // splitting table covers the primes up to 50
  auto& table = env.payload["splitting"];
  REQUIRE(table.is_array());
  CHECK(table.size() == 15);
  CHECK(table[0]["p"] == 2);
  CHECK(table[0]["type"] == "inert");
}

TEST_CASE("s-unit reports") {
  RunConfig cfg;
  ReportEnvelope env = cmd_sunit(0, {2}, 10, cfg);
  CHECK(env.command == "sunit d=0 primes=2 bound=10");
  CHECK(env.payload["kind"] == "sunit");
  CHECK(env.payload["solutions"].size() == 3);
  CHECK(env.payload["orbits"].size() == 1);
  CHECK(env.payload["group"]["torsion_order"] == 2);
  for (const auto& s : env.payload["solutions"]) {
    CHECK(s["irrelevant"] == true);
    CHECK(s["m"] == 1);
  }
  // exact rationals round-trip through the string payload
  for (const auto& s : env.payload["solutions"]) {
    mpq_class l = q_from_string(s["lambda"].get<std::string>());
    mpq_class m = q_from_string(s["mu"].get<std::string>());
    CHECK(l + m == 1);
  }
}

TEST_CASE("curve reports carry discrepancy notices") {
  RunConfig cfg;
  ReportEnvelope env = cmd_frey(5, 3, 2, 17, 5, 0, cfg);
  CHECK(env.payload["kind"] == "frey");
  CHECK(env.payload["invariants"]["j"] == "20346417/289");
  CHECK(env.payload["invariants"]["c4"] == "69888");
  CHECK(env.payload["invariants"]["c6"] == "-18247680");
  CHECK(env.payload["lambda"] == "16/17");
  // three notices: ord(j) shortcut, c6 closed form, c4 sign
  CHECK(env.discrepancy_notices.size() == 3);

  ReportEnvelope triv = cmd_frey(1, 0, 1, 1, 5, 0, cfg);
  CHECK(triv.payload["invariants"]["j"] == "1728");
  CHECK(triv.payload["triple"]["trivial"] == true);
  // c6 reference and c4 sign disagree; the ord(j) audit needs slot | c
  CHECK(triv.discrepancy_notices.size() == 2);

  ReportEnvelope mid = cmd_frey(2, 1, 1, 15, 5, 0, cfg);
  CHECK(mid.payload["invariants"]["j"] == "48228544/2025");

  CHECK(thrown_code([&] { cmd_frey(3, 1, 1, 7, 5, 0, cfg); }) == Errc::EquationFails);
}

TEST_CASE("check reports") {
  RunConfig cfg;
  ReportEnvelope q24 = cmd_check("q24", {{"q", 97}}, cfg);
  CHECK(q24.payload["kind"] == "check");
  CHECK(q24.payload["verdict"]["statement_id"] == "corollary-q24");
  CHECK(q24.payload["verdict"]["status"] == "holds");
  CHECK(q24.payload["verdict"]["alpha_exclusions"] == json::array({4}));
  CHECK(q24.discrepancy_notices.size() == 1);

  ReportEnvelope z2 = cmd_check("z2-layer", {{"r", 1}}, cfg);
  CHECK(z2.payload["verdict"]["status"] == "holds");
  CHECK(z2.payload["verdict"]["alpha_exclusions"] == json::array({2, 8}));

  ReportEnvelope ta = cmd_check("theorem-a", {{"n", 17}}, cfg);
  CHECK(ta.payload["verdict"]["status"] == "holds-at-bound");
  CHECK(ta.payload["verdict"]["search_bound"] == 10);

  CHECK(thrown_code([&] { cmd_check("no-such-statement", {}, cfg); }) == Errc::InvalidArgument);
  CHECK(thrown_code([&] { cmd_check("theorem-a", {}, cfg); }) == Errc::InvalidArgument);
}

TEST_CASE("density reports") {
  RunConfig cfg;
  ReportEnvelope env = cmd_density(10000, {5, -5}, 2, cfg);
  CHECK(env.payload["kind"] == "density");
  CHECK(env.payload["cutoff"] == 10000);
  long total = env.payload["squarefree_total"].get<long>();
  CHECK(total > 6000);
  CHECK(env.payload["class_counts"]["0"] == 0);
  CHECK(env.payload["class_counts"]["4"] == 0);
  REQUIRE(env.payload["membership"].size() == 2);
  CHECK(env.payload["membership"][0]["d"] == 5);
  CHECK(env.payload["membership"][0]["has_relevant_at_bound"] == true);
  CHECK(env.payload["membership"][1]["d"] == -5);
  CHECK(env.payload["membership"][1]["has_relevant_at_bound"] == false);
}

TEST_CASE("rendering formats") {
  RunConfig cfg;
  ReportEnvelope env = cmd_field(5, cfg);

  std::string js = render_json(env);
  json parsed = json::parse(js);
  CHECK(parsed["payload"] == env.payload);
  CHECK(js.back() == '\n');

  std::string csv = render_csv(env);
  CHECK(csv.find("key,value") == 0);
  CHECK(csv.find("command,") != std::string::npos);
  CHECK(csv.find("payload.descriptor.label,Q(sqrt(5))") != std::string::npos);

  std::string text = render_text(env);
  CHECK(text.find("command: field d=5") != std::string::npos);

  CHECK(render(env, "json") == js);
  CHECK(render(env, "csv") == csv);
  CHECK(render(env, "text") == text);
  CHECK(thrown_code([&] { render(env, "xml"); }) == Errc::InvalidArgument);

  // notices appear in every format
  ReportEnvelope frey = cmd_frey(5, 3, 2, 17, 5, 0, cfg);
  CHECK(render_csv(frey).find("notice.0,") != std::string::npos);
  CHECK(render_text(frey).find("notice") != std::string::npos);
  CHECK(json::parse(render_json(frey))["discrepancy_notices"].size() == 3);
}

TEST_CASE("payloads are deterministic across runs") {
  RunConfig cfg;
  for (int round = 0; round < 2; ++round) {
    ReportEnvelope a = cmd_sunit(5, {2}, 6, cfg);
    ReportEnvelope b = cmd_sunit(5, {2}, 6, cfg);
    CHECK(a.payload.dump() == b.payload.dump());
    CHECK(a.discrepancy_notices == b.discrepancy_notices);
  }
  ReportEnvelope f1 = cmd_frey(5, 3, 2, 17, 5, 0, cfg);
  ReportEnvelope f2 = cmd_frey(5, 3, 2, 17, 5, 0, cfg);
  CHECK(f1.payload.dump() == f2.payload.dump());
  CHECK(f1.discrepancy_notices == f2.discrepancy_notices);
}

TEST_CASE("cached runs return identical payloads") {
  TempFile tf;
  RunConfig cfg;
  cfg.cache_path = tf.path;

  ReportEnvelope first = cmd_sunit(5, {2}, 4, cfg);
  ReportEnvelope second = cmd_sunit(5, {2}, 4, cfg);  // served from the cache
  CHECK(first.payload.dump() == second.payload.dump());
  CHECK(first.discrepancy_notices == second.discrepancy_notices);

  // the cache file now holds the record under the expected key
  std::string key = cache_key(first.command, cfg);
  auto hit = cache_lookup(tf.path, key);
  REQUIRE(hit.has_value());
  CHECK((*hit)["payload"] == first.payload);

  // a changed computational config misses and recomputes
  RunConfig cfg2 = cfg;
  cfg2.exponent_bound = 11;
  CHECK(!cache_lookup(tf.path, cache_key(first.command, cfg2)).has_value());
}
