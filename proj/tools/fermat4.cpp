#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fermat4/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fermat4::fail(fermat4::Errc::InvalidArgument, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

mpz_class parse_z(const std::string& s) {
  try {
    return mpz_class(s);
  } catch (const std::invalid_argument&) {
    fermat4::fail(fermat4::Errc::InvalidArgument, "not an integer: " + s);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact-arithmetic toolkit for x^4 - y^4 = n z^p: quadratic field data, S-unit "
      "equations, curve invariants, criterion checks and the squarefree density survey"};
  app.require_subcommand(1);

  std::string config_path, cache_flag, format_flag;
  app.add_option("--config", config_path, "JSON config file (strict keys)");
  app.add_option("--cache", cache_flag, "result cache file (overrides config and env)");
  app.add_option("--format", format_flag, "output format: json, csv or text");

  auto* field = app.add_subcommand("field", "field descriptor, splitting table, class data");
  field->fallthrough();
  long fd_d = 0;
  field->add_option("-d,--d", fd_d, "squarefree d of Q(sqrt(d)); 0 selects Q")->required();

  auto* sunit = app.add_subcommand("sunit", "solve the S-unit equation lambda + mu = 1");
  sunit->fallthrough();
  long su_d = 0, su_bound = 0;
  std::vector<long> su_primes;
  sunit->add_option("-d,--d", su_d, "squarefree d of Q(sqrt(d)); 0 selects Q");
  sunit->add_option("--primes", su_primes, "rational primes whose slots form S")
      ->required()
      ->delimiter(',');
  auto* su_bound_opt = sunit->add_option("--bound", su_bound, "exponent box radius");

  auto* frey = app.add_subcommand("frey", "curve invariants and slot profiles of a triple");
  frey->fallthrough();
  std::string fy_a, fy_b, fy_c, fy_n;
  long fy_p = 5, fy_d = 0;
  frey->add_option("a", fy_a, "first coordinate")->required();
  frey->add_option("b", fy_b, "second coordinate")->required();
  frey->add_option("c", fy_c, "third coordinate")->required();
  frey->add_option("n", fy_n, "coefficient n")->required();
  frey->add_option("p", fy_p, "prime exponent p >= 5")->required();
  frey->add_option("-d,--d", fy_d, "squarefree d of Q(sqrt(d)); 0 selects Q");

  auto* check = app.add_subcommand("check", "run a statement checker by tag");
  check->fallthrough();
  std::string ck_tag;
  check->add_option("tag", ck_tag,
                    "theorem-a | theorem-b | corollary-quadratic | corollary-ramified | "
                    "corollary-splits3 | q24 | z2-layer")
      ->required();
  long ck_d = 0, ck_ell = 0, ck_alpha = 0, ck_q = 0, ck_r = 0, ck_n = 0, ck_p = 0, ck_deg = 0;
  auto* o_d = check->add_option("-d,--d", ck_d, "field parameter d");
  auto* o_ell = check->add_option("-l,--ell", ck_ell, "auxiliary prime ell");
  auto* o_alpha = check->add_option("--alpha", ck_alpha, "tested alpha = ord(n)");
  auto* o_q = check->add_option("-q,--q", ck_q, "prime q of Q(sqrt(q))");
  auto* o_r = check->add_option("-r,--r", ck_r, "2-tower layer index");
  auto* o_n = check->add_option("-n,--n", ck_n, "coefficient n");
  auto* o_p = check->add_option("-p,--p", ck_p, "prime exponent p");
  auto* o_deg = check->add_option("--degree", ck_deg, "field degree for abstract descriptors");

  auto* density = app.add_subcommand("density", "squarefree residue survey and membership sample");
  density->fallthrough();
  long dn_cutoff = 1000000, dn_bound = 3;
  std::vector<long> dn_sample;
  density->add_option("--cutoff", dn_cutoff, "sieve cutoff X");
  density->add_option("--bound", dn_bound, "solver bound for membership sampling");
  density->add_option("--sample", dn_sample, "d values to sample for relevant solutions")
      ->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    fermat4::RunConfig cfg;
    if (!config_path.empty()) cfg = fermat4::load_config(read_file(config_path));
    if (const char* env_cache = std::getenv("FERMAT4_CACHE")) cfg.cache_path = env_cache;
    if (!cache_flag.empty()) cfg.cache_path = cache_flag;
    if (!format_flag.empty()) {
      if (format_flag != "json" && format_flag != "csv" && format_flag != "text")
        fermat4::fail(fermat4::Errc::InvalidArgument, "unknown output format: " + format_flag);
      cfg.output_format = format_flag;
    }

    fermat4::ReportEnvelope env;
    if (field->parsed()) {
      env = fermat4::cmd_field(fd_d, cfg);
    } else if (sunit->parsed()) {
      long bound = su_bound_opt->count() ? su_bound : cfg.exponent_bound;
      env = fermat4::cmd_sunit(su_d, su_primes, bound, cfg);
    } else if (frey->parsed()) {
      env = fermat4::cmd_frey(parse_z(fy_a), parse_z(fy_b), parse_z(fy_c), parse_z(fy_n),
                              fy_p, fy_d, cfg);
    } else if (check->parsed()) {
      std::map<std::string, long> args;
      if (o_d->count()) args["d"] = ck_d;
      if (o_ell->count()) args["ell"] = ck_ell;
      if (o_alpha->count()) args["alpha"] = ck_alpha;
      if (o_q->count()) args["q"] = ck_q;
      if (o_r->count()) args["r"] = ck_r;
      if (o_n->count()) args["n"] = ck_n;
      if (o_p->count()) args["p"] = ck_p;
      if (o_deg->count()) args["degree"] = ck_deg;
      env = fermat4::cmd_check(ck_tag, args, cfg);
    } else {
      env = fermat4::cmd_density(dn_cutoff, dn_sample, dn_bound, cfg);
    }
    std::cout << fermat4::render(env, cfg.output_format);
    return 0;
  } catch (const fermat4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fermat4::errc_is_input_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
