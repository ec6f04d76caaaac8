// bizeta: exact truncations, closed-form checks and brute-force oracles for
// bivariate representation / conjugacy-class zeta functions of unipotent
// group schemes given by nilpotent Z-Lie lattices.

#include <iostream>
#include <vector>

#include <CLI11.hpp>

#include "bizeta/cli.hpp"

namespace {

void add_common_options(CLI::App* cmd, bizeta::JobConfig& cfg) {
  cmd->add_option("--lattice", cfg.lattice, "built-in lattice name or document path");
  cmd->add_option("--prime", cfg.primes, "prime p (repeatable)");
  cmd->add_option("--nmax", cfg.nmax, "truncation level");
  cmd->add_option("--kind", cfg.kind, "irr | cc | k | twist (default per command)");
  cmd->add_option("--strategy", cfg.strategy, "naive | orbit")->default_val("naive");
  cmd->add_option("--ceiling", cfg.ceiling,
                  "enumeration point ceiling (default 10^8, or BIZETA_CEILING)");
  cmd->add_option("--threads", cfg.threads, "enumeration threads (default: cores)");
  cmd->add_option("--out", cfg.out_path, "write the output document here");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact bivariate zeta computations for nilpotent Z-Lie lattices"};
  app.require_subcommand(1);
  bizeta::JobConfig cfg;

  auto* compute = app.add_subcommand("compute", "enumerate a truncated zeta series");
  add_common_options(compute, cfg);

  auto* verify = app.add_subcommand("verify", "compare enumeration against a closed form");
  add_common_options(verify, cfg);
  verify->add_option("--ratfun", cfg.ratfun_path, "closed form file (overrides registry)");

  auto* funeq = app.add_subcommand("funeq", "functional equation check for a closed form");
  funeq->set_help_flag("--help", "print help");  // frees -h / --h
  add_common_options(funeq, cfg);
  funeq->add_option("--ratfun", cfg.ratfun_path, "rational function file");
  funeq->add_option("--h", cfg.h, "functional equation weight");

  auto* fit = app.add_subcommand("fit", "fit a numerator to an enumerated series");
  add_common_options(fit, cfg);
  fit->add_option("--denominator", cfg.denominator,
                  "product of factors (1 - q^a*T1^b*T2^c)");

  auto* oracle = app.add_subcommand("oracle", "brute-force group-theoretic checks");
  add_common_options(oracle, cfg);
  std::vector<long long> crt;
  oracle->add_option("--crt", crt, "two coprime moduli for the Euler/CRT check")
      ->expected(2);

  auto* identity = app.add_subcommand("identity", "resummation and shift identities");
  add_common_options(identity, cfg);
  identity->add_option("--check", cfg.check, "sumlema | shift");

  CLI11_PARSE(app, argc, argv);

  if (compute->parsed()) cfg.command = "compute";
  if (verify->parsed()) cfg.command = "verify";
  if (funeq->parsed()) cfg.command = "funeq";
  if (fit->parsed()) cfg.command = "fit";
  if (oracle->parsed()) {
    cfg.command = "oracle";
    if (crt.size() == 2) {
      cfg.crt_m1 = crt[0];
      cfg.crt_m2 = crt[1];
    }
  }
  if (identity->parsed()) cfg.command = "identity";

  return bizeta::run_job(cfg, std::cout, std::cerr);
}
