#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bizeta/counting.hpp"

namespace bizeta {

/// One CLI invocation, validated against the gates before any enumeration.
struct JobConfig {
  std::string command;               // compute | verify | funeq | fit | oracle | identity
  std::string lattice;               // built-in name or document path
  std::vector<long long> primes;
  int nmax = 1;
  std::string kind;                  // irr | cc | k | twist; empty = command default
  std::string strategy = "naive";    // naive | orbit
  std::string ratfun_path;           // funeq / verify override
  std::string denominator;           // fit
  int h = -1;                        // funeq weight
  long long crt_m1 = 0, crt_m2 = 0;  // oracle --crt
  unsigned long long ceiling = 0;    // 0: resolve BIZETA_CEILING, then default
  int threads = 0;                   // 0: hardware concurrency
  std::string out_path;              // compute document target; empty = stdout
  std::string check;                 // identity: sumlema | shift
};

/// Runs a job, writing reports to `out` and diagnostics to `err`.
/// Exit contract: 0 = all checks pass, 1 = verification mismatch,
/// 2 = usage, parse or gate error.
int run_job(const JobConfig& config, std::ostream& out, std::ostream& err);

/// Resolve a lattice argument: built-in name first, then document path.
LieLattice load_lattice(const std::string& name_or_path);

}  // namespace bizeta
