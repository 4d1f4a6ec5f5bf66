#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "rmt/oracle.hpp"
#include "rmt/report.hpp"
#include "rmt/wigner_mc.hpp"

namespace rmt {

/// exp(bstar)-free limit kernels I^(alpha)(mu, nu), computed on first use.
class LimitCache {
 public:
  double get(double alpha, double mu, double nu);
  std::size_t size() const { return cache_.size(); }

 private:
  std::map<std::tuple<double, double, double>, double> cache_;
};

struct EdgeArgs {
  double alpha = 1.0;
  double bstar = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  std::vector<std::uint64_t> n_list;
};

struct BulkArgs {
  int alpha = 1;
  double bstar = 0.0;
  double xi = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  std::vector<std::uint64_t> n_list;
};

struct OracleArgs {
  Ensemble ensemble = Ensemble::hermitian;
  EntryDist dist;
  double mu = 0.0;
  double nu = 0.0;
  std::vector<std::uint64_t> n_list;
};

struct KernelArgs {
  double alpha = 1.0;
  double mu = 0.0;
  double nu = 0.0;
};

/// Requires a nonempty, strictly ascending list of positive sizes.
void check_n_list(const std::vector<std::uint64_t>& n_list);

RunReport cmd_edge(const EdgeArgs& a, LimitCache& cache);
RunReport cmd_corr(const EdgeArgs& a, LimitCache& cache);
RunReport cmd_bulk(const BulkArgs& a);
RunReport cmd_mc(const MCConfig& cfg);
RunReport cmd_oracle(const OracleArgs& a);
RunReport cmd_kernel(const KernelArgs& a);

struct CheckGroup {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
  double seconds = 0.0;
};

/// Runs every invariant group; --fast drops rows with N >= 4096.
std::vector<CheckGroup> run_selftest(bool fast);

/// Prints one line per group; 0 iff all groups pass, else 2.
int cmd_selftest(bool fast, std::ostream& out);

}  // namespace rmt
