#ifndef STAIR_VERIFY_HPP
#define STAIR_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stair/perm.hpp"

namespace stair {

struct SuiteOptions {
  std::optional<int> max_n;  // suite default when unset
  std::optional<int> c;
  std::vector<int> q;                           // W_q suite; default {10, 11}
  std::vector<std::vector<Permutation>> bases;  // class suite; default the five single bases
  std::uint64_t seed = 20261015;
};

struct SuiteResult {
  std::string name;
  bool pass = true;
  long checked = 0;
  std::string detail;  // first failure, or a one-line summary
  double seconds = 0;
};

// roundtrip, catalan, greedy, dyck, u, wq, classes.
const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace stair

#endif  // STAIR_VERIFY_HPP
