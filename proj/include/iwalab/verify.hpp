#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "iwalab/json_io.hpp"

namespace iwalab {

struct VerifyConfig {
  std::vector<long> primes;  // empty: the suite's default set
  long precision = 20;
  long max_conductor = 40;
  long count = 0;  // 0: the suite's default instance count
  std::uint64_t seed = 7;
  std::vector<std::filesystem::path> data;  // Iwasawa data files; empty: the bundled ones
  bool assume_p2 = false;
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  long checks = 0;
  long failures = 0;
  Json summary = Json::object();
  std::vector<std::string> failure_details;  // the first few, in check order
  bool passed() const { return failures == 0 && checks > 0; }
};

// interpolation, diamond, lambda-oracle, weierstrass, euler-char, section6,
// additive, decomposition.
const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyConfig& config);
Json suite_json(const SuiteResult& result);

// Directory holding the bundled Iwasawa data files.
std::filesystem::path bundled_data_dir();

}  // namespace iwalab
