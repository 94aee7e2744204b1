#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trsec {

struct ConfigError : std::runtime_error {
  std::string key;
  ConfigError(const std::string& what, std::string key_)
      : std::runtime_error(what), key(std::move(key_)) {}
};

/// A key appeared without a value (or a bare token without '=').
struct MissingKey : ConfigError {
  explicit MissingKey(const std::string& k)
      : ConfigError("config: missing value for key '" + k + "'", k) {}
};

/// A value failed to parse or violates its constraint.
struct OutOfRange : ConfigError {
  OutOfRange(const std::string& k, const std::string& why)
      : ConfigError("config: key '" + k + "': " + why, k) {}
};

/// A key this tool does not know.
struct UnknownKey : ConfigError {
  explicit UnknownKey(const std::string& k)
      : ConfigError("config: unknown key '" + k + "'", k) {}
};

/// Flat key=value run configuration. Every key has a default tuned to the
/// desk-scale experiment set (Q=256, 100 realizations x 300 blocks); an
/// empty or absent file is fully usable. Grids left empty here get
/// per-command defaults.
struct RunConfig {
  int q = 256;
  int bor = 4;
  std::vector<int> bor_list = {2, 4, 8};
  std::optional<double> alpha;
  std::vector<double> alpha_list;
  std::optional<double> ebn0_db;
  std::vector<double> ebn0_db_list;
  int realizations = 100;
  int blocks = 300;
  std::uint64_t seed = 1;
  int bessel_terms = 20;
  double sigma2_an = 0.0;  ///< <= 0: automatic 1/bor
};

/// Parses `key = value` lines; '#' or ';' start a comment, blank lines are
/// skipped, lists are comma-separated. Throws MissingKey / OutOfRange /
/// UnknownKey naming the offending key.
RunConfig parse_config_text(const std::string& text);

/// parse_config_text over the file's contents; throws std::runtime_error
/// if the file cannot be read.
RunConfig parse_config(const std::string& path);

}  // namespace trsec
