#include "trsec/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace trsec {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw OutOfRange(key, "not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw OutOfRange(key, "not an integer: '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw OutOfRange(key, "not an unsigned integer: '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    const std::size_t hash = raw.find_first_of("#;");
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw MissingKey(trim(line));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw MissingKey("(empty)");
    if (value.empty()) throw MissingKey(key);

    if (key == "q") {
      cfg.q = parse_int(key, value);
      if (cfg.q < 2) throw OutOfRange(key, "must be >= 2");
    } else if (key == "bor") {
      cfg.bor = parse_int(key, value);
      if (cfg.bor < 1) throw OutOfRange(key, "must be >= 1");
    } else if (key == "bor_list") {
      cfg.bor_list.clear();
      for (const auto& item : split_list(value)) {
        const int u = parse_int(key, item);
        if (u < 1) throw OutOfRange(key, "entries must be >= 1");
        cfg.bor_list.push_back(u);
      }
      if (cfg.bor_list.empty()) throw MissingKey(key);
    } else if (key == "alpha") {
      const double a = parse_double(key, value);
      if (!(a >= 0.0 && a <= 1.0)) throw OutOfRange(key, "must lie in [0,1]");
      cfg.alpha = a;
    } else if (key == "alpha_list") {
      cfg.alpha_list.clear();
      for (const auto& item : split_list(value)) {
        const double a = parse_double(key, item);
        if (!(a >= 0.0 && a <= 1.0))
          throw OutOfRange(key, "entries must lie in [0,1]");
        cfg.alpha_list.push_back(a);
      }
    } else if (key == "ebn0_db") {
      cfg.ebn0_db = parse_double(key, value);
    } else if (key == "ebn0_db_list") {
      cfg.ebn0_db_list.clear();
      for (const auto& item : split_list(value))
        cfg.ebn0_db_list.push_back(parse_double(key, item));
    } else if (key == "realizations") {
      cfg.realizations = parse_int(key, value);
      if (cfg.realizations < 1) throw OutOfRange(key, "must be >= 1");
    } else if (key == "blocks") {
      cfg.blocks = parse_int(key, value);
      if (cfg.blocks < 1) throw OutOfRange(key, "must be >= 1");
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "bessel_terms") {
      cfg.bessel_terms = parse_int(key, value);
      if (cfg.bessel_terms < 1) throw OutOfRange(key, "must be >= 1");
    } else if (key == "sigma2_an") {
      cfg.sigma2_an = parse_double(key, value);
      if (!(cfg.sigma2_an > 0.0)) throw OutOfRange(key, "must be positive");
    } else {
      throw UnknownKey(key);
    }
  }

  if (cfg.q % cfg.bor != 0) throw OutOfRange("bor", "must divide q");
  for (int u : cfg.bor_list)
    if (cfg.q % u != 0) throw OutOfRange("bor_list", "entries must divide q");
  return cfg;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace trsec
