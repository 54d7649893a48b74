#include "lphodge/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace lphodge {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long x = 0;
  try {
    x = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty() || v[0] == '-') throw std::invalid_argument(key + " expects a non-negative integer, got '" + v + "'");
  return x;
}

}  // namespace

void Config::set(const std::string& key, const std::string& raw) {
  const std::string value = unquote(trim(raw));
  if (key == "quadrature.n_mc") {
    n_mc = parse_unsigned(key, value);
    if (n_mc == 0) throw std::invalid_argument("quadrature.n_mc must be positive");
  } else if (key == "quadrature.seed") {
    seed = parse_unsigned(key, value);
  } else if (key == "bochner.convention") {
    convention = model::parse_convention(value);
  } else if (key == "run.parallel") {
    if (value == "true") parallel = true;
    else if (value == "false") parallel = false;
    else throw std::invalid_argument("run.parallel expects true or false");
  } else {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

std::string Config::canonical() const {
  std::ostringstream os;
  os << "quadrature.n_mc = " << n_mc << "\n"
     << "quadrature.seed = " << seed << "\n"
     << "bochner.convention = " << model::to_string(convention) << "\n";
  return os.str();
}

std::string Config::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

model::QuadratureSpec Config::quadrature(int n) const {
  model::QuadratureSpec q = model::default_quadrature(n);
  q.sphere.mc_samples = n_mc;
  q.sphere.seed = seed;
  return q;
}

Config parse_config(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    try {
      cfg.set(key, line.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace lphodge
