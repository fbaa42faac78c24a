#include "fdrlim/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "fdrlim/errors.hpp"

namespace fdrlim {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_real(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not a real number");
  }
}

std::uint64_t to_count(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size() || x < 0) throw std::invalid_argument("bad count");
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': '" + v + "' is not a nonnegative integer");
  }
}

}  // namespace

std::vector<double> parse_alpha_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof()) {
      throw ConfigError("alpha grid '" + text + "': expected lo:hi:step");
    }
    if (!(step > 0.0) || hi < lo) throw ConfigError("alpha grid '" + text + "': bad range");
    for (double a = lo; a <= hi + 1e-9; a += step) out.push_back(a);
    return out;
  }
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_real(item, "alphas"));
  }
  if (out.empty()) throw ConfigError("alpha grid '" + text + "': no values");
  return out;
}

std::vector<double> default_simulation_alphas() {
  return parse_alpha_grid("0.05:0.70:0.05");
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "model") {
    cfg.model = value;
  } else if (key == "pi0") {
    cfg.pi0 = to_real(value, key);
  } else if (key == "alphas") {
    cfg.alphas = parse_alpha_grid(value);
  } else if (key == "procedures") {
    cfg.procedures.clear();
    std::istringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.procedures.push_back(item);
    }
  } else if (key == "n") {
    cfg.n = static_cast<std::size_t>(to_count(value, key));
  } else if (key == "trials") {
    cfg.trials = static_cast<std::size_t>(to_count(value, key));
  } else if (key == "seed") {
    cfg.seed = to_count(value, key);
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(to_count(value, key));
  } else if (key == "out") {
    cfg.out = value;
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config file '" + path + "' line " + std::to_string(lineno) +
                        ": expected key=value");
    }
    apply_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace fdrlim
