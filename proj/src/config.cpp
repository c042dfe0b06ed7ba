#include "bintrack/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bintrack {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not a number: " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: key '" + key + "' has trailing junk: " + v);
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' is not an integer: " + v);
  }
  if (pos != v.size())
    throw std::invalid_argument("config: key '" + key + "' has trailing junk: " + v);
  return i;
}

std::vector<int> to_int_list(const std::string& key, const std::string& v) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(static_cast<int>(to_int(key, item)));
  if (out.empty()) throw std::invalid_argument("config: key '" + key + "' is an empty list");
  return out;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace

SensorNetwork RunConfig::build_network(std::uint64_t layout_seed) const {
  if (sensor_layout == "grid") return grid_network(n_sensors, p_e);
  if (sensor_layout == "random") return random_network(n_sensors, p_e, layout_seed);
  throw std::invalid_argument("config: sensor_layout must be 'grid' or 'random'");
}

void RunConfig::require(const std::vector<std::string>& keys) const {
  for (const auto& k : keys)
    if (!keys_present.count(k))
      throw std::invalid_argument("config: missing required key '" + k + "'");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.config_hash = fnv1a_hex(text);

  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not of the form key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " has an empty key or value");
    if (cfg.keys_present.count(key))
      throw std::invalid_argument("config: duplicate key '" + key + "'");
    cfg.keys_present.insert(key);

    if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "n_targets") cfg.n_targets = static_cast<int>(to_int(key, val));
    else if (key == "n_sensors") cfg.n_sensors = static_cast<int>(to_int(key, val));
    else if (key == "duration") cfg.duration = static_cast<int>(to_int(key, val));
    else if (key == "sigma2") cfg.sigma2 = to_double(key, val);
    else if (key == "p_e") cfg.p_e = to_double(key, val);
    else if (key == "init_speed") cfg.init_speed = to_double(key, val);
    else if (key == "start_radius") cfg.start_radius = to_double(key, val);
    else if (key == "sensor_layout") cfg.sensor_layout = val;
    else if (key == "algorithm") cfg.algorithm = val;
    else if (key == "n_particles") cfg.sampler.n_particles = static_cast<int>(to_int(key, val));
    else if (key == "epsilon") {
      if (val == "auto") cfg.sampler.epsilon.reset();
      else cfg.sampler.epsilon = to_double(key, val);
    }
    else if (key == "n_chains") cfg.sampler.n_chains = static_cast<int>(to_int(key, val));
    else if (key == "epsilon_ladder") {
      if (val == "auto") cfg.sampler.epsilon_ladder.clear();
      else {
        cfg.sampler.epsilon_ladder.clear();
        for (const auto& item : split_list(val))
          cfg.sampler.epsilon_ladder.push_back(to_double(key, item));
        if (cfg.sampler.epsilon_ladder.empty())
          throw std::invalid_argument("config: key 'epsilon_ladder' is an empty list");
      }
    }
    else if (key == "swap_pairs_per_sweep")
      cfg.sampler.swap_pairs_per_sweep = static_cast<int>(to_int(key, val));
    else if (key == "burn_in_fraction") cfg.sampler.burn_in_fraction = to_double(key, val);
    else if (key == "sigma_bearing") cfg.sampler.pseudo.sigma_bearing = to_double(key, val);
    else if (key == "sigma_speed") cfg.sampler.pseudo.sigma_speed = to_double(key, val);
    else if (key == "init_radius") cfg.sampler.init_radius = to_double(key, val);
    else if (key == "sigma_init") cfg.sampler.sigma_init = to_double(key, val);
    else if (key == "estimator") {
      if (val == "mean") cfg.sampler.mode = Estimate::Mode::PosteriorMean;
      else if (val == "map") cfg.sampler.mode = Estimate::Mode::Map;
      else throw std::invalid_argument("config: estimator must be 'mean' or 'map'");
    }
    else if (key == "targets") cfg.targets_list = to_int_list(key, val);
    else if (key == "sensors") cfg.sensors_list = to_int_list(key, val);
    else if (key == "algorithms") {
      cfg.algorithms_list = split_list(val);
      for (const auto& a : cfg.algorithms_list) parse_algorithm(a);  // validate early
      if (cfg.algorithms_list.empty())
        throw std::invalid_argument("config: key 'algorithms' is an empty list");
    }
    else if (key == "checkpoints") cfg.checkpoints = to_int_list(key, val);
    else if (key == "n_reps") cfg.n_reps = static_cast<int>(to_int(key, val));
    else if (key == "workers") cfg.workers = static_cast<int>(to_int(key, val));
    else
      throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  cfg.sampler.seed = cfg.seed;
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace bintrack
