#include "bintrack/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bintrack {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void Scenario::validate() const {
  net.validate();
  motion.validate();
  if (duration < 1) throw std::invalid_argument("Scenario: duration must be >= 1");
  if (truth.size() != static_cast<std::size_t>(duration) ||
      observations.size() != static_cast<std::size_t>(duration))
    throw std::invalid_argument("Scenario: truth/observations length must equal duration");
  const int nt = n_targets();
  for (const auto& s : truth) {
    s.validate();
    if (s.n_targets() != nt)
      throw std::invalid_argument("Scenario: inconsistent target count across timesteps");
  }
  for (const auto& c : observations)
    if (c.size() != static_cast<std::size_t>(net.n_sensors()))
      throw std::invalid_argument("Scenario: observation length mismatch");
}

SensorNetwork grid_network(int n_sensors, double p_e, double half) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_sensors))));
  if (side * side != n_sensors)
    throw std::invalid_argument("grid_network: n_sensors must be a perfect square");
  SensorNetwork net;
  net.p_e = p_e;
  net.locations.reserve(n_sensors);
  for (int r = 0; r < side; ++r)
    for (int c = 0; c < side; ++c) {
      const double x = -half + (c + 0.5) * (2.0 * half) / side;
      const double y = -half + (r + 0.5) * (2.0 * half) / side;
      net.locations.emplace_back(x, y);
    }
  net.validate();
  return net;
}

SensorNetwork random_network(int n_sensors, double p_e, std::uint64_t seed, double half) {
  SensorNetwork net;
  net.p_e = p_e;
  Rng rng = make_rng(seed, 0x5e5072ULL);
  std::uniform_real_distribution<double> u(-half, half);
  net.locations.reserve(n_sensors);
  for (int i = 0; i < n_sensors; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    net.locations.emplace_back(x, y);
  }
  net.validate();
  return net;
}

Scenario make_scenario(int n_targets, const SensorNetwork& net, const MotionParams& motion,
                       int duration, std::uint64_t seed, double init_speed,
                       double start_radius) {
  if (n_targets < 1) throw std::invalid_argument("make_scenario: n_targets must be >= 1");
  if (duration < 1) throw std::invalid_argument("make_scenario: duration must be >= 1");
  net.validate();
  motion.validate();

  Scenario s;
  s.net = net;
  s.motion = motion;
  s.duration = duration;
  s.seed = seed;
  s.init_speed = init_speed;
  s.start_radius = start_radius;

  Rng traj_rng = make_rng(seed, 0x7261ULL);  // trajectory stream
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  TargetState init;
  for (int j = 0; j < n_targets; ++j) {
    const double a = angle(traj_rng);
    const Vec2 dir(std::cos(a), std::sin(a));
    init.positions.push_back(start_radius * dir);
    init.velocities.push_back(-init_speed * dir);  // toward the centre
  }
  s.truth.push_back(init);
  for (int t = 1; t < duration; ++t)
    s.truth.push_back(propagate(s.truth.back(), motion, traj_rng));

  Rng obs_rng = make_rng(seed, 0x6f6273ULL);  // observation stream
  for (int t = 0; t < duration; ++t) {
    BinaryMatrix m = binary_matrix(s.truth[t], net);
    s.observations.push_back(count_vector(corrupt(m, net.p_e, obs_rng)));
  }
  s.validate();
  return s;
}

namespace {

void put(std::ostream& os, double v) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
}

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("scenario file: " + what);
}

std::string expect_key(std::istream& is, const std::string& key) {
  std::string k;
  if (!(is >> k)) bad("unexpected end of file, wanted '" + key + "'");
  if (k != key) bad("expected '" + key + "', got '" + k + "'");
  return k;
}

}  // namespace

void save_scenario(const Scenario& s, std::ostream& os) {
  os << "bintrack-scenario 1\n";
  os << "seed " << s.seed << "\n";
  os << "n_targets " << s.n_targets() << "\n";
  os << "n_sensors " << s.net.n_sensors() << "\n";
  os << "duration " << s.duration << "\n";
  os << "p_e "; put(os, s.net.p_e); os << "\n";
  os << "sigma2 "; put(os, s.motion.sigma2); os << "\n";
  os << "init_speed "; put(os, s.init_speed); os << "\n";
  os << "start_radius "; put(os, s.start_radius); os << "\n";
  os << "sensors\n";
  for (const auto& l : s.net.locations) {
    put(os, l.x); os << " "; put(os, l.y); os << "\n";
  }
  os << "truth\n";
  for (const auto& st : s.truth)
    for (int j = 0; j < st.n_targets(); ++j) {
      put(os, st.positions[j].x); os << " ";
      put(os, st.positions[j].y); os << " ";
      put(os, st.velocities[j].x); os << " ";
      put(os, st.velocities[j].y); os << "\n";
    }
  os << "observations\n";
  for (const auto& c : s.observations) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << "\n";
  }
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  save_scenario(s, f);
}

Scenario load_scenario(std::istream& is) {
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "bintrack-scenario" || version != 1)
    bad("bad header");
  Scenario s;
  int n_targets = 0, n_sensors = 0;
  expect_key(is, "seed"); is >> s.seed;
  expect_key(is, "n_targets"); is >> n_targets;
  expect_key(is, "n_sensors"); is >> n_sensors;
  expect_key(is, "duration"); is >> s.duration;
  expect_key(is, "p_e"); is >> s.net.p_e;
  expect_key(is, "sigma2"); is >> s.motion.sigma2;
  expect_key(is, "init_speed"); is >> s.init_speed;
  expect_key(is, "start_radius"); is >> s.start_radius;
  if (!is) bad("malformed header fields");
  if (n_targets < 1 || n_sensors < 1 || s.duration < 1) bad("non-positive dimensions");
  expect_key(is, "sensors");
  s.net.locations.resize(n_sensors);
  for (auto& l : s.net.locations)
    if (!(is >> l.x >> l.y)) bad("truncated sensor block");
  expect_key(is, "truth");
  s.truth.resize(s.duration);
  for (auto& st : s.truth) {
    st.positions.resize(n_targets);
    st.velocities.resize(n_targets);
    for (int j = 0; j < n_targets; ++j)
      if (!(is >> st.positions[j].x >> st.positions[j].y >> st.velocities[j].x >>
            st.velocities[j].y))
        bad("truncated truth block");
  }
  expect_key(is, "observations");
  s.observations.resize(s.duration);
  for (auto& c : s.observations) {
    c.resize(n_sensors);
    for (auto& v : c)
      if (!(is >> v)) bad("truncated observation block");
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open scenario file: " + path);
  return load_scenario(f);
}

}  // namespace bintrack
