#include "swarmoc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "swarmoc/errors.hpp"
#include "swarmoc/geometry.hpp"
#include "swarmoc/rng.hpp"

namespace swarmoc {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  opt.validate();
  if (order != 1 && order != 2) throw ConfigError("order: expected 1 or 2");
  if (v0_scale < 0.0) throw ConfigError("v0_scale: >= 0 required");
  if (omega_scale < 0.0) throw ConfigError("omega_scale: >= 0 required");
  if (omega_scale > 0.0 && order != 1) {
    throw ConfigError("omega_scale: natural frequencies are first-order only");
  }
  if (!(fd_eps > 0.0)) throw ConfigError("fd_eps: > 0 required");
  if (fd_max_coords < 1) throw ConfigError("fd_max_coords: >= 1 required");
}

std::map<std::string, std::string> RunConfig::echo() const {
  std::map<std::string, std::string> kv;
  auto put = [&kv](const std::string& key, auto value) {
    std::ostringstream os;
    os.precision(17);
    os << value;
    kv[key] = os.str();
  };
  put("N", params.n);
  put("d", params.d);
  put("kappa", params.kappa);
  put("m", params.m);
  put("gamma", params.gamma);
  put("lambda", params.lambda);
  put("T", params.t_final);
  put("dt", params.dt);
  put("order", order);
  put("seed", seed);
  put("subsample_seed", subsample_seed);
  kv["renorm"] = renorm ? "true" : "false";
  kv["hemisphere"] = hemisphere ? "true" : "false";
  put("v0_scale", v0_scale);
  put("omega_scale", omega_scale);
  put("tol", opt.tol);
  put("k_max", opt.k_max);
  put("alpha0", opt.alpha0);
  put("alpha_min", opt.alpha_min);
  put("alpha_max", opt.alpha_max);
  put("fd_eps", fd_eps);
  put("fd_max_coords", fd_max_coords);
  return kv;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    }

    if (key == "N") cfg.params.n = parse_int(key, value);
    else if (key == "d") cfg.params.d = parse_int(key, value);
    else if (key == "kappa") cfg.params.kappa = parse_double(key, value);
    else if (key == "m") cfg.params.m = parse_double(key, value);
    else if (key == "gamma") cfg.params.gamma = parse_double(key, value);
    else if (key == "lambda") cfg.params.lambda = parse_double(key, value);
    else if (key == "T") cfg.params.t_final = parse_double(key, value);
    else if (key == "dt") cfg.params.dt = parse_double(key, value);
    else if (key == "order") cfg.order = parse_int(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "subsample_seed") cfg.subsample_seed = parse_u64(key, value);
    else if (key == "renorm") cfg.renorm = parse_bool(key, value);
    else if (key == "hemisphere") cfg.hemisphere = parse_bool(key, value);
    else if (key == "v0_scale") cfg.v0_scale = parse_double(key, value);
    else if (key == "omega_scale") cfg.omega_scale = parse_double(key, value);
    else if (key == "tol") cfg.opt.tol = parse_double(key, value);
    else if (key == "k_max") cfg.opt.k_max = parse_int(key, value);
    else if (key == "alpha0") cfg.opt.alpha0 = parse_double(key, value);
    else if (key == "alpha_min") cfg.opt.alpha_min = parse_double(key, value);
    else if (key == "alpha_max") cfg.opt.alpha_max = parse_double(key, value);
    else if (key == "fd_eps") cfg.fd_eps = parse_double(key, value);
    else if (key == "fd_max_coords") cfg.fd_max_coords = parse_int(key, value);
    else if (key == "out") cfg.out_dir = value;
    else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

SwarmState make_initial_state(const RunConfig& cfg) {
  Eigen::MatrixXd x = sample_sphere(cfg.seed, cfg.params.n, cfg.params.d);
  if (cfg.hemisphere) {
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      if (x(0, i) < 0.0) x.col(i) = -x.col(i);
    }
  }
  if (cfg.model_order() == Order::first) {
    return SwarmState::first_order(std::move(x));
  }
  Eigen::MatrixXd v = sample_tangent_set(cfg.seed, x, cfg.v0_scale);
  return SwarmState::second_order(std::move(x), std::move(v));
}

std::vector<Eigen::MatrixXd> make_omega(const RunConfig& cfg) {
  if (cfg.omega_scale == 0.0) return {};
  std::vector<Eigen::MatrixXd> omega;
  omega.reserve(static_cast<std::size_t>(cfg.params.n));
  const int d = cfg.params.d;
  for (int i = 0; i < cfg.params.n; ++i) {
    SplitMix64 stream = substream(cfg.seed, StreamPurpose::natural_frequencies,
                                  static_cast<std::uint64_t>(i));
    Eigen::MatrixXd g(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; c += 2) {
        const auto [a, b] = stream.next_gaussian_pair();
        g(r, c) = a;
        if (c + 1 < d) g(r, c + 1) = b;
      }
    }
    omega.push_back(0.5 * cfg.omega_scale * (g - g.transpose()));
  }
  return omega;
}

ControlProblem make_problem(const RunConfig& cfg) {
  ControlProblem problem;
  problem.initial = make_initial_state(cfg);
  problem.params = cfg.params;
  problem.params.omega = make_omega(cfg);
  problem.renorm = cfg.renorm;
  return problem;
}

}  // namespace swarmoc
