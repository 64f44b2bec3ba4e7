#include "swarmoc/output.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "swarmoc/objective.hpp"

namespace swarmoc {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string trajectory_csv(const Trajectory& traj) {
  const bool second = traj.order() == Order::second;
  const int d = traj.states.front().d();
  std::ostringstream out;
  out << "t,particle";
  for (int c = 0; c < d; ++c) out << ",x" << c;
  if (second) {
    for (int c = 0; c < d; ++c) out << ",v" << c;
  }
  out << "\n";
  for (int k = 0; k < traj.grid.num_nodes(); ++k) {
    const auto& s = traj.states[static_cast<std::size_t>(k)];
    const std::string t = format_double(traj.grid.node(k));
    for (int i = 0; i < s.n(); ++i) {
      out << t << ',' << i;
      for (int c = 0; c < d; ++c) out << ',' << format_double(s.x(c, i));
      if (second) {
        for (int c = 0; c < d; ++c) out << ',' << format_double(s.v(c, i));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string metrics_csv(const Trajectory& traj) {
  const bool second = traj.order() == Order::second;
  std::ostringstream out;
  out << (second ? "t,position_variance,velocity_variance" : "t,position_variance") << "\n";
  for (int k = 0; k < traj.grid.num_nodes(); ++k) {
    const auto& s = traj.states[static_cast<std::size_t>(k)];
    out << format_double(traj.grid.node(k)) << ',' << format_double(position_variance(s));
    if (second) out << ',' << format_double(velocity_variance(s));
    out << "\n";
  }
  return out.str();
}

std::string control_csv(const ControlGrid& u, const TimeGrid& grid) {
  const int d = static_cast<int>(u.values.front().rows());
  const int n = static_cast<int>(u.values.front().cols());
  std::ostringstream out;
  out << "t,particle";
  for (int c = 0; c < d; ++c) out << ",u" << c;
  out << "\n";
  for (int k = 0; k < grid.num_nodes(); ++k) {
    const std::string t = format_double(grid.node(k));
    for (int i = 0; i < n; ++i) {
      out << t << ',' << i;
      for (int c = 0; c < d; ++c) {
        out << ',' << format_double(u.values[static_cast<std::size_t>(k)](c, i));
      }
      out << "\n";
    }
  }
  return out.str();
}

std::string history_csv(const OptimizeReport& report) {
  std::ostringstream out;
  out << "iteration,total,tracking,energy,grad_norm,step_size\n";
  for (std::size_t k = 0; k < report.cost_history.size(); ++k) {
    const auto& cost = report.cost_history[k];
    const double step = k < report.step_history.size() ? report.step_history[k] : 0.0;
    out << k << ',' << format_double(cost.total) << ',' << format_double(cost.tracking) << ','
        << format_double(cost.energy) << ',' << format_double(report.grad_norm_history[k]) << ','
        << format_double(step) << "\n";
  }
  return out.str();
}

std::string compare_csv(const Trajectory& controlled, const Trajectory& free_run) {
  const bool second = controlled.order() == Order::second;
  std::ostringstream out;
  out << "t,position_variance_controlled,position_variance_free";
  if (second) out << ",velocity_variance_controlled,velocity_variance_free";
  out << "\n";
  for (int k = 0; k < controlled.grid.num_nodes(); ++k) {
    const auto& a = controlled.states[static_cast<std::size_t>(k)];
    const auto& b = free_run.states[static_cast<std::size_t>(k)];
    out << format_double(controlled.grid.node(k)) << ',' << format_double(position_variance(a))
        << ',' << format_double(position_variance(b));
    if (second) {
      out << ',' << format_double(velocity_variance(a)) << ','
          << format_double(velocity_variance(b));
    }
    out << "\n";
  }
  return out.str();
}

nlohmann::json config_json(const RunConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : cfg.echo()) j["config." + key] = value;
  return j;
}

nlohmann::json invariant_json(const InvariantReport& report) {
  return nlohmann::json{{"max_norm_drift", report.max_norm_drift},
                        {"max_tangency_drift", report.max_tangency_drift},
                        {"max_speed", report.max_speed},
                        {"control_bound_M", report.control_bound_m}};
}

}  // namespace swarmoc
