#pragma once

// Run configuration: a single JSON document, schema version "v": 1.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tangle/entanglement.hpp"
#include "tangle/trajectories.hpp"

namespace tangle::app {

enum class Scenario {
  two_qubit_demo,
  product_trace,
  register_trace,
  pseudo_pure,
  separable_mixed,
  chsh_scan
};

std::string_view to_string(Scenario s);
std::optional<Scenario> scenario_from_string(std::string_view name);

enum class Format { csv, json };

struct Grid {
  double t0 = 0.0;
  double t1 = 0.0;
  int steps = 2;  // number of grid points, endpoints included

  std::vector<double> points() const;
};

struct SubsystemSpec {
  FactorCurve curve;
  bool frozen = false;
};

struct RunConfig {
  Scenario scenario = Scenario::two_qubit_demo;
  std::vector<SubsystemSpec> subsystems;
  Grid grid;
  std::vector<Cut> cuts;
  DiffMethod method;
  Format format = Format::csv;
  std::string path = "-";  // "-" is standard output
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double epsilon = 0.1;
  std::optional<RegisterProgram> reg;
  std::optional<Ensemble> ensemble;
  MeasurementSetting setting{Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()};
  nlohmann::json echo;  // the document as parsed, after overrides

  ProductTrajectory trajectory() const;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { parse, schema, semantic };
  ConfigError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Parses and validates a config document. `overrides` is merge-patched onto the
/// document first (command-line flags).
RunConfig parse_config(std::string_view text, const nlohmann::json& overrides = nlohmann::json());

RunConfig config_from_json(const nlohmann::json& doc);

}  // namespace tangle::app
