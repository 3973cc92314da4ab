#pragma once

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tangle/app/config.hpp"

namespace tangle::app {

using Cell = std::variant<double, std::int64_t, std::string>;

struct TraceReport {
  nlohmann::json metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header row then data rows; doubles with 12 significant digits.
void emit_csv(const TraceReport& report, std::ostream& os);

/// {"metadata": ..., "rows": [{column: value, ...}, ...]}
void emit_json(const TraceReport& report, std::ostream& os);

/// Writes to `path`, or to `stdout_stream` when path is "-".
void emit(const TraceReport& report, Format format, const std::string& path,
          std::ostream& stdout_stream);

std::string format_double(double v);

}  // namespace tangle::app
