#include "tangle/app/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace tangle::app {

using json = nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// RFC 4180 quoting, needed for multi-factor cut labels such as "1,2|3".
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return format_double(*d);
    return *d;
  }
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void emit_csv(const TraceReport& report, std::ostream& os) {
  for (std::size_t i = 0; i < report.columns.size(); ++i)
    os << (i ? "," : "") << csv_field(report.columns[i]);
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

void emit_json(const TraceReport& report, std::ostream& os) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size() && i < report.columns.size(); ++i)
      r[report.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(r));
  }
  const json doc = {{"metadata", report.metadata}, {"rows", std::move(rows)}};
  os << doc.dump(2) << '\n';
}

void emit(const TraceReport& report, Format format, const std::string& path,
          std::ostream& stdout_stream) {
  const auto write = [&](std::ostream& os) {
    if (format == Format::csv) emit_csv(report, os);
    else emit_json(report, os);
  };
  if (path == "-") {
    write(stdout_stream);
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  write(f);
  f.close();
  if (!f) throw IoError("failed writing " + path);
}

}  // namespace tangle::app
