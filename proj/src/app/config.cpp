#include "tangle/app/config.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "tangle/app/report.hpp"
#include "tangle/random.hpp"

namespace tangle::app {

using json = nlohmann::json;
using Kind = ConfigError::Kind;

namespace {

constexpr double kPi = std::numbers::pi;

struct ScenarioName {
  Scenario scenario;
  std::string_view name;
};

constexpr ScenarioName kScenarios[] = {
    {Scenario::two_qubit_demo, "two_qubit_demo"}, {Scenario::product_trace, "product_trace"},
    {Scenario::register_trace, "register_trace"}, {Scenario::pseudo_pure, "pseudo_pure"},
    {Scenario::separable_mixed, "separable_mixed"}, {Scenario::chsh_scan, "chsh_scan"},
};

[[noreturn]] void fail(Kind kind, const std::string& path, const std::string& msg) {
  throw ConfigError(kind, (path.empty() ? std::string("config") : path) + ": " + msg);
}

// A view into the document that remembers where it is, for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return *j_; }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node operator[](const char* key) const {
    if (!j_->is_object()) fail(Kind::schema, path_, "expected an object");
    if (!j_->contains(key)) fail(Kind::schema, child_path(key), "required");
    return Node(j_->at(key), child_path(key));
  }

  Node at(std::size_t i) const {
    return Node(j_->at(i), path_ + "[" + std::to_string(i) + "]");
  }

  std::size_t size() const {
    if (!j_->is_array()) fail(Kind::schema, path_, "expected an array");
    return j_->size();
  }

  double number() const {
    if (!j_->is_number()) fail(Kind::schema, path_, "expected a number");
    return j_->get<double>();
  }

  long integer() const {
    if (!j_->is_number_integer()) fail(Kind::schema, path_, "expected an integer");
    return j_->get<long>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail(Kind::schema, path_, "expected true or false");
    return j_->get<bool>();
  }

  std::string string() const {
    if (!j_->is_string()) fail(Kind::schema, path_, "expected a string");
    return j_->get<std::string>();
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  // A number, or [re, im].
  cplx complex() const {
    if (j_->is_number()) return {j_->get<double>(), 0.0};
    if (j_->is_array() && j_->size() == 2) return {at(0).number(), at(1).number()};
    fail(Kind::schema, path_, "expected a number or [re, im]");
  }

  VectorXc complex_vector() const {
    VectorXc v(static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = at(i).complex();
    return v;
  }

  MatrixXc complex_matrix() const {
    const auto n = size();
    if (n == 0) fail(Kind::schema, path_, "empty matrix");
    MatrixXc m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(at(0).size()));
    for (std::size_t i = 0; i < n; ++i) {
      const Node row = at(i);
      if (row.size() != static_cast<std::size_t>(m.cols()))
        fail(Kind::schema, row.path(), "rows differ in length");
      for (std::size_t k = 0; k < row.size(); ++k)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row.at(k).complex();
    }
    return m;
  }

 private:
  std::string child_path(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

  const json* j_;
  std::string path_;
};

// Converts library exceptions raised while building objects into semantic errors.
template <typename F>
auto build(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(Kind::semantic, path, e.what());
  }
}

Polynomial polynomial(const Node& parent, const char* key, Polynomial fallback = {}) {
  if (!parent.has(key)) return fallback;
  return build(parent[key].path(), [&] { return Polynomial(parent[key].numbers()); });
}

Ket ket_from(const Node& n) {
  if (n.raw().is_string()) {
    const std::string s = n.string();
    VectorXc v(2);
    const double r = 1.0 / std::sqrt(2.0);
    if (s == "0") v << 1.0, 0.0;
    else if (s == "1") v << 0.0, 1.0;
    else if (s == "+") v << r, r;
    else if (s == "-") v << r, -r;
    else fail(Kind::schema, n.path(), "named states are \"0\", \"1\", \"+\", \"-\"");
    return Ket(v);
  }
  return build(n.path(), [&] {
    Ket k(n.complex_vector());
    if (!k.is_unit(1e-10)) throw ValidationError("state is not unit-norm");
    return k;
  });
}

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

FactorCurve curve_from(const Node& n, int dim, std::uint64_t seed, std::uint64_t stream) {
  const std::string type = n["type"].string();
  const Polynomial gauge = polynomial(n, "gauge");
  if (type == "bloch") {
    if (dim != 0 && dim != 2) fail(Kind::semantic, n.path(), "BlochCurve requires dim 2");
    return FactorCurve(BlochCurve{polynomial(n, "theta"), polynomial(n, "phi")}, gauge);
  }
  if (type == "phase") {
    FactorCurve c(PhaseCurve{polynomial(n, "phase"), ket_from(n["state"])}, gauge);
    if (dim != 0 && c.dim() != dim)
      fail(Kind::semantic, n.path(), "PhaseCurve state has dimension " + std::to_string(c.dim()));
    return c;
  }
  if (type == "hamiltonian") {
    const Ket init = ket_from(n["initial"]);
    const MatrixXc h = n["generator"].complex_matrix();
    FactorCurve c = build(n.path(), [&] {
      return FactorCurve(
          LocalHamiltonianCurve(HermitianOp(h, Dims{static_cast<int>(h.rows())}), init), gauge);
    });
    if (dim != 0 && c.dim() != dim)
      fail(Kind::semantic, n.path(),
           "LocalHamiltonianCurve has dimension " + std::to_string(c.dim()));
    return c;
  }
  if (type == "random_hamiltonian") {
    if (dim == 0) fail(Kind::semantic, n.path(), "random_hamiltonian requires dim");
    const double scale = n.has("scale") ? n["scale"].number() : 1.0;
    Rng rng = seeded(seed, stream);
    const Ket init = random_ket({dim}, rng);
    return FactorCurve(LocalHamiltonianCurve(random_hermitian({dim}, rng, scale), init), gauge);
  }
  if (type == "sampled") {
    const std::vector<double> ts = n["times"].numbers();
    const Node states = n["states"];
    std::vector<Ket> ks;
    for (std::size_t i = 0; i < states.size(); ++i) ks.push_back(ket_from(states.at(i)));
    FactorCurve c = build(n.path(), [&] { return FactorCurve(SampledCurve(ts, ks), gauge); });
    if (dim != 0 && c.dim() != dim)
      fail(Kind::semantic, n.path(), "SampledCurve has dimension " + std::to_string(c.dim()));
    return c;
  }
  fail(Kind::schema, n["type"].path(),
       "unknown curve type \"" + type +
           "\" (bloch, phase, hamiltonian, random_hamiltonian, sampled)");
}

std::vector<SubsystemSpec> subsystems_from(const Node& n, std::uint64_t seed) {
  std::vector<SubsystemSpec> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const Node s = n.at(i);
    const int dim = s.has("dim") ? static_cast<int>(s["dim"].integer()) : 0;
    if (s.has("dim") && dim < 2) fail(Kind::semantic, s["dim"].path(), "dim must be >= 2");
    const bool frozen = s.has("frozen") ? s["frozen"].boolean() : false;
    out.push_back({curve_from(s["curve"], dim, seed, i), frozen});
  }
  return out;
}

SubsystemSpec real_qubit(Polynomial theta) {
  return {FactorCurve(BlochCurve{std::move(theta), Polynomial()}), false};
}

std::vector<SubsystemSpec> default_two_qubits() {
  return {real_qubit(Polynomial::affine(0.0, 1.0)), real_qubit(Polynomial::affine(0.0, 1.0))};
}

Cut cut_from(const Node& n, int factors) {
  std::vector<int> left;
  if (n.raw().is_string()) {
    const std::string s = n.string();
    const auto bar = s.find('|');
    if (bar == std::string::npos) fail(Kind::schema, n.path(), "cut strings look like \"1,2|3\"");
    std::stringstream ss(s.substr(0, bar));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        left.push_back(std::stoi(item) - 1);
      } catch (const std::exception&) {
        fail(Kind::schema, n.path(), "bad factor index \"" + item + "\"");
      }
    }
  } else {
    for (std::size_t i = 0; i < n.size(); ++i)
      left.push_back(static_cast<int>(n.at(i).integer()) - 1);
  }
  return build(n.path(), [&] { return Cut::split(left, factors); });
}

std::vector<Cut> default_cuts(int factors) {
  std::vector<Cut> cuts;
  if (factors == 2) return {Cut::split({0}, 2)};
  for (int i = 0; i + 1 < factors; ++i) cuts.push_back(Cut::split({i}, factors));
  std::vector<int> head(static_cast<std::size_t>(factors - 1));
  std::iota(head.begin(), head.end(), 0);
  cuts.push_back(Cut::split(head, factors));
  return cuts;
}

DiffMethod method_from(const Node& n) {
  DiffMethod m;
  const std::string kind = n.raw().is_string() ? n.string() : n["kind"].string();
  if (kind == "auto") m.kind = DiffMethod::Kind::automatic;
  else if (kind == "analytic") m.kind = DiffMethod::Kind::analytic;
  else if (kind == "central_fd") m.kind = DiffMethod::Kind::central_fd;
  else if (kind == "richardson") m.kind = DiffMethod::Kind::richardson;
  else fail(Kind::schema, n.path(), "method is auto, analytic, central_fd or richardson");
  if (n.has("h")) {
    m.h = n["h"].number();
    if (!(m.h > 0.0)) fail(Kind::semantic, n["h"].path(), "h must be positive");
  }
  return m;
}

UnitaryCurve unitary_from(const Node& n) {
  const std::string type = n["type"].string();
  if (type == "identity") return UnitaryCurve::identity(2);
  if (type == "rotation") {
    const std::string axis = n["axis"].string();
    const int a = axis == "x" ? 0 : axis == "y" ? 1 : axis == "z" ? 2 : -1;
    if (a < 0) fail(Kind::schema, n["axis"].path(), "axis is x, y or z");
    return UnitaryCurve::rotation(a, polynomial(n, "angle"));
  }
  if (type == "constant") {
    const MatrixXc u = n["matrix"].complex_matrix();
    return build(n.path(), [&] { return UnitaryCurve::constant(u); });
  }
  if (type == "generator") {
    const MatrixXc g = n["generator"].complex_matrix();
    const Polynomial angle = polynomial(n, "angle");
    return build(n.path(), [&] {
      const int d = static_cast<int>(g.rows());
      return UnitaryCurve(MatrixXc::Identity(d, d), HermitianOp(g, Dims{d}), angle);
    });
  }
  fail(Kind::schema, n["type"].path(), "unitary types are identity, rotation, constant, generator");
}

// Default three-qubit program: the third qubit never moves.
RegisterProgram default_register() {
  const auto lin = [](double rate) { return Polynomial::affine(0.0, rate); };
  std::vector<std::vector<UnitaryCurve>> steps;
  steps.push_back({UnitaryCurve::rotation(1, lin(1.0)), UnitaryCurve::rotation(2, lin(0.7)),
                   UnitaryCurve::identity(2)});
  steps.push_back({UnitaryCurve::rotation(2, lin(1.3)), UnitaryCurve::rotation(1, lin(-0.9)),
                   UnitaryCurve::identity(2)});
  steps.push_back({UnitaryCurve::rotation(0, lin(0.5)), UnitaryCurve::rotation(0, lin(1.1)),
                   UnitaryCurve::identity(2)});
  return RegisterProgram(3, std::move(steps), uniform_superposition(3), 1.0);
}

RegisterProgram register_from(const Node& n) {
  const int q = static_cast<int>(n["n"].integer());
  if (q < 1 || q > 12) fail(Kind::semantic, n["n"].path(), "n must be between 1 and 12");
  Ket init = uniform_superposition(q);
  if (n.has("initial")) {
    const Node i = n["initial"];
    if (i.raw().is_string() && i.string() == "zero") {
      VectorXc v = VectorXc::Zero(Eigen::Index{1} << q);
      v(0) = 1.0;
      init = Ket(v, Dims(static_cast<std::size_t>(q), 2));
    } else if (!(i.raw().is_string() && i.string() == "plus")) {
      const Ket k = ket_from(i);
      init = build(i.path(), [&] { return Ket(k.amplitudes(), Dims(q, 2), true); });
    }
  }
  const double duration = n.has("duration") ? n["duration"].number() : 1.0;
  const Node steps = n["steps"];
  std::vector<std::vector<UnitaryCurve>> out;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    std::vector<UnitaryCurve> step;
    for (std::size_t i = 0; i < steps.at(k).size(); ++i) step.push_back(unitary_from(steps.at(k).at(i)));
    out.push_back(std::move(step));
  }
  return build(n.path(), [&] { return RegisterProgram(q, std::move(out), init, duration); });
}

// Two-component rotating mixture: |0><0| (x) |+><+| and |1><1| (x) |-><-| with the
// first factors turning in opposite senses and the second factors held fixed.
Ensemble default_ensemble() {
  const auto fixed = [](double theta, double phi) {
    return FactorCurve(BlochCurve{Polynomial::constant(theta), Polynomial::constant(phi)});
  };
  std::vector<ComponentPair> comps;
  comps.push_back({FactorCurve(BlochCurve{Polynomial::affine(0.0, 1.0), {}}), fixed(kPi / 2, 0.0),
                   false, true});
  comps.push_back({FactorCurve(BlochCurve{Polynomial::affine(kPi, -1.0), {}}), fixed(kPi / 2, kPi),
                   false, true});
  return Ensemble({0.5, 0.5}, std::move(comps));
}

Ensemble ensemble_from(const Node& n, std::uint64_t seed) {
  const std::vector<double> w = n["weights"].numbers();
  const Node comps = n["components"];
  std::vector<ComponentPair> out;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const Node c = comps.at(i);
    ComponentPair p{curve_from(c["first"], 0, seed, 2 * i),
                    curve_from(c["second"], 0, seed, 2 * i + 1)};
    if (c.has("frozen")) {
      const Node f = c["frozen"];
      if (f.size() != 2) fail(Kind::schema, f.path(), "expected [first, second]");
      p.first_frozen = f.at(0).boolean();
      p.second_frozen = f.at(1).boolean();
    }
    out.push_back(std::move(p));
  }
  return build(n.path(), [&] { return Ensemble(w, std::move(out)); });
}

Eigen::Vector3d direction_from(const Node& n) {
  const auto v = n.numbers();
  if (v.size() != 3) fail(Kind::schema, n.path(), "expected a 3-vector");
  Eigen::Vector3d d(v[0], v[1], v[2]);
  if (std::abs(d.norm() - 1.0) > 1e-12) fail(Kind::semantic, n.path(), "must be a unit vector");
  return d;
}

}  // namespace

std::string_view to_string(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.scenario == s) return e.name;
  return "?";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  for (const auto& e : kScenarios)
    if (e.name == name) return e.scenario;
  return std::nullopt;
}

std::vector<double> Grid::points() const {
  std::vector<double> p(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    p[static_cast<std::size_t>(i)] =
        i + 1 == steps ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / (steps - 1);
  return p;
}

ProductTrajectory RunConfig::trajectory() const {
  std::vector<FactorCurve> curves;
  std::vector<bool> frozen;
  for (const auto& s : subsystems) {
    curves.push_back(s.curve);
    frozen.push_back(s.frozen);
  }
  return ProductTrajectory(std::move(curves), std::move(frozen));
}

RunConfig config_from_json(const json& doc) {
  const Node root(doc, "");
  if (!doc.is_object()) fail(Kind::schema, "", "expected a JSON object");
  if (root["v"].integer() != 1) fail(Kind::schema, "v", "unsupported schema version");

  RunConfig cfg;
  cfg.echo = doc;
  const std::string name = root["scenario"].string();
  const auto sc = scenario_from_string(name);
  if (!sc) fail(Kind::schema, "scenario", "unknown scenario \"" + name + "\"");
  cfg.scenario = *sc;

  if (root.has("seed")) {
    const long s = root["seed"].integer();
    if (s < 0) fail(Kind::semantic, "seed", "must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (root.has("tol")) {
    cfg.tol = root["tol"].number();
    if (!(cfg.tol > 0.0)) fail(Kind::semantic, "tol", "must be positive");
  }

  const bool fixed_demo = cfg.scenario == Scenario::two_qubit_demo ||
                          cfg.scenario == Scenario::chsh_scan;
  cfg.method = fixed_demo ? DiffMethod::analytic() : DiffMethod::automatic();
  if (root.has("method")) cfg.method = method_from(root["method"]);

  // Subsystems.
  switch (cfg.scenario) {
    case Scenario::product_trace:
      cfg.subsystems = subsystems_from(root["subsystems"], cfg.seed);
      break;
    case Scenario::two_qubit_demo:
    case Scenario::chsh_scan:
    case Scenario::pseudo_pure:
      cfg.subsystems =
          root.has("subsystems") ? subsystems_from(root["subsystems"], cfg.seed) : default_two_qubits();
      break;
    default: break;
  }
  if (!cfg.subsystems.empty()) {
    (void)build("subsystems", [&] { return cfg.trajectory(); });
    if (fixed_demo) {
      if (cfg.subsystems.size() != 2 || cfg.subsystems[0].curve.dim() != 2 ||
          cfg.subsystems[1].curve.dim() != 2)
        fail(Kind::semantic, "subsystems", std::string(to_string(cfg.scenario)) +
                                               " needs exactly two qubit factors");
    }
  }

  int factors = static_cast<int>(cfg.subsystems.size());
  if (cfg.scenario == Scenario::register_trace) {
    cfg.reg = root.has("register") ? register_from(root["register"]) : default_register();
    factors = cfg.reg->qubits();
  } else if (cfg.scenario == Scenario::separable_mixed) {
    cfg.ensemble = root.has("ensemble") ? ensemble_from(root["ensemble"], cfg.seed)
                                        : default_ensemble();
    factors = 2;
  }

  // Grid.
  cfg.grid = {0.0, kPi, 181};
  if (cfg.scenario == Scenario::register_trace)
    cfg.grid = {0.0, cfg.reg->duration() * cfg.reg->step_count(), 121};
  if (cfg.scenario == Scenario::separable_mixed) cfg.grid = {0.0, 1.0, 101};
  if (root.has("grid")) {
    const Node g = root["grid"];
    if (g.has("t0")) cfg.grid.t0 = g["t0"].number();
    if (g.has("t1")) cfg.grid.t1 = g["t1"].number();
    if (g.has("steps")) cfg.grid.steps = static_cast<int>(g["steps"].integer());
    if (cfg.grid.steps < 2) fail(Kind::semantic, "grid.steps", "must be >= 2");
    if (!(cfg.grid.t0 < cfg.grid.t1)) fail(Kind::semantic, "grid", "t0 must be < t1");
    if (cfg.reg) {
      const double end = cfg.reg->duration() * cfg.reg->step_count();
      if (cfg.grid.t0 < 0.0 || cfg.grid.t1 > end)
        fail(Kind::semantic, "grid", "register grid must lie in [0, " + format_double(end) + "]");
    }
  }

  // Cuts.
  if (cfg.scenario == Scenario::two_qubit_demo || cfg.scenario == Scenario::chsh_scan) {
    cfg.cuts = {Cut::split({0}, 2)};
  } else if (root.has("cuts")) {
    const Node c = root["cuts"];
    for (std::size_t i = 0; i < c.size(); ++i) cfg.cuts.push_back(cut_from(c.at(i), factors));
    if (cfg.cuts.empty()) fail(Kind::semantic, "cuts", "at least one cut required");
  } else {
    cfg.cuts = default_cuts(factors);
  }

  if (root.has("epsilon")) {
    cfg.epsilon = root["epsilon"].number();
    if (!(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0))
      fail(Kind::semantic, "epsilon", "must lie in (0, 1]");
  }

  if (root.has("setting")) {
    const Node s = root["setting"];
    cfg.setting = MeasurementSetting(direction_from(s["a"]), direction_from(s["b"]));
  }

  if (root.has("outputs")) {
    const Node o = root["outputs"];
    if (o.has("format")) {
      const std::string f = o["format"].string();
      if (f == "csv") cfg.format = Format::csv;
      else if (f == "json") cfg.format = Format::json;
      else fail(Kind::schema, "outputs.format", "must be csv or json");
    }
    if (o.has("path")) cfg.path = o["path"].string();
  }
  return cfg;
}

RunConfig parse_config(std::string_view text, const json& overrides) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(Kind::parse, "parse error at line " + std::to_string(line) + ", column " +
                                       std::to_string(col) + ": " + e.what());
  }
  if (!overrides.is_null()) {
    if (!doc.is_object()) fail(Kind::schema, "", "expected a JSON object");
    doc.merge_patch(overrides);
  }
  return config_from_json(doc);
}

}  // namespace tangle::app
