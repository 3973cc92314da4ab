#include "tangle/app/scenarios.hpp"

#include "tangle/channels.hpp"
#include "tangle/expansion.hpp"
#include "tangle/geometry.hpp"
#include "tangle/mixed_witness.hpp"

#ifndef TANGLE_VERSION
#define TANGLE_VERSION "0.0.0"
#endif

namespace tangle::app {

using json = nlohmann::json;

namespace {

struct Context {
  const RunConfig& cfg;
  RunResult result;

  void breach(double t, const std::string& what, double value) {
    result.breaches.push_back("t=" + format_double(t) + ": " + what + " = " +
                              format_double(value) + " exceeds tol " + format_double(cfg.tol));
  }
};

void add_cut_columns(std::vector<std::string>& cols, const std::vector<Cut>& cuts) {
  for (const auto& c : cuts) cols.push_back("tangent_entropy_" + c.label());
  for (const auto& c : cuts) cols.push_back("base_entropy_" + c.label());
}

void add_sample_cells(std::vector<Cell>& row, const GeodesicSample& s) {
  for (double e : s.tangent_entropy) row.emplace_back(e);
  for (double e : s.base_entropy) row.emplace_back(e);
}

Ket normalized_horizontal(const TangentVector& tv) {
  return Ket(horizontal_tangent(tv).direction().normalized(), tv.dims());
}

void two_qubit_demo(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ProductTrajectory traj = cfg.trajectory();
  const Profile prof = profile(traj, cfg.grid.points(), cfg.cuts, {cfg.method});
  auto& rep = ctx.result.report;
  rep.columns = {"t", "fs_speed"};
  add_cut_columns(rep.columns, cfg.cuts);
  rep.columns.insert(rep.columns.end(), {"bell_psi_plus", "bell_phi_minus", "chsh"});
  for (const auto& s : prof.samples) {
    const Ket dir = normalized_horizontal(product_tangent(traj, s.t, cfg.method));
    const BellCoefficients bell = bell_decompose(dir);
    std::vector<Cell> row{s.t, s.fs_speed};
    add_sample_cells(row, s);
    row.emplace_back(bell.psi_plus.real());
    row.emplace_back(bell.phi_minus.real());
    row.emplace_back(chsh_value(dir));
    rep.rows.push_back(std::move(row));
  }
  rep.metadata["arc_length"] = prof.arc_length;
}

void product_trace(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ProductTrajectory traj = cfg.trajectory();
  const Profile prof = profile(traj, cfg.grid.points(), cfg.cuts, {cfg.method});
  const bool bipartite = traj.size() == 2;
  auto& rep = ctx.result.report;
  rep.columns = {"t", "fs_speed"};
  add_cut_columns(rep.columns, cfg.cuts);
  if (bipartite) rep.columns.insert(rep.columns.end(), {"channel_gap_1", "channel_gap_2"});
  for (const auto& s : prof.samples) {
    std::vector<Cell> row{s.t, s.fs_speed};
    add_sample_cells(row, s);
    if (bipartite) {
      for (int k = 1; k <= 2; ++k) {
        const double gap = reduced_tangent_channel(traj, s.t, k, cfg.method).gap;
        if (gap > cfg.tol) ctx.breach(s.t, "channel_gap_" + std::to_string(k), gap);
        row.emplace_back(gap);
      }
    }
    rep.rows.push_back(std::move(row));
  }
  rep.metadata["arc_length"] = prof.arc_length;
}

void register_trace(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const RegisterProgram& prog = *cfg.reg;
  const Profile prof = profile(prog, cfg.grid.points(), cfg.cuts, {cfg.method});
  auto& rep = ctx.result.report;
  rep.columns = {"t", "step", "fs_speed"};
  add_cut_columns(rep.columns, cfg.cuts);
  for (const auto& s : prof.samples) {
    std::vector<Cell> row{s.t, static_cast<std::int64_t>(prog.locate(s.t).first), s.fs_speed};
    add_sample_cells(row, s);
    for (std::size_t i = 0; i < cfg.cuts.size(); ++i)
      if (s.base_entropy[i] > cfg.tol)
        ctx.breach(s.t, "base_entropy_" + cfg.cuts[i].label(), s.base_entropy[i]);
    rep.rows.push_back(std::move(row));
  }
  rep.metadata["arc_length"] = prof.arc_length;
}

void pseudo_pure(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ProductTrajectory traj = cfg.trajectory();
  if (traj.size() != 2) throw ArgumentError("pseudo_pure: needs exactly two subsystems");
  const Cut cut = Cut::split({0}, 2);
  auto& rep = ctx.result.report;
  rep.columns = {"t",        "trace_drho",      "tr1_norm",       "tr2_norm",
                 "expected_tr2_norm", "verdict", "base_negativity", "base_separability"};
  for (double t : cfg.grid.points()) {
    const TangentVector tv = product_tangent(traj, t, cfg.method);
    const HermitianOp rho = pseudo_pure_state(tv.base(), cfg.epsilon);
    const HermitianOp drho = pseudo_pure_differential(tv.base(), tv, cfg.epsilon);
    const WitnessReport w = differential_trace_witness(drho, cfg.tol);
    const FactorJets jets = factor_jets(traj.factors(), traj.frozen(), t, cfg.method);
    const double expected =
        cfg.epsilon *
        projector_differential(jets.states[0].amplitudes(), jets.derivatives[0]).norm();
    rep.rows.push_back({t, drho.trace().real(), w.tr1_norm, w.tr2_norm, expected,
                        std::string(to_string(w.verdict)), ppt_negativity(rho, cut).negativity,
                        std::string(to_string(base_state_separability(rho, cut)))});
  }
}

void separable_mixed(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Ensemble& ens = *cfg.ensemble;
  const Cut cut = Cut::split({0}, 2);
  auto& rep = ctx.result.report;
  rep.columns = {"t",            "trace_drho", "tr1_norm",        "tr2_norm",
                 "operator_gap", "verdict",    "base_separability"};
  for (double t : cfg.grid.points()) {
    const HermitianOp drho = separable_mixed_differential(ens, t, cfg.method);
    const WitnessReport w = ensemble_witness(ens, t, cfg.tol, cfg.method);
    rep.rows.push_back({t, drho.trace().real(), w.tr1_norm, w.tr2_norm, w.operator_gap.value_or(0.0),
                        std::string(to_string(w.verdict)),
                        std::string(to_string(base_state_separability(ens.state(t), cut)))});
  }
}

void chsh_scan(Context& ctx) {
  const auto& cfg = ctx.cfg;
  const ProductTrajectory traj = cfg.trajectory();
  auto& rep = ctx.result.report;
  rep.columns = {"t", "chsh_tangent", "chsh_base", "correlation", "c0", "c1", "c2"};
  for (double t : cfg.grid.points()) {
    const TangentVector tv = product_tangent(traj, t, cfg.method);
    const CorrelationExpansion e = correlation_expansion(traj, t, cfg.setting);
    rep.rows.push_back({t, chsh_value(normalized_horizontal(tv)), chsh_value(tv.base()),
                        correlation(tv.base(), cfg.setting), e.c0, e.c1, e.c2});
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  Context ctx{config, {}};
  auto& md = ctx.result.report.metadata;
  md["tool"] = "tangle";
  md["version"] = TANGLE_VERSION;
  md["scenario"] = std::string(to_string(config.scenario));
  md["seed"] = config.seed;
  md["method"] = to_string(config.method.kind);
  md["config"] = config.echo;

  switch (config.scenario) {
    case Scenario::two_qubit_demo: two_qubit_demo(ctx); break;
    case Scenario::product_trace: product_trace(ctx); break;
    case Scenario::register_trace: register_trace(ctx); break;
    case Scenario::pseudo_pure: pseudo_pure(ctx); break;
    case Scenario::separable_mixed: separable_mixed(ctx); break;
    case Scenario::chsh_scan: chsh_scan(ctx); break;
  }
  if (!ctx.result.breaches.empty()) ctx.result.status = kExitTolerance;
  return std::move(ctx.result);
}

}  // namespace tangle::app
