#include "tangle/geometry.hpp"

namespace tangle {

TangentVector tangent_at(ProfileSource source, double t, DiffMethod method) {
  if (const auto* traj = std::get_if<const ProductTrajectory*>(&source))
    return product_tangent(**traj, t, method);
  const auto* prog = std::get<const RegisterProgram*>(source);
  const auto [k, local] = prog->locate(t);
  return register_tangent(*prog, k, local, method);
}

double tangent_entropy(const TangentVector& tv, const Cut& cut, double zero_norm) {
  if (tv.direction().norm() < zero_norm) return 0.0;
  return entanglement_entropy(tv.direction_ket(), cut);
}

Profile profile(ProfileSource source, const std::vector<double>& grid, const std::vector<Cut>& cuts,
                const ProfileOptions& options) {
  if (grid.empty()) throw ArgumentError("profile: empty grid");
  Profile out;
  out.cuts = cuts;
  for (double t : grid) {
    const TangentVector raw = tangent_at(source, t, options.method);
    const TangentVector tv = options.horizontal ? horizontal_tangent(raw) : raw;
    GeodesicSample s;
    s.t = t;
    s.fs_speed = fs_speed(raw);
    for (const auto& cut : cuts) {
      s.tangent_entropy.push_back(
          s.fs_speed < options.zero_speed && options.horizontal ? 0.0
                                                                : tangent_entropy(tv, cut));
      s.base_entropy.push_back(entanglement_entropy(raw.base(), cut));
    }
    out.samples.push_back(std::move(s));
  }
  for (std::size_t i = 1; i < out.samples.size(); ++i) {
    const auto& a = out.samples[i - 1];
    const auto& b = out.samples[i];
    out.arc_length += 0.5 * (b.t - a.t) * (a.fs_speed + b.fs_speed);
  }
  return out;
}

}  // namespace tangle
