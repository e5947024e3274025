#include "helio2d/rla.hpp"

#include <cmath>

namespace helio2d {

RlaState run_rla(const RlaConfig& config, const Dataset& data,
                 const ClosedCurve& initial,
                 const std::function<void(const StageRecord&)>& on_stage,
                 const ForwardOptions& fw) {
  config.validate();
  if (data.J < config.J || data.L < config.L)
    throw std::invalid_argument("run_rla: dataset does not cover the sweep");
  RlaState state;
  state.current = initial;
  for (int j = 0; j < config.J; ++j) {
    double k = config.k_at(j);
    StageRecord rec;
    rec.index = j;
    rec.k = k;
    rec.b = config.bandlimit_at(j);
    rec.rho = config.rho_at(k);

    try {
      auto waves = config.waves_at(j);
      std::vector<FarFieldData> measured;
      for (int l = 0; l < config.L; ++l) measured.push_back(data.at(j, l));

      double perimeter = state.current.perimeter();
      rec.n1 = inversion_quadrature_n(k, perimeter, config.n1_factor);
      NewtonControls controls = config.controls_at(j);

      PerturbationBasis basis(rec.b);
      auto [curve, hist] =
          run_newton(state.current, waves, measured, controls, basis, rec.n1,
                     rec.b, fw);
      rec.history = std::move(hist);
      rec.curve = curve;
      state.current = std::move(curve);
    } catch (const std::exception& e) {
      state.failed = true;
      state.failure = "stage " + std::to_string(j + 1) + " (k=" +
                      std::to_string(k) + "): " + e.what();
      return state;
    }
    if (rec.history.stop_reason.rfind("step failure", 0) == 0) {
      state.failed = true;
      state.failure = "stage " + std::to_string(j + 1) + " (k=" +
                      std::to_string(k) + "): " + rec.history.stop_reason;
      state.stages.push_back(std::move(rec));
      return state;
    }
    state.stages.push_back(std::move(rec));
    if (on_stage) on_stage(state.stages.back());
  }
  return state;
}

}  // namespace helio2d
