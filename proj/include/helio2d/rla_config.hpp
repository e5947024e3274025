#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "helio2d/inverse.hpp"

namespace helio2d {

// Frequency sweep configuration: stages run at k_j = k0 + j dk, j = 0..J-1.
struct RlaConfig {
  double k0 = 0.5;
  double dk = 0.5;
  int J = 11;
  int L = 4;   // incident directions d_l = (cos 2pi l/L, sin 2pi l/L)
  int M = 32;  // far-field measurement angles

  enum class BandRule { CeilK, TwoCeilKPlusOne, Custom };
  BandRule band_rule = BandRule::TwoCeilKPlusOne;
  std::vector<int> custom_b;  // per stage when band_rule == Custom

  int Nb = 50;                 // filter roll-off width
  double n1_factor = 10.0;     // N1 = ceil(n1_factor k |Gamma_j|)
  double synth_factor = 100.0; // synthesis N = ceil(synth_factor k |Gamma|)

  double rho_base = 0.1;
  double rho_inverse_k_above = 5.0;  // rho = rho_base/k for k above; <=0: never
  std::vector<std::pair<double, double>> rho_table;  // optional (k, rho) override

  NewtonControls controls;
  // per-frequency override: the lowest frequency starts from a cold guess and
  // needs many damped steps; warm-started stages get the regular cap
  int max_iters_first = -1;  // <0: controls.max_iters everywhere
  std::string initial_curve;  // curve file path; empty = unit circle

  NewtonControls controls_at(int stage) const {
    NewtonControls c = controls;
    c.rho = rho_at(k_at(stage));
    c.Nb = Nb;
    if (stage == 0 && max_iters_first > 0) c.max_iters = max_iters_first;
    return c;
  }

  double k_at(int stage) const { return k0 + stage * dk; }

  int bandlimit_at(int stage) const {
    double k = k_at(stage);
    switch (band_rule) {
      case BandRule::CeilK:
        return std::max(1, static_cast<int>(std::ceil(k)));
      case BandRule::TwoCeilKPlusOne:
        return 2 * static_cast<int>(std::ceil(k)) + 1;
      case BandRule::Custom:
        if (stage >= static_cast<int>(custom_b.size()))
          throw std::invalid_argument("RlaConfig: custom_b too short");
        return custom_b[stage];
    }
    return 1;
  }

  double rho_at(double k) const {
    if (!rho_table.empty()) {
      // piecewise-constant lookup: last entry with threshold <= k
      double rho = rho_table.front().second;
      for (const auto& [kk, rr] : rho_table)
        if (k >= kk) rho = rr;
      return rho;
    }
    if (rho_inverse_k_above > 0 && k > rho_inverse_k_above)
      return rho_base / k;
    return rho_base;
  }

  std::vector<IncidentWave> waves_at(int stage) const {
    std::vector<IncidentWave> out;
    double k = k_at(stage);
    for (int l = 1; l <= L; ++l) {
      double a = 2.0 * M_PI * l / L;
      out.emplace_back(k, Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    return out;
  }

  void validate() const {
    if (!(k0 > 0) || !(dk > 0) || J < 1 || L < 1 || M < 1)
      throw std::invalid_argument("RlaConfig: need k0>0, dk>0, J>=1, L>=1, M>=1");
    for (int j = 0; j < J; ++j)
      if (M <= bandlimit_at(j))
        throw std::invalid_argument("RlaConfig: M must exceed every bandlimit");
  }
};

}  // namespace helio2d
