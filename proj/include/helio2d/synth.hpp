#pragma once

#include <cstdint>
#include <vector>

#include "helio2d/forward.hpp"
#include "helio2d/rla_config.hpp"

namespace helio2d {

struct NoiseModel {
  double delta = 0.0;  // relative noise level
  std::uint64_t seed = 0;
};

struct FarFieldRecord {
  int stage = 0;      // 0-based frequency index
  int direction = 0;  // 0-based incidence index
  FarFieldData data;
};

struct Dataset {
  double k0 = 0.0, dk = 0.0;
  int J = 0, L = 0, M = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string true_curve_file;  // set when saved/loaded
  std::vector<FarFieldRecord> records;

  const FarFieldData& at(int stage, int direction) const;
};

// derived per-record RNG stream
std::uint64_t record_seed(std::uint64_t seed, int stage, int direction);

// v_inf = u_inf + delta (|u|/|e1 + i e2|) (e1 + i e2), fresh normals per record
Eigen::VectorXcd add_noise(const Eigen::VectorXcd& clean, double delta,
                           std::uint64_t seed);

// Forward-solve the true geometry at every (k_j, d_l) of the config with
// N = ceil(synth_factor k |Gamma|) and apply the noise model.
Dataset synthesize(const ClosedCurve& truth, const RlaConfig& config,
                   const NoiseModel& noise, const ForwardOptions& fw = {});

}  // namespace helio2d
