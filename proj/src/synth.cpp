#include "helio2d/synth.hpp"

#include <random>
#include <stdexcept>

namespace helio2d {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const FarFieldData& Dataset::at(int stage, int direction) const {
  for (const auto& r : records)
    if (r.stage == stage && r.direction == direction) return r.data;
  throw std::out_of_range("dataset record missing for (k_" +
                          std::to_string(stage + 1) + ", d_" +
                          std::to_string(direction + 1) + ")");
}

std::uint64_t record_seed(std::uint64_t seed, int stage, int direction) {
  return splitmix64(seed ^ splitmix64(0x100000001ULL * stage + direction));
}

Eigen::VectorXcd add_noise(const Eigen::VectorXcd& clean, double delta,
                           std::uint64_t seed) {
  if (delta < 0) throw std::invalid_argument("add_noise: delta >= 0");
  if (delta == 0.0) return clean;
  int m = static_cast<int>(clean.size());
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    // (0,1], avoids log(0) in Box-Muller
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
  };
  Eigen::VectorXcd eps(m);
  for (int i = 0; i < m; ++i) {
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    eps[i] = std::complex<double>(r * std::cos(2.0 * M_PI * u2),
                                  r * std::sin(2.0 * M_PI * u2));
  }
  double scale = delta * clean.norm() / eps.norm();
  return clean + scale * eps;
}

Dataset synthesize(const ClosedCurve& truth, const RlaConfig& config,
                   const NoiseModel& noise, const ForwardOptions& fw) {
  config.validate();
  Dataset ds;
  ds.k0 = config.k0;
  ds.dk = config.dk;
  ds.J = config.J;
  ds.L = config.L;
  ds.M = config.M;
  ds.delta = noise.delta;
  ds.seed = noise.seed;
  double perimeter = truth.perimeter();
  Eigen::VectorXd angles = measurement_angles(config.M);
  for (int j = 0; j < config.J; ++j) {
    double k = config.k_at(j);
    int n = std::max(synthesis_quadrature_n(k, perimeter),
                     std::max(truth.n_modes(), 96));
    auto boundary = std::make_shared<DiscretizedBoundary>(sample(truth, n));
    ForwardSolver solver(boundary, k, fw);
    auto waves = config.waves_at(j);
    for (int l = 0; l < config.L; ++l) {
      DensitySolution phi = solver.solve_cfie(waves[l]);
      FarFieldData ff = far_field(phi, angles);
      ff.values = add_noise(ff.values, noise.delta,
                            record_seed(noise.seed, j, l));
      ds.records.push_back({j, l, std::move(ff)});
    }
  }
  return ds;
}

}  // namespace helio2d
