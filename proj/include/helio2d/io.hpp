#pragma once

#include <string>

#include "helio2d/rla.hpp"
#include "helio2d/synth.hpp"

namespace helio2d {

inline constexpr const char* kVersion = "0.1.0";

// curve file: {"n_modes", "coeffs_x": [[re,im],...], "coeffs_y", "length"},
// coefficients ordered m = -n/2 .. n/2-1
void save_curve(const ClosedCurve& curve, const std::string& path);
ClosedCurve load_curve(const std::string& path);

// far-field file: {"k", "direction": [dx,dy], "angles", "values": [[re,im],...]}
void save_far_field(const FarFieldData& data, const std::string& path);
FarFieldData load_far_field(const std::string& path);

// dataset directory: manifest.json + one far-field file per (k_j, d_l)
void save_dataset(const Dataset& data, const std::string& dir,
                  const std::string& true_curve_path = "");
Dataset load_dataset(const std::string& dir);

RlaConfig load_config(const std::string& path);
void save_config(const RlaConfig& config, const std::string& path,
                 double delta = -1.0, std::uint64_t seed = 0);
// noise fields are carried in the same config file when present
struct ConfigFileExtras {
  double delta = 0.05;
  std::uint64_t seed = 0;
};
ConfigFileExtras load_config_extras(const std::string& path);

// step reports as JSON lines
std::string history_jsonl(const NewtonHistory& history);

void write_run_manifest(const std::string& dir, const std::string& command,
                        const std::string& config_digest, double wall_seconds,
                        const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs);

std::string file_digest(const std::string& path);  // fnv-1a over bytes

}  // namespace helio2d
