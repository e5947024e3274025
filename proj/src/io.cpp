#include "helio2d/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace helio2d {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json complex_array(const Eigen::VectorXcd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i)
    out.push_back({v[i].real(), v[i].imag()});
  return out;
}

Eigen::VectorXcd complex_array_from(const json& j) {
  Eigen::VectorXcd out(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    out[i] = std::complex<double>(j[i][0].get<double>(), j[i][1].get<double>());
  return out;
}

json real_array(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Eigen::VectorXd real_array_from(const json& j) {
  Eigen::VectorXd out(j.size());
  for (size_t i = 0; i < j.size(); ++i) out[i] = j[i].get<double>();
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

std::string record_filename(int stage, int direction) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "farfield_j%03d_l%03d.json", stage + 1,
                direction + 1);
  return buf;
}

}  // namespace

void save_curve(const ClosedCurve& curve, const std::string& path) {
  json j;
  j["n_modes"] = curve.n_modes();
  j["coeffs_x"] = complex_array(curve.coeffs_x());
  j["coeffs_y"] = complex_array(curve.coeffs_y());
  j["length"] = curve.nominal_length();
  write_json_file(j, path);
}

ClosedCurve load_curve(const std::string& path) {
  json j = read_json_file(path);
  int n = j.at("n_modes").get<int>();
  CVec cx = complex_array_from(j.at("coeffs_x"));
  CVec cy = complex_array_from(j.at("coeffs_y"));
  if (cx.size() != n || cy.size() != n)
    throw std::runtime_error("curve file " + path + ": inconsistent n_modes");
  double length = j.value("length", -1.0);
  return ClosedCurve::from_coeffs(std::move(cx), std::move(cy), length);
}

void save_far_field(const FarFieldData& data, const std::string& path) {
  json j;
  j["k"] = data.k;
  j["direction"] = {data.direction.x(), data.direction.y()};
  j["angles"] = real_array(data.angles);
  j["values"] = complex_array(data.values);
  write_json_file(j, path);
}

FarFieldData load_far_field(const std::string& path) {
  json j = read_json_file(path);
  FarFieldData out;
  out.k = j.at("k").get<double>();
  out.direction =
      Eigen::Vector2d(j.at("direction")[0].get<double>(), j.at("direction")[1].get<double>());
  out.angles = real_array_from(j.at("angles"));
  out.values = complex_array_from(j.at("values"));
  if (out.angles.size() != out.values.size())
    throw std::runtime_error("far-field file " + path + ": angle/value mismatch");
  return out;
}

void save_dataset(const Dataset& data, const std::string& dir,
                  const std::string& true_curve_path) {
  fs::create_directories(dir);
  json manifest;
  manifest["k0"] = data.k0;
  manifest["dk"] = data.dk;
  manifest["J"] = data.J;
  manifest["L"] = data.L;
  manifest["M"] = data.M;
  manifest["delta"] = data.delta;
  manifest["seed"] = data.seed;
  manifest["true_curve"] = true_curve_path;
  json records = json::array();
  for (const auto& r : data.records) {
    std::string name = record_filename(r.stage, r.direction);
    save_far_field(r.data, (fs::path(dir) / name).string());
    records.push_back({{"stage", r.stage}, {"direction", r.direction}, {"file", name}});
  }
  manifest["records"] = records;
  write_json_file(manifest, (fs::path(dir) / "manifest.json").string());
}

Dataset load_dataset(const std::string& dir) {
  json manifest = read_json_file((fs::path(dir) / "manifest.json").string());
  Dataset out;
  out.k0 = manifest.at("k0").get<double>();
  out.dk = manifest.at("dk").get<double>();
  out.J = manifest.at("J").get<int>();
  out.L = manifest.at("L").get<int>();
  out.M = manifest.at("M").get<int>();
  out.delta = manifest.value("delta", 0.0);
  out.seed = manifest.value("seed", 0ULL);
  out.true_curve_file = manifest.value("true_curve", "");
  for (const auto& r : manifest.at("records")) {
    FarFieldRecord rec;
    rec.stage = r.at("stage").get<int>();
    rec.direction = r.at("direction").get<int>();
    rec.data = load_far_field((fs::path(dir) / r.at("file").get<std::string>()).string());
    out.records.push_back(std::move(rec));
  }
  return out;
}

RlaConfig load_config(const std::string& path) {
  json j = read_json_file(path);
  RlaConfig c;
  c.k0 = j.value("k0", c.k0);
  c.dk = j.value("dk", c.dk);
  c.J = j.value("J", c.J);
  c.L = j.value("L", c.L);
  c.M = j.value("M", c.M);
  std::string rule = j.value("bandlimit_rule", std::string("2k+1"));
  if (rule == "k")
    c.band_rule = RlaConfig::BandRule::CeilK;
  else if (rule == "2k+1")
    c.band_rule = RlaConfig::BandRule::TwoCeilKPlusOne;
  else if (rule == "custom")
    c.band_rule = RlaConfig::BandRule::Custom;
  else
    throw std::runtime_error("config: unknown bandlimit_rule " + rule);
  if (j.contains("custom_b"))
    c.custom_b = j["custom_b"].get<std::vector<int>>();
  c.Nb = j.value("Nb", c.Nb);
  c.n1_factor = j.value("n1_factor", c.n1_factor);
  c.synth_factor = j.value("synth_factor", c.synth_factor);
  c.rho_base = j.value("rho_base", c.rho_base);
  c.rho_inverse_k_above = j.value("rho_inverse_k_above", c.rho_inverse_k_above);
  if (j.contains("rho_table"))
    for (const auto& e : j["rho_table"])
      c.rho_table.emplace_back(e[0].get<double>(), e[1].get<double>());
  if (j.contains("controls")) {
    const json& ctl = j["controls"];
    c.controls.lambda = ctl.value("lambda", c.controls.lambda);
    c.controls.max_backtracks = ctl.value("max_backtracks", c.controls.max_backtracks);
    c.controls.max_iters = ctl.value("max_iters", c.controls.max_iters);
    c.controls.residual_tol = ctl.value("residual_tol", c.controls.residual_tol);
    c.controls.min_step_tol = ctl.value("min_step_tol", c.controls.min_step_tol);
  }
  c.max_iters_first = j.value("max_iters_first", c.max_iters_first);
  c.initial_curve = j.value("initial_curve", std::string());
  return c;
}

void save_config(const RlaConfig& c, const std::string& path, double delta,
                 std::uint64_t seed) {
  json j;
  j["k0"] = c.k0;
  j["dk"] = c.dk;
  j["J"] = c.J;
  j["L"] = c.L;
  j["M"] = c.M;
  switch (c.band_rule) {
    case RlaConfig::BandRule::CeilK:
      j["bandlimit_rule"] = "k";
      break;
    case RlaConfig::BandRule::TwoCeilKPlusOne:
      j["bandlimit_rule"] = "2k+1";
      break;
    case RlaConfig::BandRule::Custom:
      j["bandlimit_rule"] = "custom";
      j["custom_b"] = c.custom_b;
      break;
  }
  j["Nb"] = c.Nb;
  j["n1_factor"] = c.n1_factor;
  j["synth_factor"] = c.synth_factor;
  j["rho_base"] = c.rho_base;
  j["rho_inverse_k_above"] = c.rho_inverse_k_above;
  if (!c.rho_table.empty()) {
    json t = json::array();
    for (const auto& [k, r] : c.rho_table) t.push_back({k, r});
    j["rho_table"] = t;
  }
  j["controls"] = {{"lambda", c.controls.lambda},
                   {"max_backtracks", c.controls.max_backtracks},
                   {"max_iters", c.controls.max_iters},
                   {"residual_tol", c.controls.residual_tol},
                   {"min_step_tol", c.controls.min_step_tol}};
  if (c.max_iters_first > 0) j["max_iters_first"] = c.max_iters_first;
  if (!c.initial_curve.empty()) j["initial_curve"] = c.initial_curve;
  if (delta >= 0) j["delta"] = delta;
  if (delta >= 0) j["seed"] = seed;
  write_json_file(j, path);
}

ConfigFileExtras load_config_extras(const std::string& path) {
  json j = read_json_file(path);
  ConfigFileExtras e;
  e.delta = j.value("delta", e.delta);
  e.seed = j.value("seed", e.seed);
  return e;
}

std::string history_jsonl(const NewtonHistory& history) {
  std::ostringstream out;
  for (const auto& s : history.steps) {
    json j = {{"iter", s.iter},
              {"residual", s.residual_after},
              {"step_norm", s.step_norm},
              {"backtracks", s.backtracks}};
    out << j.dump() << "\n";
  }
  return out.str();
}

void write_run_manifest(const std::string& dir, const std::string& command,
                        const std::string& config_digest, double wall_seconds,
                        const std::vector<std::string>& inputs,
                        const std::vector<std::string>& outputs) {
  json j;
  j["command"] = command;
  j["config_hash"] = config_digest;
  j["wall_time_s"] = wall_seconds;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["version"] = kVersion;
  write_json_file(j, (fs::path(dir) / "run_manifest.json").string());
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace helio2d
