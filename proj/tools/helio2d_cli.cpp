#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "helio2d/io.hpp"
#include "helio2d/specfun.hpp"
#include "helio2d/threads.hpp"

namespace fs = std::filesystem;
using namespace helio2d;

namespace {

double now_seconds(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

ClosedCurve star7() { return ClosedCurve::star(2.0, 0.2, 7); }

ClosedCurve initial_curve_for(const RlaConfig& config, const std::string& flag) {
  if (!flag.empty()) return load_curve(flag);
  if (!config.initial_curve.empty()) return load_curve(config.initial_curve);
  return ClosedCurve::circle(1.0);
}

// Point-source benchmark: interior source at the origin, boundary data
// -G_k(.,0), exact exterior solution -G_k(.,0) tested at (10,8).
struct Table1Row {
  double k;
  int n;
  double seconds;
  double error;
  bool hodlr;
};

Table1Row table1_row(double k, int n, bool hodlr) {
  auto t0 = std::chrono::steady_clock::now();
  auto boundary = std::make_shared<DiscretizedBoundary>(sample(star7(), n));
  ForwardOptions opts;
  opts.backend = hodlr ? SolverBackend::Hodlr : SolverBackend::Dense;
  ForwardSolver solver(boundary, k, opts);
  Eigen::VectorXcd rhs(n);
  Eigen::Vector2d z(0.0, 0.0);
  for (int j = 0; j < n; ++j)
    rhs[j] = -specfun::green(k, boundary->nodes.row(j).matrix().transpose(), z);
  DensitySolution phi = solver.solve_cfie_rhs(rhs);
  Eigen::ArrayX2d target(1, 2);
  target(0, 0) = 10.0;
  target(0, 1) = 8.0;
  std::complex<double> got = scattered_field(phi, target)[0];
  std::complex<double> want = -specfun::green(k, Eigen::Vector2d(10.0, 8.0), z);
  Table1Row row;
  row.k = k;
  row.n = n;
  row.seconds = now_seconds(t0);
  row.error = std::abs(got - want);
  row.hodlr = hodlr;
  return row;
}

int run_table1(double k, int n_override, const std::string& solver) {
  int n = n_override > 0 ? n_override : static_cast<int>(std::lround(360.0 * k));
  bool hodlr = solver == "hodlr" || (solver == "auto" && k > 16.0);
  Table1Row row = table1_row(k, n, hodlr);
  double tol = k <= 8.0 ? 1e-10 : 1e-9;
  std::printf("k=%-6g N=%-6d solver=%-5s time=%.2fs error=%.6e  [tol %.0e] %s\n",
              row.k, row.n, row.hodlr ? "hodlr" : "dense", row.seconds,
              row.error, tol, row.error <= tol ? "ok" : "FAIL");
  return row.error <= tol ? 0 : 1;
}

int cmd_forward(const std::string& curve_file, double k, double dx, double dy,
                int m, int n, const std::string& solver,
                const std::string& out) {
  auto t0 = std::chrono::steady_clock::now();
  ClosedCurve curve = load_curve(curve_file);
  if (n <= 0) n = synthesis_quadrature_n(k, curve.perimeter());
  n = std::max(n, curve.n_modes());
  auto boundary = std::make_shared<DiscretizedBoundary>(sample(curve, n));
  ForwardOptions opts;
  if (solver == "dense") opts.backend = SolverBackend::Dense;
  if (solver == "hodlr") opts.backend = SolverBackend::Hodlr;
  ForwardSolver fs(boundary, k, opts);
  Eigen::Vector2d d(dx, dy);
  d.normalize();
  IncidentWave wave(k, d);
  DensitySolution phi = fs.solve_cfie(wave);
  FarFieldData ff = far_field(phi, measurement_angles(m));
  save_far_field(ff, out);
  std::printf("forward: k=%g N=%d M=%d solver=%s time=%.2fs -> %s\n", k, n, m,
              fs.using_hodlr() ? "hodlr" : "dense", now_seconds(t0),
              out.c_str());
  return 0;
}

int cmd_synth(const std::string& curve_file, const std::string& config_file,
              double delta, long long seed, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  ClosedCurve truth = load_curve(curve_file);
  RlaConfig config = load_config(config_file);
  ConfigFileExtras extras = load_config_extras(config_file);
  if (delta < 0) delta = extras.delta;
  if (seed < 0) seed = static_cast<long long>(extras.seed);
  if (config.n1_factor >= config.synth_factor) {
    std::cerr << "synth: inverse-crime guard: n1_factor ("
              << config.n1_factor << ") must be < synth_factor ("
              << config.synth_factor << ")\n";
    return 2;
  }
  NoiseModel noise{delta, static_cast<std::uint64_t>(seed)};
  ForwardOptions synth_opts;
  synth_opts.dense_threshold = 8192;  // keep ten-digit data accuracy
  Dataset ds = synthesize(truth, config, noise, synth_opts);
  fs::create_directories(outdir);
  std::string truth_copy = (fs::path(outdir) / "true_curve.json").string();
  save_curve(truth, truth_copy);
  save_dataset(ds, outdir, "true_curve.json");
  write_run_manifest(outdir, "synth", file_digest(config_file),
                     now_seconds(t0), {curve_file, config_file},
                     {outdir + std::string("/manifest.json")});
  std::printf("synth: %d records (J=%d L=%d M=%d delta=%g seed=%llu) -> %s\n",
              static_cast<int>(ds.records.size()), ds.J, ds.L, ds.M, ds.delta,
              static_cast<unsigned long long>(ds.seed), outdir.c_str());
  return 0;
}

int cmd_invert(const std::string& data_dir, const std::string& config_file,
               const std::string& initial_flag, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  RlaConfig config = load_config(config_file);
  Dataset data = load_dataset(data_dir);
  ClosedCurve initial = initial_curve_for(config, initial_flag);
  fs::create_directories(outdir);
  std::vector<std::string> outputs;
  auto on_stage = [&](const StageRecord& rec) {
    char name[64];
    std::snprintf(name, sizeof name, "stage_%02d_curve.json", rec.index + 1);
    std::string curve_path = (fs::path(outdir) / name).string();
    save_curve(rec.curve, curve_path);
    std::snprintf(name, sizeof name, "stage_%02d_history.jsonl", rec.index + 1);
    std::ofstream hist((fs::path(outdir) / name).string());
    hist << history_jsonl(rec.history);
    outputs.push_back(curve_path);
    std::printf("stage %2d: k=%-5g b=%-3d N1=%-5d iters=%-3zu residual=%.3e (%s)\n",
                rec.index + 1, rec.k, rec.b, rec.n1, rec.history.steps.size(),
                rec.history.final_residual, rec.history.stop_reason.c_str());
  };
  RlaState state = run_rla(config, data, initial, on_stage);
  std::string final_path = (fs::path(outdir) / "final_curve.json").string();
  save_curve(state.current, final_path);
  outputs.push_back(final_path);
  write_run_manifest(outdir, "invert", file_digest(config_file),
                     now_seconds(t0), {data_dir, config_file}, outputs);
  if (state.failed) {
    std::cerr << "invert: " << state.failure << "\n";
    return 1;
  }
  std::printf("invert: %d stages -> %s (%.1fs)\n",
              static_cast<int>(state.stages.size()), final_path.c_str(),
              now_seconds(t0));
  return 0;
}

int cmd_filter(const std::string& curve_file, int b, int nb, int n,
               const std::string& out) {
  ClosedCurve curve = load_curve(curve_file);
  ClosedCurve filtered = filter_resample(curve, b, nb, n);
  save_curve(filtered, out);
  std::printf("filter: b=%d Nb=%d N=%d perimeter=%.12g -> %s\n", b, nb, n,
              filtered.perimeter(), out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D sound-soft scattering: forward solves and band-limited "
               "Gauss-Newton shape reconstruction"};
  app.set_version_flag("--version", kVersion);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = hardware)");

  std::string curve_file, config_file, out, data_dir, initial_flag;
  double k = 1.0, dx = 1.0, dy = 0.0, delta = -1.0;
  int m = 32, n = 0, b = 3, nb = 50;
  long long seed = -1;
  std::string solver = "auto";
  bool table1_flag = false;

  auto* fwd = app.add_subcommand("forward", "solve one forward problem");
  fwd->add_option("--curve", curve_file, "curve JSON file");
  fwd->add_option("--k", k, "wavenumber")->required();
  fwd->add_option("--dx", dx, "incidence direction x");
  fwd->add_option("--dy", dy, "incidence direction y");
  fwd->add_option("--M", m, "number of far-field angles");
  fwd->add_option("--N", n, "quadrature nodes (0: ceil(100 k |Gamma|))");
  fwd->add_option("--solver", solver, "dense|hodlr|auto");
  fwd->add_option("--out", out, "output far-field JSON");
  fwd->add_flag("--table1", table1_flag, "run the point-source benchmark row");

  auto* t1 = app.add_subcommand("table1", "point-source benchmark row");
  t1->add_option("--k", k, "wavenumber")->required();
  t1->add_option("--N", n, "override N (default 360k)");
  t1->add_option("--solver", solver, "dense|hodlr|auto");

  auto* sy = app.add_subcommand("synth", "synthesize far-field measurements");
  sy->add_option("--curve", curve_file, "true curve JSON")->required();
  sy->add_option("--config", config_file, "run configuration JSON")->required();
  sy->add_option("--delta", delta, "noise level (default: config)");
  sy->add_option("--seed", seed, "noise seed (default: config)");
  sy->add_option("--out", out, "output dataset directory")->required();

  auto* iv = app.add_subcommand("invert", "reconstruct from a dataset");
  iv->add_option("--data", data_dir, "dataset directory")->required();
  iv->add_option("--config", config_file, "run configuration JSON")->required();
  iv->add_option("--initial", initial_flag, "initial curve JSON");
  iv->add_option("--out", out, "output directory")->required();

  auto* fl = app.add_subcommand("filter", "band-limit filter + resample");
  fl->add_option("--curve", curve_file, "curve JSON")->required();
  fl->add_option("--b", b, "passband limit")->required();
  fl->add_option("--Nb", nb, "roll-off width");
  fl->add_option("--N", n, "output samples")->required();
  fl->add_option("--out", out, "output curve JSON")->required();

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_thread_count(threads);

  try {
    if (fwd->parsed()) {
      if (table1_flag) return run_table1(k, n, solver);
      if (curve_file.empty() || out.empty()) {
        std::cerr << "forward: --curve and --out are required\n";
        return 2;
      }
      return cmd_forward(curve_file, k, dx, dy, m, n, solver, out);
    }
    if (t1->parsed()) return run_table1(k, n, solver);
    if (sy->parsed()) return cmd_synth(curve_file, config_file, delta, seed, out);
    if (iv->parsed()) return cmd_invert(data_dir, config_file, initial_flag, out);
    if (fl->parsed()) return cmd_filter(curve_file, b, nb, n, out);
  } catch (const std::exception& e) {
    std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what()
              << "\n";
    return 1;
  }
  return 2;
}
