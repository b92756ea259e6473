// Command-line front end: degrade clean images, restore degraded ones,
// score results and sweep parameter grids into CSV reports.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "ogstv/degrade.hpp"
#include "ogstv/image.hpp"
#include "ogstv/metrics.hpp"
#include "ogstv/pgm.hpp"
#include "ogstv/solver.hpp"

namespace {

// Fixed-width significant-digit formatting. Never locale-dependent in
// practice here (no setlocale call), and infinities serialize as "inf" in
// both stdout and CSV output.
std::string fmt6(double v) {
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "image_id,kernel_spec,noise_level,seed,method,p,mu,K,iterations,"
    "psnr_db,ssim,re,wall_time_s,error";

struct RunRecord {
  std::string image_id;
  std::string kernel_spec;
  double noise_level = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  double p = 0.0;
  double mu = 0.0;
  int group_size = 0;
  int iterations = 0;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double re = 0.0;
  double wall_time_s = 0.0;
  std::string error;
};

std::string sanitize_field(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

std::string to_csv_row(const RunRecord& r) {
  std::string row;
  row += sanitize_field(r.image_id);
  row += ',';
  row += sanitize_field(r.kernel_spec);
  row += ',';
  row += fmt6(r.noise_level);
  row += ',';
  row += std::to_string(r.seed);
  row += ',';
  row += r.method;
  row += ',';
  row += fmt6(r.p);
  row += ',';
  row += fmt6(r.mu);
  row += ',';
  row += std::to_string(r.group_size);
  row += ',';
  row += std::to_string(r.iterations);
  row += ',';
  row += fmt6(r.psnr_db);
  row += ',';
  row += fmt6(r.ssim);
  row += ',';
  row += fmt6(r.re);
  row += ',';
  row += fmt6(r.wall_time_s);
  row += ',';
  row += sanitize_field(r.error);
  return row;
}

std::string image_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

struct DegradeArgs {
  std::string input, output, kernel_spec;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

int run_degrade(const DegradeArgs& a) {
  const ogstv::Image clean = ogstv::read_pgm(a.input);
  const ogstv::Kernel kernel = ogstv::parse_kernel_spec(a.kernel_spec);
  const ogstv::Image blurred = ogstv::blur(clean, kernel);
  std::vector<std::uint8_t> mask;
  const ogstv::Image degraded =
      ogstv::add_salt_pepper(blurred, ogstv::NoiseSpec{a.noise, a.seed}, &mask);
  ogstv::write_pgm(a.output, degraded);
  std::size_t corrupted = 0;
  for (std::uint8_t m : mask) corrupted += m;
  std::cout << "corrupted_fraction=" << fmt6(static_cast<double>(corrupted) / mask.size())
            << "\n";
  return 0;
}

struct DeblurArgs {
  std::string input, output, kernel_spec;
  std::string method = "fast-admm";
  std::string ref, metrics_csv;
  double noise = -1.0; // <0 means "not given"
  std::uint64_t seed = 0;
  double p = -1.0, mu = -1.0; // <0 means "not given"
  ogstv::SolverConfig cfg;
  bool timing = false;
};

int run_deblur(const DeblurArgs& a_in) {
  DeblurArgs a = a_in;
  if (a.p < 0.0 || a.mu < 0.0) {
    if (a.noise < 0.0) {
      throw std::invalid_argument("deblur: --noise is required when --p or --mu is omitted");
    }
    const auto [mu, p] = ogstv::default_params(a.noise);
    if (a.mu < 0.0) a.mu = mu;
    if (a.p < 0.0) a.p = p;
  }
  a.cfg.p = a.p;
  a.cfg.mu = a.mu;

  const ogstv::Image observed = ogstv::read_pgm(a.input);
  const ogstv::Kernel kernel = ogstv::parse_kernel_spec(a.kernel_spec);

  const bool fast = a.method == "fast-admm";
  const auto [restored, report] = fast ? ogstv::fast_admm_solve(observed, kernel, a.cfg)
                                       : ogstv::admm_solve(observed, kernel, a.cfg);
  ogstv::write_pgm(a.output, restored);

  std::cout << "iterations=" << report.iterations << "\n";
  std::cout << "converged=" << (report.converged ? 1 : 0) << "\n";
  if (!report.re_history.empty()) {
    std::cout << "re_final=" << fmt6(report.re_history.back()) << "\n";
  }
  if (a.timing) std::cout << "wall_time_s=" << fmt6(report.wall_time_s) << "\n";

  if (!a.ref.empty()) {
    const ogstv::Image ref = ogstv::read_pgm(a.ref);
    const ogstv::QualityReport q = ogstv::evaluate_quality(ref, restored);
    std::cout << "psnr=" << fmt6(q.psnr_db) << "\n";
    std::cout << "ssim=" << fmt6(q.ssim) << "\n";
    std::cout << "re=" << fmt6(q.re) << "\n";
    if (!a.metrics_csv.empty()) {
      RunRecord rec;
      rec.image_id = image_stem(a.input);
      rec.kernel_spec = a.kernel_spec;
      rec.noise_level = a.noise < 0.0 ? 0.0 : a.noise;
      rec.seed = a.seed;
      rec.method = a.method;
      rec.p = a.cfg.p;
      rec.mu = a.cfg.mu;
      rec.group_size = a.cfg.group.group_size;
      rec.iterations = report.iterations;
      rec.psnr_db = q.psnr_db;
      rec.ssim = q.ssim;
      rec.re = q.re;
      rec.wall_time_s = a.timing ? report.wall_time_s : 0.0;
      const bool need_header = !std::filesystem::exists(a.metrics_csv) ||
                               std::filesystem::file_size(a.metrics_csv) == 0;
      std::ofstream out(a.metrics_csv, std::ios::app);
      if (!out) throw std::runtime_error("deblur: cannot open CSV " + a.metrics_csv);
      if (need_header) out << kCsvHeader << "\n";
      out << to_csv_row(rec) << "\n";
    }
  }
  return 0;
}

struct EvaluateArgs {
  std::string ref, test;
};

int run_evaluate(const EvaluateArgs& a) {
  const ogstv::Image ref = ogstv::read_pgm(a.ref);
  const ogstv::Image test = ogstv::read_pgm(a.test);
  const ogstv::QualityReport q = ogstv::evaluate_quality(ref, test);
  std::cout << "psnr=" << fmt6(q.psnr_db) << "\n";
  std::cout << "ssim=" << fmt6(q.ssim) << "\n";
  std::cout << "re=" << fmt6(q.re) << "\n";
  return 0;
}

struct SweepArgs {
  std::string input, output, kernel_spec;
  std::string method = "fast-admm";
  std::vector<double> noise_levels{0.4};
  std::vector<std::uint64_t> seeds{0};
  std::vector<double> mus;
  std::vector<double> ps;
  std::vector<int> group_sizes{3};
  unsigned jobs = 1;
  ogstv::SolverConfig base_cfg;
  bool timing = false;
};

struct SweepJob {
  double noise;
  double mu;
  double p;
  int group_size;
  std::uint64_t seed;
};

int run_sweep(const SweepArgs& a) {
  const ogstv::Image clean = ogstv::read_pgm(a.input);
  const ogstv::Kernel kernel = ogstv::parse_kernel_spec(a.kernel_spec);
  const ogstv::Image blurred = ogstv::blur(clean, kernel);
  const std::string id = image_stem(a.input);

  // Grid points in the pinned row order; per-level defaults fill any
  // missing mu/p axis.
  std::vector<SweepJob> grid;
  for (double noise : a.noise_levels) {
    const auto [def_mu, def_p] = ogstv::default_params(noise);
    const std::vector<double> mus = a.mus.empty() ? std::vector<double>{def_mu} : a.mus;
    const std::vector<double> ps = a.ps.empty() ? std::vector<double>{def_p} : a.ps;
    for (double mu : mus)
      for (double p : ps)
        for (int k : a.group_sizes)
          for (std::uint64_t seed : a.seeds) grid.push_back({noise, mu, p, k, seed});
  }

  std::vector<RunRecord> records(grid.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failures{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      const SweepJob& job = grid[i];
      RunRecord& rec = records[i];
      rec.image_id = id;
      rec.kernel_spec = a.kernel_spec;
      rec.noise_level = job.noise;
      rec.seed = job.seed;
      rec.method = a.method;
      rec.p = job.p;
      rec.mu = job.mu;
      rec.group_size = job.group_size;
      try {
        const ogstv::Image degraded =
            ogstv::add_salt_pepper(blurred, ogstv::NoiseSpec{job.noise, job.seed});
        ogstv::SolverConfig cfg = a.base_cfg;
        cfg.p = job.p;
        cfg.mu = job.mu;
        cfg.group.group_size = job.group_size;
        const auto [restored, report] = a.method == "fast-admm"
                                            ? ogstv::fast_admm_solve(degraded, kernel, cfg)
                                            : ogstv::admm_solve(degraded, kernel, cfg);
        const ogstv::QualityReport q = ogstv::evaluate_quality(clean, restored);
        rec.iterations = report.iterations;
        rec.psnr_db = q.psnr_db;
        rec.ssim = q.ssim;
        rec.re = q.re;
        rec.wall_time_s = a.timing ? report.wall_time_s : 0.0;
      } catch (const std::exception& e) {
        rec.error = e.what();
        failures.fetch_add(1);
      }
    }
  };

  const unsigned nthreads =
      std::max(1u, std::min<unsigned>(a.jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::sort(records.begin(), records.end(), [](const RunRecord& x, const RunRecord& y) {
    return std::tie(x.image_id, x.noise_level, x.mu, x.p, x.group_size, x.seed) <
           std::tie(y.image_id, y.noise_level, y.mu, y.p, y.group_size, y.seed);
  });

  std::ofstream out(a.output);
  if (!out) throw std::runtime_error("sweep: cannot open CSV " + a.output);
  out << kCsvHeader << "\n";
  for (const RunRecord& rec : records) out << to_csv_row(rec) << "\n";

  const std::size_t failed = failures.load();
  std::cout << "jobs=" << grid.size() << " ok=" << grid.size() - failed << " failed=" << failed
            << "\n";
  return failed < grid.size() ? 0 : 2;
}

void add_solver_flags(CLI::App* cmd, ogstv::SolverConfig* cfg) {
  cmd->add_option("--lambda1", cfg->lambda1, "Gradient-splitting penalty");
  cmd->add_option("--lambda2", cfg->lambda2, "Fidelity-splitting penalty");
  cmd->add_option("--lambda3", cfg->lambda3, "Box-splitting penalty");
  cmd->add_option("--gamma", cfg->gamma, "Dual step in (0,2)");
  cmd->add_option("--eta", cfg->eta, "Restart factor in [0,1)");
  cmd->add_option("--tol", cfg->tol, "Successive-iterate RE stopping threshold");
  cmd->add_option("--max-iter", cfg->max_iter, "Outer iteration cap");
  cmd->add_option("--mm-tol", cfg->mm.tol, "Inner prox relative-change tolerance");
  cmd->add_option("--mm-max-iter", cfg->mm.max_iter, "Inner prox iteration cap");
  cmd->add_option("--group-eps", cfg->group.group_eps, "Zero-energy group regularizer");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restores blurred images corrupted by salt-and-pepper noise with an "
               "overlapping-group-sparse TV regularizer and a p-power fidelity term."};
  app.require_subcommand(1);

  DegradeArgs dg;
  CLI::App* degrade = app.add_subcommand("degrade", "Blur an image, then add salt-and-pepper noise");
  degrade->add_option("--input", dg.input, "Clean input PGM")->required();
  degrade->add_option("--kernel", dg.kernel_spec, "gaussian:<size>:<sigma> or mean:<size>")->required();
  degrade->add_option("--noise", dg.noise, "Corrupted-pixel fraction in [0,1]")->required();
  degrade->add_option("--seed", dg.seed, "Noise generator seed");
  degrade->add_option("--output", dg.output, "Degraded output PGM")->required();

  DeblurArgs db;
  CLI::App* deblur = app.add_subcommand("deblur", "Restore a degraded image");
  deblur->add_option("--input", db.input, "Degraded input PGM")->required();
  deblur->add_option("--kernel", db.kernel_spec, "Blur kernel spec")->required();
  deblur->add_option("--output", db.output, "Restored output PGM")->required();
  deblur->add_option("--method", db.method, "admm or fast-admm")
      ->check(CLI::IsMember({"admm", "fast-admm"}));
  deblur->add_option("--noise", db.noise, "Noise level used for default p/mu and CSV records");
  deblur->add_option("--seed", db.seed, "Seed recorded alongside CSV output");
  deblur->add_option("--p", db.p, "Fidelity power in (0,1]");
  deblur->add_option("--mu", db.mu, "Fidelity weight");
  deblur->add_option("--group-size", db.cfg.group.group_size, "Group edge length K");
  deblur->add_option("--ref", db.ref, "Clean reference for quality metrics");
  deblur->add_option("--metrics-csv", db.metrics_csv, "Append a record row to this CSV");
  deblur->add_flag("--timing", db.timing, "Report measured wall time (non-reproducible output)");
  add_solver_flags(deblur, &db.cfg);

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Print PSNR/SSIM/RE for an image pair");
  evaluate->add_option("--ref", ev.ref, "Reference PGM")->required();
  evaluate->add_option("--test", ev.test, "Test PGM")->required();

  SweepArgs sw;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter grid and write a CSV report");
  sweep->add_option("--input", sw.input, "Clean input PGM")->required();
  sweep->add_option("--kernel", sw.kernel_spec, "Blur kernel spec")->required();
  sweep->add_option("--output", sw.output, "Output CSV path")->required();
  sweep->add_option("--method", sw.method, "admm or fast-admm")
      ->check(CLI::IsMember({"admm", "fast-admm"}));
  sweep->add_option("--noise", sw.noise_levels, "Noise levels")->delimiter(',');
  sweep->add_option("--seeds", sw.seeds, "Noise seeds")->delimiter(',');
  sweep->add_option("--mu", sw.mus, "Fidelity weights (default: per-level table)")->delimiter(',');
  sweep->add_option("--p", sw.ps, "Fidelity powers (default: per-level table)")->delimiter(',');
  sweep->add_option("--group-size", sw.group_sizes, "Group edge lengths")->delimiter(',');
  sweep->add_option("--jobs", sw.jobs, "Parallel worker count");
  sweep->add_flag("--timing", sw.timing, "Report measured wall time (non-reproducible output)");
  add_solver_flags(sweep, &sw.base_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (degrade->parsed()) return run_degrade(dg);
    if (deblur->parsed()) return run_deblur(db);
    if (evaluate->parsed()) return run_evaluate(ev);
    if (sweep->parsed()) return run_sweep(sw);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
