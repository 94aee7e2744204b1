// trsec command line: Monte Carlo sweeps and closed-form curves for the
// time-reversal OFDM secrecy link. Every run is a pure function of
// (config, seed): CSVs are byte-identical across repeats and thread counts.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trsec/analytic.hpp"
#include "trsec/config.hpp"
#include "trsec/report.hpp"
#include "trsec/simkit.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kCi95 = 1.959963984540054;  // two-sided 95% normal quantile

using trsec::format_double;
using trsec::format_int;
using trsec::format_u64;

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    v[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool quiet = false;
};

trsec::RunConfig load_config(const CommonArgs& args) {
  trsec::RunConfig rc = args.config_path.empty()
                            ? trsec::RunConfig{}
                            : trsec::parse_config(args.config_path);
  if (args.seed_set) rc.seed = args.seed;
  return rc;
}

trsec::SimConfig to_sim_config(const trsec::RunConfig& rc,
                               const CommonArgs& args) {
  trsec::SimConfig sim;
  sim.q_subcarriers = rc.q;
  sim.bessel_terms = rc.bessel_terms;
  sim.sigma2_an = rc.sigma2_an;
  sim.n_realizations = rc.realizations;
  sim.n_blocks = rc.blocks;
  sim.master_seed = rc.seed;
  sim.threads = args.threads;
  sim.progress = !args.quiet;
  return sim;
}

nlohmann::json config_json(const trsec::RunConfig& rc,
                           const trsec::SimConfig& sim) {
  nlohmann::json j;
  j["q"] = rc.q;
  j["realizations"] = rc.realizations;
  j["blocks"] = rc.blocks;
  j["bessel_terms"] = rc.bessel_terms;
  j["sigma2_an"] =
      rc.sigma2_an > 0.0 ? nlohmann::json(rc.sigma2_an) : nlohmann::json("auto");
  j["seed"] = sim.master_seed;
  return j;
}

void write_manifest(const std::filesystem::path& dir, nlohmann::json manifest,
                    double wall_seconds) {
  manifest["tool"] = "trsec";
  manifest["version"] = kVersion;
  manifest["wall_seconds"] = wall_seconds;
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest.json");
  out << manifest.dump(2) << '\n';
}

trsec::CsvTable ber_table(const std::vector<trsec::SweepRow>& rows) {
  trsec::CsvTable t;
  t.header = {"bor",        "alpha",      "ebn0_db",
              "bob_ber",    "eve_ber",    "bob_ber_ci",
              "eve_ber_ci", "bits",       "bob_errors",
              "eve_errors", "skipped_symbols"};
  for (const auto& r : rows)
    t.rows.push_back({format_int(r.bor), format_double(r.alpha),
                      format_double(r.ebn0_db), format_double(r.mc.bob_ber),
                      format_double(r.mc.eve_ber),
                      format_double(kCi95 * r.mc.bob_ber_se),
                      format_double(kCi95 * r.mc.eve_ber_se),
                      format_u64(r.mc.bits), format_u64(r.mc.bob_errors),
                      format_u64(r.mc.eve_errors),
                      format_u64(r.mc.skipped_symbols)});
  return t;
}

trsec::CsvTable sr_table(const std::vector<trsec::SweepRow>& rows) {
  trsec::CsvTable t;
  t.header = {"bor",           "alpha",
              "sr_emp",        "sr_emp_clamped",
              "sr_bound",      "sinr_bob_emp",
              "sinr_bob_bound", "sinr_eve_emp",
              "sinr_eve_bound", "ci_halfwidth"};
  for (const auto& r : rows)
    t.rows.push_back(
        {format_int(r.bor), format_double(r.alpha), format_double(r.mc.sr_emp),
         format_double(r.mc.sr_emp_clamped), format_double(r.sr_bound),
         format_double(r.mc.sinr_bob_emp), format_double(r.sinr_bob_bound),
         format_double(r.mc.sinr_eve_emp), format_double(r.sinr_eve_bound),
         format_double(kCi95 * r.mc.sr_se)});
  return t;
}

std::uint64_t total_skipped(const std::vector<trsec::SweepRow>& rows) {
  std::uint64_t s = 0;
  for (const auto& r : rows) s += r.mc.skipped_symbols;
  return s;
}

int run_ber_vs_snr(const CommonArgs& args) {
  const trsec::RunConfig rc = load_config(args);
  const trsec::SimConfig sim = to_sim_config(rc, args);
  const std::vector<double> ebn0 =
      !rc.ebn0_db_list.empty() ? rc.ebn0_db_list : linspace(0.0, 20.0, 9);
  std::vector<double> alphas = rc.alpha_list;
  if (alphas.empty())
    alphas = rc.alpha ? std::vector<double>{*rc.alpha}
                      : std::vector<double>{0.01, 0.5, 0.85, 0.95, 1.0};

  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = trsec::sweep_ber_vs_ebn0(sim, rc.bor, ebn0, alphas);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  trsec::write_csv((dir / "ber-vs-snr.csv").string(), ber_table(rows));

  nlohmann::json m;
  m["command"] = "ber-vs-snr";
  m["config"] = config_json(rc, sim);
  m["config"]["bor"] = rc.bor;
  m["config"]["ebn0_db_grid"] = ebn0;
  m["config"]["alpha_series"] = alphas;
  m["threads"] = args.threads;
  m["outputs"] = {"ber-vs-snr.csv"};
  m["rows"] = rows.size();
  m["skipped_symbols_total"] = total_skipped(rows);
  write_manifest(dir, m, wall);
  return 0;
}

int run_ber_vs_alpha(const CommonArgs& args) {
  const trsec::RunConfig rc = load_config(args);
  const trsec::SimConfig sim = to_sim_config(rc, args);
  std::vector<double> alphas = rc.alpha_list;
  if (alphas.empty()) {
    alphas.push_back(0.01);
    for (int i = 1; i <= 20; ++i) alphas.push_back(0.05 * i);
  }
  const double ebn0 = rc.ebn0_db.value_or(15.0);

  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = trsec::sweep_ber_vs_alpha(sim, rc.bor_list, alphas, ebn0);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  trsec::write_csv((dir / "ber-vs-alpha.csv").string(), ber_table(rows));

  nlohmann::json m;
  m["command"] = "ber-vs-alpha";
  m["config"] = config_json(rc, sim);
  m["config"]["bor_series"] = rc.bor_list;
  m["config"]["alpha_grid"] = alphas;
  m["config"]["ebn0_db"] = ebn0;
  m["threads"] = args.threads;
  m["outputs"] = {"ber-vs-alpha.csv"};
  m["rows"] = rows.size();
  m["skipped_symbols_total"] = total_skipped(rows);
  write_manifest(dir, m, wall);
  return 0;
}

int run_sr_vs_alpha(const CommonArgs& args) {
  const trsec::RunConfig rc = load_config(args);
  const trsec::SimConfig sim = to_sim_config(rc, args);
  const std::vector<double> alphas =
      !rc.alpha_list.empty() ? rc.alpha_list : linspace(0.0, 1.0, 21);
  const double ebn0 = rc.ebn0_db.value_or(20.0);

  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = trsec::sweep_sr_vs_alpha(sim, rc.bor_list, alphas, ebn0);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  trsec::write_csv((dir / "sr-vs-alpha.csv").string(), sr_table(rows));

  nlohmann::json m;
  m["command"] = "sr-vs-alpha";
  m["config"] = config_json(rc, sim);
  m["config"]["bor_series"] = rc.bor_list;
  m["config"]["alpha_grid"] = alphas;
  m["config"]["ebn0_db"] = ebn0;
  m["threads"] = args.threads;
  m["outputs"] = {"sr-vs-alpha.csv"};
  m["rows"] = rows.size();
  m["skipped_symbols_total"] = total_skipped(rows);
  write_manifest(dir, m, wall);
  return 0;
}

int run_alpha_opt(const CommonArgs& args) {
  const trsec::RunConfig rc = load_config(args);
  const trsec::SimConfig sim = to_sim_config(rc, args);
  const std::vector<double> grid =
      !rc.alpha_list.empty() ? rc.alpha_list : linspace(0.0, 1.0, 51);
  const double ebn0 = rc.ebn0_db.value_or(20.0);

  const auto t0 = std::chrono::steady_clock::now();
  trsec::CsvTable t;
  t.header = {"bor",
              "ebn0_db",
              "alpha_star_emp",
              "sr_max_emp",
              "alpha_opt_analytic",
              "sr_bound_at_analytic",
              "sr_emp_at_analytic"};
  for (int bor : rc.bor_list) {
    const trsec::AlphaOptResult r =
        trsec::empirical_alpha_opt(sim, bor, grid, ebn0);
    t.rows.push_back({format_int(r.bor), format_double(r.ebn0_db),
                      format_double(r.alpha_star_emp),
                      format_double(r.sr_max_emp),
                      format_double(r.alpha_opt_analytic),
                      format_double(r.sr_bound_at_analytic),
                      format_double(r.sr_emp_at_analytic)});
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  std::filesystem::create_directories(args.out_dir);
  const std::filesystem::path dir(args.out_dir);
  trsec::write_csv((dir / "alpha-opt.csv").string(), t);

  nlohmann::json m;
  m["command"] = "alpha-opt";
  m["config"] = config_json(rc, sim);
  m["config"]["bor_series"] = rc.bor_list;
  m["config"]["alpha_grid"] = grid;
  m["config"]["ebn0_db"] = ebn0;
  m["threads"] = args.threads;
  m["outputs"] = {"alpha-opt.csv"};
  m["rows"] = t.rows.size();
  write_manifest(dir, m, wall);
  return 0;
}

// Fast structural self-checks: exact combinatorics, series sanity, the
// closed-form consistency identity, and AN null-space residuals.
int run_validate(const CommonArgs& args) {
  const trsec::RunConfig rc = load_config(args);
  int failures = 0;
  auto report = [&failures](const char* name, bool ok, const std::string& d) {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name,
                d.empty() ? "" : ": ", d.c_str());
    if (!ok) ++failures;
  };

  {  // Lah recurrence L(l+1,q) = (l+q) L(l,q) + L(l,q-1), exact
    bool ok = true;
    for (int l = 1; l < 20 && ok; ++l)
      for (int q = 1; q <= l + 1 && ok; ++q) {
        const trsec::uint128 lhs = trsec::lah(l + 1, q);
        const trsec::uint128 rhs =
            static_cast<trsec::uint128>(l + q) * trsec::lah(l, q) +
            (q >= 1 ? trsec::lah(l, q - 1) : 0);
        ok = lhs == rhs;
      }
    report("lah recurrence", ok, "l up to 20, exact 128-bit");
  }

  {  // series constant sanity: 4*A*U near 1 for usable bor
    bool ok = true;
    double worst = 0.0;
    for (int u = 3; u <= 16; ++u) {
      const double a = trsec::const_a(u, rc.bessel_terms);
      const double dev = std::abs(4.0 * a * u - 1.0);
      worst = std::max(worst, dev);
      ok = ok && a > 0.0 && dev < 0.05;
    }
    report("4AU near 1 (bor 3..16)", ok,
           "worst |4AU-1| = " + format_double(worst));
  }

  {  // closed-form consistency: SR == log2((1+gB)/(1+gE))
    trsec::RngStream rng(rc.seed, 0xC0FFEE);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 1000 && ok; ++i) {
      trsec::SystemParams p;
      p.bor = 3 + static_cast<int>(rng.next_u64() % 14);
      p.q_subcarriers = 16 * p.bor;
      p.n_symbols = 16;
      p.alpha = rng.uniform01();
      p.sigma2_vb = 0.01 + rng.uniform01();
      p.sigma2_ve = 0.01 + rng.uniform01();
      p.sigma2_an = 0.01 + rng.uniform01();
      p.bessel_terms = rc.bessel_terms;
      const double direct =
          std::log2(1.0 + trsec::sinr_bob_bound(p)) -
          std::log2(1.0 + trsec::sinr_eve_bound(p));
      double sr;
      try {
        sr = trsec::secrecy_rate_bound(p);
      } catch (const trsec::NonPositiveArgument&) {
        continue;
      }
      const double tol =
          1e-12 * std::max({1.0, std::abs(sr), std::abs(direct)});
      worst = std::max(worst, std::abs(sr - direct));
      ok = std::abs(sr - direct) <= tol;
    }
    report("secrecy-rate consistency identity", ok,
           "worst |diff| = " + format_double(worst));
  }

  {  // AN null-space residual at Bob
    trsec::RngStream rng(rc.seed, 0xABADCAFE);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      trsec::SystemParams p;
      p.bor = (i % 3 == 0) ? 2 : (i % 3 == 1) ? 4 : 8;
      p.q_subcarriers = rc.q;
      p.n_symbols = rc.q / p.bor;
      p.sigma2_an = 1.0 / p.bor;
      trsec::RngStream r1 = rng.substream(static_cast<std::uint64_t>(i));
      trsec::RngStream rc_ = r1.substream(0), rh = r1.substream(1),
                       rw = r1.substream(2);
      const auto code = trsec::gen_spreading_code(p, rc_);
      const auto h = trsec::draw_rayleigh_channel(p.q_subcarriers, rh);
      const auto an = trsec::synth_an(code, h, p, rw);
      std::vector<trsec::cplx> hw(an.w.size());
      for (std::size_t qi = 0; qi < an.w.size(); ++qi)
        hw[qi] = h.gains[qi] * an.w[qi];
      const auto res = trsec::despread(code, hw, p.bor);
      for (const auto& v : res) worst = std::max(worst, std::abs(v));
    }
    report("AN null-space residual", worst < 1e-10,
           "max |S^H H w| = " + format_double(worst));
  }

  std::printf("%s\n", failures == 0 ? "validate: all checks passed"
                                    : "validate: FAILURES present");
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-reversal OFDM secrecy simulator and analytic toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  CommonArgs args;
  app.add_option("--config", args.config_path, "key=value run configuration")
      ->check(CLI::ExistingFile);
  auto* seed_opt =
      app.add_option("--seed", args.seed, "master seed (overrides config)");
  app.add_option("--out", args.out_dir, "output directory (default: out)");
  app.add_option("--threads", args.threads,
                 "worker threads; 0 = runtime default, 1 = serial reference");
  app.add_flag("--quiet", args.quiet, "suppress per-cell progress on stderr");

  app.add_subcommand("ber-vs-snr",
                     "BER vs Eb/N0 at fixed bor, one series per alpha");
  app.add_subcommand("ber-vs-alpha",
                     "BER vs alpha at fixed Eb/N0, one series per bor");
  app.add_subcommand("sr-vs-alpha",
                     "secrecy rate vs alpha: Monte Carlo next to bounds");
  app.add_subcommand("alpha-opt",
                     "empirical vs closed-form optimal power split");
  app.add_subcommand("validate", "run the analytic self-check suite");

  CLI11_PARSE(app, argc, argv);
  args.seed_set = seed_opt->count() > 0;

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "ber-vs-snr") return run_ber_vs_snr(args);
    if (cmd == "ber-vs-alpha") return run_ber_vs_alpha(args);
    if (cmd == "sr-vs-alpha") return run_sr_vs_alpha(args);
    if (cmd == "alpha-opt") return run_alpha_opt(args);
    if (cmd == "validate") return run_validate(args);
  } catch (const trsec::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
