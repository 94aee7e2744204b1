#include "trsec/simkit.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <limits>

#include "trsec/analytic.hpp"

namespace trsec {

// Stream layout. Realization r owns stream_id r of the master seed:
//   substream 0: spreading code
//   substream 1: Bob channel
//   substream 2: Eve channel
//   substream 3 + b: block b, which further splits into
//     0: data bits, 1: AN draws, 2: Bob noise, 3: Eve noise, 4: coin flips
// Every draw is therefore addressed by (master_seed, r, purpose), which is
// what makes results independent of scheduling and thread count.
namespace tag {
constexpr std::uint64_t kCode = 0, kChanBob = 1, kChanEve = 2, kBlockBase = 3;
constexpr std::uint64_t kBits = 0, kAn = 1, kNoiseBob = 2, kNoiseEve = 3,
                        kCoin = 4;
}  // namespace tag

namespace {

std::vector<std::uint8_t> draw_bits(RngStream& rng, int count) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(count));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
  return bits;
}

}  // namespace

LinkOutcome simulate_link_once(const SystemParams& params,
                               const SpreadingCode& code,
                               const ChannelRealization& h_b,
                               const ChannelRealization& h_e,
                               const SymbolBlock& block, RngStream block_rng) {
  RngStream rng_an = block_rng.substream(tag::kAn);
  RngStream rng_nb = block_rng.substream(tag::kNoiseBob);
  RngStream rng_ne = block_rng.substream(tag::kNoiseEve);
  RngStream rng_coin = block_rng.substream(tag::kCoin);

  const std::vector<cplx> spread_x = spread(code, block.symbols, params.bor);
  const std::vector<cplx> precoded = precode_tr(h_b, spread_x);
  const AnVector an = synth_an(code, h_b, params, rng_an);
  const TxFrame tx = assemble_tx(params.alpha, precoded, an);

  const std::vector<cplx> rx_b =
      apply_channel_awgn(h_b, tx.x, params.sigma2_vb, rng_nb);
  const std::vector<cplx> rx_e =
      apply_channel_awgn(h_e, tx.x, params.sigma2_ve, rng_ne);

  LinkOutcome out;
  out.stats.bob_gain = bob_gains(h_b, params.bor);
  out.stats.eve_cross = eve_cross_sums(h_b, h_e, params.bor);

  const std::size_t n = block.symbols.size();
  out.stats.signal_power.resize(n);
  const double inv_u2 =
      1.0 / (static_cast<double>(params.bor) * static_cast<double>(params.bor));
  for (std::size_t k = 0; k < n; ++k)
    out.stats.signal_power[k] =
        params.alpha * std::norm(out.stats.eve_cross[k]) * inv_u2;

  // AN leakage at Eve: |A1_n|^2 with A1 = sqrt(1-alpha) S^H diag(H_E) W.
  std::vector<cplx> hw(an.w.size());
  for (std::size_t qi = 0; qi < an.w.size(); ++qi)
    hw[qi] = h_e.gains[qi] * an.w[qi];
  const std::vector<cplx> leak = despread(code, hw, params.bor);
  out.stats.an_power.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    out.stats.an_power[k] = (1.0 - params.alpha) * std::norm(leak[k]);

  if (params.alpha > 0.0) {
    const RxObservation bob =
        receive_bob(code, h_b, rx_b, params.alpha, params.bor);
    out.bob_bits = qam4_demodulate(bob.equalized);
  } else {
    out.bob_bits = draw_bits(rng_coin, static_cast<int>(2 * n));
  }

  const RxObservation eve =
      receive_eve(code, h_b, h_e, rx_e, params.alpha, params.bor);
  out.eve_bits = qam4_demodulate(eve.equalized);
  if (!eve.singular.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!eve.singular[k]) continue;
      out.eve_bits[2 * k] = static_cast<std::uint8_t>(rng_coin.bit());
      out.eve_bits[2 * k + 1] = static_cast<std::uint8_t>(rng_coin.bit());
    }
  }
  return out;
}

SinrSamples empirical_sinrs(const PerRealizationStats& stats,
                            const SystemParams& params) {
  const std::size_t n = stats.bob_gain.size();
  SinrSamples s;
  s.bob.resize(n);
  s.eve.resize(n);
  s.eve_valid.resize(n);
  const double inv_u = 1.0 / static_cast<double>(params.bor);
  for (std::size_t k = 0; k < n; ++k) {
    s.bob[k] = params.alpha * stats.bob_gain[k] * stats.bob_gain[k] /
               params.sigma2_vb;
    s.eve[k] = stats.signal_power[k] / (params.sigma2_ve + stats.an_power[k]);
    // Validity is a channel property (Z floor), not a power-split one:
    // alpha == 0 still yields legitimate zero-SINR samples.
    s.eve_valid[k] =
        std::abs(stats.eve_cross[k]) * inv_u >= kEveGainFloor ? 1 : 0;
  }
  return s;
}

RealizationPartial run_realization(const CellSpec& cell, int realization) {
  const SystemParams& p = cell.params;
  RngStream base(cell.master_seed, static_cast<std::uint64_t>(realization));
  RngStream rng_code = base.substream(tag::kCode);
  RngStream rng_hb = base.substream(tag::kChanBob);
  RngStream rng_he = base.substream(tag::kChanEve);

  const SpreadingCode code = gen_spreading_code(p, rng_code);
  const ChannelRealization h_b =
      draw_rayleigh_channel(p.q_subcarriers, rng_hb);
  const ChannelRealization h_e =
      draw_rayleigh_channel(p.q_subcarriers, rng_he);

  RealizationPartial part;
  part.n_symbols = p.n_symbols;

  for (int b = 0; b < cell.n_blocks; ++b) {
    RngStream block_rng = base.substream(tag::kBlockBase +
                                         static_cast<std::uint64_t>(b));
    RngStream rng_bits = block_rng.substream(tag::kBits);
    const SymbolBlock block =
        qam4_modulate(draw_bits(rng_bits, 2 * p.n_symbols));

    const LinkOutcome outcome =
        simulate_link_once(p, code, h_b, h_e, block, block_rng);

    part.bits += block.bits.size();
    for (std::size_t i = 0; i < block.bits.size(); ++i) {
      part.bob_errors += outcome.bob_bits[i] != block.bits[i];
      part.eve_errors += outcome.eve_bits[i] != block.bits[i];
    }

    const SinrSamples sinrs = empirical_sinrs(outcome.stats, p);
    for (int k = 0; k < p.n_symbols; ++k) {
      if (b == 0) part.sum_gamma_bob += sinrs.bob[k];  // block-invariant
      if (!sinrs.eve_valid[k]) {
        ++part.eve_skipped;
        continue;
      }
      ++part.eve_included;
      part.sum_gamma_eve += sinrs.eve[k];
      const double sr =
          std::log2(1.0 + sinrs.bob[k]) - std::log2(1.0 + sinrs.eve[k]);
      part.sum_sr += sr;
      part.sum_sr_clamped += sr > 0.0 ? sr : 0.0;
    }
  }
  return part;
}

namespace {

struct MeanSe {
  double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe r;
  if (xs.empty()) return r;
  for (double x : xs) r.mean += x;
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                   static_cast<double>(xs.size()));
  return r;
}

CellResult fold(const CellSpec& cell,
                const std::vector<RealizationPartial>& parts) {
  CellResult res;
  std::vector<double> ber_b, ber_e, gamma_e, sr, sr_cl, gamma_b;
  ber_b.reserve(parts.size());
  for (const auto& part : parts) {
    res.bits += part.bits;
    res.bob_errors += part.bob_errors;
    res.eve_errors += part.eve_errors;
    res.skipped_symbols += part.eve_skipped;
    const double bits = static_cast<double>(part.bits);
    ber_b.push_back(static_cast<double>(part.bob_errors) / bits);
    ber_e.push_back(static_cast<double>(part.eve_errors) / bits);
    gamma_b.push_back(part.sum_gamma_bob /
                      static_cast<double>(part.n_symbols));
    if (part.eve_included > 0) {
      const double cnt = static_cast<double>(part.eve_included);
      gamma_e.push_back(part.sum_gamma_eve / cnt);
      sr.push_back(part.sum_sr / cnt);
      sr_cl.push_back(part.sum_sr_clamped / cnt);
    }
  }
  res.bob_ber = static_cast<double>(res.bob_errors) /
                static_cast<double>(res.bits);
  res.eve_ber = static_cast<double>(res.eve_errors) /
                static_cast<double>(res.bits);
  res.bob_ber_se = mean_se(ber_b).se;
  res.eve_ber_se = mean_se(ber_e).se;
  res.sinr_bob_emp = mean_se(gamma_b).mean;
  const MeanSe ge = mean_se(gamma_e);
  res.sinr_eve_emp = ge.mean;
  res.sinr_eve_se = ge.se;
  const MeanSe ms = mean_se(sr);
  res.sr_emp = ms.mean;
  res.sr_se = ms.se;
  res.sr_emp_clamped = mean_se(sr_cl).mean;
  (void)cell;
  return res;
}

}  // namespace

CellResult run_cell_serial(const CellSpec& cell) {
  cell.params.validate();
  std::vector<RealizationPartial> parts(
      static_cast<std::size_t>(cell.n_realizations));
  for (int r = 0; r < cell.n_realizations; ++r)
    parts[static_cast<std::size_t>(r)] = run_realization(cell, r);
  return fold(cell, parts);
}

CellResult run_cell_parallel(const CellSpec& cell, int threads) {
  cell.params.validate();
  std::vector<RealizationPartial> parts(
      static_cast<std::size_t>(cell.n_realizations));
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
  for (int r = 0; r < cell.n_realizations; ++r)
    parts[static_cast<std::size_t>(r)] = run_realization(cell, r);
  return fold(cell, parts);
}

CellResult run_cell(const CellSpec& cell, int threads) {
  if (threads == 1) return run_cell_serial(cell);
  return run_cell_parallel(cell, threads);
}

SystemParams make_params(const SimConfig& cfg, int bor, double alpha,
                         double ebn0_db) {
  const double sigma2 = noise_variance_from_ebn0_db(ebn0_db);
  const double s2_an =
      cfg.sigma2_an > 0.0 ? cfg.sigma2_an : 1.0 / static_cast<double>(bor);
  return SystemParams(cfg.q_subcarriers, bor, alpha, sigma2, sigma2, s2_an,
                      cfg.bessel_terms);
}

namespace {

// Closed-form columns; NaN where the expression is undefined for these
// inputs (negative series constant at small bor).
void attach_bounds(SweepRow& row, const SystemParams& p) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  row.sinr_bob_bound = sinr_bob_bound(p);
  try {
    row.sinr_eve_bound = sinr_eve_bound(p);
  } catch (const std::domain_error&) {
    row.sinr_eve_bound = nan;
  }
  try {
    row.sr_bound = secrecy_rate_bound(p);
  } catch (const std::domain_error&) {
    row.sr_bound = nan;
  }
}

SweepRow run_row(const SimConfig& cfg, int bor, double alpha, double ebn0_db,
                 int index, int total) {
  SweepRow row;
  row.bor = bor;
  row.alpha = alpha;
  row.ebn0_db = ebn0_db;
  CellSpec cell;
  cell.params = make_params(cfg, bor, alpha, ebn0_db);
  cell.n_realizations = cfg.n_realizations;
  cell.n_blocks = cfg.n_blocks;
  cell.master_seed = cfg.master_seed;
  row.mc = run_cell(cell, cfg.threads);
  attach_bounds(row, cell.params);
  if (cfg.progress)
    std::fprintf(stderr,
                 "[%3d/%3d] bor=%d alpha=%.4g ebn0=%.4g dB  "
                 "bob_ber=%.3e eve_ber=%.3e sr_emp=%.4f\n",
                 index, total, bor, alpha, ebn0_db, row.mc.bob_ber,
                 row.mc.eve_ber, row.mc.sr_emp);
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_ber_vs_ebn0(const SimConfig& cfg, int bor,
                                        const std::vector<double>& ebn0_grid,
                                        const std::vector<double>& alphas) {
  std::vector<SweepRow> rows;
  rows.reserve(alphas.size() * ebn0_grid.size());
  const int total = static_cast<int>(alphas.size() * ebn0_grid.size());
  int i = 0;
  for (double alpha : alphas)
    for (double db : ebn0_grid)
      rows.push_back(run_row(cfg, bor, alpha, db, ++i, total));
  return rows;
}

std::vector<SweepRow> sweep_ber_vs_alpha(const SimConfig& cfg,
                                         const std::vector<int>& bors,
                                         const std::vector<double>& alphas,
                                         double ebn0_db) {
  std::vector<SweepRow> rows;
  rows.reserve(bors.size() * alphas.size());
  const int total = static_cast<int>(bors.size() * alphas.size());
  int i = 0;
  for (int bor : bors)
    for (double alpha : alphas)
      rows.push_back(run_row(cfg, bor, alpha, ebn0_db, ++i, total));
  return rows;
}

std::vector<SweepRow> sweep_sr_vs_alpha(const SimConfig& cfg,
                                        const std::vector<int>& bors,
                                        const std::vector<double>& alphas,
                                        double ebn0_db) {
  return sweep_ber_vs_alpha(cfg, bors, alphas, ebn0_db);
}

AlphaOptResult empirical_alpha_opt(const SimConfig& cfg, int bor,
                                   const std::vector<double>& alpha_grid,
                                   double ebn0_db) {
  AlphaOptResult res;
  res.bor = bor;
  res.ebn0_db = ebn0_db;
  const std::vector<SweepRow> rows =
      sweep_sr_vs_alpha(cfg, {bor}, alpha_grid, ebn0_db);
  bool first = true;
  for (const auto& row : rows) {
    if (first || row.mc.sr_emp > res.sr_max_emp) {
      res.sr_max_emp = row.mc.sr_emp;
      res.alpha_star_emp = row.alpha;
      first = false;
    }
  }
  const SystemParams p = make_params(cfg, bor, 0.5, ebn0_db);
  res.alpha_opt_analytic = alpha_opt(p);
  SystemParams at_opt = p;
  at_opt.alpha = res.alpha_opt_analytic;
  try {
    res.sr_bound_at_analytic = secrecy_rate_bound(at_opt);
  } catch (const std::domain_error&) {
    res.sr_bound_at_analytic = std::numeric_limits<double>::quiet_NaN();
  }
  res.sr_emp_at_analytic =
      run_row(cfg, bor, res.alpha_opt_analytic, ebn0_db, 1, 1).mc.sr_emp;
  return res;
}

}  // namespace trsec
