#pragma once

#include <cstdint>
#include <vector>

#include "trsec/waveform.hpp"

namespace trsec {

/// Monte Carlo shape shared by all sweeps. Per-cell link parameters
/// (bor, alpha, noise) are supplied by the sweep drivers.
struct SimConfig {
  int q_subcarriers = 256;
  int bessel_terms = 20;
  double sigma2_an = 0.0;  ///< <= 0 selects the conventional 1/bor
  int n_realizations = 100;
  int n_blocks = 300;
  std::uint64_t master_seed = 1;
  int threads = 0;  ///< OpenMP workers; <= 0 lets the runtime pick
  bool progress = false;  ///< one stderr line per finished cell
};

/// Genie-aided per-realization link quantities, one entry per data symbol.
struct PerRealizationStats {
  std::vector<double> bob_gain;      ///< K_n, Bob's focusing gain
  std::vector<cplx> eve_cross;       ///< Z_n, Eve's cross-channel sum
  std::vector<double> signal_power;  ///< |A2_n|^2 = alpha |Z_n / U|^2
  std::vector<double> an_power;      ///< |A1_n|^2, AN leakage this block
};

/// One block through the full chain: spread, precode, AN, channel + noise,
/// both receivers, hard decisions.
struct LinkOutcome {
  std::vector<std::uint8_t> bob_bits;
  std::vector<std::uint8_t> eve_bits;
  PerRealizationStats stats;
};

/// Runs a single block. `block_rng` must be dedicated to this block; AN,
/// both noise draws and any coin flips come from fixed substreams of it, so
/// the outcome is a pure function of (params, code, channels, block, rng).
///
/// alpha == 0 is legal: both receivers then carry no data and their bits
/// are fair coin flips (Bob's zero-forcing is singular by construction).
/// Eve symbols whose |Z_n|/U sits under kEveGainFloor also decode as coin
/// flips.
LinkOutcome simulate_link_once(const SystemParams& params,
                               const SpreadingCode& code,
                               const ChannelRealization& h_b,
                               const ChannelRealization& h_e,
                               const SymbolBlock& block, RngStream block_rng);

/// Genie SINRs per symbol. Bob: alpha K_n^2 / s2_vb. Eve:
/// signal_power / (s2_ve + an_power). eve_valid[n] == 0 flags symbols whose
/// |Z_n|/U is under kEveGainFloor; those are excluded from averages.
struct SinrSamples {
  std::vector<double> bob;
  std::vector<double> eve;
  std::vector<std::uint8_t> eve_valid;
};
SinrSamples empirical_sinrs(const PerRealizationStats& stats,
                            const SystemParams& params);

/// One Monte Carlo cell: fixed (bor, alpha, noise), R realizations of
/// B blocks each.
struct CellSpec {
  SystemParams params;
  int n_realizations = 100;
  int n_blocks = 300;
  std::uint64_t master_seed = 1;
};

/// Deterministic per-realization partial; realization r is a pure function
/// of (cell, master_seed, r), independent of thread placement.
struct RealizationPartial {
  std::uint64_t bits = 0;
  std::uint64_t bob_errors = 0;
  std::uint64_t eve_errors = 0;
  std::uint64_t eve_included = 0;  ///< symbol instances in Eve/SR averages
  std::uint64_t eve_skipped = 0;   ///< symbol instances under the Z floor
  double sum_gamma_bob = 0.0;      ///< over symbols (channel-only quantity)
  double sum_gamma_eve = 0.0;      ///< over included (block, symbol) pairs
  double sum_sr = 0.0;             ///< log2(1+gB) - log2(1+gE), same pairs
  double sum_sr_clamped = 0.0;
  int n_symbols = 0;
};

RealizationPartial run_realization(const CellSpec& cell, int realization);

/// Folded cell statistics. Means are equally weighted per realization;
/// ci/se fields are one standard error across realizations (multiply by
/// 1.96 for a 95% halfwidth where needed).
struct CellResult {
  double bob_ber = 0.0, eve_ber = 0.0;
  double bob_ber_se = 0.0, eve_ber_se = 0.0;
  double sinr_bob_emp = 0.0;
  double sinr_eve_emp = 0.0, sinr_eve_se = 0.0;
  double sr_emp = 0.0, sr_se = 0.0;
  double sr_emp_clamped = 0.0;
  std::uint64_t bits = 0, bob_errors = 0, eve_errors = 0;
  std::uint64_t skipped_symbols = 0;
};

/// Reference implementation: plain ordered loop over realizations.
CellResult run_cell_serial(const CellSpec& cell);

/// OpenMP version: realizations fan out to worker threads, partials land in
/// realization-indexed slots, the fold is serial. Bit-identical to
/// run_cell_serial for every thread count.
CellResult run_cell_parallel(const CellSpec& cell, int threads);

/// threads == 1 takes the serial reference path.
CellResult run_cell(const CellSpec& cell, int threads);

/// A sweep table row: one cell plus the matching closed-form values
/// (NaN where the closed form is undefined, e.g. bor == 2).
struct SweepRow {
  int bor = 0;
  double alpha = 0.0;
  double ebn0_db = 0.0;
  CellResult mc;
  double sr_bound = 0.0;
  double sinr_bob_bound = 0.0;
  double sinr_eve_bound = 0.0;
};

/// Link parameters for one cell of a sweep (equal noise floors at Bob and
/// Eve, AN power sigma2_an or 1/bor when unset).
SystemParams make_params(const SimConfig& cfg, int bor, double alpha,
                         double ebn0_db);

/// BER vs Eb/N0 at fixed bor, one series per alpha.
std::vector<SweepRow> sweep_ber_vs_ebn0(const SimConfig& cfg, int bor,
                                        const std::vector<double>& ebn0_grid,
                                        const std::vector<double>& alphas);

/// BER vs alpha at fixed Eb/N0, one series per bor.
std::vector<SweepRow> sweep_ber_vs_alpha(const SimConfig& cfg,
                                         const std::vector<int>& bors,
                                         const std::vector<double>& alphas,
                                         double ebn0_db);

/// Secrecy rate vs alpha at fixed Eb/N0, one series per bor.
std::vector<SweepRow> sweep_sr_vs_alpha(const SimConfig& cfg,
                                        const std::vector<int>& bors,
                                        const std::vector<double>& alphas,
                                        double ebn0_db);

/// Grid argmax of the empirical secrecy rate next to the closed-form
/// optimum for the same inputs.
struct AlphaOptResult {
  int bor = 0;
  double ebn0_db = 0.0;
  double alpha_star_emp = 0.0;
  double sr_max_emp = 0.0;
  double alpha_opt_analytic = 0.0;
  double sr_bound_at_analytic = 0.0;  ///< NaN when the bound is undefined
  double sr_emp_at_analytic = 0.0;
};
AlphaOptResult empirical_alpha_opt(const SimConfig& cfg, int bor,
                                   const std::vector<double>& alpha_grid,
                                   double ebn0_db);

}  // namespace trsec
