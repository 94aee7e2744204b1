#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "trsec/analytic.hpp"
#include "trsec/simkit.hpp"

using trsec::CellResult;
using trsec::CellSpec;
using trsec::ChannelRealization;
using trsec::RngStream;
using trsec::SimConfig;
using trsec::SystemParams;

namespace {

struct LinkFixture {
  SystemParams params;
  trsec::SpreadingCode code;
  ChannelRealization h_b;
  ChannelRealization h_e;
  trsec::SymbolBlock block;

  LinkFixture(int q, int u, double alpha, double s2_vb, double s2_ve,
              std::uint64_t seed, bool colocated = false)
      : params(q, u, alpha, s2_vb, s2_ve, 1.0 / u) {
    RngStream rng(seed, 0);
    code = trsec::gen_spreading_code(params, rng);
    h_b = trsec::draw_rayleigh_channel(q, rng);
    h_e = colocated ? h_b : trsec::draw_rayleigh_channel(q, rng);
    std::vector<std::uint8_t> bits(2 * params.n_symbols);
    for (auto& b : bits) b = rng.bit();
    block = trsec::qam4_modulate(bits);
  }
};

std::uint64_t count_bit_errors(const std::vector<std::uint8_t>& a,
                               const std::vector<std::uint8_t>& b) {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

void check_identical(const CellResult& a, const CellResult& b) {
  CHECK(a.bob_ber == b.bob_ber);
  CHECK(a.eve_ber == b.eve_ber);
  CHECK(a.bob_ber_se == b.bob_ber_se);
  CHECK(a.eve_ber_se == b.eve_ber_se);
  CHECK(a.sinr_bob_emp == b.sinr_bob_emp);
  CHECK(a.sinr_eve_emp == b.sinr_eve_emp);
  CHECK(a.sinr_eve_se == b.sinr_eve_se);
  CHECK(a.sr_emp == b.sr_emp);
  CHECK(a.sr_se == b.sr_se);
  CHECK(a.sr_emp_clamped == b.sr_emp_clamped);
  CHECK(a.bits == b.bits);
  CHECK(a.bob_errors == b.bob_errors);
  CHECK(a.eve_errors == b.eve_errors);
  CHECK(a.skipped_symbols == b.skipped_symbols);
}

}  // namespace

TEST_CASE("one noiseless block, alpha 1, co-located Eve: both links exact") {
  LinkFixture f(256, 4, 1.0, 0.0, 0.0, 11, /*colocated=*/true);
  auto out = trsec::simulate_link_once(f.params, f.code, f.h_b, f.h_e, f.block,
                                       RngStream(99, 0));
  CHECK(count_bit_errors(out.bob_bits, f.block.bits) == 0);
  CHECK(count_bit_errors(out.eve_bits, f.block.bits) == 0);
}

TEST_CASE("noiseless with AN: Bob exact, independent Eve disturbed") {
  LinkFixture f(256, 4, 0.5, 0.0, 0.0, 12);
  std::uint64_t eve_errors = 0;
  for (int b = 0; b < 5; ++b) {
    auto out = trsec::simulate_link_once(f.params, f.code, f.h_b, f.h_e,
                                         f.block, RngStream(99, 10 + b));
    CHECK(count_bit_errors(out.bob_bits, f.block.bits) == 0);
    eve_errors += count_bit_errors(out.eve_bits, f.block.bits);
  }
  CHECK(eve_errors > 0);
}

TEST_CASE("link outcome is a pure function of its inputs") {
  LinkFixture f(64, 4, 0.8, 0.01, 0.01, 13);
  auto a = trsec::simulate_link_once(f.params, f.code, f.h_b, f.h_e, f.block,
                                     RngStream(5, 7));
  auto b = trsec::simulate_link_once(f.params, f.code, f.h_b, f.h_e, f.block,
                                     RngStream(5, 7));
  CHECK(a.bob_bits == b.bob_bits);
  CHECK(a.eve_bits == b.eve_bits);
  CHECK(a.stats.bob_gain == b.stats.bob_gain);
  CHECK(a.stats.an_power == b.stats.an_power);
}

TEST_CASE("empirical_sinrs on a flat channel") {
  const int q = 32, u = 4, n = q / u;
  SystemParams p(q, u, 0.6, 0.05, 0.02, 1.0 / u);
  ChannelRealization flat;
  flat.gains.assign(q, trsec::cplx(1.0, 0.0));
  trsec::PerRealizationStats stats;
  stats.bob_gain = trsec::bob_gains(flat, u);
  stats.eve_cross = trsec::eve_cross_sums(flat, flat, u);
  for (int i = 0; i < n; ++i) {
    stats.signal_power.push_back(p.alpha);  // |Z/U| = 1 here
    stats.an_power.push_back(0.0);
  }
  auto s = trsec::empirical_sinrs(stats, p);
  REQUIRE(static_cast<int>(s.bob.size()) == n);
  for (int i = 0; i < n; ++i) {
    CHECK(s.bob[i] == doctest::Approx(0.6 / 0.05).epsilon(1e-12));
    CHECK(s.eve[i] == doctest::Approx(0.6 / 0.02).epsilon(1e-12));
    CHECK(s.eve_valid[i] == 1);
  }
}

TEST_CASE("mean Bob SINR matches its closed form across channel draws") {
  const int q = 256, u = 4;
  SystemParams p(q, u, 0.85, 0.05, 0.05, 0.25);
  RngStream rng(2024, 0);
  double acc = 0.0;
  std::uint64_t cnt = 0;
  for (int r = 0; r < 2000; ++r) {
    auto h = trsec::draw_rayleigh_channel(q, rng);
    for (double k : trsec::bob_gains(h, u)) {
      acc += p.alpha * k * k / p.sigma2_vb;
      ++cnt;
    }
  }
  const double emp = acc / static_cast<double>(cnt);
  const double bound = trsec::sinr_bob_bound(p);
  CHECK(std::abs(emp - bound) / bound < 0.02);
}

TEST_CASE("serial and parallel cells agree bit for bit") {
  CellSpec cell;
  cell.params = SystemParams(64, 4, 0.6, 0.02, 0.02, 0.25);
  cell.n_realizations = 12;
  cell.n_blocks = 8;
  cell.master_seed = 31;
  const auto ref = trsec::run_cell_serial(cell);
  check_identical(ref, trsec::run_cell_parallel(cell, 3));
  check_identical(ref, trsec::run_cell_parallel(cell, 7));
  check_identical(ref, trsec::run_cell(cell, 0));
  check_identical(ref, trsec::run_cell(cell, 1));
  // and the whole thing is reproducible
  check_identical(ref, trsec::run_cell_serial(cell));
}

TEST_CASE("run_realization is independent of call order") {
  CellSpec cell;
  cell.params = SystemParams(64, 2, 0.4, 0.05, 0.05, 0.5);
  cell.n_realizations = 4;
  cell.n_blocks = 3;
  cell.master_seed = 77;
  auto a3 = trsec::run_realization(cell, 3);
  auto a0 = trsec::run_realization(cell, 0);
  auto b3 = trsec::run_realization(cell, 3);
  CHECK(a3.bob_errors == b3.bob_errors);
  CHECK(a3.eve_errors == b3.eve_errors);
  CHECK(a3.sum_gamma_eve == b3.sum_gamma_eve);
  CHECK(a3.sum_sr == b3.sum_sr);
  CHECK(a0.bits == a3.bits);
}

TEST_CASE("alpha 0 cell: coin flips for everyone, zero secrecy rate") {
  CellSpec cell;
  cell.params = SystemParams(64, 4, 0.0, 0.0158, 0.0158, 0.25);
  cell.n_realizations = 6;
  cell.n_blocks = 10;
  cell.master_seed = 5;
  const auto res = trsec::run_cell_serial(cell);
  CHECK(res.bits == std::uint64_t(6) * 10 * 2 * 16);
  CHECK(res.bob_ber > 0.45);
  CHECK(res.bob_ber < 0.55);
  CHECK(res.eve_ber > 0.45);
  CHECK(res.eve_ber < 0.55);
  CHECK(res.sr_emp == 0.0);  // gamma == 0 on both sides, exactly
  CHECK(res.sinr_bob_emp == 0.0);
  CHECK(res.sinr_eve_emp == 0.0);
  CHECK(res.skipped_symbols == 0);
}

TEST_CASE("pooled error counters match the reported rates") {
  CellSpec cell;
  cell.params = SystemParams(64, 4, 0.9, 0.1, 0.1, 0.25);
  cell.n_realizations = 5;
  cell.n_blocks = 6;
  cell.master_seed = 8;
  const auto res = trsec::run_cell_serial(cell);
  CHECK(res.bob_ber ==
        doctest::Approx(double(res.bob_errors) / double(res.bits))
            .epsilon(1e-12));
  CHECK(res.eve_ber ==
        doctest::Approx(double(res.eve_errors) / double(res.bits))
            .epsilon(1e-12));
  CHECK(res.eve_ber > res.bob_ber);
}

TEST_CASE("make_params wires the calibration through") {
  SimConfig cfg;
  cfg.q_subcarriers = 128;
  const auto p = trsec::make_params(cfg, 8, 0.7, 15.0);
  CHECK(p.q_subcarriers == 128);
  CHECK(p.bor == 8);
  CHECK(p.n_symbols == 16);
  CHECK(p.alpha == 0.7);
  CHECK(p.sigma2_vb ==
        doctest::Approx(0.5 * std::pow(10.0, -1.5)).epsilon(1e-14));
  CHECK(p.sigma2_ve == p.sigma2_vb);
  CHECK(p.sigma2_an == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  cfg.sigma2_an = 0.4;
  CHECK(trsec::make_params(cfg, 8, 0.7, 15.0).sigma2_an == 0.4);
}

TEST_CASE("sweep rows carry bounds, NaN where undefined") {
  SimConfig cfg;
  cfg.q_subcarriers = 64;
  cfg.n_realizations = 4;
  cfg.n_blocks = 4;
  cfg.master_seed = 17;
  cfg.threads = 1;
  const auto rows =
      trsec::sweep_sr_vs_alpha(cfg, {2, 4}, {0.2, 0.9}, 20.0);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].bor == 2);
  CHECK(rows[0].alpha == 0.2);
  CHECK(rows[1].bor == 2);
  CHECK(rows[1].alpha == 0.9);
  CHECK(rows[2].bor == 4);
  CHECK(rows[3].bor == 4);
  // bor 2 at high alpha: the closed form's log argument goes negative
  CHECK(std::isnan(rows[1].sr_bound));
  CHECK(std::isfinite(rows[2].sr_bound));
  CHECK(std::isfinite(rows[3].sr_bound));
  CHECK(rows[2].sinr_bob_bound > 0.0);
  for (const auto& r : rows) CHECK(r.ebn0_db == 20.0);
}

TEST_CASE("empirical_alpha_opt smoke test") {
  SimConfig cfg;
  cfg.q_subcarriers = 64;
  cfg.n_realizations = 8;
  cfg.n_blocks = 10;
  cfg.master_seed = 23;
  cfg.threads = 1;
  const auto r =
      trsec::empirical_alpha_opt(cfg, 4, {0.0, 0.25, 0.5, 0.75, 1.0}, 20.0);
  CHECK(r.bor == 4);
  CHECK(r.ebn0_db == 20.0);
  CHECK(r.alpha_star_emp > 0.0);
  CHECK(r.alpha_star_emp < 1.0);
  CHECK(r.sr_max_emp > 0.5);
  CHECK(r.alpha_opt_analytic > 0.0);
  CHECK(r.alpha_opt_analytic < 1.0);
  CHECK(std::isfinite(r.sr_bound_at_analytic));
  CHECK(std::isfinite(r.sr_emp_at_analytic));
}

TEST_CASE("Bob BER falls with Eb/N0") {
  SimConfig cfg;
  cfg.q_subcarriers = 64;
  cfg.n_realizations = 20;
  cfg.n_blocks = 40;
  cfg.master_seed = 29;
  cfg.threads = 1;
  CellSpec low;
  low.params = trsec::make_params(cfg, 4, 0.95, 5.0);
  low.n_realizations = cfg.n_realizations;
  low.n_blocks = cfg.n_blocks;
  low.master_seed = cfg.master_seed;
  CellSpec high = low;
  high.params = trsec::make_params(cfg, 4, 0.95, 15.0);
  const auto r_low = trsec::run_cell(low, 0);
  const auto r_high = trsec::run_cell(high, 0);
  CHECK(r_low.bob_ber > 0.005);
  CHECK(r_high.bob_ber < 0.005);
  CHECK(r_low.bob_ber > r_high.bob_ber);
}
