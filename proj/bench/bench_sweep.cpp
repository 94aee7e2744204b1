// Times one Monte Carlo cell on the serial reference path and on the OpenMP
// path, checks the two results are bit-identical, and prints the speedup.
// Usage: trsec_bench [realizations blocks]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "trsec/simkit.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool identical(const trsec::CellResult& a, const trsec::CellResult& b) {
  return a.bob_ber == b.bob_ber && a.eve_ber == b.eve_ber &&
         a.bob_ber_se == b.bob_ber_se && a.eve_ber_se == b.eve_ber_se &&
         a.sinr_bob_emp == b.sinr_bob_emp && a.sinr_eve_emp == b.sinr_eve_emp &&
         a.sinr_eve_se == b.sinr_eve_se && a.sr_emp == b.sr_emp &&
         a.sr_se == b.sr_se && a.sr_emp_clamped == b.sr_emp_clamped &&
         a.bits == b.bits && a.bob_errors == b.bob_errors &&
         a.eve_errors == b.eve_errors &&
         a.skipped_symbols == b.skipped_symbols;
}

}  // namespace

int main(int argc, char** argv) {
  trsec::CellSpec cell;
  cell.params = trsec::SystemParams(256, 4, 0.5, 0.0158, 0.0158, 0.25);
  cell.n_realizations = argc > 1 ? std::atoi(argv[1]) : 40;
  cell.n_blocks = argc > 2 ? std::atoi(argv[2]) : 60;
  cell.master_seed = 99;
  if (cell.n_realizations < 1 || cell.n_blocks < 1) {
    std::fprintf(stderr, "bad realization/block counts\n");
    return 64;
  }

  std::printf("cell: Q=%d bor=%d alpha=%.2f, %d realizations x %d blocks\n",
              cell.params.q_subcarriers, cell.params.bor, cell.params.alpha,
              cell.n_realizations, cell.n_blocks);

  const auto t_serial = std::chrono::steady_clock::now();
  const auto serial = trsec::run_cell_serial(cell);
  const double s_serial = seconds_since(t_serial);

  const int workers = omp_get_max_threads();
  const auto t_par = std::chrono::steady_clock::now();
  const auto parallel = trsec::run_cell_parallel(cell, 0);
  const double s_par = seconds_since(t_par);

  std::printf("serial reference : %8.3f s\n", s_serial);
  std::printf("openmp (%2d thr)  : %8.3f s  speedup %.2fx\n", workers, s_par,
              s_par > 0.0 ? s_serial / s_par : 0.0);
  std::printf("bob_ber=%.6e eve_ber=%.6e sr_emp=%.6f\n", serial.bob_ber,
              serial.eve_ber, serial.sr_emp);

  if (!identical(serial, parallel)) {
    std::fprintf(stderr, "MISMATCH: parallel result differs from serial\n");
    return 1;
  }
  std::printf("results identical across implementations\n");
  return 0;
}
