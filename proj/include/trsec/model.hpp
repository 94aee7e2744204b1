#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "trsec/rng.hpp"

namespace trsec {

using cplx = std::complex<double>;

/// Static link parameters shared by the waveform chain, the closed-form
/// bounds and the Monte Carlo driver.
///
/// q_subcarriers = n_symbols * bor always holds; the constructor rejects
/// anything else. sigma2_an is the average per-subcarrier power of the
/// artificial-noise vector (the conventional choice is 1/bor so a frame
/// carries unit AN energy per subcarrier group).
struct SystemParams {
  int q_subcarriers = 256;  ///< OFDM subcarriers per frame (Q)
  int n_symbols = 64;       ///< data symbols per block (N)
  int bor = 4;              ///< back-off rate U = Q/N, spreading factor
  double alpha = 0.5;       ///< data/AN power split, in [0,1]
  double sigma2_vb = 0.5;   ///< Bob noise variance per subcarrier
  double sigma2_ve = 0.5;   ///< Eve noise variance per subcarrier
  double sigma2_an = 0.25;  ///< AN power per subcarrier
  int bessel_terms = 20;    ///< truncation depth for the analytic series

  SystemParams() = default;
  SystemParams(int q, int u, double alpha_, double s2_vb, double s2_ve,
               double s2_an, int terms = 20);

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Per-subcarrier spreading signs, length Q, entries +-1/.
/// Organized as U stacked length-N diagonal blocks scaled by 1/sqrt(U),
/// so the implied Q x N matrix S satisfies S^H S = I_N exactly.
struct SpreadingCode {
  std::vector<double> signs;  // just the +-1 part; 1/sqrt(U) applied in ops
};

/// Frequency-domain channel, one complex gain per subcarrier.
/// After draw_rayleigh_channel the empirical power is normalized:
/// (1/Q) * sum |h_q|^2 == 1 (up to rounding).
struct ChannelRealization {
  std::vector<cplx> gains;
};

/// One block of payload: 2N data bits and their N 4-QAM symbols.
struct SymbolBlock {
  std::vector<std::uint8_t> bits;  // size 2N, values 0/1
  std::vector<cplx> symbols;       // size N, unit modulus
};

/// Artificial-noise frequency vector, length Q, lying in the null space of
/// S^H diag(H_B): despreading after Bob's channel annihilates it.
struct AnVector {
  std::vector<cplx> w;
};

/// Fresh +-1 spreading code; one sign per subcarrier.
SpreadingCode gen_spreading_code(const SystemParams& params, RngStream& rng);

/// I.i.d. CN(0,1) gains, then rescaled so (1/Q) sum |h|^2 = 1.
ChannelRealization draw_rayleigh_channel(int q_subcarriers, RngStream& rng);

/// Gray-mapped 4-QAM. Bit pair (b0, b1) -> ((1-2*b0) + j(1-2*b1))/sqrt(2);
/// b0 drives the real axis. bits.size() must be even.
SymbolBlock qam4_modulate(const std::vector<std::uint8_t>& bits);

/// Hard decision, quadrant rule. A coordinate that is exactly 0 decodes to
/// bit 0 (ties break toward the positive half-plane).
std::vector<std::uint8_t> qam4_demodulate(const std::vector<cplx>& symbols);

}  // namespace trsec
