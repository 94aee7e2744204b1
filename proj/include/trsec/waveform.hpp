#pragma once

#include <stdexcept>
#include <vector>

#include "trsec/model.hpp"

namespace trsec {

/// No subcarrier group offers a usable pivot for AN synthesis.
struct DegenerateChannel : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Zero-forcing denominator below its floor (or alpha == 0 at Bob).
struct SingularEqualizer : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |H| floor below which an AN pivot is swapped to the group's largest tap.
inline constexpr double kAnPivotFloor = 1e-6;
/// Bob's ZF gain floor; alpha*K_n below this throws SingularEqualizer.
inline constexpr double kBobGainFloor = 1e-12;
/// Eve's per-symbol |Z_n|/U floor; below it the symbol is flagged singular.
inline constexpr double kEveGainFloor = 1e-9;

/// A frequency-domain frame ready for the air: sqrt(alpha) * precoded data
/// plus sqrt(1-alpha) * artificial noise.
struct TxFrame {
  std::vector<cplx> x;  // length Q
};

/// Despread and equalized outputs of a receiver front end.
/// `singular` marks symbols whose ZF division was skipped (Eve only);
/// equalized[n] is 0 there. Empty mask means every symbol is valid.
struct RxObservation {
  std::vector<cplx> despread;   // length N
  std::vector<cplx> equalized;  // length N
  std::vector<std::uint8_t> singular;
};

/// S X: copy symbol n onto subcarriers n, n+N, ..., n+(U-1)N with the code
/// signs, scaled by 1/sqrt(U). Preserves the l2 norm.
std::vector<cplx> spread(const SpreadingCode& code, const std::vector<cplx>& x,
                         int bor);

/// S^H y: fold the U copies of each symbol back together. Inverse of spread
/// on its range.
std::vector<cplx> despread(const SpreadingCode& code,
                           const std::vector<cplx>& y, int bor);

/// Time-reversal precoding: multiply per subcarrier by conj(h).
std::vector<cplx> precode_tr(const ChannelRealization& h,
                             const std::vector<cplx>& x);

/// Artificial noise in the null space of S^H diag(H_B).
///
/// Per subcarrier group n: draw the non-pivot entries i.i.d. CN(0,1) and
/// solve the pivot entry so sum_i s_{n+iN} h_{n+iN} w_{n+iN} = 0. The pivot
/// defaults to the last block (i = U-1); if its |h| is under kAnPivotFloor
/// the group's largest |h| is used instead, and if every tap is under the
/// floor the channel is DegenerateChannel. The finished vector is rescaled
/// so its mean per-subcarrier power equals params.sigma2_an exactly.
AnVector synth_an(const SpreadingCode& code, const ChannelRealization& h_b,
                  const SystemParams& params, RngStream& rng);

/// sqrt(alpha) * precoded + sqrt(1-alpha) * w. Requires alpha in [0,1].
TxFrame assemble_tx(double alpha, const std::vector<cplx>& precoded,
                    const AnVector& w);

/// Per-subcarrier channel product plus AWGN of the given variance
/// (sigma2 == 0 means noiseless).
std::vector<cplx> apply_channel_awgn(const ChannelRealization& h,
                                     const std::vector<cplx>& tx,
                                     double sigma2, RngStream& rng);

/// Bob: despread, then zero-force by sqrt(alpha) * K_n where
/// K_n = (1/U) sum_i |h_{n+iN}|^2. Throws SingularEqualizer when alpha == 0
/// or alpha * K_n falls under kBobGainFloor.
RxObservation receive_bob(const SpreadingCode& code,
                          const ChannelRealization& h_b,
                          const std::vector<cplx>& rx, double alpha, int bor);

/// Eve: despread, then zero-force by sqrt(alpha) * Z_n / U where
/// Z_n = sum_i h_E conj(h_B). Symbols with |Z_n|/U under kEveGainFloor are
/// flagged in `singular` and left unequalized rather than thrown: Z_n is a
/// random complex sum, so near-zeros are a legitimate channel event.
RxObservation receive_eve(const SpreadingCode& code,
                          const ChannelRealization& h_b,
                          const ChannelRealization& h_e,
                          const std::vector<cplx>& rx, double alpha, int bor);

/// Bob's per-symbol focusing gains K_n (length N).
std::vector<double> bob_gains(const ChannelRealization& h_b, int bor);

/// Eve's per-symbol cross sums Z_n (length N); her ZF gain is Z_n / U.
std::vector<cplx> eve_cross_sums(const ChannelRealization& h_b,
                                 const ChannelRealization& h_e, int bor);

/// Per-subcarrier noise variance for a target Eb/N0 in dB, under the
/// calibration used throughout: unit total transmit energy per data symbol,
/// 2 bits per symbol, so Eb = 1/2 and sigma2 = 0.5 * 10^(-dB/10).
double noise_variance_from_ebn0_db(double ebn0_db);

}  // namespace trsec
