#include "trsec/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trsec {

SystemParams::SystemParams(int q, int u, double alpha_, double s2_vb,
                           double s2_ve, double s2_an, int terms)
    : q_subcarriers(q),
      n_symbols(u > 0 ? q / u : 0),
      bor(u),
      alpha(alpha_),
      sigma2_vb(s2_vb),
      sigma2_ve(s2_ve),
      sigma2_an(s2_an),
      bessel_terms(terms) {
  validate();
}

void SystemParams::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("SystemParams: " + what);
  };
  if (q_subcarriers <= 0) fail("q_subcarriers must be positive");
  if (n_symbols <= 0) fail("n_symbols must be positive");
  if (bor < 1) fail("bor must be >= 1");
  if (q_subcarriers != n_symbols * bor)
    fail("q_subcarriers must equal n_symbols * bor");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail("alpha must lie in [0,1]");
  // Zero noise is legal here (noiseless diagnostics); the closed-form
  // bounds require strictly positive variances and check separately.
  if (!(sigma2_vb >= 0.0)) fail("sigma2_vb must be >= 0");
  if (!(sigma2_ve >= 0.0)) fail("sigma2_ve must be >= 0");
  if (!(sigma2_an > 0.0)) fail("sigma2_an must be positive");
  if (bessel_terms < 1) fail("bessel_terms must be >= 1");
}

SpreadingCode gen_spreading_code(const SystemParams& params, RngStream& rng) {
  SpreadingCode code;
  code.signs.resize(static_cast<std::size_t>(params.q_subcarriers));
  for (auto& s : code.signs) s = static_cast<double>(rng.sign_pm1());
  return code;
}

ChannelRealization draw_rayleigh_channel(int q_subcarriers, RngStream& rng) {
  if (q_subcarriers <= 0)
    throw std::invalid_argument("draw_rayleigh_channel: q must be positive");
  ChannelRealization h;
  h.gains.resize(static_cast<std::size_t>(q_subcarriers));
  double power = 0.0;
  for (auto& g : h.gains) {
    g = rng.cgaussian();
    power += std::norm(g);
  }
  // Per-realization normalization: unit average subcarrier power.
  const double scale = std::sqrt(static_cast<double>(q_subcarriers) / power);
  for (auto& g : h.gains) g *= scale;
  return h;
}

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

SymbolBlock qam4_modulate(const std::vector<std::uint8_t>& bits) {
  if (bits.size() % 2 != 0)
    throw std::invalid_argument("qam4_modulate: bit count must be even");
  SymbolBlock block;
  block.bits = bits;
  block.symbols.resize(bits.size() / 2);
  for (std::size_t k = 0; k < block.symbols.size(); ++k) {
    const double re = bits[2 * k] ? -kInvSqrt2 : kInvSqrt2;
    const double im = bits[2 * k + 1] ? -kInvSqrt2 : kInvSqrt2;
    block.symbols[k] = {re, im};
  }
  return block;
}

std::vector<std::uint8_t> qam4_demodulate(const std::vector<cplx>& symbols) {
  std::vector<std::uint8_t> bits(symbols.size() * 2);
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    // Strict < 0 so an exact-zero coordinate maps to bit 0.
    bits[2 * k] = symbols[k].real() < 0.0 ? 1 : 0;
    bits[2 * k + 1] = symbols[k].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

}  // namespace trsec
