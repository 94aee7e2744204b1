#include "trsec/waveform.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace trsec {

namespace {

void require_length(const char* who, std::size_t got, std::size_t want) {
  if (got != want)
    throw std::invalid_argument(std::string(who) + ": length " +
                                std::to_string(got) + ", expected " +
                                std::to_string(want));
}

}  // namespace

std::vector<cplx> spread(const SpreadingCode& code, const std::vector<cplx>& x,
                         int bor) {
  const std::size_t n = x.size();
  const std::size_t q = code.signs.size();
  require_length("spread", q, n * static_cast<std::size_t>(bor));
  const double scale = 1.0 / std::sqrt(static_cast<double>(bor));
  std::vector<cplx> out(q);
  for (std::size_t i = 0; i < static_cast<std::size_t>(bor); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = i * n + k;
      out[idx] = scale * code.signs[idx] * x[k];
    }
  return out;
}

std::vector<cplx> despread(const SpreadingCode& code,
                           const std::vector<cplx>& y, int bor) {
  const std::size_t q = code.signs.size();
  require_length("despread", y.size(), q);
  const std::size_t n = q / static_cast<std::size_t>(bor);
  const double scale = 1.0 / std::sqrt(static_cast<double>(bor));
  std::vector<cplx> out(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < static_cast<std::size_t>(bor); ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t idx = i * n + k;
      out[k] += scale * code.signs[idx] * y[idx];
    }
  return out;
}

std::vector<cplx> precode_tr(const ChannelRealization& h,
                             const std::vector<cplx>& x) {
  require_length("precode_tr", x.size(), h.gains.size());
  std::vector<cplx> out(x.size());
  for (std::size_t qi = 0; qi < x.size(); ++qi)
    out[qi] = std::conj(h.gains[qi]) * x[qi];
  return out;
}

AnVector synth_an(const SpreadingCode& code, const ChannelRealization& h_b,
                  const SystemParams& params, RngStream& rng) {
  if (params.bor < 2)
    throw std::invalid_argument("synth_an: bor must be >= 2 (no null space)");
  const std::size_t q = static_cast<std::size_t>(params.q_subcarriers);
  const std::size_t n = static_cast<std::size_t>(params.n_symbols);
  const std::size_t u = static_cast<std::size_t>(params.bor);
  require_length("synth_an/code", code.signs.size(), q);
  require_length("synth_an/channel", h_b.gains.size(), q);

  AnVector an;
  an.w.assign(q, cplx{0.0, 0.0});

  for (std::size_t k = 0; k < n; ++k) {
    // Pick the pivot before drawing so free entries land deterministically.
    std::size_t pivot = u - 1;
    if (std::abs(h_b.gains[pivot * n + k]) < kAnPivotFloor) {
      double best = -1.0;
      for (std::size_t i = 0; i < u; ++i) {
        const double mag = std::abs(h_b.gains[i * n + k]);
        if (mag > best) {
          best = mag;
          pivot = i;
        }
      }
      if (best < kAnPivotFloor)
        throw DegenerateChannel("synth_an: all taps in group " +
                                std::to_string(k) + " below pivot floor");
    }
    cplx acc{0.0, 0.0};
    for (std::size_t i = 0; i < u; ++i) {
      if (i == pivot) continue;
      const std::size_t idx = i * n + k;
      an.w[idx] = rng.cgaussian();
      acc += code.signs[idx] * h_b.gains[idx] * an.w[idx];
    }
    const std::size_t pidx = pivot * n + k;
    an.w[pidx] = -acc / (code.signs[pidx] * h_b.gains[pidx]);
  }

  // Exact power normalization: mean per-subcarrier AN power == sigma2_an.
  double power = 0.0;
  for (const auto& w : an.w) power += std::norm(w);
  const double scale =
      std::sqrt(params.sigma2_an * static_cast<double>(q) / power);
  for (auto& w : an.w) w *= scale;
  return an;
}

TxFrame assemble_tx(double alpha, const std::vector<cplx>& precoded,
                    const AnVector& w) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument("assemble_tx: alpha must lie in [0,1]");
  require_length("assemble_tx", w.w.size(), precoded.size());
  const double a = std::sqrt(alpha);
  const double b = std::sqrt(1.0 - alpha);
  TxFrame tx;
  tx.x.resize(precoded.size());
  for (std::size_t qi = 0; qi < precoded.size(); ++qi)
    tx.x[qi] = a * precoded[qi] + b * w.w[qi];
  return tx;
}

std::vector<cplx> apply_channel_awgn(const ChannelRealization& h,
                                     const std::vector<cplx>& tx,
                                     double sigma2, RngStream& rng) {
  require_length("apply_channel_awgn", tx.size(), h.gains.size());
  if (sigma2 < 0.0)
    throw std::invalid_argument("apply_channel_awgn: sigma2 must be >= 0");
  std::vector<cplx> out(tx.size());
  const double sd = std::sqrt(sigma2);
  for (std::size_t qi = 0; qi < tx.size(); ++qi) {
    out[qi] = h.gains[qi] * tx[qi];
    if (sd > 0.0) out[qi] += sd * rng.cgaussian();
  }
  return out;
}

std::vector<double> bob_gains(const ChannelRealization& h_b, int bor) {
  const std::size_t n = h_b.gains.size() / static_cast<std::size_t>(bor);
  std::vector<double> k(n, 0.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(bor); ++i)
    for (std::size_t kk = 0; kk < n; ++kk)
      k[kk] += std::norm(h_b.gains[i * n + kk]);
  for (auto& v : k) v /= static_cast<double>(bor);
  return k;
}

std::vector<cplx> eve_cross_sums(const ChannelRealization& h_b,
                                 const ChannelRealization& h_e, int bor) {
  require_length("eve_cross_sums", h_e.gains.size(), h_b.gains.size());
  const std::size_t n = h_b.gains.size() / static_cast<std::size_t>(bor);
  std::vector<cplx> z(n, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < static_cast<std::size_t>(bor); ++i)
    for (std::size_t kk = 0; kk < n; ++kk) {
      const std::size_t idx = i * n + kk;
      z[kk] += h_e.gains[idx] * std::conj(h_b.gains[idx]);
    }
  return z;
}

RxObservation receive_bob(const SpreadingCode& code,
                          const ChannelRealization& h_b,
                          const std::vector<cplx>& rx, double alpha, int bor) {
  RxObservation obs;
  obs.despread = despread(code, rx, bor);
  if (alpha <= 0.0)
    throw SingularEqualizer("receive_bob: alpha == 0, no data component");
  const std::vector<double> k = bob_gains(h_b, bor);
  const double sa = std::sqrt(alpha);
  obs.equalized.resize(obs.despread.size());
  for (std::size_t kk = 0; kk < k.size(); ++kk) {
    const double gain = sa * k[kk];
    if (!(gain > kBobGainFloor))
      throw SingularEqualizer("receive_bob: ZF gain below floor at symbol " +
                              std::to_string(kk));
    obs.equalized[kk] = obs.despread[kk] / gain;
  }
  return obs;
}

RxObservation receive_eve(const SpreadingCode& code,
                          const ChannelRealization& h_b,
                          const ChannelRealization& h_e,
                          const std::vector<cplx>& rx, double alpha, int bor) {
  RxObservation obs;
  obs.despread = despread(code, rx, bor);
  const std::vector<cplx> z = eve_cross_sums(h_b, h_e, bor);
  const double sa = std::sqrt(alpha);
  const double inv_u = 1.0 / static_cast<double>(bor);
  obs.equalized.assign(obs.despread.size(), cplx{0.0, 0.0});
  for (std::size_t kk = 0; kk < z.size(); ++kk) {
    const cplx gain = sa * z[kk] * inv_u;
    if (alpha <= 0.0 || std::abs(z[kk]) * inv_u < kEveGainFloor) {
      if (obs.singular.empty()) obs.singular.assign(z.size(), 0);
      obs.singular[kk] = 1;
      continue;
    }
    obs.equalized[kk] = obs.despread[kk] / gain;
  }
  return obs;
}

double noise_variance_from_ebn0_db(double ebn0_db) {
  return 0.5 * std::pow(10.0, -ebn0_db / 10.0);
}

}  // namespace trsec
