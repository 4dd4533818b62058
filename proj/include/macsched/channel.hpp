#pragma once

#include <cmath>
#include <stdexcept>

namespace macsched {

/// Flat-fading Gaussian channel description. The power constant a() is the
/// noise-equivalent power W_tot*N0/h; it is always derived, never stored.
struct ChannelParams {
  double w_tot;  // bandwidth, Hz
  double n0;     // noise spectral density, W/Hz
  double h;      // path-loss gain

  static ChannelParams make(double w_tot, double n0, double h) {
    if (!(w_tot > 0.0)) throw std::invalid_argument("ChannelParams: w_tot must be > 0");
    if (!(n0 > 0.0)) throw std::invalid_argument("ChannelParams: n0 must be > 0");
    if (!(h > 0.0)) throw std::invalid_argument("ChannelParams: h must be > 0");
    return ChannelParams{w_tot, n0, h};
  }

  double a() const { return w_tot * n0 / h; }
};

/// Point-to-point capacity C(P) = W_tot * log2(1 + P/A) in bits/s.
inline double capacity(double p, const ChannelParams& cp) {
  if (p < 0.0) throw std::domain_error("capacity: negative power");
  constexpr double inv_ln2 = 1.4426950408889634;
  return cp.w_tot * inv_ln2 * std::log1p(p / cp.a());
}

}  // namespace macsched
