#pragma once

// Phase-incoherent heterodyne reception of the classical radar: Monte Carlo
// Fisher information of the envelope (|z|) statistic, and closed-form
// two-delay error probabilities for a rectangular pulse.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcrange/specfun.hpp"
#include "pcrange/waveform.hpp"

namespace pcrange {

/// Heterodyne record r_m = sqrt(kappa E) s_m(tau) + w_m on a uniform grid
/// with sample weight sqrt(dt), so sum |s_m|^2 ~ 1 and E|w_m|^2 = N_B + 1.
struct HeterodyneModel {
  double kappa = 0.0;
  double energy = 0.0;            // photons
  double noise_brightness = 0.0;  // N_B
  PulseShape pulse = TransformLimitedGaussian{1e-6};
  double dt_s = 0.0;              // 0 selects T/50
  double span_durations = 12.0;   // half-width of the grid in units of T

  /// Checks kappa in [0,1], E >= 0, N_B >= 0, a Gaussian pulse, dt <= T/20
  /// and span >= 10. Throws DomainError or UnsupportedError.
  void validate() const;
  double duration() const;
  double step() const;
};

/// Grid-sampled complex noise for one draw, aligned with the grid that
/// matched_filter() builds around `true_delay_s`.
struct NoiseRealization {
  double true_delay_s = 0.0;
  std::vector<std::complex<double>> samples;
};

/// Noise draw `index` of stream `seed`.
NoiseRealization draw_noise(const HeterodyneModel& model, double true_delay_s, std::uint64_t seed,
                            std::uint64_t index);

/// z(tau) = sum_m r_m s_m^*(tau).
std::complex<double> matched_filter(const HeterodyneModel& model, const NoiseRealization& noise,
                                    double tau);

enum class DerivativeMode { analytic, central_difference };

/// d|z(tau)|/dtau. Analytic: Re(z^* z')/|z| (transform-limited Gaussian
/// only); central difference uses step h. Throws NumericError when |z| = 0.
double matched_filter_derivative(const HeterodyneModel& model, const NoiseRealization& noise,
                                 double tau, DerivativeMode mode = DerivativeMode::analytic,
                                 double h = 0.0);

struct MCConfig {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  DerivativeMode derivative = DerivativeMode::analytic;
  double h = 0.0;  // central-difference step, seconds
  unsigned workers = 0;
};

struct McEstimate {
  double estimate = 0.0;   // s^-2
  double std_error = 0.0;  // s^-2
  std::uint64_t samples = 0;
  std::optional<std::string> warning;  // set when std_error/estimate > 0.5
};

/// Sample mean of (I1/I0(x) 2 sqrt(kappa E)/(N_B+1) d|z|/dtau)^2 with
/// x = 2 sqrt(kappa E)|z|/(N_B+1). Bit-identical for any worker count.
McEstimate fisher_incoherent_mc(const HeterodyneModel& model, const MCConfig& config,
                                double true_delay_s = 0.0);

/// 2 kappa E dw^2/(N_B + 1), the phase-coherent heterodyne Fisher information.
double fisher_coherent_heterodyne(const HeterodyneModel& model);

/// e^{-kE min(tau', T_s)/(2 T_s (N_B+1))}/2.
Probability pe_incoherent_rect(double duration_s, double kappa_energy, double noise_brightness,
                               double tau);

enum class RectPeForm { exact, chernoff };
/// Q(sqrt(kE min(tau', T_s)/(T_s (N_B+1)))) or the Chernoff form above.
Probability pe_coherent_rect(double duration_s, double kappa_energy, double noise_brightness,
                             double tau, RectPeForm form);

}  // namespace pcrange
