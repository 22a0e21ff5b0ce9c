#pragma once

// Accuracy limits of the coherent-state (classical) pulse-compression radar:
// Cramer-Rao bound, two-delay error probabilities, the Ziv-Zakai bound and
// its asymptotes, and the threshold SNR at which they meet.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcrange/specfun.hpp"
#include "pcrange/waveform.hpp"

namespace pcrange {

/// 10 log10 for power-like ratios (SNR, mean-squared accuracy).
double power_db(double ratio);
/// 20 log10 for amplitude-like ratios (rms accuracy).
double amplitude_db(double ratio);
double from_power_db(double db);

struct RegimeFlags {
  bool low_transmissivity = false;  // kappa << 1 (kappa <= 0.01)
  bool high_background = false;     // N_B >> 1 (N_B >= 10)
};

/// Dimensionless operating point. Built either from an SNR alone (the
/// kappa << 1, N_B >> 1 regime is then assumed) or from the physical triplet
/// (kappa, E, N_B), in which case snr = kappa E / N_B.
class RadarScenario {
 public:
  static RadarScenario from_snr(double snr, double rms_bandwidth);
  static RadarScenario from_triplet(double kappa, double energy, double noise_brightness,
                                    double rms_bandwidth);

  double snr() const { return snr_; }
  double rms_bandwidth() const { return bandwidth_; }
  bool has_triplet() const { return kappa_.has_value(); }
  std::optional<double> kappa() const { return kappa_; }
  std::optional<double> energy() const { return energy_; }
  std::optional<double> noise_brightness() const { return noise_; }
  RegimeFlags flags() const { return flags_; }

 private:
  RadarScenario() = default;
  double snr_ = 0.0;
  double bandwidth_ = 0.0;
  std::optional<double> kappa_;
  std::optional<double> energy_;
  std::optional<double> noise_;
  RegimeFlags flags_;
};

/// Uniform prior on [offset, offset + width] for the range delay.
class DelayPrior {
 public:
  explicit DelayPrior(double width_s, double offset_s = 0.0);
  /// Width 2 dR / c for a range uncertainty dR in meters.
  static DelayPrior from_range_uncertainty(double delta_range_m);

  double width() const { return width_; }
  double offset() const { return offset_; }
  double sigma() const;

 private:
  double width_;
  double offset_;
};

enum class CurveKind { crb, zzb_exact, zzb_qcb, asymptote_low, asymptote_high, advantage, contour_row };
std::string to_string(CurveKind kind);

/// Sampled bound: strictly increasing abscissa, finite ordinate.
struct BoundCurve {
  CurveKind kind = CurveKind::crb;
  std::string abscissa_unit;
  std::string ordinate_unit;
  std::vector<double> abscissa;
  std::vector<double> ordinate;
  std::map<std::string, std::string> metadata;

  /// Throws DomainError when the invariants above do not hold.
  void validate() const;
};

/// 1/(dw sqrt(2 kappa E/(N_B + 1/2))); with an SNR-only scenario falls back
/// to 1/(dw sqrt(2 SNR)).
double crb_classical(const RadarScenario& scenario);

/// Q(sqrt(SNR gamma(tau')/2)).
Probability pe_exact(const RadarScenario& scenario, const PulseShape& pulse, double tau);
/// exp(-SNR gamma(tau')/4)/2, never below pe_exact.
Probability pe_chernoff(const RadarScenario& scenario, const PulseShape& pulse, double tau);

struct ZzbOptions {
  double rel_tol = 1e-8;
  std::size_t max_intervals = 20000;
  /// Lower end of the log-spaced starting mesh as a fraction of the prior
  /// width; the integrand concentrates near zero at high SNR.
  double mesh_floor = 1e-10;
  std::size_t mesh_panels = 80;
};

/// sqrt(int_0^dtau tau'(1 - tau'/dtau) Pe(tau') dtau'). Throws NumericError
/// (with the achieved error estimate) if the quadrature does not converge.
double zzb(const DelayPrior& prior, const std::function<double(double)>& pe,
           const ZzbOptions& options = {});

enum class PeModel { exact, qcb };
std::string to_string(PeModel model);

/// zzb() with the classical radar's exact or Chernoff error probability.
double zzb_classical(const DelayPrior& prior, const RadarScenario& scenario,
                     const PulseShape& pulse, PeModel model, const ZzbOptions& options = {});

/// Low-SNR asymptotes: sqrt(dtau^2/6 Q(sqrt SNR)) (exact) and
/// sigma e^{-SNR/4} (qcb).
double zzb_low_snr_asymptote(const DelayPrior& prior, const RadarScenario& scenario, PeModel model);
/// High-SNR asymptotes: crb_classical (exact) and sqrt(2) crb_classical (qcb).
double zzb_high_snr_asymptote(const RadarScenario& scenario, PeModel model);

/// 1/(2 dw^2 sigma^2), the argument of the threshold formulas; throws
/// InfeasibleError when it exceeds 1/e.
double threshold_argument(const DelayPrior& prior, double rms_bandwidth);
/// 2 f(1/(2 dw^2 sigma^2)), f the inverse of x e^{-x} on x >= 1.
double threshold_snr_classical(const DelayPrior& prior, double rms_bandwidth);

}  // namespace pcrange
