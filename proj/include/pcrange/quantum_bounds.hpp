#pragma once

// Accuracy limits of the entanglement-assisted (quantum illumination) radar:
// per-mode and delay quantum Fisher information, the lossy-channel upper
// bound, the QCB error probability, the quantum Ziv-Zakai bound, threshold
// SNRs and the quantum-vs-classical advantage figures.

#include <optional>
#include <span>
#include <vector>

#include "pcrange/classical_bounds.hpp"
#include "pcrange/waveform.hpp"

namespace pcrange {

/// Long-pulse Gaussian pulse and source spectrum of rms bandwidth dw. The
/// error probabilities depend on the shape alone, so the duration (1000
/// cycles of dw) and brightness (1e-3) are placeholders.
PulseShape gaussian_reference_pulse(double rms_bandwidth);
FluorescenceSpectrum gaussian_reference_spectrum(double rms_bandwidth);

/// One signal-idler Fourier mode pair after the target return.
struct ModePairState {
  double brightness;        // S = S^(n)(2 pi n / T), photons/mode
  double kappa;             // roundtrip transmissivity
  double noise_brightness;  // N_B
  double phase = 0.0;       // radians; the Fisher information does not depend on it
};

/// 4 kappa S (S + 1) / (1 + N_B (2S + 1) + (1 - kappa) S).
double qfi_phase_tmsv(const ModePairState& mode);

/// 2 kappa E_mode / (N_B + 1/2) for a coherent-state mode of energy E_mode.
double qfi_phase_coherent(double mode_energy, double noise_brightness, double kappa);

/// Maximum over transmitter states of the lossy, noisy phase Fisher
/// information at mean photon number N_S. kappa must be < 1.
double qfi_upper_bound(double n_s, double kappa, double noise_brightness);

enum class QfiMode { asymptotic, full };

/// Delay Fisher information (s^-2) of the entangled radar.
///   asymptotic: T int dw/2pi w^2 4 kappa S(w)/N_B  (= 4 dw^2 SNR for a Gaussian)
///   full:       T int dw/2pi w^2 qfi_phase_tmsv(S(w)), valid at any brightness
/// The modal sum is replaced by its continuum limit, which needs
/// spectrum.long_pulse().
double qfi_delay_quantum(const FluorescenceSpectrum& spectrum, double kappa,
                         double noise_brightness, QfiMode mode);

/// Delay Fisher information of the coherent-state radar:
/// 2 dw^2 SNR (asymptotic) or 2 kappa E dw^2/(N_B + 1/2) (full, needs the
/// triplet).
double qfi_delay_classical(const RadarScenario& scenario, QfiMode mode);

/// 1/(2 dw sqrt(SNR)), the low-brightness quantum CRB.
double crb_quantum(const RadarScenario& scenario);
/// 1/sqrt(qfi_delay_quantum(full)).
double crb_quantum_full(const FluorescenceSpectrum& spectrum, double kappa, double noise_brightness);

/// QCB error probability exp(-scale * SNR * gamma_Q(tau'))/2 with gamma_Q the
/// energy-normalized quantum mismatch. scale = 1 is the low-brightness
/// result; see qcb_exponent_scale() for brighter sources.
Probability pe_qcb_quantum(const RadarScenario& scenario, const FluorescenceSpectrum& spectrum,
                           double tau, double exponent_scale = 1.0);

/// Ziv-Zakai bound with the quantum QCB in place of the Helstrom error
/// probability ("ZZB-QCB").
double zzb_qcb_quantum(const DelayPrior& prior, const RadarScenario& scenario,
                       const FluorescenceSpectrum& spectrum, const ZzbOptions& options = {},
                       double exponent_scale = 1.0);

/// sigma e^{-SNR} and 1/(2 dw sqrt(SNR)).
double zzb_qcb_quantum_low_snr_asymptote(const DelayPrior& prior, const RadarScenario& scenario);
double zzb_qcb_quantum_high_snr_asymptote(const RadarScenario& scenario);

/// f(1/(2 dw^2 sigma^2))/2, a quarter of threshold_snr_classical.
double threshold_snr_quantum(const DelayPrior& prior, double rms_bandwidth);

/// Full-QFI delay information relative to the classical 2 dw^2 SNR: 2 for
/// dim sources, falling to 1 as the entanglement advantage disappears.
double entanglement_fisher_gain(const FluorescenceSpectrum& spectrum, double kappa,
                                double noise_brightness);
/// (gain/2)^2 clamped to [1/4, 1]: multiplies the quantum QCB exponent so
/// that it equals the classical Chernoff exponent when gain = 1 and the
/// low-brightness exponent when gain = 2.
double qcb_exponent_scale(const FluorescenceSpectrum& spectrum, double kappa, double noise_brightness);

struct AdvantageReport {
  double snr = 0.0;                   // evaluation point
  double snr_thresh_quantum = 0.0;
  double snr_thresh_classical = 0.0;
  double zzb_classical_exact = 0.0;   // seconds
  double zzb_classical_qcb = 0.0;
  double zzb_quantum_qcb = 0.0;
  double advantage_qcb_vs_qcb_db = 0.0;    // 10 log10 of mean-squared ratio
  double advantage_exact_vs_qcb_db = 0.0;
  double asymptotic_advantage_db = 0.0;    // 10 log10 e^{3f/4}
  double quantum_exponent_scale = 1.0;
  std::optional<double> alpha_fit;
};

/// Advantage figures for Gaussian pulse/spectrum of rms bandwidth dw, at
/// `at_snr` or (default) at the quantum threshold SNR.
AdvantageReport advantage_report(const DelayPrior& prior, double rms_bandwidth,
                                 std::optional<double> at_snr = std::nullopt,
                                 double quantum_exponent_scale = 1.0,
                                 const ZzbOptions& options = {});

enum class AdvantageMeasure { qcb_vs_qcb, exact_vs_qcb };

struct AlphaFit {
  double alpha = 0.0;
  std::vector<double> delta_range_m;
  std::vector<double> advantage_db;  // numeric, at each point's quantum threshold
  std::vector<double> model_db;      // 10 log10(alpha (2 dw^2 sigma^2)^{3/4})
  double rms_residual_db = 0.0;
};

/// Least-squares fit (in dB) of advantage = alpha (2 dw^2 sigma^2)^{3/4} over
/// range uncertainties. Points are evaluated in parallel; the reduction runs
/// in index order so the result does not depend on `workers`.
AlphaFit fit_advantage_alpha(double rms_bandwidth, std::span<const double> delta_range_m,
                             AdvantageMeasure measure = AdvantageMeasure::exact_vs_qcb,
                             unsigned workers = 0);

}  // namespace pcrange
