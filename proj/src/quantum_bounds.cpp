#include "pcrange/quantum_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pcrange/constants.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/parallel.hpp"
#include "pcrange/quadrature.hpp"

namespace pcrange {

namespace {

using constants::two_pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_non_negative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite and non-negative");
  }
}

void require_transmissivity(double kappa) {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("transmissivity must lie in [0, 1]");
}

}  // namespace

PulseShape gaussian_reference_pulse(double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("rms bandwidth must be positive");
  return ChirpedGaussian{1e3 * two_pi / bandwidth, bandwidth};
}

FluorescenceSpectrum gaussian_reference_spectrum(double bandwidth) {
  if (!(bandwidth > 0.0)) throw DomainError("rms bandwidth must be positive");
  return FluorescenceSpectrum(GaussianBrightness{1e-3, bandwidth}, 1e3 * two_pi / bandwidth);
}

double qfi_phase_tmsv(const ModePairState& m) {
  require_non_negative(m.brightness, "mode brightness");
  require_transmissivity(m.kappa);
  require_non_negative(m.noise_brightness, "background brightness");
  const double s = m.brightness;
  if (s == 0.0) return 0.0;
  return 4.0 * m.kappa * s * (s + 1.0) /
         (1.0 + m.noise_brightness * (2.0 * s + 1.0) + (1.0 - m.kappa) * s);
}

double qfi_phase_coherent(double mode_energy, double noise_brightness, double kappa) {
  require_non_negative(mode_energy, "mode energy");
  require_non_negative(noise_brightness, "background brightness");
  require_transmissivity(kappa);
  return 2.0 * kappa * mode_energy / (noise_brightness + 0.5);
}

double qfi_upper_bound(double n_s, double kappa, double n_b) {
  require_non_negative(n_s, "signal brightness");
  require_non_negative(n_b, "background brightness");
  require_transmissivity(kappa);
  if (kappa >= 1.0) throw DomainError("qfi_upper_bound: singular for kappa = 1");
  const double num = 4.0 * kappa * n_s * (kappa * n_s + (1.0 - kappa) * n_b + 1.0);
  const double den = (1.0 - kappa) * (kappa * n_s * (2.0 * n_b + 1.0) - kappa * n_b * (n_b + 1.0) +
                                      (n_b + 1.0) * (n_b + 1.0));
  return num / den;
}

double qfi_delay_quantum(const FluorescenceSpectrum& f, double kappa, double n_b, QfiMode mode) {
  require_transmissivity(kappa);
  require_non_negative(n_b, "background brightness");
  const double T = f.pulse_duration();
  if (mode == QfiMode::asymptotic) {
    if (!(n_b > 0.0)) throw DomainError("asymptotic QFI requires N_B > 0");
    return std::visit(
        overloaded{[&](const GaussianBrightness& g) {
                     const double snr = kappa * f.energy() / n_b;
                     return 4.0 * g.bandwidth * g.bandwidth * snr;
                   },
                   [&](const TabulatedBrightness& t) { return 4.0 * kappa * T * t.grid().moment(2) / n_b; }},
        f.profile());
  }

  auto per_mode = [&](double s) { return qfi_phase_tmsv({s, kappa, n_b}); };
  return std::visit(
      overloaded{[&](const GaussianBrightness& g) {
                   auto integrand = [&](double w) { return w * w * per_mode(f.brightness(w)); };
                   const auto r = integrate(integrand, 0.0, 12.0 * g.bandwidth, {1e-11, 0.0, 2000});
                   return T * 2.0 * r.value / two_pi;
                 },
                 [&](const TabulatedBrightness& t) {
                   const auto& w = t.grid().omega();
                   const auto& s = t.grid().density();
                   CompensatedSum sum;
                   for (std::size_t i = 0; i < w.size(); ++i) {
                     if (s[i] == 0.0) continue;
                     const double edge = (i == 0 || i + 1 == w.size()) ? 0.5 : 1.0;
                     sum.add(edge * w[i] * w[i] * per_mode(s[i]));
                   }
                   return T * sum.value() * t.grid().spacing() / two_pi;
                 }},
      f.profile());
}

double qfi_delay_classical(const RadarScenario& s, QfiMode mode) {
  const double dw = s.rms_bandwidth();
  if (mode == QfiMode::asymptotic) return 2.0 * dw * dw * s.snr();
  if (!s.has_triplet()) throw DomainError("full classical QFI requires (kappa, E, N_B)");
  return 2.0 * *s.kappa() * *s.energy() * dw * dw / (*s.noise_brightness() + 0.5);
}

double crb_quantum(const RadarScenario& s) {
  const auto flags = s.flags();
  if (!flags.low_transmissivity || !flags.high_background) {
    throw DomainError("crb_quantum: requires kappa << 1 and N_B >> 1 (use crb_quantum_full)");
  }
  if (!(s.snr() > 0.0)) throw DomainError("crb_quantum: SNR must be positive");
  return 1.0 / (2.0 * s.rms_bandwidth() * std::sqrt(s.snr()));
}

double crb_quantum_full(const FluorescenceSpectrum& f, double kappa, double n_b) {
  return 1.0 / std::sqrt(qfi_delay_quantum(f, kappa, n_b, QfiMode::full));
}

Probability pe_qcb_quantum(const RadarScenario& s, const FluorescenceSpectrum& f, double tau,
                           double exponent_scale) {
  const double gamma = quantum_spectral_mismatch(f, tau);
  return Probability(0.5 * std::exp(-exponent_scale * s.snr() * gamma));
}

double zzb_qcb_quantum(const DelayPrior& prior, const RadarScenario& s, const FluorescenceSpectrum& f,
                       const ZzbOptions& options, double exponent_scale) {
  return zzb(prior, [&](double tau) { return pe_qcb_quantum(s, f, tau, exponent_scale).value(); },
             options);
}

double zzb_qcb_quantum_low_snr_asymptote(const DelayPrior& prior, const RadarScenario& s) {
  return prior.sigma() * std::exp(-s.snr());
}

double zzb_qcb_quantum_high_snr_asymptote(const RadarScenario& s) {
  if (!(s.snr() > 0.0)) throw DomainError("high-SNR asymptote requires SNR > 0");
  return 1.0 / (2.0 * s.rms_bandwidth() * std::sqrt(s.snr()));
}

double threshold_snr_quantum(const DelayPrior& prior, double rms_bandwidth) {
  return 0.5 * inv_x_exp_neg_x(threshold_argument(prior, rms_bandwidth));
}

double entanglement_fisher_gain(const FluorescenceSpectrum& f, double kappa, double n_b) {
  const double dw = rms_bandwidth(f);
  const double snr = kappa * f.energy() / n_b;
  return qfi_delay_quantum(f, kappa, n_b, QfiMode::full) / (2.0 * dw * dw * snr);
}

double qcb_exponent_scale(const FluorescenceSpectrum& f, double kappa, double n_b) {
  const double half_gain = 0.5 * entanglement_fisher_gain(f, kappa, n_b);
  return std::clamp(half_gain * half_gain, 0.25, 1.0);
}

AdvantageReport advantage_report(const DelayPrior& prior, double bandwidth, std::optional<double> at_snr,
                                 double quantum_exponent_scale, const ZzbOptions& options) {
  AdvantageReport r;
  const double y = threshold_argument(prior, bandwidth);
  const double f_y = inv_x_exp_neg_x(y);
  r.snr_thresh_quantum = 0.5 * f_y;
  r.snr_thresh_classical = 2.0 * f_y;
  r.snr = at_snr.value_or(r.snr_thresh_quantum);
  r.quantum_exponent_scale = quantum_exponent_scale;

  const auto scenario = RadarScenario::from_snr(r.snr, bandwidth);
  const auto pulse = gaussian_reference_pulse(bandwidth);
  const auto spectrum = gaussian_reference_spectrum(bandwidth);
  r.zzb_classical_exact = zzb_classical(prior, scenario, pulse, PeModel::exact, options);
  r.zzb_classical_qcb = zzb_classical(prior, scenario, pulse, PeModel::qcb, options);
  r.zzb_quantum_qcb = zzb_qcb_quantum(prior, scenario, spectrum, options, quantum_exponent_scale);

  r.advantage_qcb_vs_qcb_db = amplitude_db(r.zzb_classical_qcb / r.zzb_quantum_qcb);
  r.advantage_exact_vs_qcb_db = amplitude_db(r.zzb_classical_exact / r.zzb_quantum_qcb);
  // 10 log10 e^{3f/4}
  r.asymptotic_advantage_db = 10.0 * (0.75 * f_y) / std::numbers::ln10;
  return r;
}

AlphaFit fit_advantage_alpha(double bandwidth, std::span<const double> delta_range_m,
                             AdvantageMeasure measure, unsigned workers) {
  if (delta_range_m.empty()) throw DomainError("alpha fit: empty range-uncertainty grid");
  AlphaFit fit;
  fit.delta_range_m.assign(delta_range_m.begin(), delta_range_m.end());
  const std::size_t n = fit.delta_range_m.size();
  fit.advantage_db.resize(n);
  std::vector<double> scale_db(n);  // 10 log10 (2 dw^2 sigma^2)^{3/4}

  parallel_for(n, workers, [&](std::size_t i) {
    const auto prior = DelayPrior::from_range_uncertainty(fit.delta_range_m[i]);
    const auto report = advantage_report(prior, bandwidth);
    fit.advantage_db[i] = measure == AdvantageMeasure::qcb_vs_qcb ? report.advantage_qcb_vs_qcb_db
                                                                  : report.advantage_exact_vs_qcb_db;
    const double ws = bandwidth * prior.sigma();
    scale_db[i] = 0.75 * power_db(2.0 * ws * ws);
  });

  CompensatedSum offset;
  for (std::size_t i = 0; i < n; ++i) offset.add(fit.advantage_db[i] - scale_db[i]);
  const double alpha_db = offset.value() / static_cast<double>(n);
  fit.alpha = from_power_db(alpha_db);

  fit.model_db.resize(n);
  CompensatedSum sq;
  for (std::size_t i = 0; i < n; ++i) {
    fit.model_db[i] = alpha_db + scale_db[i];
    const double d = fit.advantage_db[i] - fit.model_db[i];
    sq.add(d * d);
  }
  fit.rms_residual_db = std::sqrt(sq.value() / static_cast<double>(n));
  return fit;
}

}  // namespace pcrange
