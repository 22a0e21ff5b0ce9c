#include "pcrange/incoherent.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "pcrange/errors.hpp"
#include "pcrange/parallel.hpp"
#include "pcrange/philox.hpp"

namespace pcrange {

namespace {

std::size_t half_points(const HeterodyneModel& m) {
  return static_cast<std::size_t>(std::ceil(m.span_durations * m.duration() / m.step()));
}

double grid_time(const HeterodyneModel& m, double true_delay, std::size_t k, std::size_t half) {
  return true_delay + (static_cast<double>(k) - static_cast<double>(half)) * m.step();
}

// Sampled s(t_m - tau) sqrt(dt), and optionally d/dtau of it.
struct Template {
  std::vector<std::complex<double>> s;
  std::vector<std::complex<double>> ds;
};

Template make_template(const HeterodyneModel& m, double true_delay, double tau, bool with_derivative) {
  const std::size_t half = half_points(m);
  const std::size_t n = 2 * half + 1;
  const double w = std::sqrt(m.step());
  const double T = m.duration();
  Template out;
  out.s.resize(n);
  if (with_derivative) out.ds.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double u = grid_time(m, true_delay, k, half) - tau;
    out.s[k] = w * pulse_value(m.pulse, u);
    // d/dtau s(u) = -s'(u) = u/(2T^2) s(u) for the unchirped Gaussian
    if (with_derivative) out.ds[k] = out.s[k] * (u / (2.0 * T * T));
  }
  return out;
}

std::complex<double> correlate(const NoiseRealization& r, double amplitude,
                               const std::vector<std::complex<double>>& signal,
                               const std::vector<std::complex<double>>& tmpl) {
  std::complex<double> z{};
  for (std::size_t k = 0; k < tmpl.size(); ++k) {
    z += (amplitude * signal[k] + r.samples[k]) * std::conj(tmpl[k]);
  }
  return z;
}

bool is_gaussian(const PulseShape& p) {
  return std::holds_alternative<TransformLimitedGaussian>(p) || std::holds_alternative<ChirpedGaussian>(p);
}

double envelope_slope(std::complex<double> z, std::complex<double> dz) {
  const double mag = std::abs(z);
  if (mag == 0.0) throw NumericError("matched-filter derivative undefined at |z| = 0");
  return (std::conj(z) * dz).real() / mag;
}

}  // namespace

double HeterodyneModel::duration() const {
  if (const auto* p = std::get_if<TransformLimitedGaussian>(&pulse)) return p->duration_s;
  if (const auto* p = std::get_if<ChirpedGaussian>(&pulse)) return p->duration_s;
  throw UnsupportedError("heterodyne model: Monte Carlo needs a Gaussian pulse");
}

double HeterodyneModel::step() const { return dt_s > 0.0 ? dt_s : duration() / 50.0; }

void HeterodyneModel::validate() const {
  if (!(kappa >= 0.0 && kappa <= 1.0)) throw DomainError("heterodyne model: kappa must lie in [0, 1]");
  if (!(energy >= 0.0) || !std::isfinite(energy)) throw DomainError("heterodyne model: energy must be >= 0");
  if (!(noise_brightness >= 0.0) || !std::isfinite(noise_brightness)) {
    throw DomainError("heterodyne model: N_B must be >= 0");
  }
  if (!is_gaussian(pulse)) throw UnsupportedError("heterodyne model: Monte Carlo needs a Gaussian pulse");
  const double T = duration();
  if (!(T > 0.0)) throw DomainError("heterodyne model: pulse duration must be positive");
  if (dt_s < 0.0 || step() > T / 20.0 * (1.0 + 1e-12)) {
    throw DomainError("heterodyne model: grid step must satisfy 0 < dt <= T/20");
  }
  if (!(span_durations >= 10.0)) throw DomainError("heterodyne model: grid span must cover >= 10 T");
}

NoiseRealization draw_noise(const HeterodyneModel& model, double true_delay_s, std::uint64_t seed,
                            std::uint64_t index) {
  model.validate();
  const std::size_t n = 2 * half_points(model) + 1;
  NoiseRealization r{true_delay_s, std::vector<std::complex<double>>(n)};
  const double variance = model.noise_brightness + 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    r.samples[k] = complex_normal(seed, index, static_cast<std::uint32_t>(k), variance);
  }
  return r;
}

std::complex<double> matched_filter(const HeterodyneModel& model, const NoiseRealization& noise,
                                    double tau) {
  model.validate();
  const double d = noise.true_delay_s;
  const auto signal = make_template(model, d, d, false);
  if (noise.samples.size() != signal.s.size()) throw DomainError("noise realization does not match the grid");
  return correlate(noise, std::sqrt(model.kappa * model.energy), signal.s, make_template(model, d, tau, false).s);
}

double matched_filter_derivative(const HeterodyneModel& model, const NoiseRealization& noise, double tau,
                                 DerivativeMode mode, double h) {
  model.validate();
  const double d = noise.true_delay_s;
  const double amp = std::sqrt(model.kappa * model.energy);
  const auto signal = make_template(model, d, d, false);
  if (noise.samples.size() != signal.s.size()) throw DomainError("noise realization does not match the grid");
  if (mode == DerivativeMode::analytic) {
    if (!std::holds_alternative<TransformLimitedGaussian>(model.pulse)) {
      throw UnsupportedError("analytic derivative needs a transform-limited Gaussian pulse");
    }
    const auto t = make_template(model, d, tau, true);
    return envelope_slope(correlate(noise, amp, signal.s, t.s), correlate(noise, amp, signal.s, t.ds));
  }
  if (!(h > 0.0)) throw DomainError("central difference needs h > 0");
  const double zp = std::abs(correlate(noise, amp, signal.s, make_template(model, d, tau + h, false).s));
  const double zm = std::abs(correlate(noise, amp, signal.s, make_template(model, d, tau - h, false).s));
  if (std::abs(correlate(noise, amp, signal.s, make_template(model, d, tau, false).s)) == 0.0) {
    throw NumericError("matched-filter derivative undefined at |z| = 0");
  }
  return (zp - zm) / (2.0 * h);
}

McEstimate fisher_incoherent_mc(const HeterodyneModel& model, const MCConfig& cfg, double true_delay_s) {
  model.validate();
  if (cfg.samples < 1) throw DomainError("Monte Carlo needs samples >= 1");
  const bool analytic = cfg.derivative == DerivativeMode::analytic;
  if (analytic && !std::holds_alternative<TransformLimitedGaussian>(model.pulse)) {
    throw UnsupportedError("analytic derivative needs a transform-limited Gaussian pulse");
  }
  if (!analytic && !(cfg.h > 0.0)) throw DomainError("central difference needs h > 0");

  const double d = true_delay_s;
  const double amp = std::sqrt(model.kappa * model.energy);
  const double scale = 2.0 * amp / (model.noise_brightness + 1.0);
  const auto center = make_template(model, d, d, analytic);
  Template plus, minus;
  if (!analytic) {
    plus = make_template(model, d, d + cfg.h, false);
    minus = make_template(model, d, d - cfg.h, false);
  }

  std::vector<double> values(cfg.samples);
  parallel_for(cfg.samples, cfg.workers, [&](std::size_t i) {
    const auto noise = draw_noise(model, d, cfg.seed, i);
    const auto z = correlate(noise, amp, center.s, center.s);
    double slope = 0.0;
    if (analytic) {
      slope = envelope_slope(z, correlate(noise, amp, center.s, center.ds));
    } else {
      slope = (std::abs(correlate(noise, amp, center.s, plus.s)) -
               std::abs(correlate(noise, amp, center.s, minus.s))) / (2.0 * cfg.h);
    }
    const double score = bessel_i1_over_i0(scale * std::abs(z)) * scale * slope;
    values[i] = score * score;
  });

  CompensatedSum sum;
  for (double v : values) sum.add(v);
  const double n = static_cast<double>(cfg.samples);
  const double mean = sum.value() / n;
  CompensatedSum sq;
  for (double v : values) sq.add((v - mean) * (v - mean));

  McEstimate out;
  out.estimate = mean;
  out.samples = cfg.samples;
  out.std_error = cfg.samples > 1 ? std::sqrt(sq.value() / (n - 1.0) / n) : 0.0;
  if (out.std_error > 0.5 * out.estimate) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Monte Carlo not converged: std_error/estimate = %.3g with %llu samples",
                  out.estimate > 0.0 ? out.std_error / out.estimate : INFINITY,
                  static_cast<unsigned long long>(cfg.samples));
    out.warning = buf;
  }
  return out;
}

double fisher_coherent_heterodyne(const HeterodyneModel& model) {
  model.validate();
  const double dw = std::holds_alternative<TransformLimitedGaussian>(model.pulse)
                        ? rms_bandwidth(model.pulse)
                        : numeric_rms_bandwidth(model.pulse);
  return 2.0 * model.kappa * model.energy * dw * dw / (model.noise_brightness + 1.0);
}

namespace {

double rect_exponent(double duration, double kappa_energy, double noise_brightness, double tau) {
  if (!(duration > 0.0)) throw DomainError("rectangular pulse: duration must be positive");
  if (!(kappa_energy >= 0.0) || !std::isfinite(kappa_energy)) throw DomainError("kappa E must be >= 0");
  if (!(noise_brightness >= 0.0) || !std::isfinite(noise_brightness)) throw DomainError("N_B must be >= 0");
  if (!(tau >= 0.0)) throw DomainError("delay offset must be >= 0");
  return kappa_energy * std::min(tau, duration) / (duration * (noise_brightness + 1.0));
}

}  // namespace

Probability pe_incoherent_rect(double duration_s, double kappa_energy, double noise_brightness, double tau) {
  return Probability(0.5 * std::exp(-0.5 * rect_exponent(duration_s, kappa_energy, noise_brightness, tau)));
}

Probability pe_coherent_rect(double duration_s, double kappa_energy, double noise_brightness, double tau,
                             RectPeForm form) {
  const double a = rect_exponent(duration_s, kappa_energy, noise_brightness, tau);
  if (form == RectPeForm::exact) return gaussian_q(std::sqrt(a));
  return Probability(0.5 * std::exp(-0.5 * a));
}

}  // namespace pcrange
