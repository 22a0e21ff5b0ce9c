#include "pcrange/classical_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "pcrange/constants.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/quadrature.hpp"

namespace pcrange {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

double power_db(double ratio) { return 10.0 * std::log10(ratio); }
double amplitude_db(double ratio) { return 20.0 * std::log10(ratio); }
double from_power_db(double db) { return std::pow(10.0, db / 10.0); }

// ---------------------------------------------------------------------------

RadarScenario RadarScenario::from_snr(double snr, double rms_bandwidth) {
  if (!(snr >= 0.0) || !std::isfinite(snr)) throw DomainError("SNR must be finite and non-negative");
  require_positive(rms_bandwidth, "rms bandwidth");
  RadarScenario s;
  s.snr_ = snr;
  s.bandwidth_ = rms_bandwidth;
  s.flags_ = {true, true};
  return s;
}

RadarScenario RadarScenario::from_triplet(double kappa, double energy, double noise_brightness,
                                          double rms_bandwidth) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw DomainError("transmissivity must lie in (0, 1]");
  require_positive(energy, "transmitted energy");
  if (!(noise_brightness >= 0.0) || !std::isfinite(noise_brightness)) {
    throw DomainError("background brightness must be finite and non-negative");
  }
  require_positive(rms_bandwidth, "rms bandwidth");
  RadarScenario s;
  s.kappa_ = kappa;
  s.energy_ = energy;
  s.noise_ = noise_brightness;
  s.bandwidth_ = rms_bandwidth;
  s.snr_ = noise_brightness > 0.0 ? kappa * energy / noise_brightness
                                  : std::numeric_limits<double>::infinity();
  s.flags_ = {kappa <= 0.01, noise_brightness >= 10.0};
  return s;
}

DelayPrior::DelayPrior(double width_s, double offset_s) : width_(width_s), offset_(offset_s) {
  require_positive(width_s, "delay prior width");
  if (!std::isfinite(offset_s)) throw DomainError("delay prior offset must be finite");
}

DelayPrior DelayPrior::from_range_uncertainty(double delta_range_m) {
  require_positive(delta_range_m, "range uncertainty");
  return DelayPrior(2.0 * delta_range_m / constants::speed_of_light);
}

double DelayPrior::sigma() const { return width_ / std::sqrt(12.0); }

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::crb: return "CRB";
    case CurveKind::zzb_exact: return "ZZB_exact";
    case CurveKind::zzb_qcb: return "ZZB_QCB";
    case CurveKind::asymptote_low: return "asymptote_low";
    case CurveKind::asymptote_high: return "asymptote_high";
    case CurveKind::advantage: return "advantage";
    case CurveKind::contour_row: return "contour_row";
  }
  return "unknown";
}

std::string to_string(PeModel model) { return model == PeModel::exact ? "exact" : "qcb"; }

void BoundCurve::validate() const {
  if (abscissa.size() != ordinate.size()) {
    throw DomainError("bound curve: abscissa and ordinate lengths differ");
  }
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (i > 0 && !(abscissa[i] > abscissa[i - 1])) {
      throw DomainError("bound curve: abscissa must be strictly increasing");
    }
    if (!std::isfinite(ordinate[i])) throw DomainError("bound curve: non-finite ordinate");
  }
}

// ---------------------------------------------------------------------------

double crb_classical(const RadarScenario& s) {
  const double dw = s.rms_bandwidth();
  if (s.has_triplet()) {
    const double eff = 2.0 * *s.kappa() * *s.energy() / (*s.noise_brightness() + 0.5);
    return 1.0 / (dw * std::sqrt(eff));
  }
  if (!s.flags().high_background) {
    throw DomainError("crb_classical: SNR-only scenario requires the N_B >> 1 regime");
  }
  return 1.0 / (dw * std::sqrt(2.0 * s.snr()));
}

Probability pe_exact(const RadarScenario& s, const PulseShape& pulse, double tau) {
  const double gamma = spectral_mismatch(pulse, tau);
  return gaussian_q(std::sqrt(0.5 * s.snr() * gamma));
}

Probability pe_chernoff(const RadarScenario& s, const PulseShape& pulse, double tau) {
  const double gamma = spectral_mismatch(pulse, tau);
  return Probability(0.5 * std::exp(-0.25 * s.snr() * gamma));
}

double zzb(const DelayPrior& prior, const std::function<double(double)>& pe, const ZzbOptions& options) {
  const double width = prior.width();
  auto integrand = [&](double tau) { return tau * (1.0 - tau / width) * pe(tau); };
  const auto mesh = log_mesh(width * options.mesh_floor, width, options.mesh_panels);
  const auto r = integrate_mesh(integrand, mesh, {options.rel_tol, 0.0, options.max_intervals});
  if (!r.converged) {
    std::ostringstream msg;
    msg << "zzb: quadrature did not converge (value " << r.value << ", error estimate "
        << r.error_estimate << ", " << r.intervals << " intervals, rel_tol " << options.rel_tol << ")";
    throw NumericError(msg.str());
  }
  return std::sqrt(std::max(0.0, r.value));
}

double zzb_classical(const DelayPrior& prior, const RadarScenario& s, const PulseShape& pulse,
                     PeModel model, const ZzbOptions& options) {
  if (model == PeModel::exact) {
    return zzb(prior, [&](double tau) { return pe_exact(s, pulse, tau).value(); }, options);
  }
  return zzb(prior, [&](double tau) { return pe_chernoff(s, pulse, tau).value(); }, options);
}

double zzb_low_snr_asymptote(const DelayPrior& prior, const RadarScenario& s, PeModel model) {
  if (model == PeModel::exact) {
    const double w = prior.width();
    return std::sqrt(w * w / 6.0 * gaussian_q(std::sqrt(s.snr())));
  }
  return prior.sigma() * std::exp(-0.25 * s.snr());
}

double zzb_high_snr_asymptote(const RadarScenario& s, PeModel model) {
  if (!(s.snr() > 0.0)) throw DomainError("high-SNR asymptote requires SNR > 0");
  const double crb = crb_classical(s);
  return model == PeModel::exact ? crb : std::numbers::sqrt2 * crb;
}

double threshold_argument(const DelayPrior& prior, double rms_bandwidth) {
  require_positive(rms_bandwidth, "rms bandwidth");
  const double ws = rms_bandwidth * prior.sigma();
  const double y = 1.0 / (2.0 * ws * ws);
  if (y > (1.0 + 1e-12) / std::numbers::e) {
    std::ostringstream msg;
    msg << "scenario too narrow: 2 dw^2 sigma_tau^2 = " << 1.0 / y
        << " must exceed e (delay uncertainty comparable to the resolution)";
    throw InfeasibleError(msg.str());
  }
  return std::min(y, 1.0 / std::numbers::e);
}

double threshold_snr_classical(const DelayPrior& prior, double rms_bandwidth) {
  return 2.0 * inv_x_exp_neg_x(threshold_argument(prior, rms_bandwidth));
}

}  // namespace pcrange
