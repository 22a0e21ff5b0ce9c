#include "pcrange/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "pcrange/constants.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/quadrature.hpp"

namespace pcrange {

namespace {

using constants::pi;
using constants::two_pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

void require_delay(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw DomainError("delay offset must be finite and non-negative");
  }
}

double gaussian_mismatch(double bandwidth, double tau) {
  const double x = bandwidth * tau;
  return -2.0 * std::expm1(-0.5 * x * x);
}

double grid_rms(const SpectralGrid& grid) {
  if (grid.support_points() < 16) {
    throw ResolutionError("tabulated spectrum has fewer than 16 supported grid points");
  }
  const double rms = std::sqrt(grid.moment(2) / grid.moment(0));
  const double span = 8.0 * rms * (1.0 - 1e-6);
  if (grid.omega().front() > -span || grid.omega().back() < span) {
    throw ResolutionError("tabulated spectrum must span at least +-8 rms bandwidths");
  }
  return rms;
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralGrid

SpectralGrid::SpectralGrid(std::vector<double> omega, std::vector<double> density)
    : omega_(std::move(omega)), density_(std::move(density)) {
  if (omega_.size() != density_.size()) {
    throw DomainError("spectral grid: omega and density lengths differ");
  }
  if (omega_.size() < 2) {
    throw ResolutionError("spectral grid: need at least two samples");
  }
  spacing_ = (omega_.back() - omega_.front()) / static_cast<double>(omega_.size() - 1);
  if (!(spacing_ > 0.0)) {
    throw DomainError("spectral grid: omega must be strictly increasing");
  }
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (i > 0 && std::abs(omega_[i] - omega_[i - 1] - spacing_) > 1e-6 * spacing_) {
      throw DomainError("spectral grid: omega must be uniformly spaced");
    }
    if (!(density_[i] >= 0.0) || !std::isfinite(density_[i])) {
      throw DomainError("spectral grid: densities must be finite and non-negative");
    }
  }
}

double SpectralGrid::moment(int k) const {
  double sum = 0.0;
  const std::size_t n = omega_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const double weight = k == 0 ? 1.0 : std::pow(omega_[i], k);
    sum += w * weight * density_[i];
  }
  return sum * spacing_ / two_pi;
}

double SpectralGrid::mismatch_integral(double tau) const {
  const double h = spacing_;
  const std::size_t n = omega_.size();
  const double m0 = moment(0);
  const double ht = h * tau;

  double cos_part = 0.0;
  if (ht <= pi) {
    // Trapezoid is spectrally accurate for smooth, decayed densities until
    // the first alias at tau = 2pi/h comes into range.
    for (std::size_t i = 0; i < n; ++i) {
      const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
      cos_part += w * density_[i] * std::cos(omega_[i] * tau);
    }
    cos_part *= h;
  } else {
    // Exact integral of the piecewise-linear interpolant against cos(w tau):
    // interior hats contribute h sinc^2(h tau/2) cos(w_k tau); the two
    // half-hats at the ends are integrated in closed form.
    const double half = 0.5 * ht;
    const double sinc = std::sin(half) / half;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      cos_part += density_[i] * std::cos(omega_[i] * tau);
    }
    cos_part *= h * sinc * sinc;
    const std::complex<double> i_unit(0.0, 1.0);
    const std::complex<double> edge =
        i_unit / tau + (1.0 - std::exp(i_unit * ht)) / (h * tau * tau);
    cos_part += density_.front() * std::real(std::exp(i_unit * (omega_.front() * tau)) * edge);
    cos_part += density_.back() * std::real(std::exp(i_unit * (omega_.back() * tau)) * std::conj(edge));
  }
  return std::clamp(2.0 * m0 - 2.0 * cos_part / two_pi, 0.0, 4.0 * m0);
}

std::size_t SpectralGrid::support_points() const {
  return static_cast<std::size_t>(
      std::count_if(density_.begin(), density_.end(), [](double d) { return d > 0.0; }));
}

// ---------------------------------------------------------------------------
// Spectra

TabulatedSpectrum::TabulatedSpectrum(std::vector<double> omega, std::vector<double> power_density)
    : grid_(std::move(omega), std::move(power_density)) {
  const double norm = grid_.moment(0);
  if (std::abs(norm - 1.0) > 1e-6) {
    throw DomainError("tabulated pulse spectrum must satisfy int dw/2pi |S|^2 = 1 (got " +
                      std::to_string(norm) + ")");
  }
}

TabulatedBrightness::TabulatedBrightness(std::vector<double> omega, std::vector<double> brightness)
    : grid_(std::move(omega), std::move(brightness)) {
  if (!(grid_.moment(0) > 0.0)) {
    throw DomainError("tabulated brightness must have positive total photon number");
  }
}

FluorescenceSpectrum::FluorescenceSpectrum(Profile profile, double pulse_duration_s)
    : profile_(std::move(profile)), duration_(pulse_duration_s) {
  require_positive(duration_, "pulse duration");
  if (const auto* g = std::get_if<GaussianBrightness>(&profile_)) {
    require_positive(g->n_s, "signal brightness N_S");
    require_positive(g->bandwidth, "rms bandwidth");
  }
}

double FluorescenceSpectrum::brightness(double omega) const {
  return std::visit(
      overloaded{
          [omega](const GaussianBrightness& g) {
            const double x = omega / g.bandwidth;
            return std::sqrt(two_pi) * g.n_s * std::exp(-0.5 * x * x);
          },
          [omega](const TabulatedBrightness& t) {
            const auto& w = t.grid().omega();
            const auto& d = t.grid().density();
            if (omega <= w.front() || omega >= w.back()) {
              return omega == w.front() ? d.front() : omega == w.back() ? d.back() : 0.0;
            }
            const double pos = (omega - w.front()) / t.grid().spacing();
            const auto i = std::min(static_cast<std::size_t>(pos), w.size() - 2);
            const double frac = pos - static_cast<double>(i);
            return d[i] + frac * (d[i + 1] - d[i]);
          }},
      profile_);
}

double FluorescenceSpectrum::peak_brightness() const {
  return std::visit(overloaded{[](const GaussianBrightness& g) { return g.n_s / std::sqrt(two_pi); },
                               [](const TabulatedBrightness& t) {
                                 const auto& d = t.grid().density();
                                 return *std::max_element(d.begin(), d.end()) / two_pi;
                               }},
                    profile_);
}

double FluorescenceSpectrum::energy() const {
  return std::visit(
      overloaded{[this](const GaussianBrightness& g) { return g.n_s * g.bandwidth * duration_; },
                 [this](const TabulatedBrightness& t) { return duration_ * t.grid().moment(0); }},
      profile_);
}

double FluorescenceSpectrum::time_bandwidth() const { return rms_bandwidth(*this) * duration_; }

bool FluorescenceSpectrum::long_pulse() const { return time_bandwidth() >= 20.0 * two_pi; }

// ---------------------------------------------------------------------------
// Bandwidths and mismatch

double rms_bandwidth(const PulseShape& pulse) {
  return std::visit(
      overloaded{
          [](const ChirpedGaussian& p) {
            require_positive(p.chirp_bandwidth, "chirp bandwidth");
            return p.chirp_bandwidth;
          },
          [](const TransformLimitedGaussian& p) {
            require_positive(p.duration_s, "pulse duration");
            return 0.5 / p.duration_s;
          },
          [](const Rectangular&) -> double {
            throw UnsupportedError("rectangular pulse has a divergent second spectral moment");
          },
          [](const TabulatedSpectrum& p) { return grid_rms(p.grid()); }},
      pulse);
}

double rms_bandwidth(const FluorescenceSpectrum& spectrum) {
  return std::visit(overloaded{[](const GaussianBrightness& g) { return g.bandwidth; },
                               [](const TabulatedBrightness& t) { return grid_rms(t.grid()); }},
                    spectrum.profile());
}

double numeric_rms_bandwidth(const PulseShape& pulse) {
  auto gaussian = [](double duration, double chirp) {
    require_positive(duration, "pulse duration");
    // |s'(t)|^2 = t^2 (1/4T^4 + B^2/T^2) |s(t)|^2
    const double coeff = 1.0 / (4.0 * duration * duration * duration * duration) +
                         chirp * chirp / (duration * duration);
    const double norm = 1.0 / std::sqrt(two_pi * duration * duration);
    auto integrand = [=](double t) {
      return coeff * t * t * norm * std::exp(-t * t / (2.0 * duration * duration));
    };
    const auto r = integrate(integrand, -12.0 * duration, 12.0 * duration, {1e-12, 0.0, 2000});
    return std::sqrt(r.value);
  };
  return std::visit(
      overloaded{[&](const ChirpedGaussian& p) { return gaussian(p.duration_s, p.chirp_bandwidth); },
                 [&](const TransformLimitedGaussian& p) { return gaussian(p.duration_s, 0.0); },
                 [](const Rectangular&) -> double {
                   throw UnsupportedError("rectangular pulse has a divergent second spectral moment");
                 },
                 [](const TabulatedSpectrum& p) { return grid_rms(p.grid()); }},
      pulse);
}

double spectral_mismatch(const PulseShape& pulse, double tau) {
  require_delay(tau);
  return std::visit(
      overloaded{[tau](const ChirpedGaussian& p) {
                   require_positive(p.chirp_bandwidth, "chirp bandwidth");
                   return gaussian_mismatch(p.chirp_bandwidth, tau);
                 },
                 [tau](const TransformLimitedGaussian& p) {
                   require_positive(p.duration_s, "pulse duration");
                   return gaussian_mismatch(0.5 / p.duration_s, tau);
                 },
                 [](const Rectangular&) -> double {
                   throw UnsupportedError(
                       "spectral mismatch is not provided for rectangular pulses; use the "
                       "closed-form rectangular error probabilities");
                 },
                 [tau](const TabulatedSpectrum& p) {
                   return p.grid().mismatch_integral(tau) / p.grid().moment(0);
                 }},
      pulse);
}

double quantum_spectral_mismatch(const FluorescenceSpectrum& spectrum, double tau) {
  require_delay(tau);
  return std::visit(overloaded{[tau](const GaussianBrightness& g) {
                                 return gaussian_mismatch(g.bandwidth, tau);
                               },
                               [tau](const TabulatedBrightness& t) {
                                 return t.grid().mismatch_integral(tau) / t.grid().moment(0);
                               }},
                    spectrum.profile());
}

std::complex<double> pulse_value(const PulseShape& pulse, double t) {
  return std::visit(
      overloaded{[t](const ChirpedGaussian& p) {
                   const double T = p.duration_s;
                   require_positive(T, "pulse duration");
                   const double amp = std::pow(two_pi * T * T, -0.25) * std::exp(-t * t / (4.0 * T * T));
                   return std::polar(amp, p.chirp_bandwidth * t * t / (2.0 * T));
                 },
                 [t](const TransformLimitedGaussian& p) {
                   const double T = p.duration_s;
                   require_positive(T, "pulse duration");
                   return std::complex<double>(
                       std::pow(two_pi * T * T, -0.25) * std::exp(-t * t / (4.0 * T * T)), 0.0);
                 },
                 [t](const Rectangular& p) {
                   require_positive(p.duration_s, "pulse duration");
                   const bool inside = t >= 0.0 && t <= p.duration_s;
                   return std::complex<double>(inside ? 1.0 / std::sqrt(p.duration_s) : 0.0, 0.0);
                 },
                 [](const TabulatedSpectrum&) -> std::complex<double> {
                   throw UnsupportedError("tabulated spectra have no time-domain representation");
                 }},
      pulse);
}

// ---------------------------------------------------------------------------
// Two-column spectrum files

SpectrumTable parse_spectrum_table(std::string_view text) {
  SpectrumTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double omega = 0.0;
    double value = 0.0;
    if (!(fields >> omega)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw DomainError("spectrum table line " + std::to_string(line_no) + ": expected two numbers");
    }
    std::string extra;
    if (!(fields >> value) || (fields >> extra)) {
      throw DomainError("spectrum table line " + std::to_string(line_no) + ": expected two numbers");
    }
    table.omega.push_back(omega);
    table.density.push_back(value);
  }
  return table;
}

SpectrumTable load_spectrum_table(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw DomainError("cannot open spectrum file " + path.string());
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_spectrum_table(buf.str());
}

}  // namespace pcrange
