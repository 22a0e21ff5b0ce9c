#pragma once

// Transmitted pulse shapes, the entangled source's fluorescence spectrum,
// rms bandwidths and the spectral-mismatch functional
//   gamma(tau') = int dw/2pi |S(w)|^2 |1 - e^{-i w tau'}|^2
// that every two-delay error probability is built from.

#include <complex>
#include <filesystem>
#include <string_view>
#include <variant>
#include <vector>

namespace pcrange {

/// (2 pi T^2)^{-1/4} exp(-t^2/4T^2 + i B t^2 / 2T): rms duration T, chirp
/// bandwidth B in rad/s. For B T >> 2 pi the spectrum is close to a Gaussian
/// of rms width B.
struct ChirpedGaussian {
  double duration_s;
  double chirp_bandwidth;  // rad/s
};

/// Unchirped Gaussian, rms bandwidth exactly 1/(2T).
struct TransformLimitedGaussian {
  double duration_s;
};

/// 1/sqrt(T_s) on [0, T_s].
struct Rectangular {
  double duration_s;
};

/// Uniformly sampled, even-indexed spectral density on an increasing grid.
/// Shared by both spectrum flavours below.
class SpectralGrid {
 public:
  SpectralGrid() = default;
  /// Requires a uniform, strictly increasing omega grid (relative spacing
  /// deviation <= 1e-6), non-negative finite densities and >= 2 points.
  SpectralGrid(std::vector<double> omega, std::vector<double> density);

  const std::vector<double>& omega() const { return omega_; }
  const std::vector<double>& density() const { return density_; }
  double spacing() const { return spacing_; }

  /// Trapezoid integral of w^k * density dw / 2pi, k in {0, 2}.
  double moment(int k) const;
  /// int dw/2pi density(w) * 2(1 - cos w tau) for the piecewise-linear
  /// interpolant, exact in tau (no aliasing at large tau).
  double mismatch_integral(double tau) const;
  /// Number of samples with non-zero density.
  std::size_t support_points() const;

 private:
  std::vector<double> omega_;
  std::vector<double> density_;
  double spacing_ = 0.0;
};

/// |S(w)|^2 in seconds sampled on a uniform grid; must satisfy
/// int dw/2pi |S|^2 = 1 to within 1e-6.
class TabulatedSpectrum {
 public:
  TabulatedSpectrum(std::vector<double> omega, std::vector<double> power_density);
  const SpectralGrid& grid() const { return grid_; }

 private:
  SpectralGrid grid_;
};

using PulseShape =
    std::variant<ChirpedGaussian, TransformLimitedGaussian, Rectangular, TabulatedSpectrum>;

/// S^(n)(w)/2pi = N_S e^{-w^2/2 dw^2} / sqrt(2 pi).
struct GaussianBrightness {
  double n_s;        // photons/mode
  double bandwidth;  // rms, rad/s
};

/// Per-mode brightness S^(n)(w) (dimensionless) on a uniform grid.
class TabulatedBrightness {
 public:
  TabulatedBrightness(std::vector<double> omega, std::vector<double> brightness);
  const SpectralGrid& grid() const { return grid_; }

 private:
  SpectralGrid grid_;
};

/// The entangled source's signal spectrum over a pulse of duration T.
class FluorescenceSpectrum {
 public:
  using Profile = std::variant<GaussianBrightness, TabulatedBrightness>;

  FluorescenceSpectrum(Profile profile, double pulse_duration_s);

  const Profile& profile() const { return profile_; }
  double pulse_duration() const { return duration_; }

  /// Per-mode brightness S^(n)(w).
  double brightness(double omega) const;
  /// max_w S^(n)(w) / 2pi.
  double peak_brightness() const;
  /// Transmitted photon number T int dw/2pi S^(n)(w).
  double energy() const;
  /// Time-bandwidth product rms_bandwidth * T.
  double time_bandwidth() const;
  /// peak_brightness() <= 0.1, where the low-brightness asymptotics hold.
  bool low_brightness() const { return peak_brightness() <= 0.1; }
  /// Time-bandwidth product >= 20 * 2pi.
  bool long_pulse() const;

 private:
  Profile profile_;
  double duration_;
};

/// rms bandwidth in rad/s. Rectangular pulses throw UnsupportedError;
/// tabulated grids with fewer than 16 supported points, or not spanning
/// +-8 rms widths, throw ResolutionError.
double rms_bandwidth(const PulseShape& pulse);
double rms_bandwidth(const FluorescenceSpectrum& spectrum);

/// rms bandwidth computed from the time-domain waveform, sqrt(int |s'(t)|^2 dt),
/// by quadrature. Available for the two Gaussian variants; for the chirped
/// pulse this exposes the exact value sqrt(B^2 + 1/4T^2) behind the B
/// approximation used elsewhere.
double numeric_rms_bandwidth(const PulseShape& pulse);

/// gamma(tau') for a transmitted pulse; in [0, 4], 0 at tau' = 0, -> 2.
double spectral_mismatch(const PulseShape& pulse, double tau);

/// Energy-normalized mismatch T int dw/2pi S^(n)(w)|1 - e^{-i w tau'}|^2 / E.
double quantum_spectral_mismatch(const FluorescenceSpectrum& spectrum, double tau);

/// Complex envelope s(t) in s^{-1/2}. TabulatedSpectrum throws
/// UnsupportedError.
std::complex<double> pulse_value(const PulseShape& pulse, double t);

/// Two whitespace-separated columns (omega in rad/s, density), '#' comments.
struct SpectrumTable {
  std::vector<double> omega;
  std::vector<double> density;
};
SpectrumTable parse_spectrum_table(std::string_view text);
SpectrumTable load_spectrum_table(const std::filesystem::path& path);

}  // namespace pcrange
