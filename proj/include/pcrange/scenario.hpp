#pragma once

// Physical link front end: thermal background, radar-equation loss, the
// map from a W-band link to a dimensionless RadarScenario, and the
// advantage-versus-(range, pulse duration) contour.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrange/classical_bounds.hpp"
#include "pcrange/waveform.hpp"

namespace pcrange {

/// Planck occupation 1/(e^{hbar w0 / k_B T_B} - 1), photons/mode.
double planck_brightness(double carrier_rad_s, double noise_temp_k);

struct RadarLink {
  double carrier_rad_s = 0.0;      // w0
  double antenna_area_m2 = 0.0;    // A_R
  double cross_section_m2 = 0.0;   // target sigma
  double noise_temp_k = 0.0;       // T_B
  double range_m = 0.0;            // R
  double delta_range_m = 0.0;      // range uncertainty
  double pulse_duration_s = 0.0;   // T
  double rms_bandwidth = 0.0;      // dw, rad/s
  std::optional<double> signal_brightness;  // N_S, photons/mode

  /// Throws DomainError unless every physical field is positive and finite.
  void validate() const;
  /// R >= 10 sqrt(A_R).
  bool far_field() const;
  double wavelength_m() const;
  /// A_R / lambda^2.
  double antenna_gain() const;
  double noise_brightness() const { return planck_brightness(carrier_rad_s, noise_temp_k); }
  /// 2R/c.
  double round_trip_delay() const;
  DelayPrior delay_prior() const { return DelayPrior::from_range_uncertainty(delta_range_m); }
};

/// (G_T/4 pi R^2)(sigma A_R/4 pi R^2). Throws InfeasibleError if >= 1.
double roundtrip_transmissivity(const RadarLink& link);

/// Triplet scenario with E = N_S dw T, so SNR = kappa dw T N_S / N_B.
/// Needs link.signal_brightness.
RadarScenario link_to_scenario(const RadarLink& link);

/// N_S that puts the link at the requested SNR.
double solve_signal_brightness(const RadarLink& link, double snr);

/// Copy of `link` with N_S chosen so that link_to_scenario reproduces
/// scenario.snr().
RadarLink scenario_to_link(const RadarScenario& scenario, const RadarLink& link);

/// Gaussian source spectrum of the link (needs N_S).
FluorescenceSpectrum source_spectrum(const RadarLink& link);

struct ContourOptions {
  /// Range uncertainty as a fraction of R; nullopt keeps the template's
  /// delta_range_m in every cell.
  std::optional<double> range_uncertainty_fraction = 0.01;
  unsigned workers = 0;
  ZzbOptions zzb{};
};

struct ContourCell {
  double range_m = 0.0;
  double duration_s = 0.0;
  std::optional<double> advantage_db;  // QCB-vs-QCB at the quantum threshold
  std::string regime;                  // "low_brightness", "full_qfi" or "infeasible"
  double kappa = 0.0;
  double signal_brightness = 0.0;
  double snr = 0.0;
  double exponent_scale = 1.0;
  std::string diagnostic;  // why the cell is missing
};

struct AdvantageContour {
  std::vector<double> range_m;
  std::vector<double> duration_s;
  std::vector<ContourCell> cells;  // row-major: range outer, duration inner

  const ContourCell& at(std::size_t range_index, std::size_t duration_index) const {
    return cells[range_index * duration_s.size() + duration_index];
  }
  /// One contour_row curve per range; missing cells are omitted and listed
  /// in the row metadata.
  std::vector<BoundCurve> rows() const;
};

/// For each (R, T): set the range uncertainty, solve N_S for SNR at the
/// quantum threshold and report the QCB-vs-QCB advantage. Cells outside the
/// low-brightness regime scale the quantum exponent by
/// qcb_exponent_scale(). Infeasible cells are marked, not fatal.
AdvantageContour advantage_contour(const RadarLink& link_template, std::span<const double> range_grid,
                                   std::span<const double> duration_grid, const ContourOptions& options = {});

/// Flat "key = value" link description. Every key is optional here; see
/// resolve_link() for defaults.
struct LinkConfig {
  std::optional<double> carrier_hz;
  std::optional<double> antenna_area_m2;
  std::optional<double> cross_section_m2;
  std::optional<double> noise_temp_k;
  std::optional<double> range_m;
  std::optional<double> range_uncertainty_m;
  std::optional<double> range_uncertainty_fraction;
  std::optional<double> pulse_duration_s;
  std::optional<double> rms_bandwidth_hz;
  std::optional<double> signal_brightness;

  /// Fields set in `over` replace ours.
  void merge(const LinkConfig& over);
};

/// '#' starts a comment; blank lines are skipped; unknown keys, malformed
/// lines or non-numeric values throw DomainError naming the line.
LinkConfig parse_link_config(std::string_view text);
LinkConfig load_link_config(const std::filesystem::path& path);

/// Builds a RadarLink. Defaults: 100 GHz carrier, 1 m^2 antenna, 0.01 m^2
/// target, 150 K, range uncertainty R/100. Range, pulse duration and rms
/// bandwidth are required (DomainError otherwise) unless require_geometry is
/// false, in which case missing range/duration become 1 m / 1 s
/// placeholders for callers that sweep them.
RadarLink resolve_link(const LinkConfig& config, bool require_geometry = true);

}  // namespace pcrange
