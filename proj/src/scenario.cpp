#include "pcrange/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pcrange/constants.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/parallel.hpp"
#include "pcrange/quantum_bounds.hpp"

namespace pcrange {

using constants::pi;
using constants::two_pi;

double planck_brightness(double carrier_rad_s, double noise_temp_k) {
  if (!(carrier_rad_s > 0.0) || !std::isfinite(carrier_rad_s)) throw DomainError("carrier must be positive");
  if (!(noise_temp_k > 0.0) || !std::isfinite(noise_temp_k)) throw DomainError("noise temperature must be positive");
  const double x = constants::hbar * carrier_rad_s / (constants::boltzmann * noise_temp_k);
  return 1.0 / std::expm1(x);
}

void RadarLink::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string("radar link: ") + name + " must be positive");
  };
  positive(carrier_rad_s, "carrier");
  positive(antenna_area_m2, "antenna area");
  positive(cross_section_m2, "cross section");
  positive(noise_temp_k, "noise temperature");
  positive(range_m, "range");
  positive(delta_range_m, "range uncertainty");
  positive(pulse_duration_s, "pulse duration");
  positive(rms_bandwidth, "rms bandwidth");
  if (signal_brightness) positive(*signal_brightness, "signal brightness");
}

bool RadarLink::far_field() const { return range_m >= 10.0 * std::sqrt(antenna_area_m2); }

double RadarLink::wavelength_m() const { return two_pi * constants::speed_of_light / carrier_rad_s; }

double RadarLink::antenna_gain() const {
  const double lambda = wavelength_m();
  return antenna_area_m2 / (lambda * lambda);
}

double RadarLink::round_trip_delay() const { return 2.0 * range_m / constants::speed_of_light; }

double roundtrip_transmissivity(const RadarLink& link) {
  link.validate();
  const double spread = 4.0 * pi * link.range_m * link.range_m;
  const double kappa = (link.antenna_gain() / spread) * (link.cross_section_m2 * link.antenna_area_m2 / spread);
  if (kappa >= 1.0) {
    throw InfeasibleError("radar link: roundtrip transmissivity >= 1; target too close for the radar equation");
  }
  return kappa;
}

RadarScenario link_to_scenario(const RadarLink& link) {
  if (!link.signal_brightness) throw DomainError("radar link: signal brightness N_S not set");
  const double kappa = roundtrip_transmissivity(link);
  const double energy = *link.signal_brightness * link.rms_bandwidth * link.pulse_duration_s;
  return RadarScenario::from_triplet(kappa, energy, link.noise_brightness(), link.rms_bandwidth);
}

double solve_signal_brightness(const RadarLink& link, double snr) {
  if (!(snr > 0.0) || !std::isfinite(snr)) throw DomainError("target SNR must be positive");
  const double kappa = roundtrip_transmissivity(link);
  return snr * link.noise_brightness() / (kappa * link.rms_bandwidth * link.pulse_duration_s);
}

RadarLink scenario_to_link(const RadarScenario& scenario, const RadarLink& link) {
  RadarLink out = link;
  out.rms_bandwidth = scenario.rms_bandwidth();
  out.signal_brightness = solve_signal_brightness(out, scenario.snr());
  return out;
}

FluorescenceSpectrum source_spectrum(const RadarLink& link) {
  if (!link.signal_brightness) throw DomainError("radar link: signal brightness N_S not set");
  return FluorescenceSpectrum(GaussianBrightness{*link.signal_brightness, link.rms_bandwidth},
                              link.pulse_duration_s);
}

namespace {

void require_increasing(std::span<const double> grid, const char* name) {
  if (grid.empty()) throw DomainError(std::string("contour: empty ") + name + " grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw DomainError(std::string("contour: ") + name + " grid values must be positive");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw DomainError(std::string("contour: ") + name + " grid must be strictly increasing");
    }
  }
}

ContourCell evaluate_cell(RadarLink link, const ContourOptions& opt) {
  ContourCell cell;
  cell.range_m = link.range_m;
  cell.duration_s = link.pulse_duration_s;
  try {
    if (opt.range_uncertainty_fraction) link.delta_range_m = *opt.range_uncertainty_fraction * link.range_m;
    const auto prior = link.delay_prior();
    cell.kappa = roundtrip_transmissivity(link);
    cell.snr = threshold_snr_quantum(prior, link.rms_bandwidth);
    cell.signal_brightness = solve_signal_brightness(link, cell.snr);
    link.signal_brightness = cell.signal_brightness;

    const auto spectrum = source_spectrum(link);
    const double n_b = link.noise_brightness();
    if (spectrum.low_brightness()) {
      cell.regime = "low_brightness";
      cell.exponent_scale = 1.0;
    } else {
      cell.regime = "full_qfi";
      cell.exponent_scale = qcb_exponent_scale(spectrum, cell.kappa, n_b);
    }
    const auto report = advantage_report(prior, link.rms_bandwidth, cell.snr, cell.exponent_scale, opt.zzb);
    cell.advantage_db = report.advantage_qcb_vs_qcb_db;
  } catch (const InfeasibleError& e) {
    cell.regime = "infeasible";
    cell.advantage_db.reset();
    cell.diagnostic = e.what();
  }
  return cell;
}

}  // namespace

AdvantageContour advantage_contour(const RadarLink& link_template, std::span<const double> range_grid,
                                   std::span<const double> duration_grid, const ContourOptions& options) {
  require_increasing(range_grid, "range");
  require_increasing(duration_grid, "pulse duration");
  if (options.range_uncertainty_fraction && !(*options.range_uncertainty_fraction > 0.0)) {
    throw DomainError("contour: range uncertainty fraction must be positive");
  }
  RadarLink probe = link_template;
  probe.range_m = range_grid.front();
  probe.pulse_duration_s = duration_grid.front();
  if (options.range_uncertainty_fraction) probe.delta_range_m = *options.range_uncertainty_fraction * probe.range_m;
  probe.signal_brightness.reset();
  probe.validate();

  AdvantageContour out;
  out.range_m.assign(range_grid.begin(), range_grid.end());
  out.duration_s.assign(duration_grid.begin(), duration_grid.end());
  const std::size_t cols = out.duration_s.size();
  out.cells.resize(out.range_m.size() * cols);
  parallel_for(out.cells.size(), options.workers, [&](std::size_t i) {
    RadarLink link = probe;
    link.range_m = out.range_m[i / cols];
    link.pulse_duration_s = out.duration_s[i % cols];
    out.cells[i] = evaluate_cell(link, options);
  });
  return out;
}

std::vector<BoundCurve> AdvantageContour::rows() const {
  std::vector<BoundCurve> curves;
  for (std::size_t r = 0; r < range_m.size(); ++r) {
    BoundCurve c;
    c.kind = CurveKind::contour_row;
    c.abscissa_unit = "s";
    c.ordinate_unit = "dB";
    std::ostringstream range, missing;
    range.precision(9);
    range << range_m[r];
    c.metadata["range_m"] = range.str();
    missing.precision(9);
    for (std::size_t k = 0; k < duration_s.size(); ++k) {
      const auto& cell = at(r, k);
      if (cell.advantage_db) {
        c.abscissa.push_back(cell.duration_s);
        c.ordinate.push_back(*cell.advantage_db);
      } else {
        missing << (missing.tellp() > 0 ? " " : "") << cell.duration_s;
      }
    }
    if (missing.tellp() > 0) c.metadata["missing_duration_s"] = missing.str();
    curves.push_back(std::move(c));
  }
  return curves;
}

void LinkConfig::merge(const LinkConfig& over) {
  auto take = [](std::optional<double>& mine, const std::optional<double>& theirs) {
    if (theirs) mine = theirs;
  };
  take(carrier_hz, over.carrier_hz);
  take(antenna_area_m2, over.antenna_area_m2);
  take(cross_section_m2, over.cross_section_m2);
  take(noise_temp_k, over.noise_temp_k);
  take(range_m, over.range_m);
  take(range_uncertainty_m, over.range_uncertainty_m);
  take(range_uncertainty_fraction, over.range_uncertainty_fraction);
  take(pulse_duration_s, over.pulse_duration_s);
  take(rms_bandwidth_hz, over.rms_bandwidth_hz);
  take(signal_brightness, over.signal_brightness);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double>* config_slot(LinkConfig& c, std::string_view key) {
  if (key == "carrier_hz") return &c.carrier_hz;
  if (key == "antenna_area_m2") return &c.antenna_area_m2;
  if (key == "cross_section_m2") return &c.cross_section_m2;
  if (key == "noise_temp_k") return &c.noise_temp_k;
  if (key == "range_m") return &c.range_m;
  if (key == "range_uncertainty_m") return &c.range_uncertainty_m;
  if (key == "range_uncertainty_fraction") return &c.range_uncertainty_fraction;
  if (key == "pulse_duration_s") return &c.pulse_duration_s;
  if (key == "rms_bandwidth_hz") return &c.rms_bandwidth_hz;
  if (key == "signal_brightness") return &c.signal_brightness;
  return nullptr;
}

}  // namespace

LinkConfig parse_link_config(std::string_view text) {
  LinkConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = "link config line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw DomainError(where + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    auto* slot = config_slot(config, key);
    if (!slot) throw DomainError(where + ": unknown key '" + std::string(key) + "'");
    double v = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || end != value.data() + value.size() || !std::isfinite(v)) {
      throw DomainError(where + ": '" + std::string(value) + "' is not a number");
    }
    *slot = v;
  }
  return config;
}

LinkConfig load_link_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open link config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_link_config(buf.str());
}

RadarLink resolve_link(const LinkConfig& c, bool require_geometry) {
  auto required = [&](const std::optional<double>& v, const char* key, double placeholder) {
    if (v) return *v;
    if (!require_geometry && placeholder > 0.0) return placeholder;
    throw DomainError(std::string("link config: missing ") + key);
  };
  if (c.range_uncertainty_m && c.range_uncertainty_fraction) {
    throw DomainError("link config: give range_uncertainty_m or range_uncertainty_fraction, not both");
  }
  RadarLink link;
  link.carrier_rad_s = two_pi * c.carrier_hz.value_or(100e9);
  link.antenna_area_m2 = c.antenna_area_m2.value_or(1.0);
  link.cross_section_m2 = c.cross_section_m2.value_or(0.01);
  link.noise_temp_k = c.noise_temp_k.value_or(150.0);
  link.range_m = required(c.range_m, "range_m", 1.0);
  link.pulse_duration_s = required(c.pulse_duration_s, "pulse_duration_s", 1.0);
  link.rms_bandwidth = two_pi * required(c.rms_bandwidth_hz, "rms_bandwidth_hz", 0.0);
  link.delta_range_m = c.range_uncertainty_m.value_or(c.range_uncertainty_fraction.value_or(0.01) * link.range_m);
  link.signal_brightness = c.signal_brightness;
  link.validate();
  return link;
}

}  // namespace pcrange
