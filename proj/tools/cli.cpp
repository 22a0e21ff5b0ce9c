#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcrange/classical_bounds.hpp"
#include "pcrange/constants.hpp"
#include "pcrange/errors.hpp"
#include "pcrange/incoherent.hpp"
#include "pcrange/parallel.hpp"
#include "pcrange/quantum_bounds.hpp"
#include "pcrange/scenario.hpp"

namespace pcrange::cli {

namespace {

using constants::two_pi;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string echo(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

using Cell = std::variant<double, std::string>;

struct Table {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
};

void write_csv(const Table& t, std::ostream& os) {
  os << "# pcrange " << PCRANGE_VERSION << '\n';
  os << "# command = " << t.command << '\n';
  for (const auto& [k, v] : t.params) os << "# " << k << " = " << v << '\n';
  for (const auto& n : t.notes) os << "# note: " << n << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        os << fmt(*d);
      } else {
        os << std::get<std::string>(row[i]);
      }
    }
    os << '\n';
  }
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  return json(std::get<std::string>(c));
}

json header_json(const Table& t) {
  json j;
  j["tool"] = "pcrange";
  j["version"] = PCRANGE_VERSION;
  j["command"] = t.command;
  json p = json::object();
  for (const auto& [k, v] : t.params) p[k] = v;
  j["parameters"] = p;
  if (!t.notes.empty()) j["notes"] = t.notes;
  return j;
}

void write_json(const Table& t, std::ostream& os) {
  json j = header_json(t);
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  os << j.dump(2) << '\n';
}

struct Options {
  std::optional<double> rms_bandwidth_hz;
  std::optional<double> delta_r_m;
  std::optional<double> delta_tau_s;
  std::optional<double> snr_db;
  std::string snr_sweep;
  std::string config;
  std::string out;
  std::string format;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10000;
  unsigned workers = 0;

  // zzb
  std::string sidecar;
  // threshold
  std::string delta_r_sweep;
  // advantage
  bool alpha_fit = false;
  double alpha_min_m = 1e3;
  double alpha_max_m = 50e3;
  std::size_t alpha_points = 12;
  std::string alpha_measure = "exact_vs_qcb";
  // contour and link
  std::string range_sweep;
  std::string duration_sweep;
  std::optional<double> range_m;
  std::optional<double> pulse_duration_s;
  std::optional<double> range_uncertainty_fraction;
  std::optional<double> carrier_hz;
  std::optional<double> antenna_area_m2;
  std::optional<double> cross_section_m2;
  std::optional<double> noise_temp_k;
  // incoherent-mc
  double noise_brightness = 100.0;
  double kappa = 1e-3;
  double dt_fraction = 50.0;
  std::string derivative = "analytic";
  std::optional<double> fd_step_s;
};

LinkConfig link_from_flags(const Options& o) {
  LinkConfig c;
  c.rms_bandwidth_hz = o.rms_bandwidth_hz;
  c.range_uncertainty_m = o.delta_r_m;
  c.range_uncertainty_fraction = o.range_uncertainty_fraction;
  c.range_m = o.range_m;
  c.pulse_duration_s = o.pulse_duration_s;
  c.carrier_hz = o.carrier_hz;
  c.antenna_area_m2 = o.antenna_area_m2;
  c.cross_section_m2 = o.cross_section_m2;
  c.noise_temp_k = o.noise_temp_k;
  return c;
}

// Command line overrides the config file, which overrides defaults.
LinkConfig resolved_config(const Options& o) {
  LinkConfig c;
  if (!o.config.empty()) c = load_link_config(o.config);
  const LinkConfig flags = link_from_flags(o);
  if (flags.range_uncertainty_m) c.range_uncertainty_fraction.reset();
  if (flags.range_uncertainty_fraction) c.range_uncertainty_m.reset();
  c.merge(flags);
  return c;
}

double bandwidth_rad(const LinkConfig& c) {
  if (!c.rms_bandwidth_hz) throw DomainError("missing --rms-bandwidth-hz (or rms_bandwidth_hz in --config)");
  if (!(*c.rms_bandwidth_hz > 0.0)) throw DomainError("--rms-bandwidth-hz must be positive");
  return two_pi * *c.rms_bandwidth_hz;
}

DelayPrior prior_from(const Options& o, const LinkConfig& c) {
  if (o.delta_tau_s) return DelayPrior(*o.delta_tau_s);
  if (c.range_uncertainty_m) return DelayPrior::from_range_uncertainty(*c.range_uncertainty_m);
  if (c.range_uncertainty_fraction && c.range_m) {
    return DelayPrior::from_range_uncertainty(*c.range_uncertainty_fraction * *c.range_m);
  }
  throw DomainError("missing --delta-r-m or --delta-tau-s (or range_uncertainty_m in --config)");
}

std::vector<double> snr_points_db(const Options& o) {
  if (o.snr_db) return {*o.snr_db};
  if (o.snr_sweep.empty()) throw DomainError("missing --snr-db or --snr-sweep start:stop:points");
  return SweepSpec::parse(o.snr_sweep, SweepVariable::snr_db, SweepScale::linear).values();
}

void echo_prior(Table& t, const DelayPrior& prior) {
  t.params.emplace_back("delta_tau_s", echo(prior.width()));
  t.params.emplace_back("delta_r_m", echo(prior.width() * constants::speed_of_light / 2.0));
  t.params.emplace_back("sigma_tau_s", echo(prior.sigma()));
}

void echo_snr(Table& t, const Options& o) {
  if (o.snr_db) {
    t.params.emplace_back("snr_db", echo(*o.snr_db));
  } else {
    t.params.emplace_back("snr_sweep", o.snr_sweep);
  }
}

struct Outcome {
  ExitCode code = ExitCode::ok;
};

Outcome cmd_crb(const Options& o, Table& t) {
  const auto c = resolved_config(o);
  const double dw = bandwidth_rad(c);
  t.params.emplace_back("rms_bandwidth_hz", echo(dw / two_pi));
  echo_snr(t, o);
  t.columns = {"snr_db", "crb_classical_s", "crb_quantum_s", "ratio_db"};
  for (double db : snr_points_db(o)) {
    const auto s = RadarScenario::from_snr(from_power_db(db), dw);
    const double cc = crb_classical(s);
    const double cq = crb_quantum(s);
    t.rows.push_back({db, cc, cq, amplitude_db(cc / cq)});
  }
  return {};
}

Outcome cmd_zzb(const Options& o, Table& t, std::ostream& err) {
  const auto c = resolved_config(o);
  const double dw = bandwidth_rad(c);
  const auto prior = prior_from(o, c);
  const auto snrs = snr_points_db(o);
  t.params.emplace_back("rms_bandwidth_hz", echo(dw / two_pi));
  echo_prior(t, prior);
  echo_snr(t, o);
  t.params.emplace_back("normalization", "20log10(delta_tau/sigma_tau)");

  const double thq = threshold_snr_quantum(prior, dw);
  const double thc = threshold_snr_classical(prior, dw);
  t.params.emplace_back("snr_thresh_quantum_db", echo(power_db(thq)));
  t.params.emplace_back("snr_thresh_classical_db", echo(power_db(thc)));

  t.columns = {"snr_db",
               "zzb_classical_exact_db",
               "zzb_classical_qcb_db",
               "zzb_quantum_qcb_db",
               "crb_classical_db",
               "crb_quantum_db",
               "low_snr_classical_exact_db",
               "low_snr_classical_qcb_db",
               "low_snr_quantum_qcb_db",
               "high_snr_classical_qcb_db"};
  const auto pulse = gaussian_reference_pulse(dw);
  const auto spectrum = gaussian_reference_spectrum(dw);
  const double sigma = prior.sigma();
  auto norm = [sigma](double v) { return amplitude_db(v / sigma); };

  std::vector<std::vector<Cell>> rows(snrs.size());
  std::vector<std::string> failures(snrs.size());
  parallel_for(snrs.size(), o.workers, [&](std::size_t i) {
    const auto s = RadarScenario::from_snr(from_power_db(snrs[i]), dw);
    auto guarded = [&](auto&& f) -> double {
      try {
        return f();
      } catch (const NumericError& e) {
        failures[i] = e.what();
        return std::nan("");
      }
    };
    rows[i] = {snrs[i],
               guarded([&] { return norm(zzb_classical(prior, s, pulse, PeModel::exact)); }),
               guarded([&] { return norm(zzb_classical(prior, s, pulse, PeModel::qcb)); }),
               guarded([&] { return norm(zzb_qcb_quantum(prior, s, spectrum)); }),
               norm(crb_classical(s)),
               norm(crb_quantum(s)),
               norm(zzb_low_snr_asymptote(prior, s, PeModel::exact)),
               norm(zzb_low_snr_asymptote(prior, s, PeModel::qcb)),
               norm(zzb_qcb_quantum_low_snr_asymptote(prior, s)),
               norm(zzb_high_snr_asymptote(s, PeModel::qcb))};
  });
  t.rows = std::move(rows);

  std::size_t failed = 0;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    if (failures[i].empty()) continue;
    ++failed;
    err << "zzb: snr_db = " << echo(snrs[i]) << ": " << failures[i] << '\n';
  }

  std::string sidecar = o.sidecar;
  if (sidecar.empty() && !o.out.empty()) sidecar = o.out + ".thresholds.json";
  if (!sidecar.empty()) {
    json j = header_json(t);
    j["thresholds"] = {{"snr_thresh_quantum", thq},
                       {"snr_thresh_classical", thc},
                       {"snr_thresh_quantum_db", power_db(thq)},
                       {"snr_thresh_classical_db", power_db(thc)},
                       {"gap_db", power_db(thc / thq)}};
    std::ofstream f(sidecar);
    if (!f) throw DomainError("cannot write sidecar " + sidecar);
    f << j.dump(2) << '\n';
  }
  if (failed * 10 > snrs.size()) return {ExitCode::numeric};
  return {};
}

Outcome cmd_threshold(const Options& o, Table& t) {
  const auto c = resolved_config(o);
  const double dw = bandwidth_rad(c);
  t.params.emplace_back("rms_bandwidth_hz", echo(dw / two_pi));
  std::vector<DelayPrior> priors;
  if (!o.delta_r_sweep.empty()) {
    t.params.emplace_back("delta_r_sweep", o.delta_r_sweep);
    for (double dr : SweepSpec::parse(o.delta_r_sweep, SweepVariable::delta_r_m, SweepScale::log).values()) {
      priors.push_back(DelayPrior::from_range_uncertainty(dr));
    }
  } else {
    priors.push_back(prior_from(o, c));
    echo_prior(t, priors.front());
  }
  t.columns = {"delta_r_m", "delta_tau_s", "snr_thresh_quantum", "snr_thresh_classical",
               "snr_thresh_quantum_db", "snr_thresh_classical_db", "gap_db"};
  for (const auto& p : priors) {
    const double q = threshold_snr_quantum(p, dw);
    const double cl = threshold_snr_classical(p, dw);
    t.rows.push_back({p.width() * constants::speed_of_light / 2.0, p.width(), q, cl, power_db(q), power_db(cl),
                      power_db(cl) - power_db(q)});
  }
  return {};
}

AdvantageMeasure parse_measure(const std::string& m) {
  if (m == "exact_vs_qcb") return AdvantageMeasure::exact_vs_qcb;
  if (m == "qcb_vs_qcb") return AdvantageMeasure::qcb_vs_qcb;
  throw DomainError("--alpha-measure must be exact_vs_qcb or qcb_vs_qcb");
}

Outcome cmd_advantage(const Options& o, Table& t, json& doc) {
  const auto c = resolved_config(o);
  const double dw = bandwidth_rad(c);
  const auto prior = prior_from(o, c);
  t.params.emplace_back("rms_bandwidth_hz", echo(dw / two_pi));
  echo_prior(t, prior);
  std::optional<double> at;
  if (o.snr_db) {
    at = from_power_db(*o.snr_db);
    t.params.emplace_back("snr_db", echo(*o.snr_db));
  } else {
    t.params.emplace_back("snr", "quantum_threshold");
  }
  auto report = advantage_report(prior, dw, at);

  std::optional<AlphaFit> fit;
  if (o.alpha_fit) {
    if (o.alpha_points < 2 || !(o.alpha_min_m > 0.0) || !(o.alpha_max_m > o.alpha_min_m)) {
      throw DomainError("alpha fit needs 0 < --alpha-min-m < --alpha-max-m and --alpha-points >= 2");
    }
    const auto measure = parse_measure(o.alpha_measure);
    SweepSpec grid{SweepVariable::delta_r_m, o.alpha_min_m, o.alpha_max_m, o.alpha_points, SweepScale::log};
    const auto dr = grid.values();
    fit = fit_advantage_alpha(dw, dr, measure, o.workers);
    report.alpha_fit = fit->alpha;
    t.params.emplace_back("alpha_measure", o.alpha_measure);
    t.params.emplace_back("alpha_grid_m", echo(o.alpha_min_m) + ":" + echo(o.alpha_max_m) + ":" +
                                              std::to_string(o.alpha_points) + ":log");
  }

  t.columns = {"snr", "snr_db", "snr_thresh_quantum_db", "snr_thresh_classical_db", "zzb_classical_exact_s",
               "zzb_classical_qcb_s", "zzb_quantum_qcb_s", "advantage_qcb_vs_qcb_db", "advantage_exact_vs_qcb_db",
               "asymptotic_advantage_db", "alpha_fit"};
  t.rows.push_back({report.snr, power_db(report.snr), power_db(report.snr_thresh_quantum),
                    power_db(report.snr_thresh_classical), report.zzb_classical_exact, report.zzb_classical_qcb,
                    report.zzb_quantum_qcb, report.advantage_qcb_vs_qcb_db, report.advantage_exact_vs_qcb_db,
                    report.asymptotic_advantage_db, report.alpha_fit.value_or(std::nan(""))});

  doc = header_json(t);
  json r;
  r["snr"] = report.snr;
  r["snr_db"] = power_db(report.snr);
  r["snr_thresh_quantum"] = report.snr_thresh_quantum;
  r["snr_thresh_classical"] = report.snr_thresh_classical;
  r["zzb_classical_exact_s"] = report.zzb_classical_exact;
  r["zzb_classical_qcb_s"] = report.zzb_classical_qcb;
  r["zzb_quantum_qcb_s"] = report.zzb_quantum_qcb;
  r["advantage_qcb_vs_qcb_db"] = report.advantage_qcb_vs_qcb_db;
  r["advantage_exact_vs_qcb_db"] = report.advantage_exact_vs_qcb_db;
  r["asymptotic_advantage_db"] = report.asymptotic_advantage_db;
  r["quantum_exponent_scale"] = report.quantum_exponent_scale;
  r["alpha_fit"] = report.alpha_fit ? json(*report.alpha_fit) : json(nullptr);
  doc["report"] = r;
  if (fit) {
    doc["alpha_fit"] = {{"alpha", fit->alpha},
                        {"measure", o.alpha_measure},
                        {"delta_range_m", fit->delta_range_m},
                        {"advantage_db", fit->advantage_db},
                        {"model_db", fit->model_db},
                        {"rms_residual_db", fit->rms_residual_db}};
  }
  return {};
}

std::vector<double> grid_or_single(const std::string& sweep, SweepVariable v, const std::optional<double>& single,
                                   const char* what) {
  if (!sweep.empty()) return SweepSpec::parse(sweep, v, SweepScale::log).values();
  if (single) return {*single};
  throw DomainError(std::string("contour: missing ") + what);
}

Outcome cmd_contour(const Options& o, Table& t) {
  const auto c = resolved_config(o);
  if (!c.rms_bandwidth_hz) {
    throw DomainError("contour: the rms bandwidth has no default; pass --rms-bandwidth-hz");
  }
  const auto link = resolve_link(c, false);
  const auto ranges = grid_or_single(o.range_sweep, SweepVariable::range_m, c.range_m, "--range-sweep or --range-m");
  const auto durations = grid_or_single(o.duration_sweep, SweepVariable::pulse_duration_s, c.pulse_duration_s,
                                        "--duration-sweep or --pulse-duration-s");
  ContourOptions opt;
  opt.workers = o.workers;
  if (c.range_uncertainty_m) {
    opt.range_uncertainty_fraction.reset();
  } else {
    opt.range_uncertainty_fraction = c.range_uncertainty_fraction.value_or(0.01);
  }

  t.params.emplace_back("rms_bandwidth_hz", echo(link.rms_bandwidth / two_pi));
  t.params.emplace_back("carrier_hz", echo(link.carrier_rad_s / two_pi));
  t.params.emplace_back("antenna_area_m2", echo(link.antenna_area_m2));
  t.params.emplace_back("cross_section_m2", echo(link.cross_section_m2));
  t.params.emplace_back("noise_temp_k", echo(link.noise_temp_k));
  t.params.emplace_back("noise_brightness", echo(link.noise_brightness()));
  if (opt.range_uncertainty_fraction) {
    t.params.emplace_back("range_uncertainty_fraction", echo(*opt.range_uncertainty_fraction));
  } else {
    t.params.emplace_back("range_uncertainty_m", echo(link.delta_range_m));
  }
  t.params.emplace_back("range_grid", o.range_sweep.empty() ? echo(ranges.front()) : o.range_sweep);
  t.params.emplace_back("duration_grid", o.duration_sweep.empty() ? echo(durations.front()) : o.duration_sweep);
  t.params.emplace_back("snr", "quantum_threshold");
  t.params.emplace_back("advantage", "qcb_vs_qcb");

  const auto contour = advantage_contour(link, ranges, durations, opt);
  t.columns = {"range_m", "pulse_duration_s", "advantage_db", "regime_tag", "signal_brightness", "kappa", "snr"};
  for (const auto& cell : contour.cells) {
    t.rows.push_back({cell.range_m, cell.duration_s, cell.advantage_db.value_or(std::nan("")), cell.regime,
                      cell.signal_brightness, cell.kappa, cell.snr});
    if (!cell.diagnostic.empty()) {
      t.notes.push_back("R = " + echo(cell.range_m) + " m, T = " + echo(cell.duration_s) + " s: " + cell.diagnostic);
    }
  }
  return {};
}

Outcome cmd_incoherent(const Options& o, Table& t, std::ostream& err) {
  const double T = o.pulse_duration_s.value_or(1e-6);
  if (!(o.dt_fraction >= 20.0)) throw DomainError("--dt-fraction must be >= 20 (dt <= T/20)");
  MCConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.workers = o.workers;
  if (o.derivative == "analytic") {
    cfg.derivative = DerivativeMode::analytic;
  } else if (o.derivative == "central") {
    cfg.derivative = DerivativeMode::central_difference;
    cfg.h = o.fd_step_s.value_or(T * 1e-3);
  } else {
    throw DomainError("--derivative must be analytic or central");
  }
  if (o.samples < 1) throw DomainError("--samples must be >= 1");

  t.params.emplace_back("pulse", "transform_limited_gaussian");
  t.params.emplace_back("pulse_duration_s", echo(T));
  t.params.emplace_back("rms_bandwidth_hz", echo(1.0 / (2.0 * T) / two_pi));
  t.params.emplace_back("noise_brightness", echo(o.noise_brightness));
  t.params.emplace_back("kappa", echo(o.kappa));
  t.params.emplace_back("dt_s", echo(T / o.dt_fraction));
  t.params.emplace_back("span_durations", echo(12.0));
  t.params.emplace_back("derivative", o.derivative);
  if (cfg.derivative == DerivativeMode::central_difference) t.params.emplace_back("fd_step_s", echo(cfg.h));
  t.params.emplace_back("samples", std::to_string(o.samples));
  t.params.emplace_back("seed", std::to_string(o.seed));
  t.params.emplace_back("snr_definition", "kappa*E/(N_B+1)");
  echo_snr(t, o);

  t.columns = {"snr_db", "fisher_incoherent", "fisher_coherent", "std_error", "fisher_ratio"};
  for (double db : snr_points_db(o)) {
    HeterodyneModel m;
    m.kappa = o.kappa;
    m.noise_brightness = o.noise_brightness;
    m.energy = from_power_db(db) * (o.noise_brightness + 1.0) / o.kappa;
    m.pulse = TransformLimitedGaussian{T};
    m.dt_s = T / o.dt_fraction;
    const auto est = fisher_incoherent_mc(m, cfg);
    const double coh = fisher_coherent_heterodyne(m);
    t.rows.push_back({db, est.estimate, coh, est.std_error, est.estimate / coh});
    if (est.warning) {
      err << "incoherent-mc: snr_db = " << echo(db) << ": " << *est.warning << '\n';
      t.notes.push_back("snr_db = " + echo(db) + ": " + *est.warning);
    }
  }
  return {};
}

void add_common(CLI::App* sub, Options& o, bool snr, bool prior) {
  sub->add_option("--rms-bandwidth-hz", o.rms_bandwidth_hz, "rms bandwidth dw/2pi in Hz");
  if (prior) {
    auto* dr = sub->add_option("--delta-r-m", o.delta_r_m, "range uncertainty in meters");
    auto* dt = sub->add_option("--delta-tau-s", o.delta_tau_s, "delay uncertainty width in seconds");
    dr->excludes(dt);
  }
  if (snr) {
    auto* one = sub->add_option("--snr-db", o.snr_db, "single SNR in dB");
    auto* sweep = sub->add_option("--snr-sweep", o.snr_sweep, "SNR sweep in dB, start:stop:points");
    one->excludes(sweep);
  }
  sub->add_option("--config", o.config, "flat key = value link config")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output path (default standard output)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--workers", o.workers, "worker threads (0 = all cores)");
}

void reverse_parse(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
}

}  // namespace

SweepSpec SweepSpec::parse(std::string_view text, SweepVariable variable, SweepScale default_scale) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3 && parts.size() != 4) {
    throw DomainError("sweep '" + std::string(text) + "': expected start:stop:points[:lin|:log]");
  }
  SweepSpec s;
  s.variable = variable;
  s.scale = default_scale;
  try {
    std::size_t used = 0;
    s.start = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("start");
    s.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    const long long n = std::stoll(parts[2], &used);
    if (used != parts[2].size() || n < 0) throw std::invalid_argument("points");
    s.points = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw DomainError("sweep '" + std::string(text) + "': malformed number");
  }
  if (parts.size() == 4) {
    if (parts[3] == "lin") {
      s.scale = SweepScale::linear;
    } else if (parts[3] == "log") {
      s.scale = SweepScale::log;
    } else {
      throw DomainError("sweep '" + std::string(text) + "': scale must be lin or log");
    }
  }
  s.validate();
  return s;
}

void SweepSpec::validate() const {
  if (points < 2) throw DomainError("sweep needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
    throw DomainError("sweep needs finite start < stop");
  }
  if (scale == SweepScale::log && !(start > 0.0)) throw DomainError("log sweep needs positive endpoints");
}

std::vector<double> SweepSpec::values() const {
  validate();
  std::vector<double> v(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double u = static_cast<double>(i) / last;
    v[i] = scale == SweepScale::linear ? start + (stop - start) * u
                                       : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * u);
  }
  v.front() = start;
  v.back() = stop;
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Range-delay accuracy limits of classical and entanglement-assisted pulse-compression radar",
               "pcrange"};
  app.set_version_flag("--version", std::string("pcrange ") + PCRANGE_VERSION);
  app.require_subcommand(1, 1);
  Options o;

  auto* crb = app.add_subcommand("crb", "Cramer-Rao bounds versus SNR");
  add_common(crb, o, true, false);

  auto* zzb = app.add_subcommand("zzb", "Ziv-Zakai bounds and asymptotes versus SNR");
  add_common(zzb, o, true, true);
  zzb->add_option("--sidecar", o.sidecar, "threshold JSON path (default <out>.thresholds.json)");

  auto* thr = app.add_subcommand("threshold", "classical and quantum threshold SNRs");
  add_common(thr, o, false, true);
  thr->add_option("--delta-r-sweep", o.delta_r_sweep, "range-uncertainty sweep start:stop:points[:lin|:log]");

  auto* adv = app.add_subcommand("advantage", "quantum advantage report (JSON by default)");
  add_common(adv, o, false, true);
  adv->add_option("--snr-db", o.snr_db, "evaluation SNR in dB (default: quantum threshold)");
  adv->add_flag("--alpha-fit", o.alpha_fit, "fit the advantage scaling constant over a range-uncertainty grid");
  adv->add_option("--alpha-min-m", o.alpha_min_m, "smallest range uncertainty of the fit grid");
  adv->add_option("--alpha-max-m", o.alpha_max_m, "largest range uncertainty of the fit grid");
  adv->add_option("--alpha-points", o.alpha_points, "log-spaced fit points");
  adv->add_option("--alpha-measure", o.alpha_measure, "exact_vs_qcb or qcb_vs_qcb");

  auto* con = app.add_subcommand("contour", "advantage versus range and pulse duration");
  add_common(con, o, false, false);
  con->add_option("--range-sweep", o.range_sweep, "range grid in meters, start:stop:points[:lin|:log]");
  con->add_option("--duration-sweep", o.duration_sweep, "pulse-duration grid in seconds");
  con->add_option("--range-m", o.range_m, "single range");
  con->add_option("--pulse-duration-s", o.pulse_duration_s, "single pulse duration");
  auto* frac = con->add_option("--range-uncertainty-fraction", o.range_uncertainty_fraction,
                               "range uncertainty as a fraction of R (default 0.01)");
  auto* fixed = con->add_option("--delta-r-m", o.delta_r_m, "fixed range uncertainty in every cell");
  frac->excludes(fixed);
  con->add_option("--carrier-hz", o.carrier_hz, "carrier frequency (default 100 GHz)");
  con->add_option("--antenna-area-m2", o.antenna_area_m2, "antenna area (default 1)");
  con->add_option("--cross-section-m2", o.cross_section_m2, "target cross section (default 0.01)");
  con->add_option("--noise-temp-k", o.noise_temp_k, "noise temperature (default 150)");

  auto* mc = app.add_subcommand("incoherent-mc", "Monte Carlo phase-incoherent Fisher information");
  add_common(mc, o, true, false);
  mc->add_option("--seed", o.seed, "64-bit seed");
  mc->add_option("--samples", o.samples, "Monte Carlo samples per SNR");
  mc->add_option("--pulse-duration-s", o.pulse_duration_s, "rms duration T of the Gaussian pulse (default 1e-6)");
  mc->add_option("--noise-brightness", o.noise_brightness, "N_B (default 100)");
  mc->add_option("--kappa", o.kappa, "roundtrip transmissivity (default 1e-3)");
  mc->add_option("--dt-fraction", o.dt_fraction, "grid step as T/k (default 50)");
  mc->add_option("--derivative", o.derivative, "analytic or central");
  mc->add_option("--fd-step-s", o.fd_step_s, "central-difference step (default T/1000)");

  try {
    reverse_parse(app, args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  Table table;
  json doc;
  bool doc_mode = false;
  Outcome result;
  try {
    if (*crb) {
      table.command = "crb";
      result = cmd_crb(o, table);
    } else if (*zzb) {
      table.command = "zzb";
      result = cmd_zzb(o, table, err);
    } else if (*thr) {
      table.command = "threshold";
      result = cmd_threshold(o, table);
    } else if (*adv) {
      table.command = "advantage";
      result = cmd_advantage(o, table, doc);
      doc_mode = o.format != "csv";
    } else if (*con) {
      table.command = "contour";
      result = cmd_contour(o, table);
    } else {
      table.command = "incoherent-mc";
      result = cmd_incoherent(o, table, err);
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out.empty()) {
      file.open(o.out);
      if (!file) throw DomainError("cannot open --out " + o.out);
      sink = &file;
    }
    if (doc_mode) {
      *sink << doc.dump(2) << '\n';
    } else if (o.format == "json") {
      write_json(table, *sink);
    } else {
      write_csv(table, *sink);
    }
    return static_cast<int>(result.code);
  } catch (const InfeasibleError& e) {
    err << "pcrange " << table.command << ": infeasible scenario: " << e.what() << '\n';
    return static_cast<int>(ExitCode::infeasible);
  } catch (const DomainError& e) {
    err << "pcrange " << table.command << ": " << e.what() << '\n';
    return static_cast<int>(ExitCode::usage);
  } catch (const UnsupportedError& e) {
    err << "pcrange " << table.command << ": unsupported: " << e.what() << '\n';
    return static_cast<int>(ExitCode::usage);
  } catch (const std::exception& e) {
    err << "pcrange " << table.command << ": numeric failure: " << e.what() << '\n';
    return static_cast<int>(ExitCode::numeric);
  }
}

}  // namespace pcrange::cli
