#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gravent/budget.hpp"
#include "gravent/errors.hpp"
#include "gravent/feasibility/delocalization.hpp"
#include "gravent/feasibility/solver.hpp"
#include "gravent/feasibility/validation.hpp"
#include "gravent/quantities.hpp"
#include "gravent/sweep.hpp"

namespace gravent::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

/// Strict view of one JSON object: typed getters that report the full key
/// path, and a final check that no unrecognised key is left over.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  std::optional<double> number(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_number() || v.is_boolean())
      throw ConfigError(path(key), v.is_string() ? "expected a number in SI units, got a string" : "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(path(key), "must be finite");
    return d;
  }
  double number_or(const std::string& key, double fallback) { return number(key).value_or(fallback); }
  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(path(key), "missing required key");
    return *v;
  }

  std::optional<int> integer(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v.get<int>();
  }

  std::optional<bool> boolean(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(path(key), "expected true or false");
    return v.get<bool>();
  }

  std::optional<std::string> string(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    const Json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  const Json* raw(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) ? &j_.at(key) : nullptr;
  }

  /// Reader for a sub-object. Its paths are relative to that object; wrap
  /// its use in within(key, ...) to get full paths.
  std::optional<ObjectReader> object(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    if (!j_.at(key).is_object()) throw ConfigError(path(key), "expected an object");
    return ObjectReader(j_.at(key), "");
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ConfigError(path(it.key()), "unknown key");
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class F>
auto within(const std::string& section, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError& e) {
    throw e.nested(section);
  }
}

template <class Enum>
Enum choice(ObjectReader& r, const std::string& key, std::initializer_list<std::pair<const char*, Enum>> options,
            Enum fallback) {
  auto s = r.string(key);
  if (!s) return fallback;
  std::string allowed;
  for (const auto& [name, value] : options) {
    if (*s == name) return value;
    allowed += allowed.empty() ? name : std::string(" | ") + name;
  }
  throw ConfigError(r.path(key), "got '" + *s + "', expected " + allowed);
}

/// "1e-17 mbar" -> Pa.
inline double parse_mbar(const std::string& text, const std::string& path) {
  static const std::regex re(R"(^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*mbar\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ConfigError(path, "expected a string of the form '<number> mbar'");
  return units::mbar_to_pa(std::stod(m[1].str()));
}

inline NoiseModel read_noise(ObjectReader r, const char* asd_key, double default_ref_omega, double default_exponent,
                             bool have_default_ref) {
  const double asd = r.number_or(asd_key, 0.0);
  const auto ref_hz = r.number("ref_freq_hz");
  const double exponent = r.number_or("scaling", default_exponent);
  r.finish();
  if (!ref_hz && !have_default_ref)
    throw ConfigError(r.path("ref_freq_hz"), "required when there is no oscillator section");
  if (asd < 0.0) throw ConfigError(r.path(asd_key), "must be >= 0");
  if (ref_hz && !(*ref_hz > 0.0)) throw ConfigError(r.path("ref_freq_hz"), "must be > 0");
  const double ref = ref_hz ? units::hz_to_rad_s(*ref_hz) : default_ref_omega;
  return NoiseModel::from_asd(asd, ref, exponent);
}

}  // namespace detail

/// Builds an ExperimentConfig from the config-file schema. Throws
/// ConfigError carrying the JSON path of the first offending key.
inline ExperimentConfig config_from_json(const Json& root, const PhysicalConstants& pc = kCodata) {
  detail::ObjectReader top(root, "");

  const Protocol protocol = detail::choice(top, "protocol",
                                           {{"csign", Protocol::CsignPhase}, {"oscillator", Protocol::CoupledOscillators}},
                                           Protocol::CsignPhase);

  MassMode mass_mode = MassMode::PaperApprox;
  RateMode rate_mode = RateMode::PaperApprox;
  ComparisonMode comparison = ComparisonMode::PaperComparison;
  if (auto modes = top.object("modes")) detail::within("modes", [&] {
    mass_mode = detail::choice(*modes, "mass", {{"paper", MassMode::PaperApprox}, {"exact", MassMode::ExactSphere}},
                               mass_mode);
    rate_mode = detail::choice(*modes, "rate", {{"paper", RateMode::PaperApprox}, {"exact", RateMode::Exact}}, rate_mode);
    comparison = detail::choice(
        *modes, "comparison", {{"paper", ComparisonMode::PaperComparison}, {"aggregate", ComparisonMode::Aggregate}},
        comparison);
    modes->finish();
  });

  // Oscillator first: noise reference frequencies default to it.
  std::optional<Oscillator> osc;
  if (auto o = top.object("oscillator")) {
    osc = detail::within("oscillator", [&] {
      const auto f = o->number("freq_hz");
      const auto w = o->number("omega0_rad_s");
      if (f && w) throw ConfigError("freq_hz", "give either freq_hz or omega0_rad_s, not both");
      if (!f && !w) throw ConfigError("freq_hz", "missing: give freq_hz or omega0_rad_s");
      const double w0 = f ? units::hz_to_rad_s(*f) : *w;
      const double gamma = o->number_or("gamma_hz", 0.0);
      const double nbar = o->number_or("nbar", 0.0);
      const double eta = o->number_or("eta", 1.0);
      o->finish();
      if (f && !(*f > 0.0)) throw ConfigError("freq_hz", "must be > 0");
      return Oscillator(w0, gamma, nbar, eta);
    });
  }

  auto env_r = top.object("environment");
  if (!env_r) throw ConfigError("environment", "missing required section");
  double env_temp = 0.0;
  const Environment env = detail::within("environment", [&] {
    auto& r = *env_r;
    const auto p_pa = r.number("pressure_Pa");
    const auto p_mbar = r.string("pressure_mbar");
    if (p_pa && p_mbar) throw ConfigError("pressure_mbar", "give either pressure_Pa or pressure_mbar, not both");
    if (!p_pa && !p_mbar) throw ConfigError("pressure_Pa", "missing required key");
    const double p = p_pa ? *p_pa : detail::parse_mbar(*p_mbar, "pressure_mbar");
    env_temp = r.required_number("temp_K");

    double gas_mass = pc.m_H2;
    if (const Json* g = r.raw("gas")) {
      if (g->is_string()) {
        if (g->get<std::string>() != "H2") throw ConfigError("gas", "expected \"H2\" or {\"mass_kg\": ...}");
      } else {
        detail::ObjectReader gr(*g, "gas");
        gas_mass = gr.required_number("mass_kg");
        gr.finish();
      }
    }

    const double w0 = osc ? osc->omega0() : 1.0;
    NoiseModel pos, freq;
    if (auto n = r.object("pos_noise"))
      pos = detail::within("pos_noise", [&] {
        return detail::read_noise(*n, "asd_m_per_sqrthz", w0, kDefaultPositionNoiseExponent, osc.has_value());
      });
    if (auto n = r.object("freq_noise"))
      freq = detail::within("freq_noise", [&] {
        return detail::read_noise(*n, "asd_per_sqrthz", 2.0 * w0, kDefaultFrequencyNoiseExponent, osc.has_value());
      });
    r.finish();
    return Environment(p, env_temp, gas_mass, pos, freq);
  });

  auto body_r = top.object("body");
  if (!body_r) throw ConfigError("body", "missing required section");
  const Body body = detail::within("body", [&] {
    auto& r = *body_r;
    const double radius = r.required_number("radius_m");
    const double density = r.required_number("density_kg_m3");
    const double chi_re = r.number_or("chi_re", 1.0);
    const double chi_im = r.number_or("chi_im", 1.0);
    const double t_i = r.number_or("temp_internal_K", env_temp);
    r.finish();
    return Body(radius, density, chi_re, chi_im, t_i);
  });

  auto geo_r = top.object("geometry");
  if (!geo_r) throw ConfigError("geometry", "missing required section");
  const PairGeometry geometry = detail::within("geometry", [&] {
    auto& r = *geo_r;
    const auto alpha = r.number("alpha");
    const auto dist = r.number("distance_m");
    auto dx = r.number("delta_x_m");
    r.finish();
    if (alpha && dist) throw ConfigError("distance_m", "give either alpha or distance_m, not both");
    if (!alpha && !dist) throw ConfigError("alpha", "missing: give alpha or distance_m");
    if (!dx) {
      // An oscillator wavepacket defaults to eta ground-state widths.
      if (!osc) throw ConfigError("delta_x_m", "missing required key");
      dx = osc->eta() * ground_state_size(mass(body, mass_mode), osc->omega0(), pc);
    }
    return alpha ? PairGeometry::from_alpha(*alpha, *dx) : PairGeometry::from_distance(*dist, *dx);
  });

  top.finish();
  ExperimentConfig cfg{body, geometry, env, osc, protocol, mass_mode, rate_mode, comparison};
  cfg.validate();
  return cfg;
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(source, std::string("invalid JSON: ") + e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ExperimentConfig load_config(const std::string& path, const PhysicalConstants& pc = kCodata) {
  return config_from_json(parse_json_text(read_text_file(path), path), pc);
}

/// Serializes with the config-file field names; config_from_json reads it back.
inline Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["protocol"] = c.protocol == Protocol::CsignPhase ? "csign" : "oscillator";
  j["body"] = {{"radius_m", c.body.radius()},
               {"density_kg_m3", c.body.density()},
               {"chi_re", c.body.chi_re()},
               {"chi_im", c.body.chi_im()},
               {"temp_internal_K", c.body.temp_internal()}};
  Json geo;
  if (c.geometry.given_by_alpha())
    geo["alpha"] = c.geometry.alpha(c.body.radius());
  else
    geo["distance_m"] = c.geometry.distance(c.body.radius());
  geo["delta_x_m"] = c.geometry.delta_x();
  j["geometry"] = geo;

  const Environment& e = c.environment;
  Json env{{"pressure_Pa", e.pressure()}, {"temp_K", e.temperature()}, {"gas", {{"mass_kg", e.gas_mass()}}}};
  env["pos_noise"] = {{"asd_m_per_sqrthz", e.pos_noise().asd_amplitude()},
                      {"ref_freq_hz", units::rad_s_to_hz(e.pos_noise().ref_omega())},
                      {"scaling", e.pos_noise().scaling_exponent()}};
  env["freq_noise"] = {{"asd_per_sqrthz", e.freq_noise().asd_amplitude()},
                       {"ref_freq_hz", units::rad_s_to_hz(e.freq_noise().ref_omega())},
                       {"scaling", e.freq_noise().scaling_exponent()}};
  j["environment"] = env;

  if (c.oscillator)
    j["oscillator"] = {{"omega0_rad_s", c.oscillator->omega0()},
                       {"gamma_hz", c.oscillator->gamma()},
                       {"nbar", c.oscillator->nbar()},
                       {"eta", c.oscillator->eta()}};
  j["modes"] = {{"mass", c.mass_mode == MassMode::PaperApprox ? "paper" : "exact"},
                {"rate", c.rate_mode == RateMode::PaperApprox ? "paper" : "exact"},
                {"comparison", c.comparison == ComparisonMode::PaperComparison ? "paper" : "aggregate"}};
  return j;
}

// --- sweep spec -------------------------------------------------------------

inline SweepAxis axis_from_json(detail::ObjectReader r) {
  const auto name = r.string("unknown");
  if (!name) throw ConfigError(r.path("unknown"), "missing required key");
  const auto u = parse_unknown(*name);
  if (!u) throw ConfigError(r.path("unknown"), "unknown parameter '" + *name + "'");
  const double lo = r.required_number("min");
  const double hi = r.required_number("max");
  const auto pts = r.integer("points");
  if (!pts) throw ConfigError(r.path("points"), "missing required key");
  const AxisScale scale = detail::choice(r, "scale", {{"log", AxisScale::Log}, {"linear", AxisScale::Linear}},
                                         AxisScale::Log);
  r.finish();
  return {*u, lo, hi, *pts, scale};
}

inline SweepSpec sweep_from_json(const Json& root, const ExperimentConfig& base) {
  detail::ObjectReader top(root, "");
  auto a1 = top.object("axis1");
  auto a2 = top.object("axis2");
  if (!a1) throw ConfigError("axis1", "missing required section");
  if (!a2) throw ConfigError("axis2", "missing required section");
  SweepSpec spec{base, detail::within("axis1", [&] { return axis_from_json(*a1); }),
                 detail::within("axis2", [&] { return axis_from_json(*a2); }), {}, {}};
  if (const Json* ch = top.raw("channels")) {
    if (ch->is_string() && ch->get<std::string>() == "all") {
    } else if (ch->is_array()) {
      for (std::size_t i = 0; i < ch->size(); ++i) {
        const Json& v = (*ch)[i];
        const auto id = v.is_string() ? parse_channel(v.get<std::string>()) : std::nullopt;
        if (!id) throw ConfigError("channels[" + std::to_string(i) + "]", "unknown channel");
        spec.channels.push_back(*id);
      }
    } else {
      throw ConfigError("channels", "expected \"all\" or a list of channel names");
    }
  }
  if (auto o = top.object("outputs")) detail::within("outputs", [&] {
    spec.outputs.grid_csv = o->boolean("grid_csv").value_or(true);
    spec.outputs.frontier_csv = o->boolean("frontier_csv").value_or(true);
    spec.outputs.svg = o->boolean("svg").value_or(true);
    o->finish();
  });
  top.finish();
  spec.validate();
  return spec;
}

// --- results ----------------------------------------------------------------

namespace detail {
/// JSON has no infinity; infinite margins are written as null.
inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
}  // namespace detail

inline Json budget_to_json(const RateBudget& b) {
  Json j{{"schema_version", kSchemaVersion}, {"kind", "rate_budget"}, {"gamma_ent_per_s", b.gamma_ent}};
  j["comparison"] = b.comparison == ComparisonMode::PaperComparison ? "paper" : "aggregate";
  Json chans = Json::array();
  for (const auto& c : b.channels)
    chans.push_back({{"id", channel_name(c.id)},
                     {"rate_per_s", c.rate},
                     {"margin", detail::finite_or_null(c.margin)},
                     {"margin_infinite", c.margin_infinite()}});
  j["channels"] = chans;
  j["binding_channel"] = channel_name(b.binding_channel);
  j["min_margin"] = detail::finite_or_null(b.min_margin());
  if (b.comparison == ComparisonMode::Aggregate) {
    j["total_rate_per_s"] = b.total_rate;
    j["aggregate_margin"] = detail::finite_or_null(b.aggregate_margin);
  }
  j["feasible"] = b.feasible;
  j["warnings"] = b.warnings;
  return j;
}

inline Json bound_to_json(const BoundResult& r) {
  return {{"schema_version", kSchemaVersion},
          {"kind", "bound"},
          {"unknown", unknown_name(r.unknown)},
          {"unit", unknown_unit(r.unknown)},
          {"threshold", r.threshold},
          {"direction", r.direction == BoundDirection::LowerBound ? "lower" : "upper"},
          {"channel", channel_name(r.channel)},
          {"bracket", {r.bracket_lo, r.bracket_hi}},
          {"iterations", r.iterations}};
}

inline const char* kind_name(DelocalizationEntry::Kind k) {
  switch (k) {
    case DelocalizationEntry::Kind::LowerBound: return "lower";
    case DelocalizationEntry::Kind::UpperBound: return "upper";
    case DelocalizationEntry::Kind::AlwaysFeasible: return "always";
    case DelocalizationEntry::Kind::NeverFeasible: return "never";
  }
  return "?";
}

inline Json delocalization_to_json(const DelocalizationReport& r, std::optional<double> eta = std::nullopt) {
  Json j{{"schema_version", kSchemaVersion}, {"kind", "delocalization"}, {"delta_x_min_m", r.delta_x_min}};
  j["binding_channel"] = r.binding ? Json(channel_name(*r.binding)) : Json(nullptr);
  if (eta) j["eta_required"] = *eta;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x{{"channel", channel_name(e.channel)}, {"kind", kind_name(e.kind)}};
    if (e.kind == DelocalizationEntry::Kind::LowerBound || e.kind == DelocalizationEntry::Kind::UpperBound)
      x["bound_m"] = e.bound;
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["feasible"] = r.feasible;
  Json blocking = Json::array();
  for (auto id : r.blocking) blocking.push_back(channel_name(id));
  j["blocking"] = blocking;
  return j;
}

inline Json validation_to_json(const std::vector<ValidationRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows)
    arr.push_back({{"case_id", r.case_id},
                   {"quantity", r.quantity},
                   {"unit", r.unit},
                   {"paper_value", r.paper_value},
                   {"computed_value", detail::finite_or_null(r.computed_value)},
                   {"ratio", detail::finite_or_null(r.ratio)},
                   {"tolerance_factor", r.tolerance_factor},
                   {"pass", r.pass},
                   {"assumptions", r.assumptions}});
  return {{"schema_version", kSchemaVersion}, {"kind", "validation"}, {"all_pass", all_pass(rows)}, {"rows", arr}};
}

}  // namespace gravent::io
