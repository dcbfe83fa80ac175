#include "demonlab/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "demonlab/diagnostics.hpp"

namespace demonlab {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // e.byte is one past the offending character.
    const std::size_t pos = e.byte > 0 ? std::min<std::size_t>(e.byte - 1, text.size()) : 0;
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), msg);
  }
}

JsonReader::JsonReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

std::string JsonReader::field(std::string_view key) const {
  return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
}

void JsonReader::fail(std::string_view key, const std::string& message) const {
  throw ConfigError(key.empty() ? (path_.empty() ? "<root>" : path_) : field(key), message);
}

bool JsonReader::has(std::string_view key) const {
  return node_.is_object() && node_.contains(std::string(key)) && !node_.at(std::string(key)).is_null();
}

JsonReader JsonReader::child(std::string_view key) const {
  if (!has(key)) fail(key, "missing field");
  const auto& n = node_.at(std::string(key));
  if (!n.is_object() && !n.is_array()) fail(key, "expected an object or array");
  return JsonReader(n, field(key));
}

JsonReader JsonReader::element(std::size_t index) const {
  if (!node_.is_array() || index >= node_.size()) fail("", "index out of range");
  return JsonReader(node_.at(index), path_ + "[" + std::to_string(index) + "]");
}

std::size_t JsonReader::size() const { return node_.size(); }

double JsonReader::number(std::string_view key) const {
  if (!has(key)) fail(key, "missing field");
  const auto& n = node_.at(std::string(key));
  if (!n.is_number()) fail(key, "expected a number");
  const double v = n.get<double>();
  if (!std::isfinite(v)) fail(key, "expected a finite number");
  return v;
}

double JsonReader::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::uint64_t JsonReader::unsigned_integer(std::string_view key) const {
  if (!has(key)) fail(key, "missing field");
  const auto& n = node_.at(std::string(key));
  if (n.is_number_unsigned()) return n.get<std::uint64_t>();
  if (n.is_number_integer()) {
    if (n.get<std::int64_t>() < 0) fail(key, "expected a non-negative integer");
    return static_cast<std::uint64_t>(n.get<std::int64_t>());
  }
  if (n.is_number_float()) {
    const double v = n.get<double>();
    if (v >= 0.0 && v < 1.8e19 && std::floor(v) == v) return static_cast<std::uint64_t>(v);
  }
  fail(key, "expected a non-negative integer");
}

std::uint64_t JsonReader::unsigned_integer_or(std::string_view key, std::uint64_t fallback) const {
  return has(key) ? unsigned_integer(key) : fallback;
}

std::string JsonReader::string(std::string_view key) const {
  if (!has(key)) fail(key, "missing field");
  const auto& n = node_.at(std::string(key));
  if (!n.is_string()) fail(key, "expected a string");
  return n.get<std::string>();
}

std::string JsonReader::string_or(std::string_view key, std::string fallback) const {
  return has(key) ? string(key) : fallback;
}

bool JsonReader::boolean_or(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& n = node_.at(std::string(key));
  if (!n.is_boolean()) fail(key, "expected true or false");
  return n.get<bool>();
}

double JsonReader::as_number() const {
  if (!node_.is_number()) fail("", "expected a number");
  return node_.get<double>();
}

int JsonReader::as_int() const {
  if (!node_.is_number_integer()) fail("", "expected an integer");
  return node_.get<int>();
}

void JsonReader::only(std::initializer_list<std::string_view> allowed) const {
  if (!node_.is_object()) fail("", "expected an object");
  for (const auto& [k, v] : node_.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) fail(k, "unknown field");
}

namespace {

// Wraps DomainError from typed constructors with the field path.
template <typename Fn>
auto at_field(const JsonReader& in, std::string_view key, Fn fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    in.fail(key, e.what());
  }
}

std::array<double, 2> pair_or(const JsonReader& in, std::string_view key, std::array<double, 2> fallback) {
  if (!in.has(key)) return fallback;
  const auto arr = in.child(key);
  if (!arr.is_array() || arr.size() != 2) in.fail(key, "expected an array of two numbers");
  return {arr.element(0).as_number(), arr.element(1).as_number()};
}

}  // namespace

json to_json(const SourceSpec& spec) {
  json j;
  j["kind"] = std::string(to_string(spec.kind));
  if (spec.nbar) j["nbar"] = spec.nbar->value();
  if (spec.s) j["s"] = spec.s->value();
  if (spec.v2) j["v2"] = spec.v2->value();
  if (spec.drop_vacuum) j["drop_vacuum"] = true;
  if (spec.include_single_photon_term) j["single_photon_term"] = true;
  return j;
}

SourceSpec source_from_json(const JsonReader& in) {
  in.only({"kind", "nbar", "s", "s2", "v2", "drop_vacuum", "single_photon_term"});
  SourceSpec spec;
  spec.kind = at_field(in, "kind", [&] { return parse_source_kind(in.string("kind")); });
  if (in.has("nbar")) spec.nbar = at_field(in, "nbar", [&] { return MeanPhotonNumber(in.number("nbar")); });
  if (in.has("s") && in.has("s2")) in.fail("s2", "give either s or s2, not both");
  if (in.has("s")) spec.s = at_field(in, "s", [&] { return SqueezingParameter(in.number("s")); });
  if (in.has("s2"))
    spec.s = at_field(in, "s2", [&] {
      const double s2 = in.number("s2");
      if (s2 < 0.0) throw DomainError("s2 must be non-negative");
      return SqueezingParameter(std::sqrt(s2));
    });
  if (in.has("v2")) spec.v2 = at_field(in, "v2", [&] { return Visibility(in.number("v2")); });
  spec.drop_vacuum = in.boolean_or("drop_vacuum", false);
  spec.include_single_photon_term = in.boolean_or("single_photon_term", false);
  at_field(in, "", [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

json to_json(const RunConfig& c) {
  json j;
  j["source"] = to_json(c.spec);
  j["r2"] = c.r.reflectivity();
  j["eps2"] = c.eps2.value();
  j["slots"] = c.slots;
  j["seed"] = c.seed;
  j["arm_trim"] = {c.arm_trim[0], c.arm_trim[1]};
  j["arm_efficiency"] = {c.arm_efficiency[0], c.arm_efficiency[1]};
  j["dead_window_slots"] = c.dead_window_slots;
  j["mode"] = std::string(to_string(c.mode));
  if (c.policy) {
    json cross = json::array();
    for (int i = 0; i < 4; ++i) {
      const auto p = ClickPattern::from_index(i);
      if ((*c.policy)(p) == SwitchState::Cross) cross.push_back({p.dem_a ? 1 : 0, p.dem_b ? 1 : 0});
    }
    j["policy_cross_on"] = cross;
  }
  j["demon_efficiency"] = {c.detectors.eta_a, c.detectors.eta_b};
  j["stream"] = std::string(to_string(c.stream));
  j["coherence_slots"] = c.coherence_slots;
  j["threads"] = c.threads;
  return j;
}

RunConfig run_config_from_json(const JsonReader& in) {
  in.only({"source", "r2", "eps2", "slots", "seed", "arm_trim", "arm_efficiency", "dead_window_slots", "mode",
           "policy_cross_on", "demon_efficiency", "stream", "coherence_slots", "threads"});
  RunConfig c;
  c.spec = source_from_json(in.child("source"));
  c.r = at_field(in, "r2", [&] { return ReflectionAmplitude::from_reflectivity(in.number_or("r2", 0.5)); });
  c.eps2 = at_field(in, "eps2", [&] { return CouplingEfficiency(in.number_or("eps2", 1.0)); });
  c.slots = in.unsigned_integer_or("slots", c.slots);
  c.seed = in.unsigned_integer_or("seed", c.seed);
  c.arm_trim = pair_or(in, "arm_trim", c.arm_trim);
  c.arm_efficiency = pair_or(in, "arm_efficiency", c.arm_efficiency);
  c.dead_window_slots = in.unsigned_integer_or("dead_window_slots", 0);
  c.mode = at_field(in, "mode", [&] { return parse_switch_mode(in.string_or("mode", "feedforward")); });
  if (in.has("policy_cross_on")) {
    const auto arr = in.child("policy_cross_on");
    if (!arr.is_array()) in.fail("policy_cross_on", "expected an array of click patterns");
    Policy p = Policy::all_bar();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = arr.element(i);
      if (!e.is_array() || e.size() != 2) e.fail("", "expected a click pattern [dem_a, dem_b]");
      p.set({e.element(0).as_int() != 0, e.element(1).as_int() != 0}, SwitchState::Cross);
    }
    c.policy = p;
  }
  const auto eff = pair_or(in, "demon_efficiency", {1.0, 1.0});
  c.detectors = {eff[0], eff[1]};
  c.stream = at_field(in, "stream", [&] { return parse_stream_model(in.string_or("stream", "iid")); });
  c.coherence_slots = in.number_or("coherence_slots", 0.0);
  c.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, in.unsigned_integer_or("threads", 1)));
  at_field(in, "", [&] {
    c.validate();
    return 0;
  });
  return c;
}

json to_json(const RunResult& r) {
  json j;
  j["slots"] = r.slots;
  j["n_a"] = r.n_a;
  j["n_b"] = r.n_b;
  j["coincidences"] = r.coincidences;
  j["delta_n"] = r.delta_n;
  j["stderr_delta_n"] = r.stderr_delta_n;
  j["n_in_est"] = r.n_in_est;
  j["pairs_est"] = r.pairs_est;
  j["photons_a"] = r.photons_a;
  j["photons_b"] = r.photons_b;
  j["dem_clicks_a"] = r.dem_clicks_a;
  j["dem_clicks_b"] = r.dem_clicks_b;
  j["dem_coincidences"] = r.dem_coincidences;
  j["triggers"] = r.triggers;
  j["lost_to_dead_window"] = r.lost_to_dead_window;
  return j;
}

json to_json(const PowerMeasurement& m) {
  json j;
  j["bar"] = to_json(m.bar);
  j["cross"] = to_json(m.cross);
  j["feedforward"] = to_json(m.ff);
  if (m.pair_calibration) j["pair_calibration"] = to_json(*m.pair_calibration);
  j["normalizer"] = m.normalizer;
  j["normalizer_std_error"] = m.normalizer_std_error;
  j["delta_n"] = m.delta.value;
  j["delta_n_stderr"] = m.delta.std_error;
  j["bar_imbalanced"] = m.delta.bar_imbalanced;
  j["power"] = m.value;
  j["power_stderr"] = m.std_error;
  return j;
}

json to_json(const oracle::Report& rep) {
  json j;
  j["modes"] = rep.modes;
  j["cutoff"] = rep.cutoff;
  json table = json::array();
  for (const auto& [k, p] : rep.table) table.push_back({{"occupation", k}, {"p", p}});
  j["table"] = table;
  j["p_a"] = rep.p_a;
  j["p_b"] = rep.p_b;
  j["delta"] = rep.delta;
  j["truncation_bound"] = rep.truncation_bound;
  j["paths"] = rep.paths;
  j["max_abs_discrepancy"] = rep.max_abs_discrepancy;
  return j;
}

}  // namespace demonlab
