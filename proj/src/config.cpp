#include "demonlab/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "demonlab/diagnostics.hpp"
#include "demonlab/presets.hpp"

namespace demonlab {

using nlohmann::json;

namespace {

template <typename Fn>
auto at_field(const JsonReader& in, std::string_view key, Fn fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    in.fail(key, e.what());
  }
}

McSettings mc_from_json(const JsonReader& in) {
  McSettings m;
  // The normalization belongs to the power measurement, not the run itself.
  json run_node = in.node();
  run_node.erase("normalization");
  m.run = run_config_from_json(JsonReader(run_node, in.path()));
  m.norm = at_field(in, "normalization",
                    [&] { return parse_normalization(in.string_or("normalization", "singles")); });
  m.seed_given = in.has("seed");
  return m;
}

G2Settings g2_from_json(const JsonReader& in) {
  in.only({"source", "slots", "tau", "stream", "coherence_slots", "threads", "fit"});
  G2Settings g;
  if (in.has("source")) g.spec = source_from_json(in.child("source"));
  g.slots = in.unsigned_integer_or("slots", g.slots);
  if (g.slots == 0) in.fail("slots", "must be at least 1");
  if (in.has("tau")) {
    const auto arr = in.child("tau");
    if (!arr.is_array() || arr.size() == 0) in.fail("tau", "expected a nonempty array of lags");
    g.tau.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const int t = arr.element(i).as_int();
      if (t < 0) arr.element(i).fail("", "lags must be non-negative");
      g.tau.push_back(t);
    }
  }
  g.options.stream = at_field(in, "stream", [&] { return parse_stream_model(in.string_or("stream", "iid")); });
  g.options.coherence_slots = in.number_or("coherence_slots", 0.0);
  if (g.options.stream == StreamModel::GaussianMemory && !(g.options.coherence_slots > 0.0))
    in.fail("coherence_slots", "gaussian-memory streams need coherence_slots > 0");
  g.options.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, in.unsigned_integer_or("threads", 1)));
  g.fit = in.boolean_or("fit", g.options.stream == StreamModel::GaussianMemory);
  return g;
}

OutputSettings output_from_json(const JsonReader& in) {
  in.only({"path", "format"});
  OutputSettings o;
  if (in.has("path")) o.path = in.string("path");
  if (in.has("format")) o.format = at_field(in, "format", [&] { return parse_report_format(in.string("format")); });
  return o;
}

}  // namespace

Series series_from_json(const JsonReader& in) {
  in.only({"source", "normalization", "eps2"});
  Series s;
  s.spec = source_from_json(in.child("source"));
  s.norm = at_field(in, "normalization", [&] { return parse_normalization(in.string_or("normalization", "singles")); });
  s.eps2 = at_field(in, "eps2", [&] { return CouplingEfficiency(in.number_or("eps2", 1.0)); });
  if (s.norm == Normalization::Pairs && is_thermal(s.spec.kind))
    in.fail("normalization", "pairs normalization needs a pair source");
  return s;
}

std::vector<double> r2_grid_from_json(const JsonReader& in) {
  std::vector<double> grid;
  if (in.is_array()) {
    for (std::size_t i = 0; i < in.size(); ++i) grid.push_back(in.element(i).as_number());
  } else {
    in.only({"start", "stop", "step"});
    const double start = in.number("start");
    const double stop = in.number("stop");
    const double step = in.number("step");
    if (!(step > 0.0)) in.fail("step", "must be positive");
    if (stop < start) in.fail("stop", "must not be below start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (n > 100000) in.fail("step", "grid too fine");
    for (long i = 0; i <= n; ++i) grid.push_back(start + step * static_cast<double>(i));
  }
  if (grid.empty()) in.fail("", "empty reflectivity grid");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) in.fail("", "reflectivity " + std::to_string(grid[i]) + " outside [0, 1]");
  return grid;
}

SweepConfig sweep_from_json(const JsonReader& in, std::optional<SweepConfig> base) {
  in.only({"preset", "series", "r2_grid", "engine", "mutual_info", "info_target", "slots", "threads"});
  if (in.has("preset")) base = at_field(in, "preset", [&] { return preset(in.string("preset")); });
  SweepConfig c = base.value_or(SweepConfig{});
  if (!base) c.r2_grid = default_r2_grid();
  if (in.has("series")) {
    const auto arr = in.child("series");
    if (!arr.is_array()) in.fail("series", "expected an array");
    c.series.clear();
    for (std::size_t i = 0; i < arr.size(); ++i) c.series.push_back(series_from_json(arr.element(i)));
  }
  if (c.series.empty()) in.fail("series", "needs at least one series");
  if (in.has("r2_grid")) c.r2_grid = r2_grid_from_json(in.child("r2_grid"));
  c.engine = at_field(in, "engine", [&] { return parse_engine(in.string_or("engine", std::string(to_string(c.engine)))); });
  c.mutual_info = in.boolean_or("mutual_info", c.mutual_info);
  c.info_target = at_field(in, "info_target",
                           [&] { return parse_info_target(in.string_or("info_target", std::string(to_string(c.info_target)))); });
  c.slots = in.unsigned_integer_or("slots", c.slots);
  c.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, in.unsigned_integer_or("threads", c.threads)));
  at_field(in, "", [&] {
    c.validate();
    return 0;
  });
  return c;
}

AppConfig parse_config(std::string_view text) {
  const json doc = parse_json(text);
  const JsonReader root(doc, "");
  root.only({"version", "seed", "preset", "sweep", "mc", "g2", "output"});
  if (!root.has("version")) root.fail("version", "missing field");
  if (!doc.at("version").is_number_integer() || doc.at("version").get<std::int64_t>() != kConfigVersion)
    root.fail("version", "unsupported version (expected " + std::to_string(kConfigVersion) + ")");
  AppConfig c;
  if (root.has("seed")) c.seed = root.unsigned_integer("seed");
  std::optional<SweepConfig> base;
  if (root.has("preset")) base = at_field(root, "preset", [&] { return preset(root.string("preset")); });
  if (root.has("sweep")) {
    c.sweep = sweep_from_json(root.child("sweep"), base);
  } else {
    c.sweep = base;
  }
  if (root.has("mc")) c.mc = mc_from_json(root.child("mc"));
  if (root.has("g2")) c.g2 = g2_from_json(root.child("g2"));
  if (root.has("output")) c.output = output_from_json(root.child("output"));
  return c;
}

AppConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path, "cannot read config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

json to_json(const Series& s) {
  json j;
  j["source"] = to_json(s.spec);
  j["normalization"] = std::string(to_string(s.norm));
  j["eps2"] = s.eps2.value();
  return j;
}

json to_json(const SweepConfig& c) {
  json j;
  json series = json::array();
  for (const auto& s : c.series) series.push_back(to_json(s));
  j["series"] = series;
  j["r2_grid"] = c.r2_grid;
  j["engine"] = std::string(to_string(c.engine));
  j["mutual_info"] = c.mutual_info;
  j["info_target"] = std::string(to_string(c.info_target));
  j["slots"] = c.slots;
  j["threads"] = c.threads;
  return j;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::optional<std::uint64_t> config) {
  if (flag) return *flag;
  if (env && *env) {
    const std::string text(env);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0' || text.front() == '-')
      throw ConfigError("DEMONLAB_SEED", "expected a non-negative integer, got \"" + text + "\"");
    return v;
  }
  return config.value_or(kDefaultSeed);
}

}  // namespace demonlab
