#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

#include "demonlab/montecarlo.hpp"
#include "demonlab/oracle.hpp"
#include "demonlab/sources.hpp"

namespace demonlab {

// Raised for malformed configuration input. `where` is either "line L,
// column C" for syntax errors or a dotted field path such as
// "sweep.series[1].v2".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Parses JSON text, reporting syntax errors with line and column.
nlohmann::json parse_json(std::string_view text);

// Typed access to a JSON object that reports failures by field path.
class JsonReader {
 public:
  JsonReader(const nlohmann::json& node, std::string path);

  const std::string& path() const noexcept { return path_; }
  const nlohmann::json& node() const noexcept { return node_; }
  bool has(std::string_view key) const;
  JsonReader child(std::string_view key) const;
  JsonReader element(std::size_t index) const;
  std::size_t size() const;
  bool is_array() const noexcept { return node_.is_array(); }
  bool is_object() const noexcept { return node_.is_object(); }

  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  std::uint64_t unsigned_integer(std::string_view key) const;
  std::uint64_t unsigned_integer_or(std::string_view key, std::uint64_t fallback) const;
  std::string string(std::string_view key) const;
  std::string string_or(std::string_view key, std::string fallback) const;
  bool boolean_or(std::string_view key, bool fallback) const;
  double as_number() const;
  int as_int() const;
  // Rejects keys outside `allowed`.
  void only(std::initializer_list<std::string_view> allowed) const;
  [[noreturn]] void fail(std::string_view key, const std::string& message) const;

 private:
  std::string field(std::string_view key) const;
  const nlohmann::json& node_;
  std::string path_;
};

nlohmann::json to_json(const SourceSpec& spec);
SourceSpec source_from_json(const JsonReader& in);

nlohmann::json to_json(const RunConfig& config);
RunConfig run_config_from_json(const JsonReader& in);

nlohmann::json to_json(const RunResult& result);
nlohmann::json to_json(const PowerMeasurement& m);
nlohmann::json to_json(const oracle::Report& report);

}  // namespace demonlab
