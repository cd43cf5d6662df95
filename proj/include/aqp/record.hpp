#pragma once

#include <chrono>
#include <ctime>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "aqp/errors.hpp"
#include "aqp/oracles.hpp"
#include "aqp/protocols.hpp"

#ifndef AQP_BUILD_ID
#define AQP_BUILD_ID "dev"
#endif

namespace aqp {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Accepts decimal, 0x-prefixed hex or 0b-prefixed binary.
inline Bits parse_mask(std::string_view text) {
  int base = 10;
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    base = 16;
    text.remove_prefix(2);
  } else if (text.size() > 2 && text[0] == '0' && (text[1] == 'b' || text[1] == 'B')) {
    base = 2;
    text.remove_prefix(2);
  }
  if (text.empty()) throw DomainError("parse_mask: empty mask");
  Bits value = 0;
  for (const char c : text) {
    int digit = -1;
    if (c >= '0' && c <= '9') digit = c - '0';
    else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
    if (digit < 0 || digit >= base) {
      throw DomainError("parse_mask: invalid digit '" + std::string(1, c) + "'");
    }
    if (value > (~Bits{0} - static_cast<Bits>(digit)) / static_cast<Bits>(base)) {
      throw DomainError("parse_mask: value overflows 64 bits");
    }
    value = value * static_cast<Bits>(base) + static_cast<Bits>(digit);
  }
  return value;
}

// Reproducible description of an oracle.
struct OracleSpec {
  std::string problem;  // "bv" | "simon"
  int n = 0;
  Bits a = 0;
  std::optional<int> pivot_bit;
  std::optional<std::uint64_t> scramble_seed;
};

inline OracleSpec oracle_spec(const BvMask& mask) { return {"bv", mask.n, mask.a, {}, {}}; }
inline OracleSpec oracle_spec(const SimonOracle& oracle) {
  return {"simon", oracle.n(), oracle.mask(), oracle.pivot_bit(), oracle.scramble_seed()};
}

inline SimonOracle rebuild_simon(const OracleSpec& spec) {
  if (spec.problem != "simon") throw DomainError("rebuild_simon: spec is not a Simon oracle");
  return simon_build(spec.n, spec.a, spec.scramble_seed);
}

namespace detail {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& value) {
  j[key] = value ? json(*value) : json(nullptr);
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline void to_json(json& j, const OracleSpec& spec) {
  j = json{{"problem", spec.problem}, {"n", spec.n}, {"a", spec.a}};
  detail::put_optional(j, "pivot_bit", spec.pivot_bit);
  detail::put_optional(j, "scramble_seed", spec.scramble_seed);
}

inline void from_json(const json& j, OracleSpec& spec) {
  j.at("problem").get_to(spec.problem);
  j.at("n").get_to(spec.n);
  j.at("a").get_to(spec.a);
  spec.pivot_bit = detail::get_optional<int>(j, "pivot_bit");
  spec.scramble_seed = detail::get_optional<std::uint64_t>(j, "scramble_seed");
}

NLOHMANN_JSON_SERIALIZE_ENUM(Problem, {{Problem::bv, "bv"}, {Problem::simon, "simon"}})
NLOHMANN_JSON_SERIALIZE_ENUM(EvolutionPath,
                             {{EvolutionPath::full, "full"}, {EvolutionPath::factored, "factored"}})

inline void to_json(json& j, const RunConfig& cfg) {
  j = json{{"problem", cfg.problem}, {"n", cfg.n},          {"time", cfg.total_time},
           {"steps", cfg.steps},     {"path", cfg.path},    {"seed", cfg.seed},
           {"compare_factored", cfg.compare_factored}};
  detail::put_optional(j, "a", cfg.a);
  detail::put_optional(j, "max_repeats", cfg.max_repeats);
  detail::put_optional(j, "scramble_seed", cfg.scramble_seed);
}

inline void from_json(const json& j, RunConfig& cfg) {
  j.at("problem").get_to(cfg.problem);
  j.at("n").get_to(cfg.n);
  j.at("time").get_to(cfg.total_time);
  j.at("steps").get_to(cfg.steps);
  j.at("path").get_to(cfg.path);
  j.at("seed").get_to(cfg.seed);
  cfg.compare_factored = j.value("compare_factored", false);
  cfg.a = detail::get_optional<Bits>(j, "a");
  cfg.max_repeats = detail::get_optional<int>(j, "max_repeats");
  cfg.scramble_seed = detail::get_optional<std::uint64_t>(j, "scramble_seed");
}

inline void to_json(json& j, const RunReport& r) {
  j = json{{"success", r.success},
           {"planted_a", r.planted_a},
           {"quantum_runs", r.quantum_runs},
           {"restarts", r.restarts},
           {"rows_collected", r.rows_collected},
           {"zero_rows", r.zero_rows},
           {"per_run_fidelity", r.per_run_fidelity},
           {"branch_fidelity", r.branch_fidelity},
           {"wall_ms", r.wall_ms}};
  detail::put_optional(j, "recovered_a", r.recovered_a);
  detail::put_optional(j, "max_amplitude_deviation", r.max_amplitude_deviation);
}

inline void from_json(const json& j, RunReport& r) {
  j.at("success").get_to(r.success);
  j.at("planted_a").get_to(r.planted_a);
  j.at("quantum_runs").get_to(r.quantum_runs);
  j.at("restarts").get_to(r.restarts);
  j.at("rows_collected").get_to(r.rows_collected);
  j.at("zero_rows").get_to(r.zero_rows);
  j.at("per_run_fidelity").get_to(r.per_run_fidelity);
  j.at("branch_fidelity").get_to(r.branch_fidelity);
  j.at("wall_ms").get_to(r.wall_ms);
  r.recovered_a = detail::get_optional<Bits>(j, "recovered_a");
  r.max_amplitude_deviation = detail::get_optional<double>(j, "max_amplitude_deviation");
}

struct Provenance {
  std::uint64_t seed = 0;
  std::string build_id = AQP_BUILD_ID;
  std::string timestamp;
};

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Self-describing single-run record; config is the resolved (explicit-mask) config.
struct OutputRecord {
  std::string schema_version = kSchemaVersion;
  RunConfig config;
  OracleSpec oracle;
  RunReport results;
  Provenance provenance;
};

inline OutputRecord make_record(const RunConfig& resolved, const RunReport& report) {
  OutputRecord record;
  record.config = resolved;
  record.oracle = resolved.problem == Problem::bv
                      ? oracle_spec(BvMask(resolved.n, *resolved.a))
                      : oracle_spec(simon_build(resolved.n, *resolved.a, resolved.scramble_seed));
  record.results = report;
  record.provenance = {resolved.seed, AQP_BUILD_ID, utc_timestamp()};
  return record;
}

inline void to_json(json& j, const Provenance& p) {
  j = json{{"seed", p.seed}, {"build_id", p.build_id}, {"timestamp", p.timestamp}};
}

inline void from_json(const json& j, Provenance& p) {
  j.at("seed").get_to(p.seed);
  j.at("build_id").get_to(p.build_id);
  j.at("timestamp").get_to(p.timestamp);
}

inline void to_json(json& j, const OutputRecord& r) {
  j = json{{"schema_version", r.schema_version},
           {"config", r.config},
           {"oracle", r.oracle},
           {"results", r.results},
           {"provenance", r.provenance}};
}

inline void from_json(const json& j, OutputRecord& r) {
  j.at("schema_version").get_to(r.schema_version);
  j.at("config").get_to(r.config);
  j.at("oracle").get_to(r.oracle);
  j.at("results").get_to(r.results);
  j.at("provenance").get_to(r.provenance);
}

inline constexpr const char* kSweepCsvHeader =
    "axis_value,trials,success_rate,mean_fidelity,mean_rows,mean_restarts,wall_ms";

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& table) {
  out << "# schema_version=" << kSchemaVersion << '\n' << kSweepCsvHeader << '\n';
  std::ostringstream line;
  line.precision(17);
  for (const auto& row : table) {
    line.str("");
    line << row.axis_value << ',' << row.trials << ',' << row.success_rate << ','
         << row.mean_fidelity << ',' << row.mean_rows << ',' << row.mean_restarts << ','
         << row.wall_ms;
    out << line.str() << '\n';
  }
}

inline void to_json(json& j, const SweepRow& row) {
  j = json{{"axis_value", row.axis_value},
           {"trials", row.trials},
           {"success_rate", row.success_rate},
           {"mean_fidelity", row.mean_fidelity},
           {"mean_branch_fidelity", row.mean_branch_fidelity},
           {"mean_rows", row.mean_rows},
           {"mean_restarts", row.mean_restarts},
           {"wall_ms", row.wall_ms}};
}

}  // namespace aqp
