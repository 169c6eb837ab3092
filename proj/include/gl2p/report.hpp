#pragma once

// Run configuration, per-check records and the report document.
//
// Serialization: exact rationals as "num/den" strings, p-adic scales as
// {"p", "rational", "half_exponent"} objects, floating values as
// {"value", "error"} pairs. The content hash covers everything except the
// timing fields.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "gl2p/arith.hpp"
#include "gl2p/poisson.hpp"

namespace gl2p {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "gl2p-report/1";

using Json = nlohmann::json;

class ConfigError : public InputError {
 public:
  ConfigError(const std::string& field, const std::string& msg);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  long det = 1;
  LocalTestFunctionArch bump;
  std::map<long, LocalTestFunctionP> finite = {{2, LocalTestFunctionP::unit(2)}, {3, LocalTestFunctionP::unit(3)}};
  double a_max = 4;
  double xi_max = 0;  // 0: certify automatically
  double tol = 1e-5;
  double quad_tol = 1e-10;
  std::vector<long> primes = {2, 3, 5};
  long order = 10;
  std::string format = "table";  // table | json
  int threads = 0;

  void validate() const;
  GlobalTestFunction test_function() const;
  Json to_json() const;

  /// "center=0,1;radius=1.5;order=4;amp=1"
  void parse_bump(const std::string& spec);
  /// "2:unit;3:hecke1;5:congruence2", optionally with "*c" for a scalar.
  void parse_finite(const std::string& spec);
};

std::vector<long> parse_prime_list(const std::string& s);

enum class Status { pass, fail, not_certified };
std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::fail;
  Json inputs = Json::object();
  Json outputs = Json::object();
  Json tolerances = Json::object();
  double seconds = 0;
  std::string note;

  Json to_json(bool with_timing = true) const;
};

struct CsvTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ReportDocument {
  std::string subcommand;
  Json config = Json::object();
  std::vector<CheckRecord> checks;
  std::vector<CsvTable> tables;

  Json to_json() const;
  /// FNV-1a 64 over the canonical JSON without timings, as 16 hex digits.
  std::string content_hash() const;
  std::string render_table() const;
  /// 0 all pass, 1 any fail, 3 any not certified (and none failed).
  int exit_status() const;
  void append(const ReportDocument& other);
};

/// Times `body`, which fills the record; exceptions become failing records.
CheckRecord run_check(const std::string& name, const std::function<void(CheckRecord&)>& body);

Json value_json(double value, double error);
Json rational_json(const Rational& r);
Json scale_json(const PAdicScale& s);
Json complex_json(Complex z, double error);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t h);

void write_csv(const CsvTable& t, const std::string& path);
/// Writes via a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace gl2p
