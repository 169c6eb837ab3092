#include "gl2p/report.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace gl2p {

ConfigError::ConfigError(const std::string& field, const std::string& msg)
    : InputError("config." + field + ": " + msg), field_(field) {}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_double(const std::string& field, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field, "not a number: '" + v + "'");
  }
}

long parse_long(const std::string& field, const std::string& v) {
  try {
    size_t pos = 0;
    long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field, "not an integer: '" + v + "'");
  }
}

}  // namespace

void RunConfig::parse_bump(const std::string& spec) {
  for (const auto& kv : split(spec, ';')) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("bump", "expected key=value, got '" + kv + "'");
    std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
    if (k == "center") {
      auto parts = split(v, ',');
      if (parts.size() != 2) throw ConfigError("bump.center", "expected 'trace,det'");
      bump.a0 = parse_double("bump.center", parts[0]);
      bump.n0 = parse_double("bump.center", parts[1]);
    } else if (k == "radius") {
      bump.r0 = parse_double("bump.radius", v);
    } else if (k == "order") {
      bump.m = static_cast<int>(parse_long("bump.order", v));
    } else if (k == "amp") {
      bump.amp = parse_double("bump.amp", v);
    } else if (k == "radial") {
      bump.radial = parse_double("bump.radial", v);
    } else if (k == "norm") {
      bump.norm = parse_double("bump.norm", v);
    } else {
      throw ConfigError("bump", "unknown key '" + k + "'");
    }
  }
}

void RunConfig::parse_finite(const std::string& spec) {
  finite.clear();
  for (const auto& item : split(spec, ';')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("finite", "expected p:kind, got '" + item + "'");
    long p = parse_long("finite", item.substr(0, colon));
    if (!is_prime(p)) throw ConfigError("finite", std::to_string(p) + " is not prime");
    std::string kind = item.substr(colon + 1);
    Rational c(1);
    if (auto star = kind.find('*'); star != std::string::npos) {
      try {
        c = Rational::parse(kind.substr(star + 1));
      } catch (const std::exception&) {
        throw ConfigError("finite." + std::to_string(p), "bad scalar");
      }
      kind = kind.substr(0, star);
    }
    auto num_suffix = [&](const std::string& prefix) {
      return parse_long("finite." + std::to_string(p), kind.substr(prefix.size()));
    };
    if (kind == "unit")
      finite[p] = LocalTestFunctionP::unit(p, c);
    else if (kind.rfind("hecke", 0) == 0)
      finite[p] = LocalTestFunctionP::hecke(p, num_suffix("hecke"), c);
    else if (kind.rfind("congruence", 0) == 0)
      finite[p] = LocalTestFunctionP::congruence(p, num_suffix("congruence"), c);
    else
      throw ConfigError("finite." + std::to_string(p), "unknown kind '" + kind + "'");
  }
}

void RunConfig::validate() const {
  if (det < 1) throw ConfigError("det", "must be a positive integer");
  if (!(tol > 0)) throw ConfigError("tol", "must be positive");
  if (!(quad_tol > 0)) throw ConfigError("quad_tol", "must be positive");
  if (!(a_max > 0)) throw ConfigError("a_max", "must be positive");
  if (!(xi_max >= 0)) throw ConfigError("xi_max", "must be positive (or 0 for automatic)");
  if (order < 0 || order > 12) throw ConfigError("order", "must be in [0, 12]");
  if (format != "table" && format != "json") throw ConfigError("format", "must be 'table' or 'json'");
  if (primes.empty()) throw ConfigError("primes", "must not be empty");
  for (long p : primes)
    if (!is_prime(p)) throw ConfigError("primes", std::to_string(p) + " is not prime");
  try {
    bump.validate();
  } catch (const std::exception& e) {
    throw ConfigError("bump", e.what());
  }
  if (std::abs(bump.n0 - static_cast<double>(det)) > 1e-12)
    throw ConfigError("bump.center", "determinant of the center must equal det");
  try {
    test_function().validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("finite", e.what());
  }
}

GlobalTestFunction RunConfig::test_function() const {
  GlobalTestFunction f;
  f.arch = bump;
  f.finite = finite;
  f.n = det;
  return f;
}

Json RunConfig::to_json() const {
  Json fin = Json::object();
  for (const auto& [p, fp] : finite) fin[std::to_string(p)] = fp.to_string();
  return {{"det", det},
          {"bump",
           {{"center", {bump.a0, bump.n0}},
            {"radius", bump.r0},
            {"order", bump.m},
            {"amp", bump.amp},
            {"radial", bump.radial_radius()},
            {"norm", bump.norm}}},
          {"finite", fin},
          {"a_max", a_max},
          {"xi_max", xi_max},
          {"tol", tol},
          {"quad_tol", quad_tol},
          {"primes", primes},
          {"order", order}};
}

std::vector<long> parse_prime_list(const std::string& s) {
  std::vector<long> out;
  for (const auto& t : split(s, ',')) {
    long p = parse_long("primes", t);
    if (!is_prime(p)) throw ConfigError("primes", t + " is not prime");
    out.push_back(p);
  }
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_certified: return "not-certified";
  }
  return "?";
}

Json CheckRecord::to_json(bool with_timing) const {
  Json j = {{"name", name},
            {"status", to_string(status)},
            {"inputs", inputs},
            {"outputs", outputs},
            {"tolerances", tolerances}};
  if (!note.empty()) j["note"] = note;
  if (with_timing) j["seconds"] = seconds;
  return j;
}

namespace {

Json document_json(const ReportDocument& d, bool with_timing) {
  Json checks = Json::array();
  for (const auto& c : d.checks) checks.push_back(c.to_json(with_timing));
  return {{"schema", kReportSchema}, {"version", kVersion}, {"subcommand", d.subcommand}, {"config", d.config},
          {"checks", checks}};
}

}  // namespace

Json ReportDocument::to_json() const {
  Json j = document_json(*this, true);
  j["content_hash"] = content_hash();
  j["exit_status"] = exit_status();
  return j;
}

std::string ReportDocument::content_hash() const { return hex64(fnv1a64(document_json(*this, false).dump())); }

std::string ReportDocument::render_table() const {
  std::ostringstream os;
  os << "gl2p " << kVersion << "  " << subcommand << "\n";
  for (const auto& c : checks) {
    os << std::left << std::setw(16) << ("[" + to_string(c.status) + "]") << std::setw(34) << c.name;
    os << c.outputs.dump() << "\n";
    if (!c.note.empty()) os << std::string(16, ' ') << c.note << "\n";
  }
  os << "content hash " << content_hash() << "\n";
  return os.str();
}

int ReportDocument::exit_status() const {
  bool nc = false;
  for (const auto& c : checks) {
    if (c.status == Status::fail) return 1;
    if (c.status == Status::not_certified) nc = true;
  }
  return nc ? 3 : 0;
}

void ReportDocument::append(const ReportDocument& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  tables.insert(tables.end(), other.tables.begin(), other.tables.end());
}

CheckRecord run_check(const std::string& name, const std::function<void(CheckRecord&)>& body) {
  CheckRecord r;
  r.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const TailNotCertifiedError& e) {
    r.status = Status::not_certified;
    r.note = e.what();
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.note = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Json value_json(double value, double error) { return {{"value", value}, {"error", error}}; }

Json rational_json(const Rational& r) { return r.to_string(); }

Json scale_json(const PAdicScale& s) {
  return {{"p", s.prime()}, {"rational", s.rational_part().to_string()}, {"half_exponent", s.half_exponent()}};
}

Json complex_json(Complex z, double error) { return {{"re", z.real()}, {"im", z.imag()}, {"error", error}}; }

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const CsvTable& t, const std::string& path) {
  std::ostringstream os;
  auto row = [&](const std::vector<std::string>& r) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\n";
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
  write_file_atomic(path, os.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  static std::atomic<unsigned long> counter{0};
  std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename to " + path + ": " + ec.message());
  }
}

}  // namespace gl2p
