#pragma once

// Experiment configuration, dispatch and serialization behind the `karner` CLI.
//
// A configuration is a JSON object holding every experiment's section; the
// subcommand picks which one runs. Results are a CSV table (one row per z or
// per truncation level) plus a JSON summary. CSV bodies depend only on the
// configuration; timing data lives in the summary.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "karner/errors.hpp"
#include "karner/floquet_fermi.hpp"
#include "karner/krein_boundary.hpp"
#include "karner/tensor_core.hpp"

namespace karner::experiment {

using json = nlohmann::json;

enum class Kind { finite_verify, krein_table, floquet_verify, bounds, convergence };

inline constexpr std::array<Kind, 5> kAllKinds = {Kind::finite_verify, Kind::krein_table,
                                                  Kind::floquet_verify, Kind::bounds,
                                                  Kind::convergence};

inline std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::finite_verify: return "finite-verify";
    case Kind::krein_table: return "krein-table";
    case Kind::floquet_verify: return "floquet-verify";
    case Kind::bounds: return "bounds";
    case Kind::convergence: return "convergence";
  }
  return "unknown";
}

inline Kind parse_kind(std::string_view name) {
  for (Kind k : kAllKinds)
    if (to_string(k) == name) return k;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

inline json default_config() {
  return json::parse(R"({
    "seed": 7,
    "output_dir": "results",
    "finite": {
      "instances": 50,
      "max_dim_T": 8,
      "max_dim_H": 8,
      "max_M": 4,
      "max_N": 4,
      "hermitian": false,
      "tolerance": 1e-9,
      "intermediate_tolerance": 1e-11,
      "z": [[0.3, 2.0], [-1.0, 1.5], [1.5, 3.0], [-0.5, -2.0], [2.0, -1.0]]
    },
    "krein": {
      "z": {"re": [-20.0, 80.0, 0.5], "im_values": [0.5, 1.0, 2.0, 4.0, -0.5, -1.0, -2.0, -4.0]},
      "consistency_tolerance": 1e-12
    },
    "drive": {
      "period": 6.283185307179586,
      "cos": [0.0, 0.2],
      "sin": []
    },
    "floquet": {
      "k_max": 8,
      "n_max": 40,
      "n_t": 0,
      "closure": "truncated",
      "tolerance": 1e-6,
      "z": [[0.0, 4.0], [0.0, -4.0], [1.0, 4.0], [0.0, 5.0]]
    },
    "bounds": {
      "ladder": [[4, 20], [8, 40], [16, 80]],
      "z": [[0.0, 4.0]]
    },
    "convergence": {
      "ladder": [[4, 20], [8, 40], [16, 80]],
      "z": [0.0, 4.0]
    }
  })");
}

/// Applies "a.b.c=value". The value is parsed as JSON when possible, otherwise
/// taken as a string. Only existing keys may be overridden.
inline void apply_override(json& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("override must look like key=value: '" + std::string(assignment) + "'");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));

  json* node = &config;
  std::string::size_type start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (!node->is_object() || !node->contains(part))
      throw ConfigError("unknown config key '" + key + "'");
    node = &(*node)[part];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  json value = json::parse(raw, nullptr, false);
  *node = value.is_discarded() ? json(raw) : value;
}

/// FNV-1a over the canonical dump. Object keys are sorted, so the hash does
/// not depend on field order in the source file.
inline std::string config_hash(const json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

inline long long integer(const json& j, const std::string& what, long long min_value) {
  if (!j.is_number_integer()) throw ConfigError(what + " must be an integer");
  const auto v = j.get<long long>();
  if (v < min_value) throw ConfigError(what + " must be >= " + std::to_string(min_value));
  return v;
}

inline double positive(const json& j, const std::string& what) {
  const double v = number(j, what);
  if (!(v > 0.0)) throw ConfigError(what + " must be > 0");
  return v;
}

inline cplx complex_value(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(what + " must be [re, im]");
  return {number(j[0], what), number(j[1], what)};
}

inline std::vector<double> range(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(what + " must be [min, max, step]");
  const double lo = number(j[0], what), hi = number(j[1], what), step = positive(j[2], what + " step");
  if (hi < lo) throw ConfigError(what + " has max < min");
  std::vector<double> out;
  const auto count = static_cast<long long>(std::floor((hi - lo) / step + 1e-9));
  for (long long i = 0; i <= count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

/// Either an explicit list of [re, im] pairs or a rectangle
/// {"re": [min, max, step], "im": [min, max, step] | "im_values": [...]}.
inline std::vector<cplx> z_grid(const json& j, const std::string& what) {
  std::vector<cplx> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(complex_value(item, what));
  } else if (j.is_object() && j.contains("re")) {
    const auto re = range(j["re"], what + ".re");
    std::vector<double> im;
    if (j.contains("im_values")) {
      for (const auto& v : j["im_values"]) im.push_back(number(v, what + ".im_values"));
    } else if (j.contains("im")) {
      im = range(j["im"], what + ".im");
    } else {
      throw ConfigError(what + " rectangle needs 'im' or 'im_values'");
    }
    for (double y : im)
      for (double x : re) out.emplace_back(x, y);
  } else {
    throw ConfigError(what + " must be a list of [re, im] or a rectangle");
  }
  if (out.empty()) throw ConfigError(what + " is empty");
  for (const auto& z : out)
    if (z.imag() == 0.0) throw ConfigError(what + " contains a point on the real axis");
  return out;
}

inline std::vector<std::pair<int, int>> ladder(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + " must be a nonempty list of [k_max, n_max]");
  std::vector<std::pair<int, int>> out;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2) throw ConfigError(what + " entries must be [k_max, n_max]");
    out.emplace_back(static_cast<int>(integer(item[0], what, 0)), static_cast<int>(integer(item[1], what, 0)));
  }
  return out;
}

inline floquet_fermi::HarmonicDrive drive(const json& config) {
  const json& d = config.at("drive");
  floquet_fermi::HarmonicDrive h;
  h.period = positive(d.at("period"), "drive.period");
  for (const auto& v : d.at("cos")) h.cos_amplitudes.push_back(number(v, "drive.cos"));
  for (const auto& v : d.at("sin")) h.sin_amplitudes.push_back(number(v, "drive.sin"));
  return h;
}

inline krein_boundary::TraceClosure closure(const json& j) {
  const std::string name = j.is_string() ? j.get<std::string>() : "";
  if (name == "exact") return krein_boundary::TraceClosure::exact;
  if (name == "truncated") return krein_boundary::TraceClosure::truncated;
  throw ConfigError("floquet.closure must be 'exact' or 'truncated'");
}

}  // namespace detail

/// Throws ConfigError when the section used by `kind` is malformed.
inline void validate(const json& config, Kind kind) {
  if (!config.is_object()) throw ConfigError("config must be a JSON object");
  try {
    detail::integer(config.at("seed"), "seed", 0);
    if (!config.at("output_dir").is_string()) throw ConfigError("output_dir must be a string");
    switch (kind) {
      case Kind::finite_verify: {
        const json& f = config.at("finite");
        detail::integer(f.at("instances"), "finite.instances", 1);
        const auto dt = detail::integer(f.at("max_dim_T"), "finite.max_dim_T", 1);
        detail::integer(f.at("max_dim_H"), "finite.max_dim_H", 1);
        if (detail::integer(f.at("max_M"), "finite.max_M", 1) > dt ||
            detail::integer(f.at("max_N"), "finite.max_N", 1) > dt)
          throw ConfigError("finite.max_M and finite.max_N must not exceed finite.max_dim_T");
        if (!f.at("hermitian").is_boolean()) throw ConfigError("finite.hermitian must be a boolean");
        detail::positive(f.at("tolerance"), "finite.tolerance");
        detail::positive(f.at("intermediate_tolerance"), "finite.intermediate_tolerance");
        detail::z_grid(f.at("z"), "finite.z");
        break;
      }
      case Kind::krein_table:
        detail::z_grid(config.at("krein").at("z"), "krein.z");
        detail::positive(config.at("krein").at("consistency_tolerance"), "krein.consistency_tolerance");
        break;
      case Kind::floquet_verify: {
        const json& f = config.at("floquet");
        detail::drive(config);
        const auto km = detail::integer(f.at("k_max"), "floquet.k_max", 0);
        detail::integer(f.at("n_max"), "floquet.n_max", 0);
        const auto nt = detail::integer(f.at("n_t"), "floquet.n_t", 0);
        if (nt != 0 && nt < 4 * km + 1) throw ConfigError("floquet.n_t must be 0 or >= 4 k_max + 1");
        detail::closure(f.at("closure"));
        detail::positive(f.at("tolerance"), "floquet.tolerance");
        detail::z_grid(f.at("z"), "floquet.z");
        break;
      }
      case Kind::bounds:
        detail::drive(config);
        detail::ladder(config.at("bounds").at("ladder"), "bounds.ladder");
        detail::z_grid(config.at("bounds").at("z"), "bounds.z");
        detail::closure(config.at("floquet").at("closure"));
        break;
      case Kind::convergence: {
        detail::drive(config);
        detail::ladder(config.at("convergence").at("ladder"), "convergence.ladder");
        const cplx z = detail::complex_value(config.at("convergence").at("z"), "convergence.z");
        if (z.imag() == 0.0) throw ConfigError("convergence.z must be off the real axis");
        detail::closure(config.at("floquet").at("closure"));
        break;
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

/// One CSV table with a fixed header and a pass flag per row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> pass;

  std::string csv() const {
    std::ostringstream out;
    const auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out.str();
  }
};

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
inline std::string fmt(long long v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(bool v) { return v ? "true" : "false"; }

struct ResultRecord {
  std::string experiment;
  std::string config_hash;
  json config;
  Table table;
  json extras = json::object();
  double wall_clock_seconds = 0.0;

  bool all_pass() const {
    for (bool p : table.pass)
      if (!p) return false;
    return true;
  }

  json summary() const {
    std::size_t failed = 0;
    for (bool p : table.pass) failed += p ? 0 : 1;
    json s;
    s["experiment"] = experiment;
    s["config_hash"] = config_hash;
    s["config"] = config;
    s["rows"] = table.rows.size();
    s["failed_rows"] = failed;
    s["all_pass"] = all_pass();
    s["wall_clock_seconds"] = wall_clock_seconds;
    s["extras"] = extras;
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    s["finished_at"] = stamp;
    return s;
  }
};

namespace detail {

/// Short error tag for a CSV status column.
inline std::string status_of(const std::exception& e) {
  if (dynamic_cast<const SingularShift*>(&e)) return "SingularShift";
  if (dynamic_cast<const SingularFactor*>(&e)) return "SingularFactor";
  if (dynamic_cast<const SpectrumHit*>(&e)) return "SpectrumHit";
  if (dynamic_cast<const NearPole*>(&e)) return "NearPole";
  if (dynamic_cast<const KreinPole*>(&e)) return "KreinPole";
  if (dynamic_cast<const RealAxis*>(&e)) return "RealAxis";
  if (dynamic_cast<const RadiusViolation*>(&e)) return "RadiusViolation";
  if (dynamic_cast<const BadPartition*>(&e)) return "BadPartition";
  return "Error";
}

inline Table run_finite(const json& config) {
  const json& f = config.at("finite");
  const auto instances = f.at("instances").get<long long>();
  const auto seed = config.at("seed").get<std::uint64_t>();
  const auto max_t = f.at("max_dim_T").get<int>();
  const auto max_h = f.at("max_dim_H").get<int>();
  const auto max_m = f.at("max_M").get<int>();
  const auto max_n = f.at("max_N").get<int>();
  const bool hermitian = f.at("hermitian").get<bool>();
  const double tol = f.at("tolerance").get<double>();
  const double itol = f.at("intermediate_tolerance").get<double>();
  const auto grid = z_grid(f.at("z"), "finite.z");

  Table t;
  t.header = {"instance", "model_seed", "dim_T", "dim_H", "M", "N", "z_re", "z_im",
              "abs_residual", "rel_residual", "intermediate_residual", "factor_condition",
              "singular_factor", "z_in_spectrum", "status", "pass"};
  for (long long i = 0; i < instances; ++i) {
    const std::uint64_t model_seed = seed + static_cast<std::uint64_t>(i);
    std::mt19937_64 rng(model_seed ^ 0x9e3779b97f4a7c15ULL);
    const auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int dim_t = pick(std::min(2, max_t), max_t);
    const int dim_h = pick(1, max_h);
    const int m = pick(1, std::min(max_m, dim_t));
    const int n = pick(1, std::min(max_n, dim_t));
    const auto model = tensor_core::random_model(dim_t, dim_h, static_cast<std::size_t>(m),
                                                 static_cast<std::size_t>(n), model_seed, hermitian);
    for (const cplx z : grid) {
      std::vector<std::string> row = {fmt(i), std::to_string(model_seed), fmt(dim_t), fmt(dim_h),
                                      fmt(m), fmt(n), fmt(z.real()), fmt(z.imag())};
      const auto rep = tensor_core::verify_karner(model, z, tol);
      double inter = std::numeric_limits<double>::infinity();
      std::string status = "ok";
      try {
        inter = tensor_core::verify_intermediate(model, z);
      } catch (const Error& e) {
        status = status_of(e);
      }
      if (rep.flags.singular_factor) status = "SingularFactor";
      if (rep.flags.z_in_spectrum) status = "SpectrumHit";
      const bool pass = rep.passed && inter <= itol;
      for (auto v : {rep.abs_residual, rep.rel_residual, inter, rep.commutator_factor_condition})
        row.push_back(fmt(v));
      row.push_back(fmt(rep.flags.singular_factor));
      row.push_back(fmt(rep.flags.z_in_spectrum));
      row.push_back(status);
      row.push_back(fmt(pass));
      t.rows.push_back(std::move(row));
      t.pass.push_back(pass);
    }
  }
  return t;
}

inline Table run_krein(const json& config) {
  const auto grid = z_grid(config.at("krein").at("z"), "krein.z");
  const double tol = config.at("krein").at("consistency_tolerance").get<double>();
  Table t;
  t.header = {"z_re", "z_im", "tau_re", "tau_im", "green00_re", "green00_im", "consistency",
              "rank_one_norm", "s0", "alpha", "trace_bound_ok", "rank_one_bound_ok", "status", "pass"};
  for (const cplx z : grid) {
    std::vector<std::string> row = {fmt(z.real()), fmt(z.imag())};
    try {
      const cplx tau = krein_boundary::tau_R0_tau(z);
      const cplx g00 = krein_boundary::green0(0.0, 0.0, z);
      const double consistency = std::abs(tau - g00) / std::max(1.0, std::abs(tau));
      const double rn = krein_boundary::rank_one_norm(z);
      const double s0 = std::abs(z.imag());
      const double a = krein_boundary::alpha_bound(s0);
      const bool trace_ok = std::abs(tau) <= a;
      const bool rank_one_ok = rn <= a / s0;
      const bool pass = consistency <= tol && trace_ok && rank_one_ok;
      for (double v : {tau.real(), tau.imag(), g00.real(), g00.imag(), consistency, rn, s0, a})
        row.push_back(fmt(v));
      row.push_back(fmt(trace_ok));
      row.push_back(fmt(rank_one_ok));
      row.push_back("ok");
      row.push_back(fmt(pass));
      t.pass.push_back(pass);
    } catch (const Error& e) {
      for (int c = 0; c < 8; ++c) row.push_back("nan");
      row.insert(row.end(), {fmt(false), fmt(false), status_of(e), fmt(false)});
      t.pass.push_back(false);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline floquet_fermi::DriveProfile sampled_drive(const json& config, int k_max, long long n_t) {
  const auto h = drive(config);
  return h.sample(n_t > 0 ? static_cast<std::size_t>(n_t) : floquet_fermi::default_time_points(k_max));
}

inline floquet_fermi::FloquetTruncation truncation(const json& config,
                                                   const floquet_fermi::DriveProfile& d, int k_max,
                                                   int n_max) {
  auto tr = floquet_fermi::FloquetTruncation::make(d, k_max, n_max);
  tr.closure = closure(config.at("floquet").at("closure"));
  return tr;
}

inline Table run_floquet(const json& config) {
  const json& f = config.at("floquet");
  const int km = f.at("k_max").get<int>();
  const int nm = f.at("n_max").get<int>();
  const double tol = f.at("tolerance").get<double>();
  const auto d = sampled_drive(config, km, f.at("n_t").get<long long>());
  const auto tr = truncation(config, d, km, nm);
  Table t;
  t.header = {"z_re", "z_im", "k_max", "n_max", "dim", "abs_residual", "rel_residual",
              "interior_rel_residual", "factor_condition", "radius_ok", "commutator_condition_ok",
              "status", "pass"};
  for (const cplx z : z_grid(f.at("z"), "floquet.z")) {
    std::vector<std::string> row = {fmt(z.real()), fmt(z.imag()), fmt(km), fmt(nm),
                                    fmt(static_cast<long long>(tr.dim()))};
    try {
      const auto r = floquet_fermi::verify_floquet_karner(d, tr, z, tol);
      for (double v : {r.report.abs_residual, r.report.rel_residual, r.interior_rel_residual,
                       r.report.commutator_factor_condition})
        row.push_back(fmt(v));
      row.push_back(fmt(r.conditions.radius));
      row.push_back(fmt(r.conditions.both()));
      row.push_back(r.report.flags.singular_factor ? "SingularFactor"
                    : r.report.flags.z_in_spectrum ? "SpectrumHit"
                                                   : "ok");
      row.push_back(fmt(r.report.passed));
      t.pass.push_back(r.report.passed);
    } catch (const Error& e) {
      for (int c = 0; c < 4; ++c) row.push_back("nan");
      row.insert(row.end(), {fmt(false), fmt(false), status_of(e), fmt(false)});
      t.pass.push_back(false);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_bounds(const json& config, json& extras) {
  Table t;
  t.header = {"k_max", "n_max", "z_re", "z_im", "s0", "alpha", "lambda_norm", "lambda_bound",
              "commutator_norm", "commutator_bound", "radius_ok", "commutator_condition_ok", "status", "pass"};
  const auto grid = z_grid(config.at("bounds").at("z"), "bounds.z");
  for (const auto& [km, nm] : ladder(config.at("bounds").at("ladder"), "bounds.ladder")) {
    const auto d = sampled_drive(config, km, 0);
    const auto tr = truncation(config, d, km, nm);
    for (const cplx z : grid) {
      std::vector<std::string> row = {fmt(km), fmt(nm), fmt(z.real()), fmt(z.imag())};
      try {
        const auto b = floquet_fermi::check_bounds(d, tr, z);
        for (double v : {b.s0, b.alpha, b.lambda_norm, b.lambda_bound, b.commutator_norm, b.commutator_bound})
          row.push_back(fmt(v));
        const bool pass = b.lambda_within() && b.commutator_within();
        row.push_back(fmt(b.conditions.radius));
        row.push_back(fmt(b.conditions.both()));
        row.push_back("ok");
        row.push_back(fmt(pass));
        t.pass.push_back(pass);
      } catch (const Error& e) {
        for (int c = 0; c < 6; ++c) row.push_back("nan");
        row.insert(row.end(), {fmt(false), fmt(false), status_of(e), fmt(false)});
        t.pass.push_back(false);
      }
      t.rows.push_back(std::move(row));
    }
  }
  const auto d = sampled_drive(config, 0, 0);
  extras["sup_g"] = d.sup_g;
  extras["sup_g_prime"] = d.sup_g_prime;
  try {
    extras["minimal_s0"] = floquet_fermi::minimal_s0(d);
  } catch (const Unattainable&) {
    extras["minimal_s0"] = nullptr;
  }
  return t;
}

/// Rows pass when the interior residual is strictly below the previous level's.
inline Table run_convergence(const json& config) {
  const cplx z = complex_value(config.at("convergence").at("z"), "convergence.z");
  Table t;
  t.header = {"level", "k_max", "n_max", "dim", "rel_residual", "interior_rel_residual", "status", "pass"};
  double previous = std::numeric_limits<double>::infinity();
  int level = 0;
  for (const auto& [km, nm] : ladder(config.at("convergence").at("ladder"), "convergence.ladder")) {
    const auto d = sampled_drive(config, km, 0);
    const auto tr = truncation(config, d, km, nm);
    std::vector<std::string> row = {fmt(level++), fmt(km), fmt(nm), fmt(static_cast<long long>(tr.dim()))};
    try {
      const auto r = floquet_fermi::verify_floquet_karner(d, tr, z, 1.0);
      const double res = r.interior_rel_residual;
      const bool pass = !r.report.flags.any() && res < previous;
      row.insert(row.end(), {fmt(r.report.rel_residual), fmt(res), "ok", fmt(pass)});
      t.pass.push_back(pass);
      previous = res;
    } catch (const Error& e) {
      row.insert(row.end(), {"nan", "nan", status_of(e), fmt(false)});
      t.pass.push_back(false);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace detail

/// Validates and runs one experiment. Module errors are recorded per row.
inline ResultRecord run(Kind kind, const json& config) {
  validate(config, kind);
  const auto start = std::chrono::steady_clock::now();
  ResultRecord rec;
  rec.experiment = to_string(kind);
  rec.config = config;
  rec.config_hash = config_hash(config);
  switch (kind) {
    case Kind::finite_verify: rec.table = detail::run_finite(config); break;
    case Kind::krein_table: rec.table = detail::run_krein(config); break;
    case Kind::floquet_verify: rec.table = detail::run_floquet(config); break;
    case Kind::bounds: rec.table = detail::run_bounds(config, rec.extras); break;
    case Kind::convergence: rec.table = detail::run_convergence(config); break;
  }
  rec.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Writes <dir>/<experiment>.csv and <dir>/<experiment>.summary.json.
inline void write(const ResultRecord& rec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / (rec.experiment + ".csv"), std::ios::binary);
    csv << rec.table.csv();
    if (!csv) throw std::runtime_error("cannot write " + (dir / (rec.experiment + ".csv")).string());
  }
  std::ofstream summary(dir / (rec.experiment + ".summary.json"), std::ios::binary);
  summary << rec.summary().dump(2) << '\n';
  if (!summary) throw std::runtime_error("cannot write summary in " + dir.string());
}

}  // namespace karner::experiment
