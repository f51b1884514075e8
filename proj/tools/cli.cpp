#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "casimir/asymptotics.hpp"
#include "casimir/energy.hpp"
#include "casimir/errors.hpp"
#include "casimir/parallel.hpp"
#include "casimir/pfa_sign.hpp"

namespace casimir::cli {

namespace {

using nlohmann::json;

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  if (s == "inf" || s == "Inf" || s == "infinity")
    return std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

SphereSpec parse_bc(const std::string& text, double radius) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "dirichlet" && tail.empty()) return SphereSpec::dirichlet(radius);
  if (head == "neumann" && tail.empty()) return SphereSpec::neumann(radius);
  if (head == "pec" && tail.empty()) return SphereSpec::pec(radius);
  if (head == "robin" && !tail.empty()) {
    const double z = parse_double(tail, "robin zeta");
    if (z == 0.0) return SphereSpec::dirichlet(radius);
    if (std::isinf(z) && z > 0) return SphereSpec::neumann(radius);
    return SphereSpec::robin(radius, z);
  }
  if (head == "dielectric") {
    const auto parts = split(tail, ',');
    if (parts.size() != 2)
      throw ConfigError("dielectric needs 'dielectric:<eps>,<mu>', got '" + text + "'");
    return SphereSpec::dielectric(radius, parse_double(parts[0], "eps"),
                                  parse_double(parts[1], "mu"));
  }
  throw ConfigError("unknown boundary condition '" + text +
                    "' (dirichlet|neumann|robin:<zeta>|dielectric:<eps>,<mu>|pec)");
}

FieldKind parse_field(const std::string& f) {
  if (f == "scalar-real") return FieldKind::RealScalar;
  if (f == "scalar-complex") return FieldKind::ComplexScalar;
  if (f == "em") return FieldKind::Electromagnetic;
  throw ConfigError("unknown field '" + f + "' (scalar-real|scalar-complex|em)");
}

std::vector<double> parse_grid(const std::string& g) {
  const auto parts = split(g, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw ConfigError("grid must be start:stop:count[:log], got '" + g + "'");
  const double a = parse_double(parts[0], "grid start");
  const double b = parse_double(parts[1], "grid stop");
  const double c = parse_double(parts[2], "grid count");
  if (c < 0 || c != std::floor(c)) throw ConfigError("grid count must be a non-negative integer");
  const bool log = parts.size() == 4;
  if (log && parts[3] != "log") throw ConfigError("grid spacing flag must be 'log'");
  if (log && !(a > 0 && b > 0)) throw ConfigError("log grid needs positive bounds");
  const int n = static_cast<int>(c);
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    const double t = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out.push_back(log ? a * std::pow(b / a, t) : a + (b - a) * t);
  }
  return out;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Options shared by the verbs; unused ones are simply not registered.
struct Options {
  std::string field = "scalar-real";
  std::string bc1 = "dirichlet", bc2 = "dirichlet";
  double radius = 1.0;
  double d = 0.0;
  std::string d_grid;
  std::string lmax = "auto";
  double qtol = 1e-9;
  std::string out;
  std::string format;
  int workers = 1;
  int max_evals = 30000;
  int terms = 0;
  std::string source = "computed";
  std::string zeta1 = "0,1,10,inf", zeta2 = "0,1,10,inf";
  std::vector<std::string> bcs;
  std::string centers;
};

using Config = std::vector<std::pair<std::string, std::string>>;

struct Output {
  std::string format;
  Config config;
  std::string verb;
};

void write_csv_header(std::ostream& os, const Output& o) {
  os << "# generated=" << timestamp() << "\n";
  os << "# schema=casimir-" << o.verb << "/" << kSchemaVersion << "\n";
  for (const auto& [k, v] : o.config) os << "# " << k << "=" << v << "\n";
}

json json_envelope(const Output& o) {
  json j;
  j["generated"] = timestamp();
  j["schema"] = "casimir-" + o.verb + "/" + kSchemaVersion;
  json c = json::object();
  for (const auto& [k, v] : o.config) c[k] = v;
  j["config"] = c;
  return j;
}

struct Sink {
  std::ofstream file;
  std::ostream* os;
  Sink(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw ConfigError("cannot open output file '" + path + "'");
      os = &file;
    }
  }
};

std::optional<int> parse_lmax(const std::string& s) {
  if (s == "auto") return std::nullopt;
  const double v = parse_double(s, "lmax");
  if (v < 0 || v != std::floor(v) || v > 80)
    throw ConfigError("--lmax must be 'auto' or an integer in [0, 80]");
  return static_cast<int>(v);
}

QuadOptions quad_options(const Options& o, int workers) {
  if (!(o.qtol > 0.0) || o.qtol >= 1.0) throw ConfigError("--qtol must lie in (0, 1)");
  QuadOptions q;
  q.rel_tol = o.qtol;
  q.workers = std::max(1, workers);
  if (o.max_evals < 15) throw ConfigError("--max-evals must be >= 15");
  q.max_evaluations = o.max_evals;
  return q;
}

EnergyEstimate compute_energy(const Geometry& g, FieldKind kind, std::optional<int> lmax,
                              const QuadOptions& q) {
  if (lmax) return casimir_energy(g, kind, *lmax, q);
  return casimir_energy_auto(g, kind, q);
}

// Large-distance series appropriate for the pair, if one exists.
std::optional<SeriesExpansion> comparison_series(FieldKind kind, const SphereSpec& a,
                                                 const SphereSpec& b) {
  if (a.radius != b.radius) return std::nullopt;
  if (kind != FieldKind::Electromagnetic) {
    if (!a.scalar() || !b.scalar()) return std::nullopt;
    return expand_scalar_to(a, b, 8);
  }
  if (a.material || b.material) return std::nullopt;
  if (a.law == Law::PerfectConductor && b.law == Law::PerfectConductor)
    return expand_em(a, b, 9);
  if (a.law == Law::Dielectric && b.law == Law::Dielectric)
    return expand_em_dielectric(a, b);
  return expand_em(a, b, 4);
}

double series_energy(FieldKind kind, const SeriesExpansion& s, double radius, double d) {
  const SeriesValue v = eval_series(s, radius, d, static_cast<int>(s.coeffs.size()));
  // the scalar tables are for a real field; energies are in hbar c / R
  return (kind == FieldKind::ComplexScalar ? 2.0 : 1.0) * v.value;
}

std::optional<double> pfa_for(FieldKind kind, const SphereSpec& a, const SphereSpec& b,
                              double d) {
  if (a.radius != b.radius) return std::nullopt;
  if (kind == FieldKind::Electromagnetic) return pfa_energy_em(a.radius, d) * a.radius;
  return pfa_energy_for(kind, a, b, d) * a.radius;
}

Config base_config(const Options& o, FieldKind) {
  return {{"field", o.field}, {"bc1", o.bc1}, {"bc2", o.bc2}, {"radius", num(o.radius)}};
}

int cmd_energy(const Options& o, std::ostream& out) {
  const FieldKind kind = parse_field(o.field);
  const SphereSpec a = parse_bc(o.bc1, o.radius), b = parse_bc(o.bc2, o.radius);
  const auto lmax = parse_lmax(o.lmax);
  const Geometry g = Geometry::pair(a, b, o.d);
  validate(g, kind);
  const QuadOptions q = quad_options(o, o.workers);
  Output meta{o.format.empty() ? "json" : o.format, base_config(o, kind), "energy"};
  meta.config.push_back({"d", num(o.d)});
  meta.config.push_back({"lmax", o.lmax});
  meta.config.push_back({"qtol", num(o.qtol)});

  const EnergyEstimate e = compute_energy(g, kind, lmax, q);
  json r;
  r["E"] = e.value;
  r["E_truncated"] = e.truncated;
  r["l_max_used"] = e.l_max;
  r["extrapolated"] = e.extrapolated;
  r["delta"] = e.delta_fit;
  r["extrapolation_uncertainty"] = e.uncertainty;
  r["quadrature_error"] = e.quad_error;
  r["abs_err_estimate"] = e.uncertainty + e.quad_error;
  json hist = json::array();
  for (const auto& [l, v] : e.history) hist.push_back({{"l", l}, {"E", v}});
  r["history"] = hist;
  if (const auto p = pfa_for(kind, a, b, o.d)) {
    r["E_pfa"] = *p;
    r["E_over_PFA"] = e.value / *p;
  }
  if (const auto s = comparison_series(kind, a, b)) {
    r["series_value"] = series_energy(kind, *s, o.radius, o.d);
    r["series_provenance"] = provenance_name(s->provenance);
  }

  if (meta.format == "json") {
    json j = json_envelope(meta);
    j["result"] = r;
    out << j.dump(2) << "\n";
  } else if (meta.format == "csv") {
    write_csv_header(out, meta);
    out << "l,E_l\n";
    for (const auto& [l, v] : e.history) out << l << "," << num(v) << "\n";
    out << "# E=" << num(e.value) << "\n# delta=" << num(e.delta_fit) << "\n";
  } else {
    throw ConfigError("--format must be csv or json");
  }
  return 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const FieldKind kind = parse_field(o.field);
  const SphereSpec a = parse_bc(o.bc1, o.radius), b = parse_bc(o.bc2, o.radius);
  const auto lmax = parse_lmax(o.lmax);
  if (o.d_grid.empty()) throw ConfigError("sweep needs --d-grid start:stop:count[:log]");
  const std::vector<double> grid = parse_grid(o.d_grid);
  for (double d : grid)
    if (!(d > 2.0 * o.radius))
      throw ConfigError("grid point d=" + num(d) + " touches or crosses contact d = 2R");
  Output meta{o.format.empty() ? "csv" : o.format, base_config(o, kind), "sweep"};
  meta.config.push_back({"d_grid", o.d_grid});
  meta.config.push_back({"lmax", o.lmax});
  meta.config.push_back({"qtol", num(o.qtol)});
  if (meta.format != "csv" && meta.format != "json")
    throw ConfigError("--format must be csv or json");
  // validate once before spawning work
  if (!grid.empty()) validate(Geometry::pair(a, b, grid.front()), kind);

  const QuadOptions q = quad_options(o, 1);
  const auto series = comparison_series(kind, a, b);
  std::vector<EnergyEstimate> rows(grid.size());
  parallel_for(grid.size(), o.workers, [&](std::size_t i) {
    rows[i] = compute_energy(Geometry::pair(a, b, grid[i]), kind, lmax, q);
  });

  auto row_values = [&](std::size_t i) {
    const double d = grid[i];
    const EnergyEstimate& e = rows[i];
    const auto p = pfa_for(kind, a, b, d);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return std::array<double, 8>{d / o.radius,
                                 (d - 2.0 * o.radius) / o.radius,
                                 e.value,
                                 p ? e.value / *p : nan,
                                 static_cast<double>(e.l_max),
                                 e.delta_fit,
                                 series ? series_energy(kind, *series, o.radius, d) : nan,
                                 e.uncertainty + e.quad_error};
  };
  if (meta.format == "csv") {
    write_csv_header(out, meta);
    out << kSweepColumns << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto v = row_values(i);
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (c) out << ",";
        if (c == 4) out << static_cast<int>(v[c]);
        else if (std::isnan(v[c])) out << "nan";
        else out << num(v[c]);
      }
      out << "\n";
    }
  } else {
    json j = json_envelope(meta);
    j["columns"] = split(kSweepColumns, ',');
    json arr = json::array();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto v = row_values(i);
      json row = json::array();
      for (double x : v) row.push_back(std::isnan(x) ? json(nullptr) : json(x));
      arr.push_back(row);
    }
    j["rows"] = arr;
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_series(const Options& o, std::ostream& out) {
  const FieldKind kind = parse_field(o.field);
  const SphereSpec a = parse_bc(o.bc1, o.radius), b = parse_bc(o.bc2, o.radius);
  Output meta{o.format.empty() ? "json" : o.format, base_config(o, kind), "series"};
  meta.config.push_back({"source", o.source});
  if (o.d > 0) meta.config.push_back({"d", num(o.d)});
  meta.config.push_back({"terms", std::to_string(o.terms)});
  if (meta.format != "json") throw ConfigError("series output is json only");

  SeriesExpansion s;
  if (o.source == "published") {
    auto is = [](const SphereSpec& x, Law l) { return x.law == l; };
    if (kind == FieldKind::Electromagnetic && is(a, Law::PerfectConductor) &&
        is(b, Law::PerfectConductor))
      s = published_metal();
    else if (kind == FieldKind::RealScalar && is(a, Law::Dirichlet) && is(b, Law::Dirichlet))
      s = published_dd();
    else if (kind == FieldKind::RealScalar && is(a, Law::Neumann) && is(b, Law::Neumann))
      s = published_nn();
    else if (kind == FieldKind::RealScalar &&
             ((is(a, Law::Dirichlet) && is(b, Law::Neumann)) ||
              (is(a, Law::Neumann) && is(b, Law::Dirichlet))))
      s = published_dn();
    else
      throw ConfigError("no published table for this pair; use --source computed");
  } else if (o.source == "printed") {
    if (kind != FieldKind::Electromagnetic)
      throw ConfigError("--source printed applies to dielectric EM pairs");
    s = expand_em_dielectric(a, b);
  } else if (o.source == "computed") {
    if (kind == FieldKind::Electromagnetic) {
      s = expand_em(a, b, o.terms > 0 ? std::min(o.terms, 10) - 1 : 9);
    } else {
      if (kind == FieldKind::ComplexScalar)
        throw ConfigError("series coefficients are tabulated for the real scalar field");
      s = expand_scalar_to(a, b, o.terms > 0 ? std::min(o.terms + 2, 10) : 8);
    }
  } else {
    throw ConfigError("--source must be computed, published or printed");
  }

  json j = json_envelope(meta);
  json r;
  r["kind"] = s.kind == SeriesKind::ScalarB ? "b_j" : "c_n";
  r["prefactor_power"] = s.prefactor_power;
  r["provenance"] = provenance_name(s.provenance);
  json cs = json::array();
  for (const auto& [k, t] : s.coeffs)
    cs.push_back({{"index", k}, {"value", t.value}, {"exact", t.exact}, {"certified", t.certified}});
  r["coefficients"] = cs;
  if (o.d > 0) {
    const int n = o.terms > 0 ? o.terms : static_cast<int>(s.coeffs.size());
    const SeriesValue v = eval_series(s, o.radius, o.d, n);
    r["value"] = v.value;
    r["terms"] = v.terms;
    r["divergence_index"] = v.divergence_index;
    r["value_before_divergence"] = v.value_before_divergence;
  }
  j["result"] = r;
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_pfa(const Options& o, std::ostream& out) {
  const FieldKind kind = parse_field(o.field);
  const SphereSpec a = parse_bc(o.bc1, o.radius), b = parse_bc(o.bc2, o.radius);
  Output meta{o.format.empty() ? "json" : o.format, base_config(o, kind), "pfa"};
  meta.config.push_back({"d", num(o.d)});
  if (meta.format != "json") throw ConfigError("pfa output is json only");
  const auto p = pfa_for(kind, a, b, o.d);
  if (!p) throw ConfigError("PFA needs equal radii");
  json j = json_envelope(meta);
  j["result"] = {{"E_pfa", *p}};
  if (kind != FieldKind::Electromagnetic)
    j["result"]["case"] = pfa_case(a, b) == PfaCase::Like ? "like" : "unlike";
  out << j.dump(2) << "\n";
  return 0;
}

SphereSpec zeta_sphere(const std::string& z, double radius) {
  return parse_bc("robin:" + z, radius);
}

int cmd_signmap(const Options& o, std::ostream& out) {
  const FieldKind kind = FieldKind::RealScalar;
  const auto lmax = parse_lmax(o.lmax == "auto" ? "12" : o.lmax);
  std::vector<double> grid;
  if (o.d_grid.empty()) {
    for (int i = 0; i <= 20; ++i) grid.push_back(o.radius / (0.46 - 0.02 * i));
  } else {
    grid = parse_grid(o.d_grid);
  }
  std::sort(grid.begin(), grid.end());
  for (double d : grid)
    if (!(d > 2.0 * o.radius))
      throw ConfigError("grid point d=" + num(d) + " touches or crosses contact d = 2R");
  const auto z1 = split(o.zeta1, ','), z2 = split(o.zeta2, ',');
  std::vector<std::pair<SphereSpec, SphereSpec>> pairs;
  std::vector<std::pair<std::string, std::string>> labels;
  for (const auto& a : z1)
    for (const auto& b : z2) {
      pairs.emplace_back(zeta_sphere(a, o.radius), zeta_sphere(b, o.radius));
      labels.emplace_back(a, b);
    }
  Output meta{o.format.empty() ? "csv" : o.format,
              {{"field", "scalar-real"}, {"radius", num(o.radius)}, {"zeta1", o.zeta1},
               {"zeta2", o.zeta2}, {"lmax", std::to_string(*lmax)},
               {"d_grid", o.d_grid.empty() ? "R/d=0.06..0.46 step 0.02" : o.d_grid},
               {"qtol", num(o.qtol)}},
              "signmap"};
  if (meta.format != "csv" && meta.format != "json")
    throw ConfigError("--format must be csv or json");
  const QuadOptions q = quad_options(o, 1);

  const std::size_t np = pairs.size(), ng = grid.size();
  std::vector<double> ratio(np * ng);
  parallel_for(np * ng, o.workers, [&](std::size_t k) {
    const auto& [a, b] = pairs[k / ng];
    const double d = grid[k % ng];
    const EnergyEstimate e = casimir_energy(Geometry::pair(a, b, d), kind, *lmax, q);
    ratio[k] = e.value / pfa_energy(o.radius, d, pfa_case(a, b));
  });

  struct Row {
    ForceSign small, large;
    SignProfile profile;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < np; ++i) {
    const auto& [a, b] = pairs[i];
    const std::vector<double> r(ratio.begin() + i * ng, ratio.begin() + (i + 1) * ng);
    const double s = pfa_case(a, b) == PfaCase::Like ? -1.0 : 1.0;
    SignProfile p = find_zero_force(grid, r, o.radius, s);
    p.parameters = labels[i].first + "," + labels[i].second;
    rows.push_back({small_separation_sign(a, b), large_separation_sign(a, b), std::move(p)});
  }

  auto zeros_text = [](const SignProfile& p) {
    std::string s;
    for (const auto& z : p.zeros) {
      if (!s.empty()) s += ";";
      s += num(z.d0) + (z.minus_to_plus ? ":-=>+" : ":+=>-");
      if (z.unresolved) s += ":unresolved";
    }
    return s;
  };
  if (meta.format == "csv") {
    write_csv_header(out, meta);
    out << "zeta1,zeta2,small_L,large_L,n_zeros,zeros\n";
    for (std::size_t i = 0; i < np; ++i) {
      out << labels[i].first << "," << labels[i].second << ","
          << force_sign_symbol(rows[i].small) << "," << force_sign_symbol(rows[i].large)
          << "," << rows[i].profile.zeros.size() << "," << zeros_text(rows[i].profile)
          << "\n";
    }
  } else {
    json j = json_envelope(meta);
    json arr = json::array();
    for (std::size_t i = 0; i < np; ++i) {
      json zs = json::array();
      for (const auto& z : rows[i].profile.zeros)
        zs.push_back({{"d0", z.d0}, {"tau", z.tau}, {"resolution", z.resolution},
                      {"transition", z.minus_to_plus ? "-=>+" : "+=>-"},
                      {"unresolved", z.unresolved}});
      json rg = json::array();
      for (const auto& r : rows[i].profile.regimes)
        rg.push_back({{"d_lo", r.d_lo}, {"d_hi", r.d_hi}, {"sign", force_sign_name(r.sign)}});
      arr.push_back({{"zeta1", labels[i].first},
                     {"zeta2", labels[i].second},
                     {"small_L", std::string(1, force_sign_symbol(rows[i].small))},
                     {"large_L", std::string(1, force_sign_symbol(rows[i].large))},
                     {"zeros", zs},
                     {"regimes", rg}});
    }
    j["rows"] = arr;
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_nbody(const Options& o, std::ostream& out) {
  const FieldKind kind = parse_field(o.field);
  if (o.bcs.size() < 2) throw ConfigError("nbody needs at least two --bc entries");
  const auto cs = split(o.centers, ',');
  if (cs.size() != o.bcs.size())
    throw ConfigError("--centers must list one z coordinate per --bc");
  Geometry g;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    g.spheres.push_back(parse_bc(o.bcs[i], o.radius));
    g.centers.push_back(parse_double(cs[i], "center"));
  }
  validate(g, kind);
  const auto lmax = parse_lmax(o.lmax == "auto" ? "10" : o.lmax);
  Output meta{o.format.empty() ? "json" : o.format,
              {{"field", o.field}, {"radius", num(o.radius)}, {"centers", o.centers},
               {"lmax", std::to_string(*lmax)}, {"qtol", num(o.qtol)}},
              "nbody"};
  for (std::size_t i = 0; i < o.bcs.size(); ++i)
    meta.config.push_back({"bc" + std::to_string(i + 1), o.bcs[i]});
  if (meta.format != "json") throw ConfigError("nbody output is json only");
  const EnergyEstimate e = casimir_energy_nbody(g, kind, *lmax, quad_options(o, o.workers));
  json j = json_envelope(meta);
  json hist = json::array();
  for (const auto& [l, v] : e.history) hist.push_back({{"l", l}, {"E", v}});
  j["result"] = {{"E", e.value},
                 {"E_truncated", e.truncated},
                 {"l_max_used", e.l_max},
                 {"delta", e.delta_fit},
                 {"abs_err_estimate", e.uncertainty + e.quad_error},
                 {"history", hist}};
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir energies between spheres from the scattering log-determinant"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool pair) {
    c->add_option("--field", o.field, "scalar-real|scalar-complex|em");
    if (pair) {
      c->add_option("--bc1", o.bc1, "dirichlet|neumann|robin:<zeta>|dielectric:<eps>,<mu>|pec");
      c->add_option("--bc2", o.bc2, "boundary condition of the second sphere");
    }
    c->add_option("--radius", o.radius, "sphere radius (energies in hbar c / radius)");
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--format", o.format, "csv|json");
  };
  auto numeric = [&](CLI::App* c) {
    c->add_option("--lmax", o.lmax, "multipole cutoff n or 'auto'");
    c->add_option("--qtol", o.qtol, "relative quadrature tolerance");
    c->add_option("--workers", o.workers, "worker threads");
    c->add_option("--max-evals", o.max_evals, "quadrature budget (integrand evaluations)");
  };

  auto* energy = app.add_subcommand("energy", "single-point energy");
  common(energy, true);
  numeric(energy);
  energy->add_option("--d", o.d, "center-to-center distance")->required();

  auto* sweep = app.add_subcommand("sweep", "energy over a distance grid (CSV)");
  common(sweep, true);
  numeric(sweep);
  sweep->add_option("--d-grid", o.d_grid, "start:stop:count[:log] in units of length")
      ->required();

  auto* series = app.add_subcommand("series", "large-distance coefficients");
  common(series, true);
  series->add_option("--d", o.d, "evaluate the partial sum at this distance");
  series->add_option("--terms", o.terms, "number of coefficient slots");
  series->add_option("--source", o.source, "computed|published|printed");

  auto* pfa = app.add_subcommand("pfa", "proximity force estimate");
  common(pfa, true);
  pfa->add_option("--d", o.d, "center-to-center distance")->required();

  auto* signmap = app.add_subcommand("signmap", "force sign classification over zeta pairs");
  common(signmap, false);
  numeric(signmap);
  signmap->add_option("--zeta1", o.zeta1, "comma list of zeta for sphere 1 (inf allowed)");
  signmap->add_option("--zeta2", o.zeta2, "comma list of zeta for sphere 2");
  signmap->add_option("--d-grid", o.d_grid, "start:stop:count[:log]");

  auto* nbody = app.add_subcommand("nbody", "N collinear spheres");
  common(nbody, false);
  numeric(nbody);
  nbody->add_option("--bc", o.bcs, "boundary condition per sphere (repeat)")->required();
  nbody->add_option("--centers", o.centers, "comma list of z coordinates")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (o.workers < 1) throw ConfigError("--workers must be >= 1");
    Sink sink(o.out, out);
    std::ostream& os = *sink.os;
    if (*energy) return cmd_energy(o, os);
    if (*sweep) return cmd_sweep(o, os);
    if (*series) return cmd_series(o, os);
    if (*pfa) return cmd_pfa(o, os);
    if (*signmap) return cmd_signmap(o, os);
    if (*nbody) return cmd_nbody(o, os);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace casimir::cli
