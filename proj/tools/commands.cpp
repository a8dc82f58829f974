#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "cmaj/acceptance.hpp"
#include "cmaj/error.hpp"
#include "cmaj/hull.hpp"
#include "cmaj/lattice.hpp"
#include "cmaj/model.hpp"
#include "cmaj/parallel.hpp"
#include "cmaj/poisson_faces.hpp"
#include "cmaj/randperm.hpp"
#include "cmaj/rng.hpp"
#include "cmaj/transform.hpp"
#include "cmaj/walk.hpp"

namespace cmaj::cli {
namespace {

using json = nlohmann::ordered_json;

json scalar_json(double x) { return x; }
json scalar_json(const Rational& x) { return to_string(x); }

template <Scalar T>
json increments_json(const std::vector<T>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(scalar_json(x));
  return a;
}

std::string join_scalars(const std::vector<Numeric>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ",") + x.str();
  return s;
}

void check_q(double q) {
  if (!(q > 0 && q < 1)) fail(ErrorCode::InvalidParameter, "--q must lie in (0, 1)");
}

// Walk length for one draw: fixed --n or geometric n(q).
std::size_t draw_length(const Options& o, RngStream& rng) {
  if (o.n) return *o.n;
  return sample_geometric_length(*o.q, rng);
}

void require_length_source(const Options& o) {
  if (o.n.has_value() == o.q.has_value()) fail(ErrorCode::InvalidParameter, "give exactly one of --n and --q");
  if (o.q) check_q(*o.q);
}

struct Row {
  std::size_t n = 0;
  Numeric S, M;
  std::size_t L = 0, F = 0, H = 0;
  std::string faces = "()", excursions = "()";
};

template <Scalar T>
Row summarize(const Walk<T>& w) {
  Row r;
  r.n = w.size();
  if (r.n == 0) return r;
  const auto m = concave_majorant(w);
  const auto d = argmax_decomposition(w, m);
  record_identity(d.identity_holds);
  r.S = Numeric(w.values.back());
  r.M = Numeric(d.M);
  r.L = d.L;
  r.F = m.F();
  r.H = m.H();
  r.faces = m.face_composition().str();
  r.excursions = m.excursion_composition().str();
  return r;
}

json numeric_json(const Numeric& x) {
  if (x.is_exact()) return to_string(x.to_rational());
  return x.to_double();
}

}  // namespace

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

int cmd_simulate(const Options& o, std::ostream& out) {
  require_length_source(o);
  const auto model = IncrementModel::parse(o.model);
  RngStream rng(o.seed);
  std::vector<Row> rows;
  rows.reserve(o.samples);
  for (std::size_t i = 0; i < o.samples; ++i) {
    const std::size_t n = draw_length(o, rng);
    const auto path = build_walk(sample_increments(model, n, rng));
    rows.push_back(std::visit([](const auto& w) { return summarize(w); }, path));
  }
  if (o.format == Format::Csv) {
    out << "sample,n,S,M,L,F,H,faces,excursions\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << i << ',' << r.n << ',' << r.S.str() << ',' << r.M.str() << ',' << r.L << ',' << r.F << ',' << r.H
          << ',' << csv_field(r.faces) << ',' << csv_field(r.excursions) << '\n';
    }
    return 0;
  }
  json doc;
  doc["command"] = "simulate";
  doc["parameters"] = {{"model", model.name()}, {"samples", o.samples}};
  if (o.n) doc["parameters"]["n"] = *o.n;
  if (o.q) doc["parameters"]["q"] = *o.q;
  doc["seed"] = o.seed;
  json list = json::array();
  for (const auto& r : rows)
    list.push_back({{"n", r.n},
                    {"S", numeric_json(r.S)},
                    {"M", numeric_json(r.M)},
                    {"L", r.L},
                    {"F", r.F},
                    {"H", r.H},
                    {"faces", r.faces},
                    {"excursions", r.excursions}});
  doc["rows"] = std::move(list);
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_poisson(const Options& o, std::ostream& out) {
  if (!o.q) fail(ErrorCode::InvalidParameter, "poisson needs --q");
  check_q(*o.q);
  const auto model = IncrementModel::parse(o.model);
  RngStream rng(o.seed);
  std::vector<FacePointProcess> draws;
  for (std::size_t i = 0; i < o.samples; ++i) draws.push_back(sample_face_point_process(*o.q, model, rng, false));
  if (o.format == Format::Csv) {
    out << "sample,length,increment\n";
    for (std::size_t i = 0; i < draws.size(); ++i)
      for (const auto& p : draws[i].points) out << i << ',' << p.length << ',' << format_scalar(p.increment) << '\n';
    return 0;
  }
  json doc;
  doc["command"] = "poisson";
  doc["parameters"] = {{"model", model.name()}, {"q", *o.q}, {"samples", o.samples}};
  doc["seed"] = o.seed;
  json list = json::array();
  for (const auto& d : draws) {
    json pts = json::array();
    for (const auto& p : d.points) pts.push_back({{"length", p.length}, {"increment", p.increment}});
    list.push_back({{"total_length", d.total_length()}, {"faces", std::move(pts)}});
  }
  doc["draws"] = std::move(list);
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_gf(const Options& o, std::ostream& out) {
  const auto model = IncrementModel::parse(o.model);
  const auto gf = gf_HKF(model, o.order_s, o.order_t);
  const std::pair<const char*, const BivariateSeries*> tables[] = {{"H", &gf.H}, {"K", &gf.K}, {"F", &gf.F}};
  if (o.format == Format::Csv) {
    out << "series,n,m,coefficient\n";
    for (const auto& [name, s] : tables)
      for (std::size_t n = 0; n <= o.order_s; ++n)
        for (std::size_t m = 0; m <= o.order_t; ++m) out << name << ',' << n << ',' << m << ',' << to_string(s->coeff(n, m)) << '\n';
    return 0;
  }
  json doc;
  doc["command"] = "gf";
  doc["parameters"] = {{"model", model.name()}, {"order_s", o.order_s}, {"order_t", o.order_t}};
  for (const auto& [name, s] : tables) {
    json rows = json::array();
    for (std::size_t n = 0; n <= o.order_s; ++n) {
      json row = json::array();
      for (std::size_t m = 0; m <= o.order_t; ++m) row.push_back(to_string(s->coeff(n, m)));
      rows.push_back(std::move(row));
    }
    doc[name] = std::move(rows);
  }
  out << doc.dump(2) << '\n';
  return 0;
}

namespace {

std::vector<Numeric> transform_input(const Options& o, const IncrementModel& model, RngStream& rng) {
  if (!o.increments.empty()) {
    std::vector<Numeric> xs;
    std::stringstream ss(o.increments);
    for (std::string item; std::getline(ss, item, ',');) xs.emplace_back(parse_rational(item));
    return xs;
  }
  if (!o.n) fail(ErrorCode::InvalidParameter, "transform needs --n or --increments");
  return sample_increments(model, *o.n, rng);
}

template <Scalar T>
json theorem1_json(const std::vector<T>& xs, RngStream& rng) {
  const auto t = theorem1_transform(xs, rng);
  json perm = json::array();
  for (auto i : t.permutation) perm.push_back(i);
  return {{"input", increments_json(xs)},
          {"permutation", std::move(perm)},
          {"output", increments_json(t.walk.increments)},
          {"cycle_lengths", t.cycle_lengths.str()},
          {"segments", t.segments.str()},
          {"faces", t.faces.str()},
          {"excursions", t.excursions.str()}};
}

template <Scalar T>
json path3214_json(const std::vector<T>& xs, std::size_t U) {
  const auto w = build_walk(xs);
  const auto t = path_transform_3214(w, U);
  return {{"input", increments_json(xs)}, {"U", U}, {"k", t.k}, {"output", increments_json(t.walk.increments)}};
}

}  // namespace

int cmd_transform(const Options& o, std::ostream& out) {
  const auto model = IncrementModel::parse(o.model);
  RngStream rng(o.seed);
  const auto xs = transform_input(o, model, rng);
  const auto path = build_walk(xs);
  json result;
  if (o.kind == "theorem1") {
    result = std::visit([&](const auto& w) { return theorem1_json(w.increments, rng); }, path);
  } else if (o.kind == "3214") {
    result = std::visit([&](const auto& w) { return path3214_json(w.increments, o.u); }, path);
  } else {
    fail(ErrorCode::InvalidParameter, "--kind is theorem1 or 3214");
  }
  if (o.format == Format::Csv) {
    out << "field,value\n";
    for (const auto& [k, v] : result.items())
      out << k << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    return 0;
  }
  json doc;
  doc["command"] = "transform";
  doc["parameters"] = {{"model", model.name()}, {"kind", o.kind}, {"input", join_scalars(xs)}};
  doc["seed"] = o.seed;
  doc["result"] = std::move(result);
  out << doc.dump(2) << '\n';
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto ids = acceptance_suite(o.suite);
  set_worker_count(o.threads);
  const auto start = std::chrono::steady_clock::now();
  const auto results = run_acceptance(ids, o.seed);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool all = true;
  for (const auto& r : results) all = all && r.pass();
  if (o.format == Format::Csv) {
    out << "criterion,name,check,statistic,threshold,effect_size,samples,pass\n";
    for (const auto& r : results)
      for (const auto& c : r.checks)
        out << r.id << ',' << r.name << ',' << csv_field(c.label) << ',' << format_scalar(c.statistic) << ','
            << format_scalar(c.threshold) << ',' << format_scalar(c.effect_size) << ',' << c.samples << ','
            << (c.pass ? "true" : "false") << '\n';
    return all ? 0 : 1;
  }
  json doc;
  doc["command"] = "verify";
  doc["parameters"] = {{"suite", o.suite}};
  doc["seed"] = o.seed;
  json crit = json::array();
  for (const auto& r : results) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"label", c.label},
                        {"statistic", c.statistic},
                        {"threshold", c.threshold},
                        {"effect_size", c.effect_size},
                        {"samples", c.samples},
                        {"pass", c.pass}});
    crit.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass()}, {"checks", std::move(checks)}});
  }
  doc["criteria"] = std::move(crit);
  doc["pass"] = all;
  if (o.timing) doc["wall_time_seconds"] = wall;
  out << doc.dump(2) << '\n';
  return all ? 0 : 1;
}

int cmd_experiment(const Options& o, std::ostream& out) {
  if (o.experiment != "stable-index") fail(ErrorCode::InvalidParameter, "unknown experiment '" + o.experiment + "'");
  std::vector<double> grid;
  std::stringstream ss(o.alphas);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) grid.push_back(std::stod(item));
  set_worker_count(o.threads);
  RngStream rng(o.seed);
  const Composition c121({1, 2, 1});
  out << "alpha,estimate,se,samples\n";
  for (double alpha : grid) {
    auto stream = rng.fork("alpha");
    const auto est = composition_prob_mc(IncrementModel::symmetric_stable(alpha), c121, o.samples, stream);
    out << format_scalar(alpha) << ',' << format_scalar(2 * est.value) << ',' << format_scalar(2 * est.se) << ','
        << est.samples << '\n';
  }
  return 0;
}

}  // namespace cmaj::cli
