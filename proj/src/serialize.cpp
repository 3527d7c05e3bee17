// Copyright 2026 The coarse-double Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coarse/serialize.hpp"

#include <fstream>
#include <sstream>

#include "coarse/errors.hpp"

namespace coarse {

namespace {

Rational rat(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw std::invalid_argument("expected an exact number, got " + j.dump());
}

Json read_json_text(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw std::invalid_argument("cannot open " + text.substr(1));
    return Json::parse(in);
  }
  return Json::parse(text);
}

PointId point_from_json(const MetricSpace& s, const Json& j) {
  if (j.is_string()) return s.parse_point(j.get<std::string>());
  if (j.is_number_integer()) return s.parse_point(std::to_string(j.get<std::int64_t>()));
  std::vector<Rational> c;
  for (const auto& x : j) c.push_back(rat(x));
  return s.point_from_coords(c);
}

MetricSpace::CustomMetric metric_from_name(const std::string& n) {
  if (n == "manhattan") return MetricSpace::CustomMetric::kManhattan;
  if (n == "euclidean-rounded") return MetricSpace::CustomMetric::kEuclideanRounded;
  if (n == "table") return MetricSpace::CustomMetric::kTable;
  throw std::invalid_argument("unknown metric '" + n + "'");
}

std::string metric_name(MetricSpace::CustomMetric m) {
  switch (m) {
    case MetricSpace::CustomMetric::kManhattan: return "manhattan";
    case MetricSpace::CustomMetric::kEuclideanRounded: return "euclidean-rounded";
    default: return "table";
  }
}

Json coords(const PointId& p) {
  Json c = Json::array({p.c0});
  if (p.dim == 2) c.push_back(p.c1);
  return c;
}

}  // namespace

SpacePtr space_from_json(const Json& j) {
  if (j.is_string()) return MetricSpace::builtin(j.get<std::string>());
  if (j.contains("builtin")) return MetricSpace::builtin(j.at("builtin").get<std::string>());
  std::vector<PointId> pts;
  for (const auto& p : j.at("points")) {
    PointId id;
    if (p.is_number_integer()) {
      id.c0 = p.get<std::int64_t>();
    } else {
      id.c0 = p.at(0).get<std::int64_t>();
      if (p.size() == 2) {
        id.c1 = p.at(1).get<std::int64_t>();
        id.dim = 2;
      } else if (p.size() != 1) {
        throw std::invalid_argument("points have 1 or 2 coordinates");
      }
    }
    pts.push_back(id);
  }
  std::vector<std::vector<Rational>> table;
  if (j.contains("table")) {
    for (const auto& row : j.at("table")) {
      std::vector<Rational> r;
      for (const auto& x : row) r.push_back(rat(x));
      table.push_back(std::move(r));
    }
  }
  std::optional<Rational> cert;
  if (j.contains("certified_radius")) cert = rat(j.at("certified_radius"));
  std::optional<PointId> base;
  if (j.contains("basepoint")) {
    PointId b;
    const Json& bj = j.at("basepoint");
    b.c0 = bj.at(0).get<std::int64_t>();
    if (bj.size() == 2) {
      b.c1 = bj.at(1).get<std::int64_t>();
      b.dim = 2;
    }
    base = b;
  }
  return MetricSpace::custom(std::move(pts), metric_from_name(j.value("metric", "manhattan")),
                             std::move(table), cert, base);
}

Json space_to_json(const MetricSpace& s) {
  if (s.kind() != SpaceKind::kCustom) return {{"builtin", s.name()}};
  Json j;
  j["points"] = Json::array();
  for (const auto& p : s.custom_points()) j["points"].push_back(coords(p));
  j["metric"] = metric_name(s.custom_metric());
  if (s.custom_metric() == MetricSpace::CustomMetric::kTable) {
    j["table"] = Json::array();
    for (const auto& row : s.custom_table()) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(x.str());
      j["table"].push_back(r);
    }
  }
  if (s.certified_radius()) j["certified_radius"] = s.certified_radius()->str();
  j["basepoint"] = coords(s.basepoint());
  return j;
}

SpacePtr load_space(const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '@')) return space_from_json(read_json_text(text));
  return MetricSpace::builtin(text);
}

namespace {

DoubleMetric build_kernel(const SpacePtr& space, const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "delta") {
    return delta_generated(space,
                           delta_from_expression(space, Expression::parse(j.at("delta").get<std::string>())));
  }
  if (kind == "zero_at") return zero_at(space, point_from_json(*space, j.at("point")));
  if (kind == "subset") {
    return subset_metric(space, parse_point_set(*space, j.at("set").get<std::string>()));
  }
  if (kind == "levels") return metric_from_levels(levels_from_json(space, j.at("levels")));
  if (kind == "expression") {
    LowerBound lb{j.value("coercive", true), rat(j.value("floor", Json("1")))};
    return expression_kernel(space, Expression::parse(j.at("expr").get<std::string>()), lb);
  }
  if (kind == "adjoint") return adjoint(build_kernel(space, j.at("of")));
  if (kind == "compose" || kind == "max" || kind == "min_glue") {
    DoubleMetric a = build_kernel(space, j.at("a")), b = build_kernel(space, j.at("b"));
    if (kind == "compose") return compose(a, b);
    if (kind == "max") return pointwise_max(a, b);
    return min_glue(a, b);
  }
  throw std::invalid_argument("unknown kernel kind '" + kind + "'");
}

Window probe_window(const MetricSpace& s) {
  for (Rational r : {Rational(8), Rational(2), Rational(0)}) {
    try {
      Window w = s.window(r);
      window_points(s, w);
      return w;
    } catch (const IncompleteEnumeration&) {
    }
  }
  return s.window(0);
}

void probe(const DoubleMetric& d, const std::string& kind) {
  const MetricSpace& s = *d.space();
  Window w = probe_window(s);
  auto pts = window_points(s, w);
  LowerBound lb = d.lower_bound();
  for (const auto& x : pts) {
    for (const auto& y : pts) {
      KernelValue v = d.eval(x, y, w);
      Rational need = lb.coercive ? s.distance(x, y) + lb.floor : lb.floor;
      if (v.value < need) {
        throw DomainError("kernel breaks its lower bound at (" + s.label(x) + ", " + s.label(y) +
                          "')");
      }
    }
  }
  if (kind == "delta" || kind == "zero_at" || kind == "levels") {
    AxiomReport a = check_axioms(d, w);
    if (!a.pass) throw DomainError("kernel fails the metric axioms: " + a.first_violation);
  }
}

}  // namespace

KernelSpec kernel_from_json(const SpacePtr& space, const Json& j) {
  KernelSpec k{j, build_kernel(space, j)};
  probe(k.metric, j.at("kind").get<std::string>());
  return k;
}

KernelSpec parse_kernel(const SpacePtr& space, const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '@')) {
    return kernel_from_json(space, read_json_text(text));
  }
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  Json j;
  if (head == "delta") {
    j = {{"kind", "delta"}, {"delta", arg}};
  } else if (head == "zero") {
    j = {{"kind", "zero_at"}, {"point", arg.empty() ? space->label(space->basepoint()) : arg}};
  } else if (head == "subset") {
    j = {{"kind", "subset"}, {"set", arg}};
  } else if (head == "proj") {
    j = {{"kind", "levels"}, {"levels", {{"subset", arg}}}};
  } else if (head == "proj-expr") {
    j = {{"kind", "levels"}, {"levels", {{"expr", arg}}}};
  } else {
    throw std::invalid_argument("unknown metric '" + text + "'");
  }
  return kernel_from_json(space, j);
}

LevelFunction levels_from_json(const SpacePtr& space, const Json& j) {
  if (j.is_string()) return parse_levels(space, j.get<std::string>());
  if (j.contains("subset")) {
    return levels_from_subset(space, parse_point_set(*space, j.at("subset").get<std::string>()));
  }
  if (j.contains("expr")) {
    return levels_from_expression(space, Expression::parse(j.at("expr").get<std::string>()));
  }
  if (j.contains("unit")) return unit_levels(space);
  if (j.contains("zero")) return zero_levels(space, point_from_json(*space, j.at("zero")));
  if (j.contains("meet")) {
    return meet(levels_from_json(space, j.at("meet").at(0)), levels_from_json(space, j.at("meet").at(1)));
  }
  if (j.contains("join")) {
    return join(levels_from_json(space, j.at("join").at(0)), levels_from_json(space, j.at("join").at(1)));
  }
  if (j.contains("metric")) {
    KernelSpec k = kernel_from_json(space, j.at("metric"));
    return levels_from_metric(k.metric, space->window(rat(j.value("radius", Json(16)))));
  }
  if (j.contains("levels")) {
    std::vector<std::pair<PointId, std::int64_t>> table;
    for (const auto& row : j.at("levels")) {
      table.emplace_back(point_from_json(*space, row.at(0)), rat(row.at(1)).to_int64());
    }
    std::optional<Expression> tail;
    if (j.contains("tail") && !j.at("tail").is_null()) {
      tail = Expression::parse(j.at("tail").get<std::string>());
    }
    return levels_from_table(space, j.value("name", "table"), std::move(table), tail);
  }
  throw std::invalid_argument("unrecognised level document " + j.dump());
}

LevelFunction parse_levels(const SpacePtr& space, const std::string& text) {
  if (!text.empty() && (text[0] == '{' || text[0] == '@')) {
    return levels_from_json(space, read_json_text(text));
  }
  if (text == "unit") return unit_levels(space);
  if (text == "zero") return zero_levels(space, space->basepoint());
  auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown levels '" + text + "'");
  std::string head = text.substr(0, colon), arg = text.substr(colon + 1);
  if (head == "subset") return levels_from_subset(space, parse_point_set(*space, arg));
  if (head == "expr") return levels_from_expression(space, Expression::parse(arg));
  if (head == "zero") return zero_levels(space, space->parse_point(arg));
  throw std::invalid_argument("unknown levels '" + text + "'");
}

Json levels_to_json(const LevelFunction& l, const Window& w) {
  const MetricSpace& s = *l.space();
  Json j;
  j["space"] = space_to_json(s);
  j["name"] = l.name();
  j["levels"] = Json::array();
  for (const auto& p : window_points(s, w)) {
    j["levels"].push_back(Json::array({s.label(p), l(p)}));
  }
  j["tail"] = l.tail ? Json(l.tail->source()) : Json(nullptr);
  return j;
}

namespace {

Json pairs_json(const std::vector<std::pair<Rational, Rational>>& pts) {
  Json a = Json::array();
  for (const auto& [x, v] : pts) a.push_back(Json::array({x.str(), v.str()}));
  return a;
}

std::vector<std::pair<Rational, Rational>> pairs_from(const Json& a) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& row : a) out.emplace_back(rat(row.at(0)), rat(row.at(1)));
  return out;
}

}  // namespace

Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["claim"] = v.claim;
  j["label"] = v.label;
  if (v.witness) {
    Json w;
    w["kind"] = v.witness->kind;
    w["params"] = Json::object();
    for (const auto& [k, x] : v.witness->params) w["params"][k] = x.str();
    w["table"] = Json::array();
    for (const auto& [n, x] : v.witness->table) w["table"].push_back(Json::array({n, x.str()}));
    w["rows"] = v.witness->rows;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  if (v.counterexample) j["counterexample"] = *v.counterexample;
  Json series = Json::array();
  for (const auto& s : v.diagnostics) {
    series.push_back({{"name", s.name}, {"points", pairs_json(s.points)}});
  }
  j["diagnostics"] = {{"series", series}};
  j["window"] = {{"radius", v.window_radius.str()}};
  if (!v.trend.empty()) j["trend"] = v.trend;
  return j;
}

Verdict verdict_from_json(const Json& j) {
  Verdict v;
  v.status = status_from_string(j.at("status").get<std::string>());
  v.claim = j.value("claim", "");
  v.label = j.value("label", "");
  if (j.contains("witness") && !j.at("witness").is_null()) {
    const Json& w = j.at("witness");
    Witness wit;
    wit.kind = w.at("kind").get<std::string>();
    for (const auto& [k, x] : w.at("params").items()) wit.params[k] = rat(x);
    for (const auto& row : w.at("table")) {
      wit.table.emplace_back(row.at(0).get<std::int64_t>(), rat(row.at(1)));
    }
    wit.rows = w.at("rows").get<std::vector<std::vector<std::string>>>();
    v.witness = wit;
  }
  if (j.contains("counterexample")) v.counterexample = j.at("counterexample").get<std::string>();
  for (const auto& s : j.at("diagnostics").at("series")) {
    v.diagnostics.push_back({s.at("name").get<std::string>(), pairs_from(s.at("points"))});
  }
  v.window_radius = rat(j.at("window").at("radius"));
  v.trend = j.value("trend", "");
  return v;
}

Json to_json(const DensityInterval& d) {
  return {{"interval", Json::array({d.lo.str(), d.hi.str()})}, {"series", pairs_json(d.series)}};
}

Json measure_to_json(const DensityMeasure& mu, const NuHat& h) {
  Json j;
  j["measure"] = mu.name();
  j["per_n"] = Json::array();
  for (std::size_t i = 0; i < h.per_n.size(); ++i) {
    j["per_n"].push_back({{"n", i + 1}, {"series", pairs_json(h.per_n[i].series)}});
  }
  j["interval"] = Json::array({h.interval.lo.str(), h.interval.hi.str()});
  j["monotone"] = h.monotone;
  return j;
}

Json algebra_to_json(const std::vector<LevelFunction>& gens,
                     const std::vector<AtomResult>& atoms,
                     const std::vector<TwoValuedHom>& homs) {
  Json j;
  j["generators"] = Json::array();
  for (const auto& g : gens) j["generators"].push_back(g.name());
  j["atoms"] = Json::array();
  for (const auto& a : atoms) {
    j["atoms"].push_back({{"pattern", a.pattern.str()}, {"verdict", to_json(a.verdict)}});
  }
  j["homs"] = Json::array();
  for (const auto& h : homs) j["homs"].push_back({{"assignment", h.str()}});
  return j;
}

bool RunReport::ok() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

Json to_json(const RunReport& r) {
  Json j;
  j["schema"] = kSchema;
  j["versions"] = {{"coarse-double", kVersion}};
  j["command"] = r.command;
  j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts) j["verdicts"].push_back(to_json(v));
  j["intervals"] = Json::array();
  for (const auto& [name, d] : r.intervals) {
    Json x = to_json(d);
    x["name"] = name;
    j["intervals"].push_back(x);
  }
  j["checks"] = Json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  j["extra"] = r.extra;
  if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
  return j;
}

RunReport report_from_json(const Json& j) {
  if (j.value("schema", "") != kSchema) throw std::invalid_argument("unsupported report schema");
  RunReport r;
  r.command = j.at("command").get<std::string>();
  for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
  for (const auto& x : j.at("intervals")) {
    DensityInterval d;
    d.lo = rat(x.at("interval").at(0));
    d.hi = rat(x.at("interval").at(1));
    d.series = pairs_from(x.at("series"));
    r.intervals.emplace_back(x.at("name").get<std::string>(), d);
  }
  for (const auto& c : j.at("checks")) {
    r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                        c.at("detail").get<std::string>()});
  }
  r.extra = j.value("extra", Json::object());
  if (j.contains("timing_ms")) r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

std::string render(const RunReport& r) { return to_json(r).dump(2) + "\n"; }

namespace {

std::string csv_field(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string series_csv(const std::vector<Series>& series) {
  std::ostringstream out;
  out << "series,x,value\n";
  for (const auto& s : series) {
    for (const auto& [x, v] : s.points) out << csv_field(s.name) << "," << x.str() << "," << v.str() << "\n";
  }
  return out.str();
}

std::string report_csv(const RunReport& r) {
  std::vector<Series> all;
  for (const auto& v : r.verdicts) {
    for (const auto& s : v.diagnostics) all.push_back({v.claim + "/" + s.name, s.points});
  }
  for (const auto& [name, d] : r.intervals) all.push_back({name, d.series});
  return series_csv(all);
}

}  // namespace coarse
