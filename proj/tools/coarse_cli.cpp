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

// coarse: command-line front end for the coarse_double library.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "coarse/errors.hpp"
#include "coarse/ideals.hpp"
#include "coarse/scenario.hpp"
#include "coarse/serialize.hpp"
#include "coarse/witness_check.hpp"

namespace {

using namespace coarse;

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kInconclusive = 3 };

struct Options {
  std::string space = "NatLine";
  std::string radius;
  std::string config;
  bool json = false;
  bool csv = false;
  bool strict = false;
  bool timing = false;
};

Rational default_radius(const MetricSpace& s) {
  switch (s.kind()) {
    case SpaceKind::kGeomLine: return Rational::pow2(40);
    case SpaceKind::kTwoTails: return 500;
    case SpaceKind::kCustom: return s.certified_radius().value_or(Rational(8));
    default: return 1024;
  }
}

std::vector<Rational> parse_radii(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

std::string witness_text(const Witness& w) {
  std::string s = w.kind;
  for (const auto& [k, v] : w.params) s += " " + k + "=" + v.str();
  if (!w.table.empty()) {
    s += " table=";
    for (std::size_t i = 0; i < w.table.size(); ++i) {
      s += (i ? "," : "") + std::to_string(w.table[i].first) + ":" + w.table[i].second.str();
    }
  }
  for (const auto& row : w.rows) {
    s += "\n    ";
    for (const auto& c : row) s += c + " ";
  }
  return s;
}

void print_text(const RunReport& r) {
  for (const auto& v : r.verdicts) {
    std::cout << v.claim << ": " << to_string(v.status) << " (" << v.label << ")";
    if (!v.trend.empty()) std::cout << " trend=" << v.trend;
    std::cout << "\n";
    if (v.witness) std::cout << "  witness: " << witness_text(*v.witness) << "\n";
    if (v.counterexample) std::cout << "  counterexample: " << *v.counterexample << "\n";
  }
  for (const auto& [name, d] : r.intervals) std::cout << name << ": " << d.str() << "\n";
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << ": " << c.detail;
    std::cout << "\n";
  }
  if (r.extra.contains("lines")) {
    for (const auto& l : r.extra.at("lines")) std::cout << l.get<std::string>() << "\n";
  }
  if (r.timing_ms) std::cout << "time: " << *r.timing_ms << " ms\n";
}

int finish(const Options& o, RunReport& r, std::chrono::steady_clock::time_point t0) {
  if (o.timing) {
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }
  if (o.json) {
    std::cout << render(r);
  } else if (o.csv) {
    std::cout << report_csv(r);
  } else {
    print_text(r);
  }
  if (!r.ok()) return kMismatch;
  if (o.strict) {
    for (const auto& v : r.verdicts) {
      if (v.status == Status::kInconclusive) return kInconclusive;
    }
    if (r.extra.value("inconclusive", false)) return kInconclusive;
  }
  return kOk;
}

void add_line(RunReport& r, const std::string& line) {
  if (!r.extra.contains("lines")) r.extra["lines"] = Json::array();
  r.extra["lines"].push_back(line);
}

void apply_config(Options& o) {
  if (o.config.empty()) return;
  std::ifstream in(o.config);
  if (!in) throw std::invalid_argument("cannot open config " + o.config);
  Json j = Json::parse(in);
  if (j.contains("space")) o.space = j.at("space").is_string() ? j.at("space").get<std::string>() : j.at("space").dump();
  if (j.contains("radius") && o.radius.empty()) {
    o.radius = j.at("radius").is_string() ? j.at("radius").get<std::string>() : j.at("radius").dump();
  }
  o.strict = o.strict || j.value("strict", false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with metrics on doubles of discrete metric spaces", "coarse"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--space", o.space, "NatLine, IntLine, GeomLine, TwoTails, JSON, or @file");
  app.add_option("--radius", o.radius, "window radius around the basepoint");
  app.add_option("--config", o.config, "JSON file with space, radius and strict");
  auto* fmt = app.add_option_group("format");
  fmt->add_flag("--json", o.json, "print a JSON report");
  fmt->add_flag("--csv", o.csv, "print diagnostic series as CSV");
  fmt->require_option(0, 1);
  app.add_flag("--strict", o.strict, "exit 3 when any verdict is inconclusive");
  app.add_flag("--timing", o.timing, "include wall time in the report");

  RunReport rep;
  std::function<void()> action;
  auto t0 = std::chrono::steady_clock::now();
  SpacePtr space;
  Window win;
  auto setup = [&]() {
    apply_config(o);
    space = load_space(o.space);
    win = space->window(o.radius.empty() ? default_radius(*space) : Rational::parse(o.radius));
    rep.command = std::string(argv[1]);
    for (int i = 2; i < argc; ++i) rep.command += std::string(" ") + argv[i];
  };

  // space
  auto* sp = app.add_subcommand("space", "inspect metric spaces");
  sp->require_subcommand(1);
  sp->add_subcommand("list", "list built-in spaces")->callback([&] {
    action = [&] {
      for (const char* n : {"NatLine", "IntLine", "GeomLine", "TwoTails"}) add_line(rep, n);
    };
  });
  sp->add_subcommand("show", "show a window of a space")->callback([&] {
    action = [&] {
      auto pts = window_points(*space, win);
      rep.extra["space"] = space_to_json(*space);
      std::string line = space->name() + " window R=" + win.radius.str() + " (" +
                         std::to_string(pts.size()) + " points):";
      for (const auto& p : pts) line += " " + space->label(p);
      add_line(rep, line);
    };
  });

  // proj define
  auto* pj = app.add_subcommand("proj", "projections given by level functions");
  pj->require_subcommand(1);
  auto* pdef = pj->add_subcommand("define", "tabulate a level function on the window");
  std::string from_subset, levels_file, expr;
  auto* g1 = pdef->add_option_group("source");
  g1->add_option("--from-subset", from_subset, "set spec, levels max(1, ceil(2 d(x, A)))");
  g1->add_option("--levels", levels_file, "level document (JSON or @file)");
  g1->add_option("--expr", expr, "level expression in x");
  g1->require_option(1);
  pdef->callback([&] {
    action = [&] {
      LevelFunction l = !from_subset.empty() ? levels_from_subset(space, parse_point_set(*space, from_subset))
                        : !expr.empty()      ? levels_from_expression(space, Expression::parse(expr))
                                             : parse_levels(space, levels_file);
      LevelReport lr = check_levels(l, win);
      rep.checks.push_back({"level axioms", lr.pass, lr.first_violation});
      rep.extra["levels"] = levels_to_json(l, win);
      if (!o.json) {
        for (const auto& row : rep.extra["levels"]["levels"]) {
          add_line(rep, row[0].get<std::string>() + " " + row[1].dump());
        }
      }
    };
  });

  // eval
  auto* ev = app.add_subcommand("eval", "evaluate d(x, y') exactly");
  std::string metric, metric2, xs, ys;
  ev->add_option("--metric", metric, "delta:E, zero:P, subset:S, proj:S, proj-expr:E or JSON")->required();
  ev->add_option("--x", xs)->required();
  ev->add_option("--y", ys)->required();
  ev->callback([&] {
    action = [&] {
      KernelSpec k = parse_kernel(space, metric);
      PointId x = space->parse_point(xs), y = space->parse_point(ys);
      try {
        KernelValue v = eval_certified(k.metric, x, y, win);
        add_line(rep, v.value.str());
        rep.extra["value"] = v.value.str();
      } catch (const InconclusiveError& e) {
        KernelValue v = k.metric.eval(x, y, win);
        add_line(rep, v.value.str() + " (window minimum, upper bound)");
        rep.extra["value"] = v.value.str();
        rep.extra["inconclusive"] = true;
      }
      rep.extra["kernel"] = k.doc;
    };
  });

  // compare
  auto* cmp = app.add_subcommand("compare", "quasi or coarse equivalence of two projections");
  std::string e1, e2, mode = "both";
  cmp->add_option("--e1", e1, "levels: subset:S, expr:E, unit, zero or JSON")->required();
  cmp->add_option("--e2", e2)->required();
  cmp->add_option("--mode", mode)->check(CLI::IsMember({"quasi", "coarse", "both"}));
  cmp->callback([&] {
    action = [&] {
      LevelFunction a = parse_levels(space, e1), b = parse_levels(space, e2);
      for (Mode m : {Mode::kQuasi, Mode::kCoarse}) {
        if (mode != "both" && mode != to_string(m)) continue;
        Verdict v = equivalent(a, b, m, win);
        add_line(rep, to_string(m) + "=" + to_string(v.status));
        rep.verdicts.push_back(v);
      }
    };
  });

  // product
  auto* prod = app.add_subcommand("product", "compose two metrics and evaluate on the window");
  prod->add_option("--metric", metric)->required();
  prod->add_option("--metric2", metric2)->required();
  prod->add_option("--x", xs);
  prod->add_option("--y", ys);
  prod->callback([&] {
    action = [&] {
      DoubleMetric d = compose(parse_kernel(space, metric).metric, parse_kernel(space, metric2).metric);
      auto pts = window_points(*space, win);
      std::vector<PointId> xsel = pts;
      if (!xs.empty()) xsel = {space->parse_point(xs)};
      for (const auto& x : xsel) {
        PointId y = ys.empty() ? x : space->parse_point(ys);
        KernelValue v = d.eval(x, y, win);
        add_line(rep, space->label(x) + " " + space->label(y) + "' " + v.value.str() +
                          (v.exact ? "" : " (window)"));
        if (!v.exact) rep.extra["inconclusive"] = true;
      }
    };
  });

  // meet / join
  for (const char* op : {"meet", "join"}) {
    auto* mj = app.add_subcommand(op, std::string(op) + " of two projections, pointwise on levels");
    mj->add_option("--e1", e1)->required();
    mj->add_option("--e2", e2)->required();
    mj->callback([&, op] {
      action = [&, op] {
        LevelFunction a = parse_levels(space, e1), b = parse_levels(space, e2);
        LevelFunction c = std::string(op) == "meet" ? meet(a, b) : join(a, b);
        LevelReport lr = check_levels(c, win);
        rep.checks.push_back({"level axioms", lr.pass, lr.first_violation});
        rep.extra["levels"] = levels_to_json(c, win);
        if (!o.json) {
          for (const auto& p : window_points(*space, win)) {
            add_line(rep, space->label(p) + " " + std::to_string(a(p)) + " " + std::to_string(b(p)) +
                              " -> " + std::to_string(c(p)));
          }
        }
      };
    });
  }

  // classify
  auto* cl = app.add_subcommand("classify", "Type I witness or Type II evidence");
  std::string levels_spec, radii_text;
  cl->add_option("--levels", levels_spec)->required();
  cl->add_option("--radii", radii_text, "three or more increasing radii, comma separated");
  cl->callback([&] {
    action = [&] {
      LevelFunction l = parse_levels(space, levels_spec);
      std::vector<Rational> radii = radii_text.empty() ? sweep_radii(win, default_sweep_factors())
                                                       : parse_radii(radii_text);
      Verdict v = classify_type(l, radii);
      if (v.certified()) {
        CheckResult c = check_type_witness(v, l);
        rep.checks.push_back({"witness re-check", c.ok, c.detail});
      }
      rep.verdicts.push_back(v);
    };
  });

  // algebra
  auto* al = app.add_subcommand("algebra", "Boolean atoms and two-valued homs");
  std::vector<std::string> gens;
  al->add_option("--generators", gens, "level specs")->required();
  al->require_subcommand(1);
  bool want_homs = false;
  al->add_subcommand("atoms", "classify every atom")->callback([&] { want_homs = false; });
  al->add_subcommand("homs", "list and check the homs")->callback([&] { want_homs = true; });
  al->callback([&] {
    action = [&] {
      std::vector<LevelFunction> g;
      for (const auto& s : gens) g.push_back(parse_levels(space, s));
      auto atoms = enumerate_atoms(g, win);
      auto hs = homs(atoms);
      rep.extra["algebra"] = algebra_to_json(g, atoms, hs);
      if (!want_homs) {
        for (const auto& a : atoms) rep.verdicts.push_back(a.verdict);
        return;
      }
      std::vector<std::pair<int, int>> pairs;
      for (std::size_t i = 1; i <= g.size(); ++i) {
        for (std::size_t j = i + 1; j <= g.size(); ++j) pairs.emplace_back(i, j);
      }
      for (const auto& h : hs) {
        HomReport hr = check_hom(h, g, pairs, win);
        std::string detail = hr.violations.empty() ? "" : hr.violations.front();
        if (!hr.inconclusive.empty()) detail += " inconclusive: " + std::to_string(hr.inconclusive.size());
        rep.checks.push_back({"hom " + h.str(), hr.pass, detail});
      }
      add_line(rep, std::to_string(hs.size()) + " homs");
    };
  });

  // tau
  auto* ta = app.add_subcommand("tau", "evaluate tau on a filter base of tails");
  std::string base_set;
  int base_count = 6;
  std::vector<std::string> tau_levels;
  ta->add_option("--filter-base", base_set, "set whose tails form the base")->required();
  ta->add_option("--count", base_count, "number of tails");
  ta->add_option("--levels", tau_levels, "projections to evaluate")->required();
  ta->callback([&] {
    action = [&] {
      FilterBase f = tail_filter_base(*space, parse_point_set(*space, base_set), base_count);
      FilterReport fr = check_filter_base(*space, f, win);
      rep.checks.push_back({"filter base", fr.pass, fr.first_violation});
      std::string values;
      for (const auto& s : tau_levels) {
        TauResult t = tau(f, parse_levels(space, s), win);
        add_line(rep, "tau(" + s + ") = " + std::to_string(t.value) + "  " + t.evidence);
        values += (values.empty() ? "" : ",") + std::to_string(t.value);
        if (t.value < 0) rep.extra["inconclusive"] = true;
      }
      rep.extra["tau"] = values;
    };
  });

  // measure
  auto* me = app.add_subcommand("measure", "density measures on projections");
  me->require_subcommand(1);
  std::string mu_text = "shell", r0_text = "32";
  std::vector<std::string> m_levels;
  std::int64_t n_max = 8;
  me->add_option("--measure", mu_text, "shell, natural or weighted:EXPR");
  me->add_option("--r0", r0_text, "first radius of the geometric schedule");
  me->add_option("--n-max", n_max);
  auto measure_ctx = [&] {
    return std::pair{DensityMeasure::parse(mu_text), Schedule::geometric(Rational::parse(r0_text), 6)};
  };
  auto* nh = me->add_subcommand("nu-hat", "limit density of the sublevel sets");
  nh->add_option("--levels", m_levels)->required()->expected(1);
  nh->callback([&] {
    action = [&] {
      auto [mu, sch] = measure_ctx();
      NuHat h = nu_hat(mu, parse_levels(space, m_levels.at(0)), n_max, sch);
      rep.intervals.emplace_back("nu_hat(" + m_levels.at(0) + ")", h.interval);
      rep.extra["measure"] = measure_to_json(mu, h);
      rep.checks.push_back({"monotone in n", h.monotone, ""});
    };
  });
  auto* nb = me->add_subcommand("nu-bar", "alternating sum over a formal sum of generators");
  nb->add_option("--levels", m_levels, "the summands")->required();
  nb->callback([&] {
    action = [&] {
      auto [mu, sch] = measure_ctx();
      std::vector<LevelFunction> s;
      std::string name;
      for (const auto& t : m_levels) {
        s.push_back(parse_levels(space, t));
        name += (name.empty() ? "" : " + ") + t;
      }
      rep.intervals.emplace_back("nu_bar(" + name + ")", nu_bar(mu, s, n_max, sch));
    };
  });
  auto* ml = me->add_subcommand("laws", "modularity, complement law and the measure0 check");
  ml->add_option("--e1", e1)->required();
  ml->add_option("--e2", e2)->required();
  ml->callback([&] {
    action = [&] {
      auto [mu, sch] = measure_ctx();
      LevelFunction a = parse_levels(space, e1), b = parse_levels(space, e2);
      ModularityReport m = check_modularity(mu, a, b, n_max, sch);
      rep.checks.push_back({"counting identity", m.counts_exact, m.first_violation});
      rep.checks.push_back({"modularity intervals", m.interval_ok, m.lhs.str() + " vs " + m.rhs.str()});
      rep.checks.push_back({"complement law", m.complement_ok, ""});
      for (const auto* l : {&a, &b}) {
        Measure0Report r = measure0_check(mu, *l, n_max, sch);
        rep.checks.push_back({"measure0 " + l->name(), r.pass,
                              r.direct.str() + " vs " + r.recovered.str()});
      }
    };
  });

  // ideal check
  auto* id = app.add_subcommand("ideal", "approximate units of a projection");
  id->require_subcommand(1);
  auto* ic = id->add_subcommand("check", "(au1), (au2) and level recovery");
  std::string ideal_levels;
  ic->add_option("--levels", ideal_levels)->required();
  ic->add_option("--n-max", n_max);
  ic->callback([&] {
    action = [&] {
      ApproximateUnit u{parse_levels(space, ideal_levels)};
      AuReport a = check_au(u, win, n_max);
      rep.checks.push_back({"(au1)", a.au1, a.first_violation});
      rep.checks.push_back({"monotone units", a.monotone, ""});
      rep.checks.push_back({"(au2) relaxed", a.au2_relaxed,
                            std::to_string(a.strict_count) + " pairs at distance exactly 1"});
      for (const auto& s : a.strict_violations) add_line(rep, "strict (au2) failure: " + s);
      RecoveryReport rr = check_recovery(u, win, 2 * n_max);
      rep.checks.push_back({"level recovery T(n) <= 2n+2", rr.pass, rr.first_violation});
    };
  });

  // scenario
  auto* sc = app.add_subcommand("scenario", "reproduce the worked examples");
  sc->require_subcommand(1);
  std::string scenario_name, scenario_dir;
  auto* sr = sc->add_subcommand("run", "run a scenario against its expectation table");
  sr->add_option("name", scenario_name)->required();
  sr->add_option("--dir", scenario_dir, "directory holding <name>.json");
  sr->callback([&] {
    action = [&] {
      std::string cmd = rep.command;
      rep = run_scenario(ScenarioSpec::load(scenario_name, scenario_dir));
      rep.command = cmd;
    };
  });
  sc->add_subcommand("list", "list scenarios")->callback([&] {
    action = [&] {
      for (const auto& n : scenario_names()) add_line(rep, n);
    };
  });

  // report
  auto* rp = app.add_subcommand("report", "render a scenario or a saved report");
  std::string report_input;
  auto* rsrc = rp->add_option_group("source");
  rsrc->add_option("--scenario", scenario_name);
  rsrc->add_option("--input", report_input, "saved JSON report to reload");
  rsrc->require_option(1);
  rp->callback([&] {
    action = [&] {
      if (!report_input.empty()) {
        std::ifstream in(report_input);
        if (!in) throw std::invalid_argument("cannot open " + report_input);
        rep = report_from_json(Json::parse(in));
      } else {
        std::string cmd = rep.command;
        rep = run_scenario(ScenarioSpec::load(scenario_name));
        rep.command = cmd;
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    setup();
    if (action) action();
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return finish(o, rep, t0);
}
