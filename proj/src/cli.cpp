#include "timelike/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "timelike/curve.hpp"
#include "timelike/desitter.hpp"
#include "timelike/funk.hpp"
#include "timelike/generators.hpp"
#include "timelike/hilbert.hpp"
#include "timelike/render.hpp"
#include "timelike/scene.hpp"
#include "timelike/suite.hpp"

namespace timelike {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const Vector& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v(i));
  return s;
}

/// Ordered key/value output rendered as text, csv or json.
class Record {
 public:
  using Value = std::variant<std::string, double, long, Vector>;

  Record& add(std::string key, Value value) {
    fields_.emplace_back(std::move(key), std::move(value));
    return *this;
  }

  std::string render(const std::string& format) const {
    if (format == "json") {
      nlohmann::ordered_json doc;
      for (const auto& [k, v] : fields_) {
        if (const auto* s = std::get_if<std::string>(&v)) doc[k] = *s;
        else if (const auto* d = std::get_if<double>(&v)) doc[k] = *d;
        else if (const auto* l = std::get_if<long>(&v)) doc[k] = *l;
        else {
          const Vector& x = std::get<Vector>(v);
          doc[k] = std::vector<double>(x.data(), x.data() + x.size());
        }
      }
      return doc.dump(2) + "\n";
    }
    std::string header, row, text;
    for (const auto& [k, v] : fields_) {
      const std::string value = to_text(v);
      text += k + " " + value + "\n";
      header += (header.empty() ? "" : ",") + k;
      const bool quote = std::holds_alternative<Vector>(v) || value.find(',') != std::string::npos;
      row += (row.empty() ? "" : ",") + (quote ? "\"" + value + "\"" : value);
    }
    return format == "csv" ? header + "\n" + row + "\n" : text;
  }

 private:
  static std::string to_text(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    if (const auto* d = std::get_if<double>(&v)) return fmt(*d);
    if (const auto* l = std::get_if<long>(&v)) return std::to_string(*l);
    return fmt(std::get<Vector>(v));
  }

  std::vector<std::pair<std::string, Value>> fields_;
};

/// Coordinates "x,y,..." or the id of a named scene point.
Vector resolve_point(const Scene& scene, const std::string& text) {
  for (const PointSpec& p : scene.point_specs())
    if (p.id == text) return scene.point(text);
  try {
    return chart_point(scene.chart(), parse_coordinates(text));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse) throw;
    fail(ErrorCode::validation, "point '" + text + "': " + e.what());
  }
}

std::vector<double> parse_list(const std::string& text) {
  const Vector v = parse_coordinates(text);
  return std::vector<double>(v.data(), v.data() + v.size());
}

int exit_status(const Error& e) {
  return e.code() == ErrorCode::parse || e.code() == ErrorCode::validation ? kExitUsage
                                                                            : kExitDomain;
}

struct Options {
  std::string scene_path, from, to, dir, at, curve_path, curve_id, suite = "all", format = "text",
                                                                  out_path, apex, radii;
  std::uint64_t seed = 0;
  int cases = 1000, count = 0;
  double radius = 0.0, tol = 0.0;
  bool cones = false, nulls = false, no_points = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Timelike Funk and Hilbert geometry toolkit", "timelike"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  Options o;
  const auto formats = CLI::IsMember({"text", "csv", "json"});

  const auto scene_opt = [&](CLI::App* sub) {
    sub->add_option("--scene", o.scene_path, "Scene file (JSON)")->required();
  };
  const auto output_opts = [&](CLI::App* sub, bool with_format) {
    sub->add_option("--out", o.out_path, "Write the result to this file");
    if (with_format) sub->add_option("--format", o.format, "text, csv or json")->check(formats);
  };

  CLI::App* funk = app.add_subcommand("funk", "Funk distance F(p,q) in a funk scene");
  CLI::App* hilbert = app.add_subcommand("hilbert", "Hilbert distance H(p,q) in a two-body scene");
  CLI::App* order = app.add_subcommand("order", "Relation of p to q: timelike, null, unrelated, coincident");
  CLI::App* classify = app.add_subcommand("classify", "Relation of a pair in both directions");
  for (CLI::App* sub : {funk, hilbert, order, classify}) {
    scene_opt(sub);
    sub->add_option("--from", o.from, "First point (x,y,... or a point id)")->required();
    sub->add_option("--to", o.to, "Second point (x,y,... or a point id)")->required();
    output_opts(sub, true);
  }
  CLI::App* finsler = app.add_subcommand("finsler", "Minkowski functional at a point and direction");
  scene_opt(finsler);
  finsler->add_option("--at,--from", o.at, "Base point")->required();
  finsler->add_option("--dir", o.dir, "Tangent direction (ambient components)")->required();
  output_opts(finsler, true);

  CLI::App* sphere = app.add_subcommand("sphere", "Future sphere of radius r around p (CSV)");
  scene_opt(sphere);
  sphere->add_option("--from", o.from, "Center p")->required();
  sphere->add_option("--radius", o.radius, "Radius r > 0")->required();
  sphere->add_option("--count", o.count, "Number of directions")->capture_default_str();
  output_opts(sphere, false);

  CLI::App* cone = app.add_subcommand("cone", "Cone boundary or null directions at p (CSV)");
  scene_opt(cone);
  cone->add_option("--from", o.from, "Apex p")->required();
  cone->add_option("--count", o.count, "Rays around the axis in dimension > 2");
  output_opts(cone, false);

  CLI::App* length = app.add_subcommand("length", "Length of a timelike curve");
  scene_opt(length);
  auto* curve_file = length->add_option("--curve", o.curve_path, "Curve file (JSON)");
  length->add_option("--curve-id", o.curve_id, "Curve named in the scene")->excludes(curve_file);
  length->add_option("--tol", o.tol, "Quadrature tolerance (default 1e-8)");
  output_opts(length, true);

  CLI::App* desitter = app.add_subcommand("desitter-check", "H = 2 d on random de Sitter pairs");
  desitter->add_option("--seed", o.seed, "Random seed")->required();
  desitter->add_option("--cases", o.cases, "Number of pairs")->check(CLI::PositiveNumber);
  desitter->add_option("--tol", o.tol, "Relative tolerance (default 1e-9)");
  output_opts(desitter, true);

  CLI::App* check = app.add_subcommand("check", "Seeded property suite");
  check->add_option("--suite", o.suite, "funk, hilbert, spherical, hyperbolic, desitter or all")
      ->check(CLI::IsMember(suite_names()));
  check->add_option("--seed", o.seed, "Random seed")->required();
  check->add_option("--cases", o.cases, "Main sample size")->check(CLI::PositiveNumber);
  output_opts(check, true);

  CLI::App* render = app.add_subcommand("render", "SVG of a 2-dimensional scene");
  scene_opt(render);
  render->add_option("--apex", o.apex, "Apex for cones and future spheres");
  render->add_option("--radii", o.radii, "Future-sphere radii, comma separated");
  render->add_flag("--cones", o.cones, "Draw cone boundary rays at the apex");
  render->add_flag("--null", o.nulls, "Draw null directions at the apex (de Sitter scenes)");
  render->add_flag("--no-points", o.no_points, "Leave out the scene's named points");
  output_opts(render, false);

  std::vector<const char*> argv = {"timelike"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string result;
  int status = kExitOk;
  try {
    const auto scene = [&] { return load_scene(o.scene_path); };
    if (funk->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.from), q = resolve_point(s, o.to);
      const FunkValue f = funk_distance(s.context(), p, q);
      Record r;
      r.add("kind", std::string("funk")).add("from", p).add("to", q).add("distance", f.distance);
      r.add("variational", funk_distance_variational(s.context(), p, q).distance);
      if (f.hit) r.add("hit", f.hit->point);
      result = r.render(o.format);
    } else if (hilbert->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.from), q = resolve_point(s, o.to);
      if (s.context().is_funk())
        fail(ErrorCode::validation, "the scene has a funk context; use the funk subcommand");
      const HilbertValue h = hilbert_distance(s.context(), p, q);
      Record r;
      r.add("kind", std::string(to_string(s.context().kind()))).add("from", p).add("to", q);
      r.add("distance", h.distance).add("f2", h.f2).add("f1", h.f1);
      if (p != q) {
        r.add("cross_ratio", hilbert_distance_cross_ratio(s.context(), p, q).distance);
        r.add("a1", h.a1).add("a2", h.a2);
      }
      result = r.render(o.format);
    } else if (order->parsed() || classify->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.from), q = resolve_point(s, o.to);
      const PairClass c = classify_pair(s.context(), p, q);
      if (order->parsed() && o.format == "text") {
        result = std::string(to_string(c)) + "\n";
      } else {
        Record r;
        r.add("from", p).add("to", q).add("class", std::string(to_string(c)));
        if (classify->parsed()) {
          r.add("reverse", std::string(to_string(classify_pair(s.context(), q, p))));
          if (s.context().is_funk() && s.context().body().is_polytope())
            r.add("inclusion_order",
                  std::string(inclusion_precedes(s.context(), p, q) ? "true" : "false"));
        }
        result = r.render(o.format);
      }
    } else if (finsler->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.at);
      const Vector v = parse_coordinates(o.dir);
      if (v.size() != s.chart().ambient_size())
        fail(ErrorCode::validation, "--dir needs " + std::to_string(s.chart().ambient_size()) +
                                        " components");
      Record r;
      r.add("at", p).add("dir", v);
      if (s.context().is_funk()) {
        const FinslerValue f = funk_functional(s.context(), p, v);
        r.add("value", f.value).add("t_star", f.t_star);
        if (s.context().body().is_polytope())
          r.add("variational", funk_functional_variational(s.context(), p, v).value);
      } else {
        r.add("value", context_functional(s.context(), p, v));
      }
      result = r.render(o.format);
    } else if (sphere->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.from);
      const int count = o.count > 0 ? o.count : 64;
      const auto pts = future_sphere_curve(s.context(), p, o.radius, count);
      const int m = s.chart().ambient_size();
      result = "index";
      for (int j = 0; j < m; ++j) result += ",d" + std::to_string(j);
      for (int j = 0; j < m; ++j) result += ",x" + std::to_string(j);
      result += ",residual\n";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!pts[i]) continue;
        result += std::to_string(i) + "," + fmt(pts[i]->direction) + "," + fmt(pts[i]->point) +
                  "," + fmt(pts[i]->residual) + "\n";
      }
    } else if (cone->parsed()) {
      const Scene s = scene();
      const Vector p = resolve_point(s, o.from);
      const TimelikeContext& ctx = s.context();
      const int m = s.chart().ambient_size();
      result = "side,index,angle";
      for (int j = 0; j < m; ++j) result += ",d" + std::to_string(j);
      for (int j = 0; j < m; ++j) result += ",c" + std::to_string(j);
      result += "\n";
      const auto emit = [&](const std::string& side, const std::vector<ConeRay>& rays) {
        for (std::size_t i = 0; i < rays.size(); ++i) {
          result += side + "," + std::to_string(i) + "," + fmt(rays[i].angle) + "," +
                    fmt(rays[i].direction);
          if (rays[i].contact)
            result += "," + fmt(*rays[i].contact);
          else
            for (int j = 0; j < m; ++j) result += ",";
          result += "\n";
        }
      };
      const int count = o.count > 0 ? o.count : 16;
      if (ctx.kind() == ContextKind::projective_desitter) {
        std::vector<ConeRay> rays;
        for (const NullDirection& d : null_directions(ctx, p, count))
          rays.push_back({d.direction, std::nullopt, 0.0});
        emit("null", rays);
      } else {
        emit("future", cone_boundary(ctx.future(), p, count));
        if (!ctx.is_funk()) emit("past", cone_boundary(ctx.past(), p, count));
      }
    } else if (length->parsed()) {
      const Scene s = scene();
      if (o.curve_path.empty() == o.curve_id.empty())
        fail(ErrorCode::validation, "give exactly one of --curve and --curve-id");
      const TimelikeCurve c =
          o.curve_id.empty() ? build_curve(s.chart(), load_curve(o.curve_path)) : s.curve(o.curve_id);
      const TimelikeCheck t = is_timelike(s.context(), c);
      if (!t.timelike)
        fail(ErrorCode::not_timelike_direction,
             "the curve is not timelike at t = " + fmt(*t.first_violation));
      Record r;
      r.add("length", curve_length(s.context(), c, o.tol > 0 ? o.tol : 1e-8));
      r.add("samples", static_cast<long>(c.samples()));
      const Vector a = c(0.0).point, b = c(1.0).point;
      r.add("from", a).add("to", b);
      if (precedes(s.context(), a, b)) r.add("chord_distance", context_distance(s.context(), a, b));
      result = r.render(o.format);
    } else if (desitter->parsed()) {
      Rng rng(o.seed);
      std::vector<DesitterPair> pairs;
      for (int i = 0; i < o.cases; ++i)
        pairs.push_back(random_desitter_pair(rng, 1 + i % 2, i % 2 == 1));
      const DesitterReport rep = desitter_isometry_check(pairs, o.tol > 0 ? o.tol : 1e-9);
      Record r;
      r.add("pairs", static_cast<long>(rep.pairs));
      r.add("max_relative_deviation", rep.max_relative_deviation);
      r.add("max_cross_ratio_deviation", rep.max_cross_ratio_deviation);
      r.add("min_ratio", rep.min_ratio).add("max_ratio", rep.max_ratio);
      r.add("status", std::string(rep.passed ? "PASS" : "FAIL")).add("note", rep.note);
      result = r.render(o.format);
      if (!rep.passed) status = kExitSuiteFailed;
    } else if (check->parsed()) {
      const SuiteReport rep = run_suite(o.suite, o.seed, o.cases);
      result = format_report(rep, o.format);
      err << "wall time " << fmt(rep.wall_seconds) << " s\n";
      if (!rep.passed) status = kExitSuiteFailed;
    } else if (render->parsed()) {
      const Scene s = scene();
      RenderOptions ro;
      if (!o.apex.empty()) ro.apex = parse_coordinates(o.apex);
      if (!o.radii.empty()) ro.radii = parse_list(o.radii);
      if ((ro.cones = o.cones) || !ro.radii.empty() || o.nulls)
        if (!ro.apex) fail(ErrorCode::validation, "--cones, --radii and --null need --apex");
      ro.null_directions = o.nulls;
      ro.points = !o.no_points;
      result = render_svg(s, ro);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_status(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }

  if (o.out_path.empty()) {
    out << result;
  } else {
    std::ofstream file(o.out_path, std::ios::binary);
    file << result;
    if (!file) {
      err << "error: cannot write '" << o.out_path << "'\n";
      return kExitUsage;
    }
  }
  return status;
}

}  // namespace timelike
