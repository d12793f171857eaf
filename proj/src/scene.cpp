#include "timelike/scene.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace timelike {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  fail(ErrorCode::validation, where + ": " + what);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) invalid(where, "unknown field '" + it.key() + "'");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) invalid(where, std::string("missing field '") + key + "'");
  return *it;
}

const json& object(const json& value, const std::string& where) {
  if (!value.is_object()) invalid(where, "expected an object");
  return value;
}

double number(const json& value, const std::string& where) {
  if (!value.is_number()) invalid(where, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) invalid(where, "number is not finite");
  return x;
}

std::string text(const json& value, const std::string& where) {
  if (!value.is_string()) invalid(where, "expected a string");
  return value.get<std::string>();
}

Vector vector_of(const json& value, const std::string& where) {
  if (!value.is_array() || value.empty()) invalid(where, "expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(value.size()));
  for (std::size_t i = 0; i < value.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = number(value[i], where + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<Vector> vectors_of(const json& value, const std::string& where) {
  if (!value.is_array()) invalid(where, "expected an array of coordinate arrays");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(vector_of(value[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset of the failure to line and column (1-based).
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string message = e.what();
    if (const auto pos = message.find(": "); pos != std::string::npos) message = message.substr(pos + 2);
    fail(ErrorCode::parse,
         "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message);
  }
}

CurveSpec curve_from_json(const json& obj, const std::string& where, bool with_id) {
  object(obj, where);
  if (with_id)
    reject_unknown(obj, {"id", "kind", "points", "tangents", "amplitudes", "directions", "samples"},
                   where);
  else
    reject_unknown(obj, {"kind", "points", "tangents", "amplitudes", "directions", "samples"}, where);
  CurveSpec spec;
  if (with_id) spec.id = text(field(obj, "id", where), where + ".id");
  spec.kind = text(field(obj, "kind", where), where + ".kind");
  spec.points = vectors_of(field(obj, "points", where), where + ".points");
  if (obj.contains("tangents")) spec.tangents = vectors_of(obj["tangents"], where + ".tangents");
  if (obj.contains("directions"))
    spec.directions = vectors_of(obj["directions"], where + ".directions");
  if (obj.contains("amplitudes")) {
    const json& a = obj["amplitudes"];
    if (!a.is_array()) invalid(where + ".amplitudes", "expected an array of numbers");
    for (std::size_t i = 0; i < a.size(); ++i)
      spec.amplitudes.push_back(number(a[i], where + ".amplitudes[" + std::to_string(i) + "]"));
  }
  if (obj.contains("samples")) {
    const json& s = obj["samples"];
    if (!s.is_number_integer() || s.get<long long>() < 1 || s.get<long long>() > 1000000)
      invalid(where + ".samples", "expected an integer in [1, 1000000]");
    spec.samples = s.get<int>();
  }
  return spec;
}

ordered_json to_json(const Vector& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ordered_json to_json(const std::vector<Vector>& vs) {
  ordered_json a = ordered_json::array();
  for (const Vector& v : vs) a.push_back(to_json(v));
  return a;
}

ordered_json curve_to_json(const CurveSpec& c, bool with_id) {
  ordered_json o;
  if (with_id) o["id"] = c.id;
  o["kind"] = c.kind;
  o["points"] = to_json(c.points);
  if (!c.tangents.empty()) o["tangents"] = to_json(c.tangents);
  if (!c.amplitudes.empty()) o["amplitudes"] = c.amplitudes;
  if (!c.directions.empty()) o["directions"] = to_json(c.directions);
  if (c.samples != 2048) o["samples"] = c.samples;
  return o;
}

ConvexBody build_body(const Chart& chart, const BodySpec& spec) {
  const std::string where = "body '" + spec.id + "'";
  try {
    if (spec.kind == "hpolytope") {
      if (spec.faces.empty()) invalid(where, "an hpolytope needs at least one face");
      std::vector<Hyperplane> faces;
      for (std::size_t i = 0; i < spec.faces.size(); ++i) {
        const FaceSpec& f = spec.faces[i];
        const std::string fw = where + " face " + std::to_string(i);
        if (f.normal.size() != chart.ambient_size())
          invalid(fw, "normal needs " + std::to_string(chart.ambient_size()) + " components");
        if (chart.kind != ChartKind::euclidean && f.offset != 0.0)
          invalid(fw, "offsets are only used in euclidean charts");
        faces.emplace_back(chart, f.normal, f.offset);
      }
      std::optional<Vector> interior;
      if (spec.interior) interior = chart_point(chart, *spec.interior);
      if (spec.hemisphere && chart.kind != ChartKind::spherical)
        invalid(where, "a hemisphere is only meaningful in spherical charts");
      return ConvexBody::polytope(chart, std::move(faces), interior, spec.hemisphere);
    }
    if (spec.kind == "ball" || spec.kind == "cap") {
      if (spec.kind == "cap" && chart.kind != ChartKind::spherical)
        invalid(where, "caps live in spherical charts; use 'ball'");
      if (spec.interior || spec.hemisphere)
        invalid(where, "balls take only a center and a radius");
      return ConvexBody::ball(chart, chart_point(chart, spec.center), spec.radius);
    }
    invalid(where, "unknown body kind '" + spec.kind + "'");
  } catch (const Error& e) {
    if (e.code() == ErrorCode::validation && std::string(e.what()).find(where) != std::string::npos)
      throw;
    invalid(where, e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Vector chart_point(const Chart& chart, const Vector& coords) {
  if (!coords.allFinite()) fail(ErrorCode::coordinate_domain, "non-finite coordinates");
  if (chart.kind == ChartKind::hyperbolic && coords.size() == chart.dimension) {
    if (!(coords.norm() < 1.0))
      fail(ErrorCode::coordinate_domain, "Klein coordinates must lie in the open unit ball");
    return lift_klein(coords);
  }
  return validate_point(chart, coords);
}

Vector parse_coordinates(std::string_view s) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    std::string_view token = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(x))
      fail(ErrorCode::parse, "bad coordinate list '" + std::string(s) + "'");
    values.push_back(x);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Scene::Scene(Chart chart, std::vector<BodySpec> bodies, ContextSpec context,
             std::vector<PointSpec> points, std::vector<CurveSpec> curves)
    : chart_(chart),
      body_specs_(std::move(bodies)),
      context_spec_(std::move(context)),
      point_specs_(std::move(points)),
      curve_specs_(std::move(curves)) {
  if (chart_.dimension < 1 || chart_.dimension > 16) invalid("chart", "dimension must be in [1, 16]");
  std::set<std::string> ids;
  for (const BodySpec& spec : body_specs_) {
    if (spec.id.empty()) invalid("bodies", "every body needs a non-empty id");
    if (!ids.insert(spec.id).second) invalid("body '" + spec.id + "'", "duplicate id");
    bodies_.push_back(build_body(chart_, spec));
  }
  try {
    switch (context_spec_.kind) {
      case ContextKind::funk:
        if (!context_spec_.past.empty()) invalid("context", "a funk context takes a single body");
        context_ = TimelikeContext::funk(body(context_spec_.future));
        break;
      case ContextKind::hilbert:
        context_ = TimelikeContext::hilbert(body(context_spec_.past), body(context_spec_.future));
        break;
      case ContextKind::spherical_hilbert:
        context_ = TimelikeContext::spherical_hilbert(body(context_spec_.past),
                                                      body(context_spec_.future));
        break;
      case ContextKind::projective_desitter:
        if (!context_spec_.future.empty())
          invalid("context", "the future body of a projective context is the antipode of the past");
        context_ = TimelikeContext::projective_desitter(body(context_spec_.past));
        break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::validation && std::string(e.what()).find("context") != std::string::npos)
      throw;
    invalid("context", e.what());
  }
  std::set<std::string> names;
  for (const PointSpec& p : point_specs_) {
    if (p.id.empty()) invalid("points", "every point needs a non-empty id");
    if (!names.insert(p.id).second) invalid("point '" + p.id + "'", "duplicate id");
    try {
      chart_point(chart_, p.coords);
    } catch (const Error& e) {
      invalid("point '" + p.id + "'", e.what());
    }
  }
  std::set<std::string> curve_names;
  for (const CurveSpec& c : curve_specs_) {
    if (c.id.empty()) invalid("curves", "every curve needs a non-empty id");
    if (!curve_names.insert(c.id).second) invalid("curve '" + c.id + "'", "duplicate id");
    try {
      build_curve(chart_, c);
    } catch (const Error& e) {
      invalid("curve '" + c.id + "'", e.what());
    }
  }
}

const ConvexBody& Scene::body(std::string_view id) const {
  for (std::size_t i = 0; i < body_specs_.size(); ++i)
    if (body_specs_[i].id == id) return bodies_[i];
  invalid("scene", "no body with id '" + std::string(id) + "'");
}

Vector Scene::point(std::string_view id) const {
  for (const PointSpec& p : point_specs_)
    if (p.id == id) return chart_point(chart_, p.coords);
  invalid("scene", "no point with id '" + std::string(id) + "'");
}

TimelikeCurve Scene::curve(std::string_view id) const {
  for (const CurveSpec& c : curve_specs_)
    if (c.id == id) return build_curve(chart_, c);
  invalid("scene", "no curve with id '" + std::string(id) + "'");
}

Scene parse_scene(std::string_view input) {
  const json doc = parse_json(input);
  object(doc, "scene");
  reject_unknown(doc, {"chart", "bodies", "context", "points", "curves"}, "scene");

  const json& c = object(field(doc, "chart", "scene"), "chart");
  reject_unknown(c, {"kind", "dimension"}, "chart");
  Chart chart;
  try {
    chart.kind = chart_kind_from_string(text(field(c, "kind", "chart"), "chart.kind"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::validation) throw;
    invalid("chart.kind", e.what());
  }
  const json& dim = field(c, "dimension", "chart");
  if (!dim.is_number_integer()) invalid("chart.dimension", "expected an integer");
  chart.dimension = dim.get<int>();

  std::vector<BodySpec> bodies;
  const json& bs = field(doc, "bodies", "scene");
  if (!bs.is_array() || bs.empty()) invalid("bodies", "expected a non-empty array");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    std::string where = "bodies[" + std::to_string(i) + "]";
    const json& b = object(bs[i], where);
    BodySpec spec;
    spec.id = text(field(b, "id", where), where + ".id");
    where = "body '" + spec.id + "'";
    spec.kind = text(field(b, "kind", where), where + ".kind");
    if (spec.kind == "hpolytope") {
      reject_unknown(b, {"id", "kind", "faces", "interior", "hemisphere"}, where);
      const json& fs = field(b, "faces", where);
      if (!fs.is_array() || fs.empty()) invalid(where + ".faces", "expected a non-empty array");
      for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::string fw = where + ".faces[" + std::to_string(k) + "]";
        const json& f = object(fs[k], fw);
        reject_unknown(f, {"normal", "offset"}, fw);
        FaceSpec face;
        face.normal = vector_of(field(f, "normal", fw), fw + ".normal");
        if (f.contains("offset")) face.offset = number(f["offset"], fw + ".offset");
        spec.faces.push_back(std::move(face));
      }
      if (b.contains("interior")) spec.interior = vector_of(b["interior"], where + ".interior");
      if (b.contains("hemisphere"))
        spec.hemisphere = vector_of(b["hemisphere"], where + ".hemisphere");
    } else if (spec.kind == "ball" || spec.kind == "cap") {
      reject_unknown(b, {"id", "kind", "center", "radius"}, where);
      spec.center = vector_of(field(b, "center", where), where + ".center");
      spec.radius = number(field(b, "radius", where), where + ".radius");
    } else {
      invalid(where, "unknown body kind '" + spec.kind + "'");
    }
    bodies.push_back(std::move(spec));
  }

  const json& cx = object(field(doc, "context", "scene"), "context");
  reject_unknown(cx, {"kind", "body", "past", "future"}, "context");
  ContextSpec ctx;
  try {
    ctx.kind = context_kind_from_string(text(field(cx, "kind", "context"), "context.kind"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::validation) throw;
    invalid("context.kind", e.what());
  }
  if (ctx.kind == ContextKind::funk) {
    if (cx.contains("past")) invalid("context", "a funk context takes a single body");
    if (cx.contains("body") == cx.contains("future"))
      invalid("context", "give the funk body as 'body' (or 'future')");
    ctx.future = text(cx.contains("body") ? cx["body"] : cx["future"], "context.body");
  } else {
    if (cx.contains("body")) invalid("context", "'body' is for funk contexts");
    ctx.past = text(field(cx, "past", "context"), "context.past");
    if (ctx.kind != ContextKind::projective_desitter)
      ctx.future = text(field(cx, "future", "context"), "context.future");
    else if (cx.contains("future"))
      invalid("context", "the future body of a projective context is the antipode of the past");
  }

  std::vector<PointSpec> points;
  if (doc.contains("points")) {
    const json& ps = doc["points"];
    if (!ps.is_array()) invalid("points", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string where = "points[" + std::to_string(i) + "]";
      const json& p = object(ps[i], where);
      reject_unknown(p, {"id", "coords"}, where);
      points.push_back({text(field(p, "id", where), where + ".id"),
                        vector_of(field(p, "coords", where), where + ".coords")});
    }
  }
  std::vector<CurveSpec> curves;
  if (doc.contains("curves")) {
    const json& cs = doc["curves"];
    if (!cs.is_array()) invalid("curves", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i)
      curves.push_back(curve_from_json(cs[i], "curves[" + std::to_string(i) + "]", true));
  }
  return Scene(chart, std::move(bodies), std::move(ctx), std::move(points), std::move(curves));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scene load_scene(const std::string& path) { return parse_scene(read_file(path)); }

std::string serialize_scene(const Scene& scene) {
  ordered_json doc;
  doc["chart"] = {{"kind", std::string(to_string(scene.chart().kind))},
                  {"dimension", scene.chart().dimension}};
  ordered_json bodies = ordered_json::array();
  for (const BodySpec& b : scene.body_specs()) {
    ordered_json o;
    o["id"] = b.id;
    o["kind"] = b.kind;
    if (b.kind == "hpolytope") {
      ordered_json faces = ordered_json::array();
      for (const FaceSpec& f : b.faces) {
        ordered_json face;
        face["normal"] = to_json(f.normal);
        face["offset"] = f.offset;
        faces.push_back(std::move(face));
      }
      o["faces"] = std::move(faces);
      if (b.interior) o["interior"] = to_json(*b.interior);
      if (b.hemisphere) o["hemisphere"] = to_json(*b.hemisphere);
    } else {
      o["center"] = to_json(b.center);
      o["radius"] = b.radius;
    }
    bodies.push_back(std::move(o));
  }
  doc["bodies"] = std::move(bodies);
  const ContextSpec& c = scene.context_spec();
  ordered_json ctx;
  ctx["kind"] = std::string(to_string(c.kind));
  if (c.kind == ContextKind::funk) {
    ctx["body"] = c.future;
  } else {
    ctx["past"] = c.past;
    if (c.kind != ContextKind::projective_desitter) ctx["future"] = c.future;
  }
  doc["context"] = std::move(ctx);
  if (!scene.point_specs().empty()) {
    ordered_json pts = ordered_json::array();
    for (const PointSpec& p : scene.point_specs())
      pts.push_back(ordered_json{{"id", p.id}, {"coords", to_json(p.coords)}});
    doc["points"] = std::move(pts);
  }
  if (!scene.curve_specs().empty()) {
    ordered_json cs = ordered_json::array();
    for (const CurveSpec& c2 : scene.curve_specs()) cs.push_back(curve_to_json(c2, true));
    doc["curves"] = std::move(cs);
  }
  return doc.dump(2) + "\n";
}

CurveSpec parse_curve(std::string_view input) {
  return curve_from_json(parse_json(input), "curve", false);
}

CurveSpec load_curve(const std::string& path) { return parse_curve(read_file(path)); }

TimelikeCurve build_curve(const Chart& chart, const CurveSpec& spec) {
  std::vector<Vector> pts;
  for (const Vector& p : spec.points) pts.push_back(chart_point(chart, p));
  const auto need_two = [&] {
    if (pts.size() != 2) fail(ErrorCode::validation, spec.kind + " curves need exactly two points");
  };
  std::optional<TimelikeCurve> curve;
  if (spec.kind == "segment") {
    need_two();
    curve = TimelikeCurve::segment(chart, pts[0], pts[1]);
  } else if (spec.kind == "polyline") {
    curve = TimelikeCurve::on_chart(chart, TimelikeCurve::polyline(pts));
  } else if (spec.kind == "hermite") {
    for (const Vector& t : spec.tangents)
      if (t.size() != chart.ambient_size())
        fail(ErrorCode::validation, "tangents need " + std::to_string(chart.ambient_size()) +
                                        " components");
    curve = TimelikeCurve::on_chart(chart, TimelikeCurve::hermite(pts, spec.tangents));
  } else if (spec.kind == "bump") {
    need_two();
    for (const Vector& d : spec.directions)
      if (d.size() != chart.ambient_size())
        fail(ErrorCode::validation, "directions need " + std::to_string(chart.ambient_size()) +
                                        " components");
    curve = TimelikeCurve::bump(chart, pts[0], pts[1], spec.amplitudes, spec.directions);
  } else {
    fail(ErrorCode::validation, "unknown curve kind '" + spec.kind + "'");
  }
  return curve->with_samples(spec.samples);
}

}  // namespace timelike
