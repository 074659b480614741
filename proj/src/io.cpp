#include "tenseg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tenseg {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw ValidationError(std::string("unknown key '") + key + "' in " +
                            where);
  }
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

double require_number(const json& v, const char* what) {
  if (!v.is_number())
    throw ValidationError(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d))
    throw ValidationError(std::string(what) + " must be finite");
  return d;
}

int require_int(const json& v, const char* what) {
  if (!v.is_number_integer())
    throw ValidationError(std::string(what) + " must be an integer");
  return v.get<int>();
}

std::string require_string(const json& v, const char* what) {
  if (!v.is_string())
    throw ValidationError(std::string(what) + " must be a string");
  return v.get<std::string>();
}

int check_version(const json& doc) {
  if (!doc.is_object()) throw ValidationError("document root must be an object");
  if (!doc.contains("version")) throw ValidationError("missing 'version'");
  const int version = require_int(doc.at("version"), "'version'");
  if (version != 1)
    throw ValidationError("unsupported document version " +
                          std::to_string(version));
  return version;
}

std::vector<std::pair<std::string, std::string>> parse_edges(const json& doc) {
  if (!doc.contains("edges")) throw ValidationError("missing 'edges'");
  const json& arr = doc.at("edges");
  if (!arr.is_array()) throw ValidationError("'edges' must be an array");
  std::vector<std::pair<std::string, std::string>> edges;
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != 2)
      throw ValidationError("each edge must be a pair of vertex ids");
    edges.emplace_back(require_string(e[0], "edge endpoint"),
                       require_string(e[1], "edge endpoint"));
  }
  return edges;
}

}  // namespace

SceneDocument parse_scene(const std::string& text) {
  const json doc = parse_json(text);
  check_keys(doc, "scene document",
             {"version", "bbox", "vertices", "edges", "pinned_critical_points",
              "render"});
  SceneDocument out;
  out.version = check_version(doc);

  if (!doc.contains("bbox")) throw ValidationError("missing 'bbox'");
  const json& bb = doc.at("bbox");
  if (!bb.is_array() || bb.size() != 4)
    throw ValidationError("'bbox' must be [xmin, ymin, xmax, ymax]");
  out.bbox = {require_number(bb[0], "bbox"), require_number(bb[1], "bbox"),
              require_number(bb[2], "bbox"), require_number(bb[3], "bbox")};
  if (!out.bbox.valid())
    throw ValidationError("bbox must satisfy xmin < xmax and ymin < ymax");

  if (!doc.contains("vertices")) throw ValidationError("missing 'vertices'");
  const json& verts = doc.at("vertices");
  if (!verts.is_array() || verts.empty())
    throw ValidationError("'vertices' must be a non-empty array");
  for (const json& v : verts) {
    if (!v.is_object()) throw ValidationError("vertex entries must be objects");
    check_keys(v, "vertex", {"id", "function"});
    if (!v.contains("id") || !v.contains("function"))
      throw ValidationError("vertex entries need 'id' and 'function'");
    SceneDocument::Vertex vertex;
    vertex.id = require_string(v.at("id"), "vertex id");
    const json& fn = v.at("function");
    if (!fn.is_array())
      throw ValidationError("vertex function must be an array of triples");
    for (const json& t : fn) {
      if (!t.is_array() || t.size() != 3)
        throw ValidationError("function terms must be [i, j, coeff] triples");
      ScalarField::Term term{require_int(t[0], "exponent"),
                             require_int(t[1], "exponent"),
                             require_number(t[2], "coefficient")};
      if (term.i < 0 || term.j < 0)
        throw ValidationError("exponents must be non-negative");
      for (const ScalarField::Term& prev : vertex.function)
        if (prev.i == term.i && prev.j == term.j)
          throw ValidationError("duplicate exponent pair in function of '" +
                                vertex.id + "'");
      if (term.coeff != 0.0) vertex.function.push_back(term);
    }
    out.vertices.push_back(std::move(vertex));
  }

  out.edges = parse_edges(doc);

  if (doc.contains("pinned_critical_points")) {
    const json& pins = doc.at("pinned_critical_points");
    if (!pins.is_object())
      throw ValidationError("'pinned_critical_points' must be an object");
    for (const auto& [id, list] : pins.items()) {
      if (!list.is_array() || list.empty())
        throw ValidationError("pinned critical points of '" + id +
                              "' must be a non-empty array");
      std::vector<SceneDocument::Pin> parsed;
      for (const json& p : list) {
        if (!p.is_object())
          throw ValidationError("pinned critical points must be objects");
        check_keys(p, "pinned critical point", {"x", "y", "index"});
        if (!p.contains("x") || !p.contains("y") || !p.contains("index"))
          throw ValidationError("pinned critical points need x, y, index");
        SceneDocument::Pin pin{require_number(p.at("x"), "pin x"),
                               require_number(p.at("y"), "pin y"),
                               require_int(p.at("index"), "pin index")};
        if (pin.index < 0 || pin.index > 2)
          throw ValidationError("pin index must be 0, 1 or 2");
        parsed.push_back(pin);
      }
      out.pinned_critical_points.emplace(id, std::move(parsed));
    }
  }

  if (doc.contains("render")) {
    const json& r = doc.at("render");
    if (!r.is_object()) throw ValidationError("'render' must be an object");
    check_keys(r, "render", {"grid", "levels"});
    RenderParams params;
    if (r.contains("grid")) params.grid = require_int(r.at("grid"), "render grid");
    if (r.contains("levels"))
      params.levels = require_int(r.at("levels"), "render levels");
    if (params.grid < 8) throw ValidationError("render grid must be >= 8");
    if (params.levels < 1) throw ValidationError("render levels must be >= 1");
    out.render = params;
  }

  // cheap structural validation against the graph rules
  to_scene(out);
  return out;
}

std::string print_scene(const SceneDocument& doc) {
  ordered root;
  root["version"] = doc.version;
  root["bbox"] = {doc.bbox.xmin, doc.bbox.ymin, doc.bbox.xmax, doc.bbox.ymax};
  root["vertices"] = ordered::array();
  for (const auto& v : doc.vertices) {
    ordered vertex;
    vertex["id"] = v.id;
    ordered fn = ordered::array();
    for (const auto& t : v.function) fn.push_back({t.i, t.j, t.coeff});
    vertex["function"] = std::move(fn);
    root["vertices"].push_back(std::move(vertex));
  }
  root["edges"] = ordered::array();
  for (const auto& [u, v] : doc.edges) root["edges"].push_back({u, v});
  if (!doc.pinned_critical_points.empty()) {
    ordered pins;
    for (const auto& [id, list] : doc.pinned_critical_points) {
      ordered arr = ordered::array();
      for (const auto& p : list)
        arr.push_back({{"x", p.x}, {"y", p.y}, {"index", p.index}});
      pins[id] = std::move(arr);
    }
    root["pinned_critical_points"] = std::move(pins);
  }
  if (doc.render) {
    root["render"] = {{"grid", doc.render->grid},
                      {"levels", doc.render->levels}};
  }
  return root.dump(2) + "\n";
}

FrameworkDocument parse_framework(const std::string& text) {
  const json doc = parse_json(text);
  check_keys(doc, "framework document", {"version", "vertices", "edges"});
  FrameworkDocument out;
  out.version = check_version(doc);
  if (!doc.contains("vertices")) throw ValidationError("missing 'vertices'");
  const json& verts = doc.at("vertices");
  if (!verts.is_array() || verts.empty())
    throw ValidationError("'vertices' must be a non-empty array");
  for (const json& v : verts) {
    if (!v.is_object()) throw ValidationError("vertex entries must be objects");
    check_keys(v, "vertex", {"id", "x", "y"});
    if (!v.contains("id") || !v.contains("x") || !v.contains("y"))
      throw ValidationError("vertex entries need 'id', 'x' and 'y'");
    out.vertices.push_back({require_string(v.at("id"), "vertex id"),
                            require_number(v.at("x"), "vertex x"),
                            require_number(v.at("y"), "vertex y")});
  }
  out.edges = parse_edges(doc);
  to_framework(out);
  return out;
}

std::string print_framework(const FrameworkDocument& doc) {
  ordered root;
  root["version"] = doc.version;
  root["vertices"] = ordered::array();
  for (const auto& v : doc.vertices)
    root["vertices"].push_back({{"id", v.id}, {"x", v.x}, {"y", v.y}});
  root["edges"] = ordered::array();
  for (const auto& [u, v] : doc.edges) root["edges"].push_back({u, v});
  return root.dump(2) + "\n";
}

Scene to_scene(const SceneDocument& doc) {
  Scene scene;
  std::vector<std::string> ids;
  ids.reserve(doc.vertices.size());
  for (const auto& v : doc.vertices) ids.push_back(v.id);
  scene.graph = Graph::create(std::move(ids), doc.edges);
  scene.bbox = doc.bbox;
  for (const auto& v : doc.vertices)
    scene.fields.emplace_back(std::vector<ScalarField::Term>(v.function));

  for (const auto& [id, pins] : doc.pinned_critical_points) {
    const int vertex = scene.graph.vertex_index(id);
    if (vertex < 0)
      throw ValidationError("pinned critical points reference unknown vertex '" +
                            id + "'");
    const ScalarField& f = scene.fields[static_cast<std::size_t>(vertex)];
    const ScalarField gx = f.derivative_x();
    const ScalarField gy = f.derivative_y();
    const double grad_bound =
        scene.solver.grad_tol * (1.0 + f.max_abs_coeff());
    std::vector<CriticalPoint> points;
    for (const auto& pin : pins) {
      const Point2 p{pin.x, pin.y};
      if (std::hypot(gx.evaluate(p), gy.evaluate(p)) > grad_bound)
        throw ValidationError("pinned point of '" + id +
                              "' is not a gradient zero");
      const Hessian2 h{gx.derivative_x().evaluate(p), gx.derivative_y().evaluate(p),
                       gy.derivative_y().evaluate(p)};
      int index;
      try {
        index = morse_index(h);
      } catch (const DegenerateHessian&) {
        throw ValidationError("pinned point of '" + id + "' is degenerate");
      }
      if (index != pin.index)
        throw ValidationError("pinned point of '" + id +
                              "' has Morse index " + std::to_string(index) +
                              ", not " + std::to_string(pin.index));
      points.push_back({p, index, h.det(), index % 2 == 0 ? 1 : -1});
    }
    std::sort(points.begin(), points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) {
                return lex_less(a.location, b.location);
              });
    scene.pinned.emplace(vertex, std::move(points));
  }
  scene.validate();
  return scene;
}

ClassicalFramework to_framework(const FrameworkDocument& doc) {
  ClassicalFramework fw;
  std::vector<std::string> ids;
  ids.reserve(doc.vertices.size());
  for (const auto& v : doc.vertices) ids.push_back(v.id);
  fw.graph = Graph::create(std::move(ids), doc.edges);
  for (const auto& v : doc.vertices) fw.positions.push_back({v.x, v.y});
  fw.validate();
  return fw;
}

SceneDocument lift_document(const FrameworkDocument& doc) {
  const ClassicalFramework fw = to_framework(doc);
  const Scene scene = paraboloid_lift(fw);
  SceneDocument out;
  out.bbox = scene.bbox;
  for (std::size_t k = 0; k < doc.vertices.size(); ++k)
    out.vertices.push_back({doc.vertices[k].id, scene.fields[k].terms()});
  out.edges = doc.edges;
  return out;
}

namespace {

std::string tag_string(const EndpointTag& tag) {
  switch (tag.kind) {
    case TagKind::kCriticalPoint:
      return "critical_point:" + tag.vertex_id + ":" + std::to_string(tag.index);
    case TagKind::kClosed:
      return "closed";
    case TagKind::kBoundary:
    default:
      return "boundary";
  }
}

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string force_lines_csv(const std::vector<EdgeTrace>& traces) {
  std::string out = "edge,component,point_index,x,y,start_tag,end_tag\n";
  for (const EdgeTrace& trace : traces) {
    const std::string edge =
        trace.line.edge.first + "-" + trace.line.edge.second;
    if (trace.degenerate) {
      out += edge + ",,,,,degenerate,degenerate\n";
      continue;
    }
    for (std::size_t c = 0; c < trace.line.components.size(); ++c) {
      const ForceLineComponent& comp = trace.line.components[c];
      const std::string start = tag_string(comp.start);
      const std::string end = tag_string(comp.end);
      for (std::size_t k = 0; k < comp.line.points.size(); ++k) {
        out += edge + "," + std::to_string(c) + "," + std::to_string(k) + "," +
               format_double(comp.line.points[k].x) + "," +
               format_double(comp.line.points[k].y) + "," + start + "," + end +
               "\n";
      }
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace tenseg
