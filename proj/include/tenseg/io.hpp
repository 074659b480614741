#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tenseg/force_lines.hpp"
#include "tenseg/framework.hpp"
#include "tenseg/morse.hpp"

namespace tenseg {

struct RenderParams {
  int grid = 512;
  int levels = 8;

  friend bool operator==(const RenderParams&, const RenderParams&) = default;
};

/// On-disk scene: vertices carry polynomials as [i, j, coeff] triples.
/// Strict: unknown keys are errors, ids must be unique, edges must
/// reference existing ids, bbox must be ordered.
struct SceneDocument {
  struct Vertex {
    std::string id;
    std::vector<ScalarField::Term> function;

    friend bool operator==(const Vertex&, const Vertex&) = default;
  };
  struct Pin {
    double x = 0.0;
    double y = 0.0;
    int index = 0;

    friend bool operator==(const Pin&, const Pin&) = default;
  };

  int version = 1;
  BBox bbox;
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  std::map<std::string, std::vector<Pin>> pinned_critical_points;
  std::optional<RenderParams> render;

  friend bool operator==(const SceneDocument&, const SceneDocument&) = default;
};

struct FrameworkDocument {
  struct Vertex {
    std::string id;
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
  };

  int version = 1;
  std::vector<Vertex> vertices;
  std::vector<std::pair<std::string, std::string>> edges;

  friend bool operator==(const FrameworkDocument&,
                         const FrameworkDocument&) = default;
};

SceneDocument parse_scene(const std::string& text);
std::string print_scene(const SceneDocument& doc);

FrameworkDocument parse_framework(const std::string& text);
std::string print_framework(const FrameworkDocument& doc);

/// Builds the runtime scene; pinned critical points are checked against the
/// vertex field (small gradient, matching Morse index) and ordered
/// lexicographically like solver output.
Scene to_scene(const SceneDocument& doc);

ClassicalFramework to_framework(const FrameworkDocument& doc);

/// Serializes the paraboloid lift of a framework.
SceneDocument lift_document(const FrameworkDocument& doc);

/// CSV with header edge,component,point_index,x,y,start_tag,end_tag.
/// Degenerate edges (identically zero Jacobian) emit one row with empty
/// point fields and both tags set to "degenerate".
std::string force_lines_csv(const std::vector<EdgeTrace>& traces);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tenseg
