#include "ics/layered_graph.hpp"

#include <algorithm>

#include "ics/errors.hpp"

namespace ics {

char edge_char(EdgeLabel e) {
  switch (e) {
    case EdgeLabel::Zero: return '0';
    case EdgeLabel::One: return '1';
    case EdgeLabel::Back: return '<';
    case EdgeLabel::Stay: return '.';
  }
  return '?';
}

EdgeLabel edge_from_char(char c) {
  switch (c) {
    case '0': return EdgeLabel::Zero;
    case '1': return EdgeLabel::One;
    case '<': return EdgeLabel::Back;
    case '.': return EdgeLabel::Stay;
  }
  throw std::invalid_argument(std::string("not an edge label: ") + c);
}

std::string edges_to_string(std::span<const EdgeLabel> path) {
  std::string s;
  for (auto e : path) s.push_back(edge_char(e));
  return s;
}

std::vector<EdgeLabel> edges_from_string(const std::string& text) {
  std::vector<EdgeLabel> out;
  for (char c : text) out.push_back(edge_from_char(c));
  return out;
}

std::string to_string(const Vertex& v) {
  return (v.transcript.empty() ? std::string("()") : v.transcript.str()) + "@" + std::to_string(v.layer);
}

void validate(const GraphParams& params) {
  if (params.n0 < 1 || params.n0 > BitString::kMaxLength) throw ConfigError("n0 out of range");
  if (params.depth < 1) throw ConfigError("depth must be >= 1");
}

Vertex root_vertex() { return Vertex{}; }

bool try_apply_edge(const Vertex& v, EdgeLabel e, const GraphParams& params, Vertex& out) {
  if (v.layer >= params.depth)
    throw DepthExceeded("edge applied at layer " + std::to_string(v.layer) + " of depth " +
                        std::to_string(params.depth));
  out.layer = v.layer + 1;
  out.transcript = v.transcript;
  switch (e) {
    case EdgeLabel::Zero:
    case EdgeLabel::One:
      if (v.transcript.size() >= params.n0) return false;
      out.transcript.push_back(e == EdgeLabel::One);
      break;
    case EdgeLabel::Back:
      if (!out.transcript.empty()) out.transcript.pop_back();
      break;
    case EdgeLabel::Stay:
      break;
  }
  return true;
}

Vertex apply_edge(const Vertex& v, EdgeLabel e, const GraphParams& params) {
  Vertex out;
  if (!try_apply_edge(v, e, params, out))
    throw AppendBeyondComplete("bit appended to complete transcript " + to_string(v));
  return out;
}

Vertex follow_path(const Vertex& start, std::span<const EdgeLabel> path, const GraphParams& params) {
  Vertex v = start;
  for (auto e : path) v = apply_edge(v, e, params);
  return v;
}

std::size_t layer_size(int layer, const GraphParams& params) {
  return (std::size_t{1} << (std::min(layer, params.n0) + 1)) - 1;
}

std::vector<Vertex> layer_vertices(int layer, const GraphParams& params) {
  if (layer < 0 || layer > params.depth) throw DepthExceeded("layer outside graph");
  const std::size_t n = layer_size(layer, params);
  std::vector<Vertex> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Vertex{from_heap_index(i), layer});
  return out;
}

}  // namespace ics
