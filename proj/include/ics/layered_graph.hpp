#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ics/bits.hpp"

namespace ics {

// Out-edge labels of the transcript graph, in canonical order.
enum class EdgeLabel : std::uint8_t { Zero = 0, One = 1, Back = 2, Stay = 3 };

inline constexpr std::array<EdgeLabel, 4> kAllEdges = {EdgeLabel::Zero, EdgeLabel::One, EdgeLabel::Back,
                                                       EdgeLabel::Stay};

char edge_char(EdgeLabel e);  // '0', '1', '<', '.'
EdgeLabel edge_from_char(char c);
std::string edges_to_string(std::span<const EdgeLabel> path);
std::vector<EdgeLabel> edges_from_string(const std::string& text);

struct Vertex {
  BitString transcript;
  int layer = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::string to_string(const Vertex& v);

struct GraphParams {
  int n0 = 2;     // noiseless protocol length
  int depth = 1;  // maximum layer
};

void validate(const GraphParams& params);

Vertex root_vertex();

// Returns v with e applied. Throws DepthExceeded at the last layer and
// AppendBeyondComplete when a bit would extend a length-n0 transcript.
Vertex apply_edge(const Vertex& v, EdgeLabel e, const GraphParams& params);

// Like apply_edge but returns false instead of throwing AppendBeyondComplete.
bool try_apply_edge(const Vertex& v, EdgeLabel e, const GraphParams& params, Vertex& out);

Vertex follow_path(const Vertex& start, std::span<const EdgeLabel> path, const GraphParams& params);

std::size_t layer_size(int layer, const GraphParams& params);
std::vector<Vertex> layer_vertices(int layer, const GraphParams& params);

}  // namespace ics
