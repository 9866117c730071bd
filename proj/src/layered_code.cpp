#include "ics/layered_code.hpp"

#include <algorithm>

#include "ics/errors.hpp"
#include "ics/rng.hpp"

namespace ics {

LayeredCode::LayeredCode(std::uint64_t seed, std::uint32_t alphabet_size, GraphParams params)
    : seed_(seed), alphabet_size_(alphabet_size), params_(params) {
  validate(params_);
  if (alphabet_size_ < 2) throw ConfigError("alphabet_size must be >= 2");
}

LayeredCode LayeredCode::constant(Symbol symbol, std::uint32_t alphabet_size, GraphParams params) {
  LayeredCode code(0, alphabet_size, params);
  if (symbol >= alphabet_size) throw ConfigError("constant symbol outside alphabet");
  code.constant_ = symbol;
  return code;
}

Symbol LayeredCode::label(const Vertex& v, EdgeLabel e) const {
  if (constant_) return *constant_;
  const std::uint64_t shape = (static_cast<std::uint64_t>(v.transcript.size()) << 48) ^
                              (static_cast<std::uint64_t>(v.layer) << 2) ^ static_cast<std::uint64_t>(e);
  const std::uint64_t h = mix64(mix64(seed_ ^ mix64(shape)) ^ v.transcript.value());
  return static_cast<Symbol>((static_cast<unsigned __int128>(h) * alphabet_size_) >> 64);
}

LayeredCode spawn_code(std::uint64_t seed, std::uint32_t alphabet_size, GraphParams params) {
  return LayeredCode(seed, alphabet_size, params);
}

std::vector<Symbol> encode(const LayeredCode& code, const Vertex& start, std::span<const EdgeLabel> path) {
  std::vector<Symbol> out;
  out.reserve(path.size());
  Vertex v = start;
  for (auto e : path) {
    Vertex next = apply_edge(v, e, code.params());
    out.push_back(code.label(v, e));
    v = next;
  }
  return out;
}

Fraction suffix_distance(std::span<const Symbol> x, std::span<const Symbol> y) {
  if (x.size() != y.size()) throw LengthMismatch("suffix_distance operands differ in length");
  if (x.empty()) throw LengthMismatch("suffix_distance of empty strings");
  const std::int64_t n = static_cast<std::int64_t>(x.size());
  std::int64_t best_num = 0, best_den = 1;
  std::int64_t mism = 0;
  for (std::int64_t i = n - 1; i >= 0; --i) {
    if (x[i] != y[i]) ++mism;
    const std::int64_t len = n - i;
    if (mism * best_den > best_num * len) {
      best_num = mism;
      best_den = len;
    }
  }
  return Fraction(best_num, best_den);
}

ListDecoder::ListDecoder(const LayeredCode& code, Fraction epsilon) : code_(&code) {
  if (epsilon.num <= 0 || epsilon.num >= epsilon.den) throw ConfigError("decoder epsilon must lie in (0,1)");
  match_step_ = -(epsilon.den - epsilon.num);
  mismatch_step_ = epsilon.num;
  deficit_.assign(1, 0);  // root: max(deficit, 0) = 0 for the empty path
}

void ListDecoder::push(Symbol s) {
  const GraphParams& params = code_->params();
  if (layer_ >= params.depth) throw DepthExceeded("decoder pushed past code depth");
  std::vector<std::int64_t> next(layer_size(layer_ + 1, params), kUnreachable);
  Vertex v{BitString(), layer_};
  Vertex u;
  for (std::size_t idx = 0; idx < deficit_.size(); ++idx) {
    const std::int64_t d = deficit_[idx];
    if (d == kUnreachable) continue;
    const std::int64_t base = std::max<std::int64_t>(d, 0);
    v.transcript = from_heap_index(idx);
    for (auto e : kAllEdges) {
      if (!try_apply_edge(v, e, params, u)) continue;
      const std::int64_t nd = base + (code_->label(v, e) == s ? match_step_ : mismatch_step_);
      auto& slot = next[heap_index(u.transcript)];
      if (nd < slot) slot = nd;
    }
  }
  deficit_ = std::move(next);
  ++layer_;
}

std::vector<Vertex> ListDecoder::candidates() const {
  std::vector<Vertex> out;
  if (layer_ == 0) return out;
  for (std::size_t idx = 0; idx < deficit_.size(); ++idx)
    if (deficit_[idx] < 0) out.push_back(Vertex{from_heap_index(idx), layer_});
  return out;
}

DecodeResult ListDecoder::result() const {
  DecodeResult r;
  if (layer_ == 0) return r;
  for (std::size_t idx = 0; idx < deficit_.size(); ++idx) {
    if (deficit_[idx] >= 0) continue;
    if (r.candidates == 0) r.vertex = Vertex{from_heap_index(idx), layer_};
    ++r.candidates;
  }
  r.kind = r.candidates == 0 ? DecodeResult::Kind::Empty
           : r.candidates == 1 ? DecodeResult::Kind::Unique
                               : DecodeResult::Kind::Ambiguous;
  if (!r.unique()) r.vertex = Vertex{};
  return r;
}

std::vector<Vertex> list_layer(const LayeredCode& code, std::span<const Symbol> w, Fraction epsilon, int i) {
  if (i < 1 || i > static_cast<int>(w.size())) throw std::out_of_range("list_layer index");
  ListDecoder dec(code, epsilon);
  for (int k = 0; k < i; ++k) dec.push(w[k]);
  return dec.candidates();
}

DecodeResult decode(const LayeredCode& code, std::span<const Symbol> w, Fraction epsilon) {
  if (w.empty()) throw LengthMismatch("decode of empty word");
  ListDecoder dec(code, epsilon);
  for (auto s : w) dec.push(s);
  return dec.result();
}

DecodeQuality decode_quality(const LayeredCode& code, std::span<const EdgeLabel> x, std::span<const Symbol> w,
                             Fraction epsilon) {
  if (x.size() != w.size()) throw LengthMismatch("decode_quality: |x| != |w|");
  DecodeQuality q;
  ListDecoder dec(code, epsilon);
  Vertex v = root_vertex();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Symbol expected = code.label(v, x[i]);
    v = apply_edge(v, x[i], code.params());
    dec.push(w[i]);
    if (expected != w[i]) continue;
    ++q.agreements;
    const DecodeResult r = dec.result();
    if (!(r.unique() && r.vertex == v)) ++q.bad;
  }
  return q;
}

}  // namespace ics
