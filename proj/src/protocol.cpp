#include "ics/protocol.hpp"

#include <algorithm>

#include "ics/errors.hpp"

namespace ics {

bool in_turn_set(Role role, int length, int n0) {
  if (length >= n0) return false;
  const bool odd = (length % 2) != 0;  // -1 % 2 == -1, so -1 is odd
  return role == Role::Alice ? !odd && length >= 0 : odd;
}

EdgeLabel op_party(const PartyOracle& party, const BitString& t) {
  if (!consistent(party, t)) return EdgeLabel::Back;
  if (in_turn_set(party.role(), t.size(), party.n0()))
    return party.next_bit(t) ? EdgeLabel::One : EdgeLabel::Zero;
  return EdgeLabel::One;
}

EdgeLabel op_target(const BitString& target, const BitString& t) {
  if (target == t) return EdgeLabel::One;
  if (t.size() < target.size() && t.is_prefix_of(target))
    return target.bit(t.size()) ? EdgeLabel::One : EdgeLabel::Zero;
  return EdgeLabel::Back;
}

OtimesStep otimes_step(const Guess& g, EdgeLabel delta_hat, const PartyOracle& party) {
  const int len = g.transcript.size();
  const int n0 = party.n0();
  const Role role = party.role();
  switch (delta_hat) {
    case EdgeLabel::Stay:
      return {EdgeLabel::Stay, EdgeLabel::Stay, g.weight};
    case EdgeLabel::Back:
      if (g.weight > 0) return {EdgeLabel::Stay, EdgeLabel::Stay, g.weight - 1};
      if (in_turn_set(role, len - 1, n0)) return {EdgeLabel::Back, EdgeLabel::Back, g.weight};
      return {EdgeLabel::Back, EdgeLabel::Stay, g.weight};
    case EdgeLabel::Zero:
    case EdgeLabel::One:
      if (len == n0) return {EdgeLabel::Stay, EdgeLabel::Stay, g.weight + 1};
      if (in_turn_set(role, len - 1, n0)) {
        if (len < n0 - 1) return {delta_hat, op_party(party, g.transcript.appended(delta_hat == EdgeLabel::One)), 0};
        return {delta_hat, EdgeLabel::Stay, 0};
      }
      if (in_turn_set(role, len, n0)) return {EdgeLabel::Stay, op_party(party, g.transcript), 0};
      throw InvariantViolation("transcript length " + std::to_string(len) + " has no owner for this party");
  }
  throw InvariantViolation("unknown instruction");
}

namespace {

void step_transcript(BitString& t, EdgeLabel e) {
  switch (e) {
    case EdgeLabel::Zero: t.push_back(false); break;
    case EdgeLabel::One: t.push_back(true); break;
    case EdgeLabel::Back:
      if (!t.empty()) t.pop_back();
      break;
    case EdgeLabel::Stay: break;
  }
}

}  // namespace

Guess otimes_guess(const Guess& g, EdgeLabel delta_hat, const PartyOracle& party) {
  const OtimesStep s = otimes_step(g, delta_hat, party);
  Guess out{g.transcript, s.weight};
  step_transcript(out.transcript, s.first);
  step_transcript(out.transcript, s.second);
  return out;
}

UpdateState::UpdateState(GraphParams graph) : graph_(graph) { trail_.push_back(root_vertex()); }

void UpdateState::append(EdgeLabel e) {
  trail_.push_back(apply_edge(trail_.back(), e, graph_));
  edges_.push_back(e);
}

SymbolPair UpdateState::last_pair_labels(const LayeredCode& code) const {
  const std::size_t n = edges_.size();
  if (n < 2) throw InvariantViolation("update sequence has no complete pair");
  return {code.label(trail_[n - 2], edges_[n - 2]), code.label(trail_[n - 1], edges_[n - 1])};
}

void otimes(UpdateState& state, EdgeLabel delta_hat, const PartyOracle& party) {
  const OtimesStep s = otimes_step(state.guess(), delta_hat, party);
  state.append(s.first);
  state.append(s.second);
  state.set_weight(s.weight);
}

GraphParams session_graph(int n0, int K) { return GraphParams{n0, 2 * K + 2}; }

const char* case_name(CaseTaken c) {
  switch (c) {
    case CaseTaken::Opening: return "opening";
    case CaseTaken::Case1: return "1";
    case CaseTaken::Case2Unknown: return "2.1";
    case CaseTaken::Case2Vote: return "2.2";
    case CaseTaken::Case2Answer: return "2.3";
    case CaseTaken::Case3: return "3";
  }
  return "?";
}

Party::Party(Role role, const PartyOracle& oracle, const SessionContext& ctx, std::uint64_t coin_seed)
    : role_(role),
      oracle_(&oracle),
      ctx_(ctx),
      rng_(coin_seed),
      state_(session_graph(ctx.n0, ctx.K)),
      decoder_(*ctx.code, ctx.code_epsilon) {
  if (oracle.role() != role) throw ConfigError("oracle role does not match party role");
  if (oracle.n0() != ctx.n0) throw ConfigError("oracle n0 does not match session");
  if (ctx.n0 < 2 || ctx.n0 % 2 != 0) throw ConfigError("n0 must be even and >= 2");
  if (ctx.K < 2 || ctx.K % 2 != 0) throw ConfigError("K must be even and >= 2");
  const GraphParams need = session_graph(ctx.n0, ctx.K);
  if (ctx.code->params().n0 != need.n0 || ctx.code->params().depth < need.depth)
    throw ConfigError("layered code graph does not fit the session (need depth >= 2K+2)");
  if (ctx.ecc->params().alphabet_size != ctx.code->alphabet_size())
    throw ConfigError("ecc alphabet differs from the layered code alphabet");
}

bool Party::coin(std::int64_t numerator, std::uint64_t denominator) {
  const auto u = static_cast<std::int64_t>(uniform_below(rng_, denominator));
  return u < numerator;
}

void Party::log_pair(SymbolPair z) {
  log_.push_back(z);
  decoder_.push(z.first);
  decoder_.push(z.second);
}

BitVec Party::send(SymbolPair z, Instruction d, RoundResult& r) {
  r.reply_pair = z;
  r.reply_instruction = d;
  r.reply = ctx_.ecc->encode(z, d);
  asked_ = d == Instruction::Ask;
  return r.reply;
}

RoundResult Party::first_message() {
  if (role_ != Role::Alice || rounds_ != 0) throw InvariantViolation("first_message is Alice's opening move only");
  RoundResult r;
  r.taken = CaseTaken::Opening;
  r.before = state_.guess();
  state_.append(EdgeLabel::Stay);
  state_.append(EdgeLabel::One);
  r.applied = EdgeLabel::One;
  r.after = state_.guess();
  const SymbolPair z = state_.last_pair_labels(*ctx_.code);
  log_pair(z);
  send(z, Instruction::Ask, r);
  ++rounds_;
  check_invariants();
  return r;
}

RoundResult Party::receive(const BitVec& m) {
  const EccCode& ecc = *ctx_.ecc;
  const LayeredCode& code = *ctx_.code;
  const int M = ecc.M();
  const bool well_formed = m.size() == M;

  RoundResult r;
  otimes(state_, EdgeLabel::Stay, *oracle_);
  r.before = state_.guess();
  const SymbolPair z_own = state_.last_pair_labels(code);

  // Case 1 candidate: m close to one of the four rows of our own last pair.
  std::optional<Instruction> near_own;
  int d_own = M;
  if (well_formed) {
    for (auto d : kAllInstructions) {
      const int dist = hamming(m, ecc.encode(z_own, d));
      if (within_third(dist, M)) {
        near_own = d;
        d_own = dist;
        break;
      }
    }
  }
  // Case 2 candidate: m close to some question row.
  std::optional<std::size_t> near_question;
  int d_question = M;
  if (well_formed) {
    const auto& table = ecc.table();
    for (std::size_t z = 0; z < ecc.num_pairs(); ++z) {
      const int dist = hamming(m, table[z * 4 + static_cast<int>(Instruction::Ask)]);
      if (!within_sixth_minus_eps(dist, ecc.params())) continue;
      if (near_question) throw InvariantViolation("two question codewords within the Case 2 radius");
      near_question = z;
      d_question = dist;
    }
  }
  if (near_own && near_question &&
      !(ecc.pair_at(*near_question) == z_own && *near_own == Instruction::Ask))
    throw InvariantViolation("Case 1 and Case 2 select different codewords");

  Instruction reply_d = Instruction::Ask;
  SymbolPair zeta;
  if (asked_ && near_own) {
    r.taken = CaseTaken::Case1;
    r.distance = d_own;
    const EdgeLabel delta_hat = *near_own == Instruction::Ask ? EdgeLabel::One : static_cast<EdgeLabel>(*near_own);
    r.coin = coin(std::int64_t{M} - 3 * d_own, M);
    r.applied = r.coin ? delta_hat : EdgeLabel::Stay;
    otimes(state_, r.applied, *oracle_);
    zeta = state_.last_pair_labels(code);
    log_pair(z_own);
  } else if (near_question) {
    const SymbolPair z_star = ecc.pair_at(*near_question);
    r.distance = d_question;
    ListDecoder peek = decoder_;
    peek.push(z_star.first);
    peek.push(z_star.second);
    const DecodeResult v_star = peek.result();
    if (!v_star.unique()) {
      r.taken = CaseTaken::Case2Unknown;
      otimes(state_, EdgeLabel::Stay, *oracle_);
      zeta = state_.last_pair_labels(code);
    } else {
      const BitString& t_star = v_star.vertex.transcript;
      if (t_star.size() == ctx_.n0 && consistent(*oracle_, t_star)) {
        r.taken = CaseTaken::Case2Vote;
        r.coin = coin(std::int64_t{M} - 6 * d_question, 2 * static_cast<std::uint64_t>(M));
        r.applied = r.coin ? op_target(t_star, state_.transcript()) : EdgeLabel::Stay;
        otimes(state_, r.applied, *oracle_);
        zeta = state_.last_pair_labels(code);
      } else {
        r.taken = CaseTaken::Case2Answer;
        otimes(state_, EdgeLabel::Stay, *oracle_);
        r.coin = coin(std::int64_t{M} - 6 * d_question, M);
        if (r.coin) {
          const Vertex next = apply_edge(v_star.vertex, EdgeLabel::Stay, code.params());
          zeta = {code.label(v_star.vertex, EdgeLabel::Stay), code.label(next, EdgeLabel::Stay)};
          reply_d = static_cast<Instruction>(op_party(*oracle_, t_star));
        } else {
          zeta = state_.last_pair_labels(code);
        }
      }
    }
    log_pair(z_star);
  } else {
    r.taken = CaseTaken::Case3;
    otimes(state_, EdgeLabel::Stay, *oracle_);
    zeta = state_.last_pair_labels(code);
    log_pair(SymbolPair{0, 0});
  }
  log_pair(zeta);
  r.after = state_.guess();
  send(zeta, reply_d, r);
  ++rounds_;
  check_invariants();
  return r;
}

PartyOutput Party::output() const {
  PartyOutput out;
  out.transcript = state_.transcript();
  const std::int64_t num = std::min<std::int64_t>(2 * std::int64_t{state_.weight()}, ctx_.K);
  out.confidence = Fraction(num, ctx_.K);
  return out;
}

void Party::check_invariants() const {
  if (state_.weight() > 0 && state_.transcript().size() != ctx_.n0)
    throw InvariantViolation("positive weight on an incomplete transcript");
  if (!consistent(*oracle_, state_.transcript()))
    throw InvariantViolation("transcript guess contradicts the party's own input");
  if (state_.pairs() != log_.size()) throw InvariantViolation("|U| and |P| out of step");
}

}  // namespace ics
