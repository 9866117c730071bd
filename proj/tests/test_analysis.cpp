#include <gtest/gtest.h>

#include "ics/analysis.hpp"
#include "ics/channel.hpp"
#include "ics/errors.hpp"
#include "ics/run_analysis.hpp"
#include "support.hpp"

using namespace ics;

namespace {

BitString bs(const char* s) { return BitString::parse(s); }

SessionConfig base_config() {
  SessionConfig c;
  c.n0 = 4;
  c.epsilon = Fraction(1, 4);
  return c;
}

}  // namespace

TEST(Classify, Examples) {
  const TableParty alice = exchange_party(Role::Alice, 4, 1);
  const BitString truth = bs("1010");
  const Guess g{bs("1"), 0};
  EXPECT_EQ(classify_update(g, otimes_guess(g, EdgeLabel::Stay, alice), truth, alice), UpdateClass::Neutral);
  EXPECT_EQ(classify_update(g, otimes_guess(g, EdgeLabel::Zero, alice), truth, alice), UpdateClass::Good);
  EXPECT_EQ(classify_update(g, otimes_guess(g, EdgeLabel::One, alice), truth, alice), UpdateClass::Bad);
  const Guess done{truth, 2};
  EXPECT_EQ(classify_update(done, otimes_guess(done, EdgeLabel::One, alice), truth, alice), UpdateClass::Good);
  EXPECT_EQ(classify_update(done, otimes_guess(done, EdgeLabel::Back, alice), truth, alice), UpdateClass::Bad);
}

TEST(Classify, PartitionsEveryUpdate) {
  Rng rng(41);
  for (int t = 0; t < 2000; ++t) {
    const int n0 = 2 * static_cast<int>(1 + uniform_below(rng, 4));
    auto pp = testkit::random_parties(rng, n0);
    const PartyOracle& party = t % 2 ? static_cast<const PartyOracle&>(pp.alice) : pp.bob;
    const Guess g = testkit::consistent_state(rng, party);
    const Guess good = otimes_guess(g, op_target(pp.truth, g.transcript), party);
    EXPECT_EQ(classify_update(g, good, pp.truth, party), UpdateClass::Good);
    EXPECT_NE(good, g);
    EXPECT_EQ(classify_update(g, g, pp.truth, party), UpdateClass::Neutral);
  }
}

TEST(PotentialBound, Examples) {
  const BitString truth = bs("1010");
  EXPECT_TRUE(potential_bound_holds(0, Guess{bs("1"), 0}, truth, 4));
  EXPECT_TRUE(potential_bound_holds(2, Guess{truth, 0}, truth, 4));
  EXPECT_TRUE(potential_bound_holds(5, Guess{truth, 3}, truth, 4));
  EXPECT_FALSE(potential_bound_holds(5, Guess{truth, 2}, truth, 4));
  EXPECT_FALSE(potential_bound_holds(1, Guess{truth, 0}, truth, 4));
  EXPECT_TRUE(potential_bound_holds(-1, Guess{bs("1011"), 3}, truth, 4));
  EXPECT_FALSE(potential_bound_holds(-1, Guess{bs("1011"), 4}, truth, 4));
}

TEST(PsiTrace, NoiselessRunClimbsByGoodUpdates) {
  const RunRecord r = run_session(base_config());
  for (Role p : {Role::Alice, Role::Bob}) {
    const auto trace = psi_trace(r, p);
    int prev = 0;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      const auto& m = r.messages[k];
      const int step = trace[k] - prev;
      if (other(m.sender) != p) {
        EXPECT_EQ(step, 0);
      } else {
        EXPECT_EQ(step, m.update == UpdateClass::Good ? 1 : m.update == UpdateClass::Bad ? -1 : 0);
      }
      prev = trace[k];
    }
  }
  EXPECT_EQ(count_bound_violations(r), 0);
}

TEST(PsiTrace, JammedRunStaysAtZero) {
  SessionConfig c = base_config();
  const SessionSetup setup = build_setup(c);
  c.adversary.kind = AdversaryKind::Scripted;
  std::vector<int> all(setup.ecc->M());
  std::iota(all.begin(), all.end(), 0);
  c.adversary.script.assign(setup.K, all);
  const RunRecord r = run_session(c);
  for (const auto& m : r.messages) {
    EXPECT_EQ(m.receiver_case, CaseTaken::Case3);
    EXPECT_EQ(m.update, UpdateClass::Neutral);
  }
  for (Role p : {Role::Alice, Role::Bob})
    for (int v : psi_trace(r, p)) EXPECT_EQ(v, 0);
  EXPECT_EQ(count_bound_violations(r), 0);
}

namespace {

// Every (t, w) reachable from the party's start by good updates alone.
std::vector<Guess> corridor(const PartyOracle& party, const BitString& truth, int steps) {
  std::vector<Guess> out{{party.role() == Role::Alice ? BitString::parse("1") : BitString(), 0}};
  for (int s = 0; s < steps; ++s) out.push_back(otimes_guess(out.back(), op_target(truth, out.back().transcript), party));
  return out;
}

// Random and nearest-codeword corruption only ever produces neutral updates,
// so bad updates are induced by rewriting the first answer bit a party takes
// in Case 1 into the codeword of the opposite bit.
RunRecord run_with_flipped_answer(const SessionConfig& cfg, const EccCode& ecc) {
  const RunRecord clean = run_session(cfg);
  for (const auto& m : clean.messages) {
    if (m.receiver_case != CaseTaken::Case1) continue;
    if (m.sent_instruction != Instruction::Zero && m.sent_instruction != Instruction::One) continue;
    const Instruction flipped = m.sent_instruction == Instruction::Zero ? Instruction::One : Instruction::Zero;
    const BitVec& a = ecc.encode(m.sent_pair, m.sent_instruction);
    const BitVec& b = ecc.encode(m.sent_pair, flipped);
    std::vector<std::vector<int>> script(m.index);
    for (int i = 0; i < a.size(); ++i)
      if (a.get(i) != b.get(i)) script.back().push_back(i);
    SessionConfig corrupted = cfg;
    corrupted.adversary.kind = AdversaryKind::Scripted;
    corrupted.adversary.script = std::move(script);
    return run_session(corrupted);
  }
  return clean;
}

}  // namespace

TEST(BadThenGood, HoldsInRecordedRuns) {
  const SessionConfig c = base_config();
  const auto ecc = build_session_ecc(c);
  int bad = 0, pairs = 0;
  for (int run = 0; run < 40; ++run) {
    const RunRecord r = run_with_flipped_answer(run_config(c, 8, run, true), *ecc);
    const auto& cfg = r.config;
    const TableParty parties[2] = {make_party(cfg.protocol, Role::Alice, cfg.n0, cfg.protocol_seed, cfg.input_x),
                                   make_party(cfg.protocol, Role::Bob, cfg.n0, cfg.protocol_seed, cfg.input_y)};
    // Consecutive updates of one party are messages k and k + 2.
    for (std::size_t k = 0; k + 2 < r.messages.size(); ++k) {
      const auto& a = r.messages[k];
      const auto& b = r.messages[k + 2];
      if (a.update != UpdateClass::Bad) continue;
      ++bad;
      if (b.update != UpdateClass::Good) continue;
      const auto path = corridor(parties[static_cast<int>(other(a.sender))], r.truth, r.K);
      if (std::find(path.begin(), path.end(), a.receiver_before) == path.end()) continue;
      ++pairs;
      EXPECT_EQ(b.receiver_before, a.receiver_after);
      EXPECT_EQ(b.receiver_after, a.receiver_before);
    }
  }
  EXPECT_GT(bad, 0);
  EXPECT_GT(pairs, 0);
}

TEST(ComputeS, SmallOnNoiselessRuns) {
  MonteCarloOptions o;
  o.n_runs = 10;
  o.seed = 3;
  const auto mc = monte_carlo(base_config(), o);
  const LayeredCode code = record_code(mc.records.front());
  for (const auto& r : mc.records) {
    const auto S = compute_S(r, code);
    EXPECT_LE(S.size() * 4, 20u * r.K);
    for (int k : S) {
      EXPECT_GE(k, 1);
      EXPECT_LE(k, r.K);
    }
  }
}

// A session run on the constant code: every log entry matches every update
// label, and nothing ever decodes uniquely.
TEST(ComputeS, ConstantCodeFillsS) {
  SessionSetup setup = build_setup(base_config());
  const LayeredCode constant = LayeredCode::constant(0, 64, session_graph(4, setup.K));
  setup.code = std::make_shared<const LayeredCode>(constant);
  const RunRecord r = run_session(setup);
  const auto S = compute_S(r, constant);
  EXPECT_GE(S.size(), static_cast<std::size_t>(r.K) - 1);
}

TEST(ComputeS, EmptyRecordHasEmptyS) {
  RunRecord r = run_session(base_config());
  r.alice.updates.clear();
  r.bob.updates.clear();
  EXPECT_TRUE(compute_S(r, record_code(r)).empty());
}

TEST(ScalingEval, NoiselessBatchChecksFirstClause) {
  MonteCarloOptions o;
  o.n_runs = 8;
  o.seed = 5;
  const auto mc = monte_carlo(base_config(), o);
  // delta = 0 < (1 - eps') rho, so only the first clause applies.
  const auto half = scaling_eval(mc.records, Fraction(1, 6), Fraction(1, 2));
  EXPECT_EQ(half.scaling1.applicable, 8);
  EXPECT_EQ(half.scaling2.applicable, 0);
  int confident = 0;
  for (const auto& r : mc.records)
    confident += r.success() && r.alice.output.confidence >= Fraction(1, 2) && r.bob.output.confidence >= Fraction(1, 2);
  EXPECT_EQ(half.scaling1.satisfied, confident);
  // eps' = 1 leaves no room below (1 - eps') rho = 0: the second clause applies.
  const auto lax = scaling_eval(mc.records, Fraction(1, 6), Fraction(1, 1));
  EXPECT_EQ(lax.scaling2.applicable, 8);
  // With eps' = 0 the clause demands full confidence.
  const auto strict = scaling_eval(mc.records, Fraction(1, 6), Fraction(0, 1));
  int full = 0;
  for (const auto& r : mc.records)
    full += r.success() && r.alice.output.confidence == Fraction(1, 1) && r.bob.output.confidence == Fraction(1, 1);
  EXPECT_EQ(strict.scaling1.satisfied, full);
}

TEST(ScalingEval, HeavyNoiseWithZeroConfidenceSatisfiesSecondClause) {
  SessionConfig c = base_config();
  c.adversary.kind = AdversaryKind::RandomFlips;
  c.adversary.alpha = Fraction(1, 5);
  MonteCarloOptions o;
  o.n_runs = 6;
  o.seed = 6;
  auto mc = monte_carlo(c, o);
  for (auto& r : mc.records) {
    r.alice.output.confidence = Fraction(0, 1);
    r.bob.output.confidence = Fraction(0, 1);
  }
  const auto s = scaling_eval(mc.records, Fraction(1, 10), Fraction(1, 10));
  EXPECT_EQ(s.scaling2.applicable, 6);
  EXPECT_EQ(s.scaling2.satisfied, 6);
}

TEST(ScalingEval, RejectsMixedBatches) {
  SessionConfig a = base_config(), b = base_config();
  b.n0 = 2;
  std::vector<RunRecord> mixed{run_session(a), run_session(b)};
  EXPECT_THROW(scaling_eval(mixed, Fraction(1, 6), Fraction(1, 10)), MixedConfigs);
}

TEST(Wilson, IntervalContainsEstimate) {
  const auto [lo, hi] = wilson_interval(90, 100);
  EXPECT_LT(lo, 0.9);
  EXPECT_GT(hi, 0.9);
  EXPECT_GT(lo, 0.8);
  EXPECT_EQ(wilson_interval(0, 0), (std::pair<double, double>{0.0, 1.0}));
}

TEST(Sweep, CsvShape) {
  EXPECT_EQ(sweep_csv_header(), "alpha,success_rate,conf_correct_mean,conf_wrong_max,S_size_mean,psi_final_mean");
  MonteCarloOptions o;
  o.n_runs = 4;
  const auto mc = monte_carlo(base_config(), o);
  const SweepRow row = summarize_batch(0, mc.records);
  EXPECT_EQ(row.stats.n_runs, 4);
  const std::string line = sweep_csv_row(row);
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
}
