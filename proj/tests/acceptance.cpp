// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails. An optional argument runs only criteria whose name
// contains it.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

#include "boost_scenarios.hpp"
#include "ics/analysis.hpp"
#include "ics/boosting.hpp"
#include "ics/channel.hpp"
#include "ics/ecc.hpp"
#include "ics/run_analysis.hpp"
#include "support.hpp"

using namespace ics;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

// Every session the suite runs feeds the potential-bound tally.
struct SessionTally {
  std::int64_t sessions = 0;
  std::int64_t messages = 0;
  std::int64_t violations = 0;
  void add(const RunRecord& r) {
    ++sessions;
    messages += static_cast<std::int64_t>(r.messages.size());
    violations += count_bound_violations(r);
  }
} tally;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Verdict ecc_distances() {
  std::string detail;
  bool ok = true;
  for (std::uint32_t alphabet : {4u, 8u, 16u}) {
    const auto t0 = std::chrono::steady_clock::now();
    const EccCode code = build_ecc(alphabet, Fraction(1, 20), 1);
    const auto& rows = code.table();
    int same = 1 << 30, cross = 1 << 30;
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        int& slot = i / 4 == j / 4 ? same : cross;
        slot = std::min(slot, hamming(rows[i], rows[j]));
      }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const int M = code.M();
    const int need_same = same_pair_threshold(code.params());
    const int need_cross = cross_pair_threshold(code.params());
    const bool this_ok = same == need_same && cross >= need_cross && secs < 30;
    ok = ok && this_ok;
    detail += fmt("|S|=%u M=%d same=%d (need =%d) cross=%d (need >=%d) %.1fs; ", alphabet, M, same, need_same, cross,
                  need_cross, secs);
  }
  return {ok, detail};
}

Verdict decoder_oracle() {
  Rng rng(101);
  int instances = 0, discrepancies = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (; instances < 240; ++instances) {
    const std::uint32_t alphabet = std::array<std::uint32_t, 5>{2, 4, 8, 32, 64}[instances % 5];
    const int depth = 1 + static_cast<int>(uniform_below(rng, 4));
    const GraphParams g{2 * static_cast<int>(1 + uniform_below(rng, 2)), depth};
    const LayeredCode code = spawn_code(rng(), alphabet, g);
    const Fraction eps = instances % 2 ? Fraction(2, 5) : Fraction(1, 4);
    std::vector<Symbol> w = encode(code, root_vertex(), testkit::random_path(rng, g, depth));
    for (auto& s : w)
      if (uniform_below(rng, 3) == 0) s = static_cast<Symbol>(uniform_below(rng, alphabet));
    for (int i = 1; i <= depth; ++i) {
      const auto l = list_layer(code, w, eps, i);
      if (std::set<Vertex>(l.begin(), l.end()) != testkit::brute_list(code, w, eps, i)) ++discrepancies;
    }
    const auto expected = testkit::brute_list(code, w, eps, depth);
    const DecodeResult r = decode(code, w, eps);
    const bool same = r.candidates == expected.size() &&
                      (expected.size() != 1 || (r.unique() && r.vertex == *expected.begin())) &&
                      (!expected.empty() || r.kind == DecodeResult::Kind::Empty);
    if (!same) ++discrepancies;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {discrepancies == 0 && secs < 60, fmt("%d instances, %d discrepancies, %.1fs", instances, discrepancies, secs)};
}

Verdict sensitivity_depth2() {
  const auto t0 = std::chrono::steady_clock::now();
  int clean = 0;
  std::uint64_t worst = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    SensitivityOptions opt;
    opt.max_witnesses = 1;
    const auto r = check_sensitivity_exhaustive(spawn_code(seed, 64, {4, 2}), 2, Fraction(2, 5), opt);
    clean += r.passed();
    worst = std::max(worst, r.violation_count);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {clean >= 45 && secs < 300,
          fmt("%d/50 seeds clean (need >= 45), max violating words %llu, %.1fs", clean,
              static_cast<unsigned long long>(worst), secs)};
}

Verdict decoding_bound() {
  const Fraction eps(2, 5);
  const int n = 16;
  const GraphParams g{4, n};
  // Codes verified at the depth the exhaustive checker can reach.
  std::vector<LayeredCode> codes;
  for (std::uint64_t seed = 1; codes.size() < 5 && seed < 200; ++seed) {
    const LayeredCode c = spawn_code(seed, 64, g);
    if (check_sensitivity_exhaustive(c, 2, eps).passed()) codes.push_back(c);
  }
  if (codes.empty()) return {false, "no code passed the depth-2 check"};
  Rng rng(103);
  std::uniform_real_distribution<double> u(0, 1);
  const auto t0 = std::chrono::steady_clock::now();
  int within = 0, max_bad = 0;
  const int samples = 500;
  for (int s = 0; s < samples; ++s) {
    const LayeredCode& code = codes[s % codes.size()];
    const auto x = testkit::random_path(rng, g, n);
    auto w = encode(code, root_vertex(), x);
    const double keep = u(rng);
    for (auto& sym : w)
      if (u(rng) >= keep) sym = static_cast<Symbol>((sym + 1 + uniform_below(rng, 63)) % 64);
    const DecodeQuality q = decode_quality(code, x, w, eps);
    max_bad = std::max(max_bad, q.bad);
    if (q.bad * eps.den <= 2 * eps.num * n) ++within;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {within * 100 >= 95 * samples && secs < 120,
          fmt("%d/%d samples with bad <= 2*eps*n = %s (max bad %d), %zu verified codes, %.1fs", within, samples,
              (Fraction(2, 1) * eps * Fraction(n, 1)).str().c_str(), max_bad, codes.size(), secs)};
}

SessionConfig session_base() {
  SessionConfig c;
  c.n0 = 4;
  c.epsilon = Fraction(1, 4);
  c.K = 16;
  c.alphabet_size = 64;
  return c;
}

Verdict noiseless_end_to_end() {
  MonteCarloOptions o;
  o.n_runs = 200;
  o.seed = 2024;
  const auto t0 = std::chrono::steady_clock::now();
  const auto mc = monte_carlo(session_base(), o);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : mc.records) tally.add(r);
  const auto& s = mc.stats;
  return {s.success_rate() >= 0.95 && s.mean_conf_correct() >= 0.5 && secs < 120,
          fmt("success %.3f (need >= 0.95), mean confidence of correct outputs %.3f (need >= 0.5), max %.3f, %.1fs",
              s.success_rate(), s.mean_conf_correct(), s.max_conf_correct, secs)};
}

Verdict monotonicity_sweep() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> rates;
  double max_correct_at_zero = 0, max_wrong = 0;
  std::string curve;
  for (int i = 0; i <= 7; ++i) {
    SessionConfig c = session_base();
    c.adversary.kind = AdversaryKind::NearestOtherCodeword;
    c.adversary.alpha = Fraction(2 * i, 100);
    MonteCarloOptions o;
    o.n_runs = 200;
    o.seed = 7000 + i;
    const auto mc = monte_carlo(c, o);
    for (const auto& r : mc.records) tally.add(r);
    rates.push_back(mc.stats.success_rate());
    if (i == 0) max_correct_at_zero = mc.stats.max_conf_correct;
    if (mc.stats.wrong_outputs) max_wrong = std::max(max_wrong, mc.stats.max_conf_wrong);
    curve += fmt("%.2f:%.3f ", 0.02 * i, mc.stats.success_rate());
  }
  bool monotone = true;
  for (std::size_t i = 0; i < rates.size(); ++i)
    for (std::size_t j = i + 1; j < rates.size(); ++j) monotone = monotone && rates[j] <= rates[i] + 0.05;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {monotone && max_wrong <= max_correct_at_zero && secs < 600,
          fmt("success by alpha [%s] monotone=%s; max wrong-output confidence %.3f <= %.3f; %.1fs", curve.c_str(),
              monotone ? "yes" : "no", max_wrong, max_correct_at_zero, secs)};
}

Verdict s_set_bound() {
  SessionConfig light = session_base();
  light.adversary.kind = AdversaryKind::RandomFlips;
  light.adversary.alpha = Fraction(1, 50);
  MonteCarloOptions o;
  o.n_runs = 50;
  o.seed = 31;
  std::vector<RunRecord> records = monte_carlo(session_base(), o).records;
  o.seed = 32;
  for (auto& r : monte_carlo(light, o).records) records.push_back(std::move(r));
  int hits = 0;
  std::size_t max_s = 0;
  const LayeredCode code = record_code(records.front());
  const Fraction e = session_base().epsilon;
  for (const auto& r : records) {
    tally.add(r);
    const auto S = compute_S(r, code);
    max_s = std::max(max_s, S.size());
    if (static_cast<std::int64_t>(S.size()) * e.den <= 20 * e.num * r.K) ++hits;
  }
  const int n = static_cast<int>(records.size());
  return {hits * 10 >= 9 * n,
          fmt("%d/%d runs with |S| <= 20*eps*K = %s (max |S| = %zu of K = 16)", hits, n,
              (Fraction(20, 1) * e * Fraction(16, 1)).str().c_str(), max_s)};
}

Verdict update_algebra() {
  Rng rng(107);
  int growth_states = 0, growth_bad = 0, weight_bad = 0, restore_cases = 0, restore_bad = 0;
  for (int t = 0; t < 400; ++t) {
    const int n0 = 2 * static_cast<int>(1 + uniform_below(rng, 5));
    auto pp = testkit::random_parties(rng, n0);
    const PartyOracle& party = t % 2 ? static_cast<const PartyOracle&>(pp.alice) : pp.bob;
    UpdateState st(session_graph(n0, 40));
    for (int k = 0; k < 10; ++k, ++growth_states) {
      const std::size_t before = st.edges().size();
      otimes(st, kAllEdges[uniform_below(rng, 4)], party);
      growth_bad += st.edges().size() != before + 2;
      weight_bad += st.weight() > 0 && st.transcript().size() != n0;
    }
    for (int k = 0; k < 4; ++k) {
      const Guess g = testkit::corridor_state(rng, party, pp.truth);
      for (EdgeLabel d : kAllEdges) {
        const Guess after = otimes_guess(g, d, party);
        if (classify_update(g, after, pp.truth, party) != UpdateClass::Bad) continue;
        ++restore_cases;
        restore_bad += otimes_guess(after, op_target(pp.truth, after.transcript), party) != g;
      }
    }
  }
  const bool ok = growth_states >= 1000 && restore_cases >= 1000 && growth_bad == 0 && weight_bad == 0 &&
                  restore_bad == 0;
  return {ok, fmt("pair growth %d states / %d violations; weight invariant %d states / %d violations; "
                  "bad-then-good %d cases / %d violations",
                  growth_states, growth_bad, growth_states, weight_bad, restore_cases, restore_bad)};
}

Verdict boosting() {
  int scenarios = 0, scenario_fail = 0;
  for (const auto& s : testkit::weight_scenarios()) {
    ++scenarios;
    const BoostOutput o = boost_finalize(s.weights, s.beta);
    scenario_fail += o.transcript.str() != s.out || o.confidence != s.conf;
  }
  for (const auto& s : testkit::scripted_scenarios()) {
    ++scenarios;
    const auto r = testkit::run_scripted(s);
    scenario_fail += r.alice.transcript.str() != s.alice_out || r.alice.confidence != s.alice_conf ||
                     r.bob.transcript.str() != s.bob_out || r.bob.confidence != s.bob_conf;
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto ecc = std::make_shared<const EccCode>(build_ecc(64, Fraction(1, 20), 1));
  int ok = 0, violations = 0;
  const int seeds = 50;
  for (int s = 1; s <= seeds; ++s) {
    Protocol16InnerConfig cfg;
    cfg.seed = derive_seed(900, s);
    cfg.code_seed = derive_seed(901, s);
    Protocol16Inner inner(cfg, ecc);
    const auto a = random_tree_party(Role::Alice, 8, derive_seed(902, s), derive_seed(903, s));
    const auto b = random_tree_party(Role::Bob, 8, derive_seed(902, s), derive_seed(904, s));
    BoostParams p;
    p.n0 = 8;
    p.chunk_size = 2;
    p.beta = 8;
    p.seed = derive_seed(905, s);
    const BoostResult r = run_boost(a, b, inner, p);
    ok += r.success();
    violations += r.bound_violations;
  }
  tally.sessions += 8 * seeds;
  tally.violations += violations;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {scenario_fail == 0 && scenarios == 20 && ok * 10 >= 9 * seeds && secs < 600,
          fmt("%d/%d scripted scenarios match; real inner n0=8 chunk=2 beta=8: %d/%d seeds output the true "
              "transcript (need >= 90%%), %.1fs",
              scenarios - scenario_fail, scenarios, ok, seeds, secs)};
}

Verdict potential_bound() {
  return {tally.violations == 0 && tally.sessions > 0,
          fmt("%lld sessions (%lld messages) checked, %lld violations", static_cast<long long>(tally.sessions),
              static_cast<long long>(tally.messages), static_cast<long long>(tally.violations))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"ecc-distances", ecc_distances},
      {"decoder-oracle", decoder_oracle},
      {"sensitivity-depth-2", sensitivity_depth2},
      {"decoding-bound", decoding_bound},
      {"noiseless-end-to-end", noiseless_end_to_end},
      {"corruption-monotonicity", monotonicity_sweep},
      {"s-set-bound", s_set_bound},
      {"update-algebra", update_algebra},
      {"boosting", boosting},
      // Last: tallies every session run above.
      {"potential-bound", potential_bound},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    if (!only.empty() && name.find(only) == std::string::npos) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
