#include "ics/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

#include "ics/errors.hpp"
#include "ics/record_io.hpp"
#include "ics/rng.hpp"

namespace ics {

const char* adversary_name(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::None: return "none";
    case AdversaryKind::RandomFlips: return "random";
    case AdversaryKind::Burst: return "burst";
    case AdversaryKind::NearestOtherCodeword: return "nearest";
    case AdversaryKind::QuestionJammer: return "jammer";
    case AdversaryKind::Scripted: return "scripted";
  }
  return "?";
}

AdversaryKind adversary_from_name(const std::string& name) {
  for (auto k : {AdversaryKind::None, AdversaryKind::RandomFlips, AdversaryKind::Burst,
                 AdversaryKind::NearestOtherCodeword, AdversaryKind::QuestionJammer, AdversaryKind::Scripted})
    if (name == adversary_name(k)) return k;
  throw ConfigError("unknown adversary: " + name);
}

int session_length(int n0, Fraction epsilon) {
  if (epsilon.num <= 0) throw ConfigError("session epsilon must be positive");
  std::int64_t K = (std::int64_t{n0} * epsilon.den + epsilon.num - 1) / epsilon.num;
  if (K % 2) ++K;
  return static_cast<int>(std::max<std::int64_t>(K, 2));
}

int resolved_K(const SessionConfig& c) { return c.K > 0 ? c.K : session_length(c.n0, c.epsilon); }

std::shared_ptr<const EccCode> build_session_ecc(const SessionConfig& c) {
  EccBuildOptions opt;
  opt.M = c.ecc_M;
  return std::make_shared<const EccCode>(build_ecc(c.alphabet_size, c.ecc_epsilon, c.ecc_seed, opt));
}

SessionSetup build_setup(const SessionConfig& c, std::shared_ptr<const EccCode> ecc) {
  SessionSetup s;
  s.config = c;
  s.K = resolved_K(c);
  if (s.K % 2) throw ConfigError("K must be even");
  s.code = std::make_shared<const LayeredCode>(spawn_code(c.code_seed, c.alphabet_size, session_graph(c.n0, s.K)));
  if (!ecc) ecc = build_session_ecc(c);
  const auto& ep = ecc->params();
  if (ep.alphabet_size != c.alphabet_size || !(ep.epsilon == c.ecc_epsilon) || ecc->seed() != c.ecc_seed ||
      (c.ecc_M && ep.M != c.ecc_M))
    throw ConfigError("supplied ECC does not match the session config");
  s.ecc = std::move(ecc);
  s.alice = std::make_shared<const TableParty>(make_party(c.protocol, Role::Alice, c.n0, c.protocol_seed, c.input_x));
  s.bob = std::make_shared<const TableParty>(make_party(c.protocol, Role::Bob, c.n0, c.protocol_seed, c.input_y));
  s.truth = run_noiseless(*s.alice, *s.bob);
  return s;
}

std::int64_t flip_budget(Fraction alpha, int K, int M) {
  if (alpha.num < 0 || alpha.den <= 0) throw ConfigError("alpha must be nonnegative");
  return static_cast<std::int64_t>(static_cast<__int128>(alpha.num) * K * M / alpha.den);
}

namespace {

std::vector<int> diff_positions(const BitVec& a, const BitVec& b) {
  std::vector<int> out;
  for (int i = 0; i < a.size(); ++i)
    if (a.get(i) != b.get(i)) out.push_back(i);
  return out;
}

class NoAdversary : public Adversary {
 public:
  std::vector<int> corrupt(const ChannelView&) override { return {}; }
};

// Spends the whole budget on uniformly random distinct positions of the run.
class RandomFlipAdversary : public Adversary {
 public:
  RandomFlipAdversary(std::int64_t budget, int K, int M, std::uint64_t seed) : M_(M), per_message_(K) {
    Rng rng(seed);
    const std::int64_t total = std::int64_t{K} * M;
    std::vector<std::int64_t> chosen;
    std::vector<bool> taken(total, false);
    for (std::int64_t j = total - budget; j < total; ++j) {  // Floyd's sampling
      const auto t = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
      const std::int64_t pick = taken[t] ? j : t;
      taken[pick] = true;
      chosen.push_back(pick);
    }
    std::sort(chosen.begin(), chosen.end());
    for (auto p : chosen) per_message_[p / M].push_back(static_cast<int>(p % M));
  }
  std::vector<int> corrupt(const ChannelView& v) override { return per_message_[v.index - 1]; }

 private:
  int M_;
  std::vector<std::vector<int>> per_message_;
};

class BurstAdversary : public Adversary {
 public:
  explicit BurstAdversary(int start) : start_(start) {}
  std::vector<int> corrupt(const ChannelView& v) override {
    if (v.index < start_) return {};
    const int n = std::min(v.sent->size(), v.remaining);
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = i;
    return out;
  }

 private:
  int start_;
};

// Rewrites the message into the closest codeword of a different row when the
// remaining budget allows it.
class NearestCodewordAdversary : public Adversary {
 public:
  std::vector<int> corrupt(const ChannelView& v) override {
    const auto& table = v.ecc->table();
    const std::size_t own = v.ecc->pair_index(v.sent_pair) * 4 + static_cast<int>(v.sent_instruction);
    int best = v.sent->size() + 1;
    std::size_t best_row = own;
    for (std::size_t i = 0; i < table.size(); ++i) {
      if (i == own) continue;
      const int d = hamming(*v.sent, table[i]);
      if (d < best) {
        best = d;
        best_row = i;
      }
    }
    if (best_row == own || best > v.remaining) return {};
    return diff_positions(*v.sent, table[best_row]);
  }
};

// Turns answers into questions and questions into back-steps, for the same pair.
class QuestionJammer : public Adversary {
 public:
  std::vector<int> corrupt(const ChannelView& v) override {
    const Instruction target = v.sent_instruction == Instruction::Ask ? Instruction::Back : Instruction::Ask;
    const BitVec& goal = v.ecc->encode(v.sent_pair, target);
    if (hamming(*v.sent, goal) > v.remaining) return {};
    return diff_positions(*v.sent, goal);
  }
};

class ScriptedAdversary : public Adversary {
 public:
  explicit ScriptedAdversary(std::vector<std::vector<int>> script) : script_(std::move(script)) {}
  std::vector<int> corrupt(const ChannelView& v) override {
    if (v.index - 1 < static_cast<int>(script_.size())) return script_[v.index - 1];
    return {};
  }

 private:
  std::vector<std::vector<int>> script_;
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, int K, int M) {
  switch (spec.kind) {
    case AdversaryKind::None: return std::make_unique<NoAdversary>();
    case AdversaryKind::RandomFlips:
      return std::make_unique<RandomFlipAdversary>(flip_budget(spec.alpha, K, M), K, M, spec.seed);
    case AdversaryKind::Burst: return std::make_unique<BurstAdversary>(spec.burst_start);
    case AdversaryKind::NearestOtherCodeword: return std::make_unique<NearestCodewordAdversary>();
    case AdversaryKind::QuestionJammer: return std::make_unique<QuestionJammer>();
    case AdversaryKind::Scripted: return std::make_unique<ScriptedAdversary>(spec.script);
  }
  throw ConfigError("unknown adversary kind");
}

RunRecord run_session(const SessionSetup& setup, Adversary* adversary) {
  const SessionConfig& cfg = setup.config;
  const int K = setup.K;
  const int M = setup.ecc->M();
  std::unique_ptr<Adversary> owned;
  if (!adversary) {
    owned = make_adversary(cfg.adversary, K, M);
    adversary = owned.get();
  }

  RunRecord rec;
  rec.config = cfg;
  rec.config_hash = config_hash(cfg);
  rec.batch_hash = batch_hash(cfg);
  rec.K = K;
  rec.M = M;
  // Scripted runs replay masks; their budget is whatever the script spends.
  rec.budget = cfg.adversary.kind == AdversaryKind::Scripted && cfg.adversary.alpha.num == 0
                   ? std::int64_t{K} * M
                   : flip_budget(cfg.adversary.alpha, K, M);
  rec.truth = setup.truth;

  SessionContext ctx{setup.code.get(), setup.ecc.get(), cfg.code_epsilon, cfg.n0, K};
  Party alice(Role::Alice, *setup.alice, ctx, cfg.alice_seed);
  Party bob(Role::Bob, *setup.bob, ctx, cfg.bob_seed);

  int psi[2] = {0, 0};
  RoundResult pending = alice.first_message();
  for (int k = 1; k <= K; ++k) {
    const Role sender = k % 2 ? Role::Alice : Role::Bob;
    Party& receiver = sender == Role::Alice ? bob : alice;

    ChannelView view;
    view.index = k;
    view.sender = sender;
    view.sent = &pending.reply;
    view.sent_pair = pending.reply_pair;
    view.sent_instruction = pending.reply_instruction;
    view.ecc = setup.ecc.get();
    view.alice = &alice;
    view.bob = &bob;
    view.remaining = static_cast<int>(std::min<std::int64_t>(rec.budget - rec.total_flips, M));
    std::vector<int> flips = adversary->corrupt(view);
    std::sort(flips.begin(), flips.end());
    if (std::adjacent_find(flips.begin(), flips.end()) != flips.end())
      throw BudgetViolation("adversary repeated a flip position");
    if (!flips.empty() && (flips.front() < 0 || flips.back() >= M))
      throw BudgetViolation("adversary flip outside the message");
    if (rec.total_flips + static_cast<std::int64_t>(flips.size()) > rec.budget)
      throw BudgetViolation("adversary exceeded the flip budget");
    BitVec delivered = pending.reply;
    for (int p : flips) delivered.flip(p);
    rec.total_flips += static_cast<std::int64_t>(flips.size());

    RoundResult got = receiver.receive(delivered);

    MessageRecord m;
    m.index = k;
    m.sender = sender;
    m.sent_pair = pending.reply_pair;
    m.sent_instruction = pending.reply_instruction;
    m.sent_hex = pending.reply.to_hex();
    m.delivered_hex = delivered.to_hex();
    m.flips = static_cast<int>(flips.size());
    m.receiver_case = got.taken;
    m.distance = got.distance;
    m.coin = got.coin;
    m.applied = got.applied;
    m.update = classify_update(got.before, got.after, setup.truth, receiver.oracle());
    m.receiver_before = got.before;
    m.receiver_after = got.after;
    int& p = psi[static_cast<int>(receiver.role())];
    if (m.update == UpdateClass::Good) ++p;
    if (m.update == UpdateClass::Bad) --p;
    m.psi_alice = psi[0];
    m.psi_bob = psi[1];
    m.bound_ok = potential_bound_holds(p, got.after, setup.truth, cfg.n0);
    if (!m.bound_ok) ++rec.bound_violations;
    rec.messages.push_back(std::move(m));
    pending = std::move(got);
  }

  auto finish = [](const Party& party) {
    PartyFinal f;
    f.output = party.output();
    f.updates = party.state().edges();
    f.log = party.received_log();
    f.weight = party.state().weight();
    return f;
  };
  rec.alice = finish(alice);
  rec.bob = finish(bob);
  return rec;
}

RunRecord run_session(const SessionConfig& config) { return run_session(build_setup(config)); }

RunRecord replay(const RunRecord& record, std::shared_ptr<const EccCode> ecc) {
  std::vector<std::vector<int>> script;
  for (const auto& m : record.messages) {
    const BitVec sent = BitVec::from_hex(m.sent_hex, record.M);
    const BitVec delivered = BitVec::from_hex(m.delivered_hex, record.M);
    script.push_back(diff_positions(sent, delivered));
  }
  ScriptedAdversary scripted(std::move(script));
  const SessionSetup setup = build_setup(record.config, std::move(ecc));
  return run_session(setup, &scripted);
}

SessionConfig run_config(const SessionConfig& base, std::uint64_t master_seed, int run, bool randomize_inputs) {
  SessionConfig c = base;
  const auto r = static_cast<std::uint64_t>(run);
  c.alice_seed = derive_seed(master_seed, 4 * r);
  c.bob_seed = derive_seed(master_seed, 4 * r + 1);
  c.adversary.seed = derive_seed(master_seed, 4 * r + 2);
  if (randomize_inputs) {
    const std::uint64_t in = derive_seed(master_seed, 4 * r + 3);
    c.input_x = in & 0xffffffffu;
    c.input_y = in >> 32;
  }
  return c;
}

void accumulate(MonteCarloStats& s, const RunRecord& r) {
  ++s.n_runs;
  if (r.success()) ++s.successes;
  for (const PartyFinal* f : {&r.alice, &r.bob}) {
    const double c = f->output.confidence.to_double();
    if (f->output.transcript == r.truth) {
      ++s.correct_outputs;
      s.sum_conf_correct += c;
      s.max_conf_correct = std::max(s.max_conf_correct, c);
    } else {
      ++s.wrong_outputs;
      s.sum_conf_wrong += c;
      s.max_conf_wrong = std::max(s.max_conf_wrong, c);
    }
    ++s.confidence_histogram[std::min(10, static_cast<int>(c * 10 + 1e-9))];
  }
  if (!r.messages.empty()) s.sum_psi_final += r.messages.back().psi_alice + r.messages.back().psi_bob;
  s.total_flips += r.total_flips;
  s.bound_violations += r.bound_violations;
}

MonteCarloResult monte_carlo(const SessionConfig& config, const MonteCarloOptions& options) {
  if (options.n_runs < 1) throw ConfigError("n_runs must be >= 1");
  const auto ecc = build_session_ecc(config);
  std::vector<RunRecord> records(options.n_runs);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < options.n_runs; i = next++) {
      try {
        const SessionConfig c = run_config(config, options.seed, i, options.randomize_inputs);
        records[i] = run_session(build_setup(c, ecc));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(options.jobs, options.n_runs));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  MonteCarloResult out;
  for (const auto& r : records) accumulate(out.stats, r);
  if (options.keep_records) out.records = std::move(records);
  return out;
}

std::string aggregate_csv_header() { return "alpha,n_runs,success_rate,mean_confidence_correct,mean_confidence_wrong"; }

std::string aggregate_csv_row(double alpha, const MonteCarloStats& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%.6g,%d,%.6f,%.6f,%.6f", alpha, s.n_runs, s.success_rate(), s.mean_conf_correct(),
                s.mean_conf_wrong());
  return buf;
}

}  // namespace ics
