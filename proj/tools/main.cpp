// ics: build and check codes, run sessions, sweeps and boosting experiments.
//
// Exit status: 0 when everything requested completed and verified, 1 when a
// verification or run failed, 2 on usage errors.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ics/boosting.hpp"
#include "ics/channel.hpp"
#include "ics/ecc.hpp"
#include "ics/errors.hpp"
#include "ics/layered_code.hpp"
#include "ics/record_io.hpp"
#include "ics/run_analysis.hpp"

using namespace ics;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ICS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("ICS_SEED is not an unsigned integer: ") + env);
    }
  }
  return 1;
}

Fraction parse_fraction(const std::string& text, const char* what) {
  try {
    return Fraction::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

// Threshold as an integer bit count plus the rational it was derived from.
json threshold(std::int64_t bits, const Fraction& of_M) { return {{"bits", bits}, {"fraction", of_M.str()}}; }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw UsageError("cannot open output file " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<RunRecord> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  return read_jsonl(in);
}

// ---- shared options -------------------------------------------------------------

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  bool verbose = false;

  std::uint64_t resolved_seed() const { return seed ? *seed : default_seed(); }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  app->add_option("-o,--out", c.out, "output file (default stdout)");
  app->add_option("--seed", c.seed, "master seed (default $ICS_SEED or 1)");
  app->add_flag("-v,--verbose", c.verbose, "progress on stderr");
}

struct SessionFlags {
  std::optional<int> n0, K, ecc_M, burst_start;
  std::optional<std::string> epsilon, code_epsilon, ecc_epsilon, alpha, adversary, protocol;
  std::optional<std::uint32_t> alphabet;
  std::optional<std::uint64_t> code_seed, ecc_seed, protocol_seed, x, y;
  int runs = 1;
  int jobs = 1;
  bool fixed_inputs = false;
};

void add_session_flags(CLI::App* app, SessionFlags& f) {
  app->add_option("--n0", f.n0, "noiseless protocol length (even)");
  app->add_option("--epsilon", f.epsilon, "session epsilon; K = n0 / epsilon");
  app->add_option("--K", f.K, "number of messages (overrides epsilon)");
  app->add_option("--alphabet", f.alphabet, "layered code alphabet size");
  app->add_option("--code-seed", f.code_seed);
  app->add_option("--code-epsilon", f.code_epsilon, "list decoding epsilon");
  app->add_option("--ecc-seed", f.ecc_seed);
  app->add_option("--ecc-M", f.ecc_M, "ECC length (multiple of 6; 0 = smallest verified)");
  app->add_option("--ecc-epsilon", f.ecc_epsilon);
  app->add_option("--protocol", f.protocol, "random_tree or exchange");
  app->add_option("--protocol-seed", f.protocol_seed);
  app->add_option("--x", f.x, "Alice's input");
  app->add_option("--y", f.y, "Bob's input");
  app->add_option("--adversary", f.adversary, "none, random, burst, nearest, jammer or scripted");
  app->add_option("--alpha", f.alpha, "adversary budget as a fraction of all K*M bits");
  app->add_option("--burst-start", f.burst_start);
  app->add_option("--runs", f.runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
  app->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app->add_flag("--fixed-inputs", f.fixed_inputs, "keep x and y fixed instead of drawing them per run");
}

SessionConfig session_config(const Common& c, const SessionFlags& f) {
  SessionConfig s;
  if (!c.config.empty()) merge_config(read_json_file(c.config), s);
  if (f.n0) s.n0 = *f.n0;
  if (f.epsilon) s.epsilon = parse_fraction(*f.epsilon, "--epsilon");
  if (f.K) s.K = *f.K;
  if (f.alphabet) s.alphabet_size = *f.alphabet;
  if (f.code_seed) s.code_seed = *f.code_seed;
  if (f.code_epsilon) s.code_epsilon = parse_fraction(*f.code_epsilon, "--code-epsilon");
  if (f.ecc_seed) s.ecc_seed = *f.ecc_seed;
  if (f.ecc_M) s.ecc_M = *f.ecc_M;
  if (f.ecc_epsilon) s.ecc_epsilon = parse_fraction(*f.ecc_epsilon, "--ecc-epsilon");
  if (f.protocol) s.protocol = protocol_kind_from_name(*f.protocol);
  if (f.protocol_seed) s.protocol_seed = *f.protocol_seed;
  if (f.x) s.input_x = *f.x;
  if (f.y) s.input_y = *f.y;
  if (f.adversary) s.adversary.kind = adversary_from_name(*f.adversary);
  if (f.alpha) s.adversary.alpha = parse_fraction(*f.alpha, "--alpha");
  if (f.burst_start) s.adversary.burst_start = *f.burst_start;
  return s;
}

MonteCarloOptions mc_options(const Common& c, const SessionFlags& f) {
  MonteCarloOptions o;
  o.n_runs = f.runs;
  o.jobs = f.jobs;
  o.seed = c.resolved_seed();
  o.randomize_inputs = !f.fixed_inputs;
  return o;
}

// ---- gen-ecc ------------------------------------------------------------------------

struct GenEccArgs {
  Common common;
  std::uint32_t alphabet = 0;
  std::string epsilon = "1/20";
  int M = 0;
  int attempts = 64;
  bool table = false;
};

int cmd_gen_ecc(const GenEccArgs& a) {
  const Fraction eps = parse_fraction(a.epsilon, "--epsilon");
  EccBuildOptions opt;
  opt.M = a.M;
  opt.attempts = a.attempts;
  const std::uint64_t seed = a.common.resolved_seed();
  Output out(a.common.out);
  try {
    const EccCode code = build_ecc(a.alphabet, eps, seed, opt);
    const DistanceReport r = verify_distances(code);
    const int M = code.M();
    json j{{"alphabet_size", a.alphabet},
           {"epsilon", eps.str()},
           {"seed", seed},
           {"M", M},
           {"recommended_M", recommended_length(a.alphabet, eps)},
           {"table_hash", code.table_hash()},
           {"same_pair_threshold", threshold(r.same_threshold, Fraction(2, 3))},
           {"cross_pair_threshold", threshold(r.cross_threshold, Fraction(1, 2) - eps)},
           {"min_same", r.min_same},
           {"min_cross", r.min_cross},
           {"pairs_checked", r.pairs_checked},
           {"verified", r.passed()}};
    if (a.table) {
      json rows = json::array();
      for (const auto& row : code.table()) rows.push_back(row.to_hex());
      j["table"] = rows;
    }
    out.stream() << j.dump(2) << "\n";
    return r.passed() ? 0 : 1;
  } catch (const ConstructionFailed& e) {
    out.stream() << json{{"alphabet_size", a.alphabet}, {"epsilon", eps.str()}, {"seed", seed}, {"M", a.M},
                         {"verified", false}, {"error", e.what()}}
                        .dump(2)
                 << "\n";
    std::cerr << "gen-ecc: construction failed: " << e.what() << "\n";
    return 1;
  }
}

// ---- check-code -----------------------------------------------------------------------

struct CheckCodeArgs {
  Common common;
  std::string mode = "exhaustive";
  std::uint32_t alphabet = 64;
  int n0 = 4;
  int depth = 0;
  std::string epsilon = "2/5";
  int trials = 500;
  std::uint64_t budget = 1u << 20;
  std::size_t witnesses = 8;
};

json path_json(std::span<const EdgeLabel> p) { return edges_to_string(p); }

int cmd_check_code(const CheckCodeArgs& a) {
  const Fraction eps = parse_fraction(a.epsilon, "--epsilon");
  const GraphParams g{a.n0, a.depth};
  const std::uint64_t seed = a.common.resolved_seed();
  const LayeredCode code = spawn_code(seed, a.alphabet, g);
  Output out(a.common.out);
  json j{{"mode", a.mode}, {"alphabet_size", a.alphabet}, {"n0", a.n0}, {"depth", a.depth}, {"epsilon", eps.str()},
         {"code_seed", seed}};

  if (a.mode == "exhaustive") {
    SensitivityOptions opt;
    opt.word_budget = a.budget;
    opt.max_witnesses = a.witnesses;
    SensitivityReport r;
    try {
      r = check_sensitivity_exhaustive(code, a.depth, eps, opt);
    } catch (const BudgetExceeded& e) {
      std::cerr << "check-code: BudgetExceeded: " << e.what() << " (alphabet^depth > " << a.budget << ")\n";
      return 1;
    }
    const Fraction limit = (Fraction(1, 1) + eps) * Fraction(a.depth, 1);
    j["agreement_limit"] = {{"value", limit.str()}, {"max_allowed_edges", limit.num / limit.den}};
    j["checked_words"] = r.checked_words;
    j["violation_count"] = r.violation_count;
    json v = json::array();
    for (const auto& w : r.violations) {
      json paths = json::array();
      for (const auto& p : w.paths) paths.push_back(path_json(p));
      v.push_back({{"word", w.word}, {"paths", paths}, {"agreement", w.agreement}});
    }
    j["violations"] = v;
    j["passed"] = r.passed();
    out.stream() << j.dump(2) << "\n";
    return 0;
  }
  if (a.mode != "sample") throw UsageError("--mode must be exhaustive or sample");

  // Sampled decode quality: random path, then each symbol kept with a
  // per-sample agreement probability and otherwise replaced by a wrong one.
  Rng rng(derive_seed(seed, 0x5a));
  std::uniform_real_distribution<double> u(0, 1);
  std::map<int, int> histogram;
  int within = 0;
  const std::int64_t bound_num = 2 * eps.num * a.depth;  // bad * den <= 2 eps n * den
  for (int t = 0; t < a.trials; ++t) {
    std::vector<EdgeLabel> x;
    Vertex v = root_vertex();
    while (static_cast<int>(x.size()) < a.depth) {
      const EdgeLabel e = kAllEdges[uniform_below(rng, 4)];
      Vertex next;
      if (!try_apply_edge(v, e, g, next)) continue;
      x.push_back(e);
      v = next;
    }
    std::vector<Symbol> w = encode(code, root_vertex(), x);
    const double keep = u(rng);
    for (auto& s : w)
      if (u(rng) >= keep && a.alphabet > 1)
        s = static_cast<Symbol>((s + 1 + uniform_below(rng, a.alphabet - 1)) % a.alphabet);
    const DecodeQuality q = decode_quality(code, x, w, eps);
    ++histogram[q.bad];
    if (std::int64_t{q.bad} * eps.den <= bound_num) ++within;
  }
  json h = json::object();
  for (const auto& [bad, count] : histogram) h[std::to_string(bad)] = count;
  const Fraction bound = Fraction(2, 1) * eps * Fraction(a.depth, 1);
  j["trials"] = a.trials;
  j["bad_bound"] = {{"value", bound.str()}, {"max_allowed_bad", bound.num / bound.den}};
  j["bad_histogram"] = h;
  j["within_bound"] = within;
  j["within_rate"] = a.trials ? static_cast<double>(within) / a.trials : 0.0;
  out.stream() << j.dump(2) << "\n";
  return 0;
}

// ---- simulate / replay / sweep ----------------------------------------------------------

struct SimulateArgs {
  Common common;
  SessionFlags session;
  std::string records;
  std::string replay;
  std::string rho = "1/6";
  std::string eps_prime = "1/10";
};

int replay_records(const std::string& in_path, const std::string& out_path, bool verbose) {
  const std::vector<RunRecord> records = read_records(in_path);
  std::vector<RunRecord> again;
  int identical = 0;
  std::shared_ptr<const EccCode> ecc;
  for (const auto& r : records) {
    if (!ecc || ecc->seed() != r.config.ecc_seed || ecc->params().alphabet_size != r.config.alphabet_size ||
        !(ecc->params().epsilon == r.config.ecc_epsilon) || (r.config.ecc_M && ecc->M() != r.config.ecc_M))
      ecc = build_session_ecc(r.config);
    again.push_back(replay(r, ecc));
    const bool same = to_json(again.back()) == to_json(r);
    identical += same;
    if (verbose && !same) std::cerr << "replay: record " << again.size() << " differs\n";
  }
  Output out(out_path);
  write_jsonl(out.stream(), again);
  std::cerr << "replayed " << records.size() << " records, " << identical << " identical\n";
  return identical == static_cast<int>(records.size()) ? 0 : 1;
}

int cmd_simulate(const SimulateArgs& a) {
  if (!a.replay.empty()) return replay_records(a.replay, a.common.out, a.common.verbose);
  const SessionConfig cfg = session_config(a.common, a.session);
  MonteCarloOptions o = mc_options(a.common, a.session);
  o.keep_records = true;
  const MonteCarloResult mc = monte_carlo(cfg, o);
  if (!a.records.empty()) {
    Output rec(a.records);
    write_jsonl(rec.stream(), mc.records);
  }
  const Fraction rho = parse_fraction(a.rho, "--rho"), eps_prime = parse_fraction(a.eps_prime, "--eps-prime");
  const ScalingSummary s = scaling_eval(mc.records, rho, eps_prime);
  Output out(a.common.out);
  out.stream() << aggregate_csv_header() << "\n" << aggregate_csv_row(cfg.adversary.alpha.to_double(), mc.stats) << "\n";
  if (a.common.verbose) {
    const int K = resolved_K(cfg);
    const int M = mc.records.front().M;
    std::cerr << json{{"K", K},
                      {"M", M},
                      {"alpha", cfg.adversary.alpha.str()},
                      {"flip_budget", flip_budget(cfg.adversary.alpha, K, M)},
                      {"rho", rho.str()},
                      {"eps_prime", eps_prime.str()},
                      {"scaling1", {{"applicable", s.scaling1.applicable}, {"satisfied", s.scaling1.satisfied}}},
                      {"scaling2", {{"applicable", s.scaling2.applicable}, {"satisfied", s.scaling2.satisfied}}},
                      {"bound_violations", mc.stats.bound_violations}}
                     .dump()
              << "\n";
  }
  return mc.stats.bound_violations == 0 ? 0 : 1;
}

struct ReplayArgs {
  Common common;
  std::string in;
};

struct SweepArgs {
  Common common;
  SessionFlags session;
  std::string alpha;
};

std::vector<Fraction> alpha_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw UsageError("--alpha must be start:stop:step");
  const Fraction lo = parse_fraction(parts[0], "--alpha start"), hi = parse_fraction(parts[1], "--alpha stop"),
                 step = parse_fraction(parts[2], "--alpha step");
  if (step.num <= 0) throw UsageError("--alpha step must be positive");
  std::vector<Fraction> grid;
  for (Fraction a = lo; a <= hi; a = a + step) grid.push_back(a);
  return grid;
}

int cmd_sweep(const SweepArgs& a) {
  const std::vector<Fraction> grid = alpha_grid(a.alpha);
  SessionConfig cfg = session_config(a.common, a.session);
  if (cfg.adversary.kind == AdversaryKind::None) cfg.adversary.kind = AdversaryKind::NearestOtherCodeword;
  Output out(a.common.out);
  out.stream() << sweep_csv_header() << "\n";
  int violations = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    cfg.adversary.alpha = grid[i];
    MonteCarloOptions o = mc_options(a.common, a.session);
    o.seed = derive_seed(o.seed, i);
    const MonteCarloResult mc = monte_carlo(cfg, o);
    violations += mc.stats.bound_violations;
    out.stream() << sweep_csv_row(summarize_batch(grid[i].to_double(), mc.records)) << "\n";
    out.stream().flush();
    if (a.common.verbose) std::cerr << "alpha " << grid[i].str() << ": " << mc.stats.success_rate() << "\n";
  }
  return violations == 0 ? 0 : 1;
}

// ---- boost ----------------------------------------------------------------------------

struct BoostArgs {
  Common common;
  std::string inner = "mock";
  int n0 = 8;
  int chunk = 0;
  int beta = 8;
  int fp_bits = 0;
  int steps = 0;
  std::string protocol = "random_tree";
  std::uint64_t protocol_seed = 1;
  std::optional<std::uint64_t> x, y;
  double mock_confidence = 1.0;
  std::string adversary = "none";
  std::string alpha = "0";
};

json step_json(const BoostPartyStep& s) {
  json j{{"used", s.used}, {"agreed_length", s.agreed_length}, {"edges_added", s.edges_added},
         {"confidence", s.confidence}};
  j["vote"] = s.vote ? json(s.vote->str()) : json(nullptr);
  return j;
}

int cmd_boost(const BoostArgs& a) {
  const std::uint64_t seed = a.common.resolved_seed();
  const ProtocolKind kind = protocol_kind_from_name(a.protocol);
  const std::uint64_t x = a.x ? *a.x : derive_seed(seed, 1), y = a.y ? *a.y : derive_seed(seed, 2);
  const TableParty alice = make_party(kind, Role::Alice, a.n0, a.protocol_seed, x);
  const TableParty bob = make_party(kind, Role::Bob, a.n0, a.protocol_seed, y);

  BoostParams p;
  p.n0 = a.n0;
  p.chunk_size = a.chunk > 0 ? a.chunk : default_chunk_size(a.n0);
  p.beta = a.beta;
  p.fp_bits = a.fp_bits;
  p.search_steps = a.steps;
  p.seed = seed;

  std::unique_ptr<InnerScheme> inner;
  if (a.inner == "mock") {
    const MockOutcome o{MockOutcome::Kind::Truth, a.mock_confidence};
    const int header = chunk_layout(p.n0, p.chunk_size, p.fp_bits, p.search_steps, 0).header();
    inner = std::make_unique<MockInner>(std::vector<MockStep>(std::max(a.beta, 0), MockStep{o, o}), header);
  } else if (a.inner == "real") {
    Protocol16InnerConfig cfg;
    cfg.seed = derive_seed(seed, 3);
    cfg.code_seed = derive_seed(seed, 4);
    cfg.adversary.kind = adversary_from_name(a.adversary);
    cfg.adversary.alpha = parse_fraction(a.alpha, "--alpha");
    cfg.adversary.seed = derive_seed(seed, 5);
    inner = std::make_unique<Protocol16Inner>(cfg);
  } else {
    throw UsageError("--inner must be mock or real");
  }

  const BoostResult r = run_boost(alice, bob, *inner, p);
  json iters = json::array();
  for (const auto& it : r.iterations)
    iters.push_back({{"iteration", it.iteration},
                     {"corruption", it.corruption},
                     {"alice", step_json(it.alice)},
                     {"bob", step_json(it.bob)}});
  json j{{"inner", a.inner},
         {"n0", p.n0},
         {"chunk", p.chunk_size},
         {"beta", p.beta},
         {"n_inner", r.n_inner},
         {"seed", seed},
         {"truth", r.truth.str()},
         {"iterations", iters},
         {"alice", {{"transcript", r.alice_out.transcript.str()}, {"confidence", r.alice_out.confidence}}},
         {"bob", {{"transcript", r.bob_out.transcript.str()}, {"confidence", r.bob_out.confidence}}},
         {"success", r.success()},
         {"bound_violations", r.bound_violations}};
  Output out(a.common.out);
  out.stream() << j.dump(2) << "\n";
  return r.bound_violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive coding scheme simulator"};
  app.require_subcommand(1);

  GenEccArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-ecc", "build and verify the instruction ECC");
  add_common(gen_cmd, gen.common);
  gen_cmd->add_option("--alphabet", gen.alphabet, "layered code alphabet size")->required();
  gen_cmd->add_option("--epsilon", gen.epsilon, "cross-pair slack");
  gen_cmd->add_option("--M", gen.M, "codeword length (multiple of 6; 0 = smallest verified)");
  gen_cmd->add_option("--attempts", gen.attempts, "random generators per length");
  gen_cmd->add_flag("--table", gen.table, "include the codeword table as hex");

  CheckCodeArgs chk;
  auto* chk_cmd = app.add_subcommand("check-code", "sensitivity check or sampled decode quality");
  add_common(chk_cmd, chk.common);
  chk_cmd->add_option("--mode", chk.mode, "exhaustive or sample");
  chk_cmd->add_option("--alphabet", chk.alphabet);
  chk_cmd->add_option("--n0", chk.n0);
  chk_cmd->add_option("--depth", chk.depth)->required()->check(CLI::PositiveNumber);
  chk_cmd->add_option("--epsilon", chk.epsilon);
  chk_cmd->add_option("--trials", chk.trials);
  chk_cmd->add_option("--budget", chk.budget, "max alphabet^depth words");
  chk_cmd->add_option("--witnesses", chk.witnesses);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo sessions; aggregate CSV");
  add_common(sim_cmd, sim.common);
  add_session_flags(sim_cmd, sim.session);
  sim_cmd->add_option("--records", sim.records, "write run records as JSONL");
  sim_cmd->add_option("--replay", sim.replay, "replay a JSONL file instead")->check(CLI::ExistingFile);
  sim_cmd->add_option("--rho", sim.rho);
  sim_cmd->add_option("--eps-prime", sim.eps_prime);

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "success and confidence across adversary budgets");
  add_common(sw_cmd, sw.common);
  add_session_flags(sw_cmd, sw.session);
  sw_cmd->remove_option(sw_cmd->get_option("--alpha"));
  sw_cmd->add_option("--alpha", sw.alpha, "start:stop:step")->required();

  ReplayArgs rep;
  auto* rep_cmd = app.add_subcommand("replay", "re-run JSONL records and check they reproduce");
  add_common(rep_cmd, rep.common);
  rep_cmd->add_option("--in", rep.in, "JSONL records")->required()->check(CLI::ExistingFile);

  BoostArgs bst;
  auto* bst_cmd = app.add_subcommand("boost", "boosting run with a mock or real inner scheme");
  add_common(bst_cmd, bst.common);
  bst_cmd->add_option("--inner", bst.inner, "mock or real");
  bst_cmd->add_option("--n0", bst.n0);
  bst_cmd->add_option("--chunk", bst.chunk, "chunk size (0 = default for n0)");
  bst_cmd->add_option("--beta", bst.beta, "iterations");
  bst_cmd->add_option("--fp-bits", bst.fp_bits, "fingerprint bits per search step");
  bst_cmd->add_option("--steps", bst.steps, "search steps");
  bst_cmd->add_option("--protocol", bst.protocol);
  bst_cmd->add_option("--protocol-seed", bst.protocol_seed);
  bst_cmd->add_option("--x", bst.x);
  bst_cmd->add_option("--y", bst.y);
  bst_cmd->add_option("--mock-confidence", bst.mock_confidence);
  bst_cmd->add_option("--adversary", bst.adversary, "inner-session adversary (real inner only)");
  bst_cmd->add_option("--alpha", bst.alpha);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return cmd_gen_ecc(gen);
    if (*chk_cmd) return cmd_check_code(chk);
    if (*sim_cmd) return cmd_simulate(sim);
    if (*sw_cmd) return cmd_sweep(sw);
    if (*rep_cmd) return replay_records(rep.in, rep.common.out, rep.common.verbose);
    if (*bst_cmd) return cmd_boost(bst);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
