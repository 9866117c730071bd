#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "ics/analysis.hpp"
#include "ics/ecc.hpp"
#include "ics/layered_code.hpp"
#include "ics/noiseless.hpp"
#include "ics/protocol.hpp"

namespace ics {

enum class AdversaryKind : std::uint8_t { None, RandomFlips, Burst, NearestOtherCodeword, QuestionJammer, Scripted };
const char* adversary_name(AdversaryKind k);
AdversaryKind adversary_from_name(const std::string& name);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::None;
  Fraction alpha{0, 1};  // fraction of all K*M bits the adversary may flip
  std::uint64_t seed = 0;
  int burst_start = 1;   // first message hit by Burst
  std::vector<std::vector<int>> script;  // Scripted: flip positions per message
};

struct SessionConfig {
  int n0 = 4;
  Fraction epsilon{1, 4};  // sets K = n0 / epsilon
  int K = 0;               // 0: derive from n0 and epsilon
  std::uint32_t alphabet_size = 64;
  std::uint64_t code_seed = 1;
  Fraction code_epsilon{2, 5};
  std::uint64_t ecc_seed = 1;
  int ecc_M = 0;  // 0: smallest verified length
  Fraction ecc_epsilon{1, 20};
  ProtocolKind protocol = ProtocolKind::RandomTree;
  std::uint64_t protocol_seed = 1;
  std::uint64_t input_x = 0;
  std::uint64_t input_y = 0;
  std::uint64_t alice_seed = 1;
  std::uint64_t bob_seed = 2;
  AdversarySpec adversary;
};

// K = ceil(n0 / epsilon), rounded up to even.
int session_length(int n0, Fraction epsilon);
int resolved_K(const SessionConfig& c);

// Built, shareable pieces of a session. ECC construction dominates, so
// Monte Carlo drivers build it once and reuse it.
struct SessionSetup {
  SessionConfig config;
  int K = 0;
  std::shared_ptr<const LayeredCode> code;
  std::shared_ptr<const EccCode> ecc;
  std::shared_ptr<const PartyOracle> alice;
  std::shared_ptr<const PartyOracle> bob;
  BitString truth;
};

std::shared_ptr<const EccCode> build_session_ecc(const SessionConfig& c);
SessionSetup build_setup(const SessionConfig& c, std::shared_ptr<const EccCode> ecc = nullptr);

// What the adversary sees before committing flips for one message.
struct ChannelView {
  int index = 0;  // 1-based message number
  Role sender = Role::Alice;
  const BitVec* sent = nullptr;
  SymbolPair sent_pair;
  Instruction sent_instruction = Instruction::Ask;
  const EccCode* ecc = nullptr;
  const Party* alice = nullptr;
  const Party* bob = nullptr;
  int remaining = 0;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  // Distinct bit positions in [0, M) to flip in this message.
  virtual std::vector<int> corrupt(const ChannelView& view) = 0;
};

std::int64_t flip_budget(Fraction alpha, int K, int M);
std::unique_ptr<Adversary> make_adversary(const AdversarySpec& spec, int K, int M);

struct MessageRecord {
  int index = 0;
  Role sender = Role::Alice;
  SymbolPair sent_pair;
  Instruction sent_instruction = Instruction::Ask;
  std::string sent_hex;
  std::string delivered_hex;
  int flips = 0;
  CaseTaken receiver_case = CaseTaken::Case3;
  int distance = 0;
  bool coin = false;
  EdgeLabel applied = EdgeLabel::Stay;
  UpdateClass update = UpdateClass::Neutral;
  Guess receiver_before;
  Guess receiver_after;
  int psi_alice = 0;
  int psi_bob = 0;
  bool bound_ok = true;
};

struct PartyFinal {
  PartyOutput output;
  std::vector<EdgeLabel> updates;   // U
  std::vector<SymbolPair> log;      // P
  int weight = 0;
};

struct RunRecord {
  SessionConfig config;
  std::string config_hash;  // full config
  std::string batch_hash;   // config without per-run seeds and inputs
  int K = 0;
  int M = 0;
  std::int64_t budget = 0;
  std::int64_t total_flips = 0;
  BitString truth;
  std::vector<MessageRecord> messages;
  PartyFinal alice;
  PartyFinal bob;
  int bound_violations = 0;

  bool success() const { return alice.output.transcript == truth && bob.output.transcript == truth; }
};

// Runs one session. `adversary` overrides the config's adversary when given
// (replay passes a scripted one while keeping the recorded config).
RunRecord run_session(const SessionSetup& setup, Adversary* adversary = nullptr);
RunRecord run_session(const SessionConfig& config);

// Re-run a record's config with its recorded flip masks.
RunRecord replay(const RunRecord& record, std::shared_ptr<const EccCode> ecc = nullptr);

struct MonteCarloOptions {
  int n_runs = 1;
  std::uint64_t seed = 1;
  int jobs = 1;
  bool randomize_inputs = true;
  bool keep_records = true;
};

struct MonteCarloStats {
  int n_runs = 0;
  int successes = 0;
  int correct_outputs = 0;  // over both parties
  int wrong_outputs = 0;
  double sum_conf_correct = 0;
  double sum_conf_wrong = 0;
  double max_conf_correct = 0;
  double max_conf_wrong = 0;
  std::array<int, 11> confidence_histogram{};  // bins of width 0.1, last bin = 1.0
  double sum_psi_final = 0;                   // over both parties
  std::int64_t total_flips = 0;
  int bound_violations = 0;

  double success_rate() const { return n_runs ? static_cast<double>(successes) / n_runs : 0.0; }
  double mean_conf_correct() const { return correct_outputs ? sum_conf_correct / correct_outputs : 0.0; }
  double mean_conf_wrong() const { return wrong_outputs ? sum_conf_wrong / wrong_outputs : 0.0; }
  double mean_psi_final() const { return n_runs ? sum_psi_final / (2.0 * n_runs) : 0.0; }
};

struct MonteCarloResult {
  MonteCarloStats stats;
  std::vector<RunRecord> records;
};

// Per-run config: coin, adversary and (optionally) input seeds derived from the master seed.
SessionConfig run_config(const SessionConfig& base, std::uint64_t master_seed, int run, bool randomize_inputs);

void accumulate(MonteCarloStats& stats, const RunRecord& r);
MonteCarloResult monte_carlo(const SessionConfig& config, const MonteCarloOptions& options);

std::string aggregate_csv_header();
std::string aggregate_csv_row(double alpha, const MonteCarloStats& s);

}  // namespace ics
