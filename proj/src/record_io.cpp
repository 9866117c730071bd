#include "ics/record_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include "ics/errors.hpp"
#include "ics/rng.hpp"

namespace ics {

json fraction_json(const Fraction& f) { return f.str(); }

Fraction fraction_from_json(const json& j) {
  if (j.is_string()) return Fraction::parse(j.get<std::string>());
  if (j.is_number_integer()) return Fraction(j.get<std::int64_t>(), 1);
  if (j.is_number()) return Fraction::from_double(j.get<double>());
  throw ConfigError("expected a fraction, got " + j.dump());
}

json to_json(const SessionConfig& c) {
  json adv = {{"kind", adversary_name(c.adversary.kind)},
              {"alpha", fraction_json(c.adversary.alpha)},
              {"seed", c.adversary.seed},
              {"burst_start", c.adversary.burst_start}};
  if (!c.adversary.script.empty()) adv["script"] = c.adversary.script;
  return json{{"n0", c.n0},
              {"epsilon", fraction_json(c.epsilon)},
              {"K", resolved_K(c)},
              {"alphabet_size", c.alphabet_size},
              {"code", {{"seed", c.code_seed}, {"epsilon", fraction_json(c.code_epsilon)}}},
              {"ecc", {{"seed", c.ecc_seed}, {"M", c.ecc_M}, {"epsilon", fraction_json(c.ecc_epsilon)}}},
              {"protocol",
               {{"kind", protocol_kind_name(c.protocol)}, {"seed", c.protocol_seed}, {"x", c.input_x}, {"y", c.input_y}}},
              {"coins", {{"alice", c.alice_seed}, {"bob", c.bob_seed}}},
              {"adversary", adv}};
}

namespace {

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void take_fraction(const json& j, const char* key, Fraction& out) {
  if (j.contains(key)) out = fraction_from_json(j.at(key));
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string hash_text(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) h = (h ^ ch) * 0x100000001b3ULL;
  return hex64(mix64(h));
}

}  // namespace

void merge_config(const json& j, SessionConfig& c) {
  try {
    take(j, "n0", c.n0);
    take_fraction(j, "epsilon", c.epsilon);
    take(j, "K", c.K);
    take(j, "alphabet_size", c.alphabet_size);
    if (j.contains("code")) {
      take(j["code"], "seed", c.code_seed);
      take_fraction(j["code"], "epsilon", c.code_epsilon);
    }
    if (j.contains("ecc")) {
      take(j["ecc"], "seed", c.ecc_seed);
      take(j["ecc"], "M", c.ecc_M);
      take_fraction(j["ecc"], "epsilon", c.ecc_epsilon);
    }
    if (j.contains("protocol")) {
      const auto& p = j["protocol"];
      if (p.contains("kind")) c.protocol = protocol_kind_from_name(p["kind"].get<std::string>());
      take(p, "seed", c.protocol_seed);
      take(p, "x", c.input_x);
      take(p, "y", c.input_y);
    }
    if (j.contains("coins")) {
      take(j["coins"], "alice", c.alice_seed);
      take(j["coins"], "bob", c.bob_seed);
    }
    if (j.contains("adversary")) {
      const auto& a = j["adversary"];
      if (a.contains("kind")) c.adversary.kind = adversary_from_name(a["kind"].get<std::string>());
      take_fraction(a, "alpha", c.adversary.alpha);
      take(a, "seed", c.adversary.seed);
      take(a, "burst_start", c.adversary.burst_start);
      take(a, "script", c.adversary.script);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad session config: ") + e.what());
  }
}

SessionConfig config_from_json(const json& j) {
  SessionConfig c;
  merge_config(j, c);
  return c;
}

std::string config_hash(const SessionConfig& c) { return hash_text(to_json(c).dump()); }

std::string batch_hash(const SessionConfig& c) {
  SessionConfig b = c;
  b.alice_seed = b.bob_seed = 0;
  b.adversary.seed = 0;
  b.input_x = b.input_y = 0;
  return hash_text(to_json(b).dump());
}

namespace {

json guess_json(const Guess& g) { return json{{"t", g.transcript.str()}, {"w", g.weight}}; }
Guess guess_from(const json& j) { return Guess{BitString::parse(j.at("t").get<std::string>()), j.at("w").get<int>()}; }

json pairs_json(const std::vector<SymbolPair>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({p.first, p.second});
  return a;
}

std::vector<SymbolPair> pairs_from(const json& j) {
  std::vector<SymbolPair> out;
  for (const auto& p : j) out.push_back({p.at(0).get<Symbol>(), p.at(1).get<Symbol>()});
  return out;
}

json final_json(const PartyFinal& f) {
  return json{{"transcript", f.output.transcript.str()},
              {"confidence", fraction_json(f.output.confidence)},
              {"weight", f.weight},
              {"U", edges_to_string(f.updates)},
              {"P", pairs_json(f.log)}};
}

PartyFinal final_from(const json& j) {
  PartyFinal f;
  f.output.transcript = BitString::parse(j.at("transcript").get<std::string>());
  f.output.confidence = fraction_from_json(j.at("confidence"));
  f.weight = j.at("weight").get<int>();
  f.updates = edges_from_string(j.at("U").get<std::string>());
  f.log = pairs_from(j.at("P"));
  return f;
}

Instruction instruction_from_char(char c) {
  for (auto d : kAllInstructions)
    if (instruction_char(d) == c) return d;
  throw ConfigError(std::string("bad instruction: ") + c);
}

CaseTaken case_from_name(const std::string& s) {
  for (auto c : {CaseTaken::Opening, CaseTaken::Case1, CaseTaken::Case2Unknown, CaseTaken::Case2Vote,
                 CaseTaken::Case2Answer, CaseTaken::Case3})
    if (s == case_name(c)) return c;
  throw ConfigError("bad case name: " + s);
}

UpdateClass class_from_name(const std::string& s) {
  for (auto c : {UpdateClass::Good, UpdateClass::Neutral, UpdateClass::Bad})
    if (s == class_name(c)) return c;
  throw ConfigError("bad update class: " + s);
}

}  // namespace

json to_json(const RunRecord& r) {
  json msgs = json::array();
  for (const auto& m : r.messages) {
    msgs.push_back(json{{"k", m.index},
                        {"from", role_name(m.sender)},
                        {"pair", {m.sent_pair.first, m.sent_pair.second}},
                        {"instruction", std::string(1, instruction_char(m.sent_instruction))},
                        {"sent", m.sent_hex},
                        {"delivered", m.delivered_hex},
                        {"flips", m.flips},
                        {"case", case_name(m.receiver_case)},
                        {"distance", m.distance},
                        {"coin", m.coin},
                        {"applied", std::string(1, edge_char(m.applied))},
                        {"class", class_name(m.update)},
                        {"before", guess_json(m.receiver_before)},
                        {"after", guess_json(m.receiver_after)},
                        {"psi", {m.psi_alice, m.psi_bob}},
                        {"bound_ok", m.bound_ok}});
  }
  return json{{"config", to_json(r.config)},
              {"config_hash", r.config_hash},
              {"batch_hash", r.batch_hash},
              {"K", r.K},
              {"M", r.M},
              {"budget", r.budget},
              {"total_flips", r.total_flips},
              {"truth", r.truth.str()},
              {"success", r.success()},
              {"bound_violations", r.bound_violations},
              {"alice", final_json(r.alice)},
              {"bob", final_json(r.bob)},
              {"messages", msgs}};
}

RunRecord record_from_json(const json& j) {
  try {
    RunRecord r;
    r.config = config_from_json(j.at("config"));
    r.config_hash = j.at("config_hash").get<std::string>();
    r.batch_hash = j.at("batch_hash").get<std::string>();
    r.K = j.at("K").get<int>();
    r.M = j.at("M").get<int>();
    r.budget = j.at("budget").get<std::int64_t>();
    r.total_flips = j.at("total_flips").get<std::int64_t>();
    r.truth = BitString::parse(j.at("truth").get<std::string>());
    r.bound_violations = j.at("bound_violations").get<int>();
    r.alice = final_from(j.at("alice"));
    r.bob = final_from(j.at("bob"));
    for (const auto& mj : j.at("messages")) {
      MessageRecord m;
      m.index = mj.at("k").get<int>();
      m.sender = mj.at("from").get<std::string>() == "alice" ? Role::Alice : Role::Bob;
      m.sent_pair = {mj.at("pair").at(0).get<Symbol>(), mj.at("pair").at(1).get<Symbol>()};
      m.sent_instruction = instruction_from_char(mj.at("instruction").get<std::string>().at(0));
      m.sent_hex = mj.at("sent").get<std::string>();
      m.delivered_hex = mj.at("delivered").get<std::string>();
      m.flips = mj.at("flips").get<int>();
      m.receiver_case = case_from_name(mj.at("case").get<std::string>());
      m.distance = mj.at("distance").get<int>();
      m.coin = mj.at("coin").get<bool>();
      m.applied = edge_from_char(mj.at("applied").get<std::string>().at(0));
      m.update = class_from_name(mj.at("class").get<std::string>());
      m.receiver_before = guess_from(mj.at("before"));
      m.receiver_after = guess_from(mj.at("after"));
      m.psi_alice = mj.at("psi").at(0).get<int>();
      m.psi_bob = mj.at("psi").at(1).get<int>();
      m.bound_ok = mj.at("bound_ok").get<bool>();
      r.messages.push_back(std::move(m));
    }
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad run record: ") + e.what());
  }
}

void write_jsonl(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_jsonl(std::istream& in) {
  std::vector<RunRecord> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(record_from_json(json::parse(line)));
  }
  return out;
}

}  // namespace ics
