#include "ics/run_analysis.hpp"

#include <cmath>
#include <cstdio>

#include "ics/errors.hpp"

namespace ics {

std::vector<int> psi_trace(const RunRecord& record, Role party) {
  std::vector<int> out;
  out.reserve(record.messages.size());
  for (const auto& m : record.messages) out.push_back(party == Role::Alice ? m.psi_alice : m.psi_bob);
  return out;
}

int count_bound_violations(const RunRecord& record) {
  int bad = 0;
  for (const auto& m : record.messages) {
    const Role receiver = other(m.sender);
    const int psi = receiver == Role::Alice ? m.psi_alice : m.psi_bob;
    if (!potential_bound_holds(psi, m.receiver_after, record.truth, record.config.n0)) ++bad;
  }
  return bad;
}

LayeredCode record_code(const RunRecord& record) {
  const SessionConfig& c = record.config;
  return spawn_code(c.code_seed, c.alphabet_size, session_graph(c.n0, record.K));
}

namespace {

struct PairTrail {
  std::vector<SymbolPair> labels;  // C(U)[k]
  std::vector<Vertex> vertices;    // v(U[1:k])
};

PairTrail pair_trail(const LayeredCode& code, const std::vector<EdgeLabel>& updates) {
  PairTrail t;
  Vertex v = root_vertex();
  for (std::size_t i = 0; i + 1 < updates.size(); i += 2) {
    const Symbol a = code.label(v, updates[i]);
    v = apply_edge(v, updates[i], code.params());
    const Symbol b = code.label(v, updates[i + 1]);
    v = apply_edge(v, updates[i + 1], code.params());
    t.labels.push_back({a, b});
    t.vertices.push_back(v);
  }
  return t;
}

std::vector<DecodeResult> prefix_decodes(const LayeredCode& code, Fraction eps, const std::vector<SymbolPair>& log,
                                         std::size_t n) {
  std::vector<DecodeResult> out;
  ListDecoder dec(code, eps);
  for (std::size_t k = 0; k < n && k < log.size(); ++k) {
    dec.push(log[k].first);
    dec.push(log[k].second);
    out.push_back(dec.result());
  }
  return out;
}

}  // namespace

std::vector<int> compute_S(const RunRecord& record, const LayeredCode& code) {
  const std::size_t K = static_cast<std::size_t>(record.K);
  const Fraction eps = record.config.code_epsilon;
  const PairTrail u[2] = {pair_trail(code, record.alice.updates), pair_trail(code, record.bob.updates)};
  const std::vector<SymbolPair>* logs[2] = {&record.alice.log, &record.bob.log};
  const std::vector<DecodeResult> dec[2] = {prefix_decodes(code, eps, record.alice.log, K),
                                            prefix_decodes(code, eps, record.bob.log, K)};
  std::vector<int> S;
  for (std::size_t k = 0; k < K; ++k) {
    bool bad = false;
    for (int p = 0; p < 2 && !bad; ++p) {
      if (k >= u[p].labels.size()) continue;
      for (int q = 0; q < 2 && !bad; ++q) {
        if (k >= logs[q]->size()) continue;
        if (u[p].labels[k] == (*logs[q])[k]) {
          const DecodeResult& d = dec[q][k];
          if (!(d.unique() && d.vertex == u[p].vertices[k])) bad = true;
        }
      }
    }
    if (!bad && k < u[0].labels.size() && k < u[1].labels.size() && u[0].labels[k] == u[1].labels[k] &&
        !(u[0].vertices[k] == u[1].vertices[k]))
      bad = true;
    if (bad) S.push_back(static_cast<int>(k + 1));
  }
  return S;
}

std::pair<double, double> wilson_interval(int successes, int n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ScalingVerdict scaling_verdict(const RunRecord& r, Fraction rho, Fraction eps_prime) {
  ScalingVerdict v;
  v.delta = Fraction(r.total_flips, std::int64_t{r.K} * r.M);
  const Fraction one(1, 1);
  v.low_noise = v.delta < (one - eps_prime) * rho;
  const Fraction ratio = v.delta * Fraction(rho.den, rho.num);  // delta / rho
  if (v.low_noise) {
    const Fraction floor_conf = one - ratio - eps_prime;
    v.satisfied = r.success() && !(r.alice.output.confidence < floor_conf) && !(r.bob.output.confidence < floor_conf);
  } else {
    const Fraction cap = ratio - one + eps_prime;
    auto overconfident = [&](const PartyFinal& f) { return f.output.transcript != r.truth && f.output.confidence > cap; };
    v.satisfied = !overconfident(r.alice) && !overconfident(r.bob);
  }
  return v;
}

ScalingSummary scaling_eval(std::span<const RunRecord> records, Fraction rho, Fraction eps_prime) {
  if (rho.num <= 0) throw ConfigError("rho must be positive");
  ScalingSummary s;
  s.rho = rho;
  s.eps_prime = eps_prime;
  for (const auto& r : records) {
    if (r.batch_hash != records.front().batch_hash) throw MixedConfigs("records come from different configs");
    const ScalingVerdict v = scaling_verdict(r, rho, eps_prime);
    ClauseStats& c = v.low_noise ? s.scaling1 : s.scaling2;
    ++c.applicable;
    if (v.satisfied) ++c.satisfied;
    s.verdicts.push_back(v);
  }
  return s;
}

SweepRow summarize_batch(double alpha, std::span<const RunRecord> records) {
  SweepRow row;
  row.alpha = alpha;
  if (records.empty()) return row;
  const LayeredCode code = record_code(records.front());
  double total_S = 0;
  for (const auto& r : records) {
    accumulate(row.stats, r);
    const auto S = compute_S(r, code);
    total_S += static_cast<double>(S.size());
    // |S| <= 20 eps K with eps the session epsilon
    const Fraction e = r.config.epsilon;
    if (static_cast<std::int64_t>(S.size()) * e.den <= 20 * e.num * std::int64_t{r.K}) ++row.S_bound_hits;
  }
  row.S_size_mean = total_S / static_cast<double>(records.size());
  return row;
}

std::string sweep_csv_header() { return "alpha,success_rate,conf_correct_mean,conf_wrong_max,S_size_mean,psi_final_mean"; }

std::string sweep_csv_row(const SweepRow& row) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%.6g,%.6f,%.6f,%.6f,%.4f,%.4f", row.alpha, row.stats.success_rate(),
                row.stats.mean_conf_correct(), row.stats.max_conf_wrong, row.S_size_mean, row.stats.mean_psi_final());
  return buf;
}

}  // namespace ics
