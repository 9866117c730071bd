#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ics/channel.hpp"

namespace ics {

// Cumulative good-minus-bad count of one party after each message.
std::vector<int> psi_trace(const RunRecord& record, Role party);

// Recomputes the potential bound from the stored per-message states.
int count_bound_violations(const RunRecord& record);

LayeredCode record_code(const RunRecord& record);

// Message indices k where an equal code pair does not pin down the decoded
// or the shared vertex at k (both conditions evaluated directly).
std::vector<int> compute_S(const RunRecord& record, const LayeredCode& code);

std::pair<double, double> wilson_interval(int successes, int n, double z = 1.96);

struct ClauseStats {
  int applicable = 0;
  int satisfied = 0;
  double rate() const { return applicable ? static_cast<double>(satisfied) / applicable : 0.0; }
  std::pair<double, double> interval() const { return wilson_interval(satisfied, applicable); }
};

struct ScalingVerdict {
  Fraction delta;       // realised corruption fraction
  bool low_noise;       // delta < (1 - eps') rho: the first clause applies
  bool satisfied;
};

struct ScalingSummary {
  Fraction rho;
  Fraction eps_prime;
  ClauseStats scaling1;
  ClauseStats scaling2;
  std::vector<ScalingVerdict> verdicts;
};

ScalingVerdict scaling_verdict(const RunRecord& r, Fraction rho, Fraction eps_prime);
ScalingSummary scaling_eval(std::span<const RunRecord> records, Fraction rho, Fraction eps_prime);

struct SweepRow {
  double alpha = 0;
  MonteCarloStats stats;
  double S_size_mean = 0;
  int S_bound_hits = 0;  // runs with |S| <= 20 eps K
};

SweepRow summarize_batch(double alpha, std::span<const RunRecord> records);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace ics
