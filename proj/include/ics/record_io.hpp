#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ics/channel.hpp"

namespace ics {

using json = nlohmann::ordered_json;

json fraction_json(const Fraction& f);   // "a/b" string
Fraction fraction_from_json(const json& j);  // string or number

json to_json(const SessionConfig& c);
// Missing keys keep the values already in `into`.
void merge_config(const json& j, SessionConfig& into);
SessionConfig config_from_json(const json& j);

std::string config_hash(const SessionConfig& c);
std::string batch_hash(const SessionConfig& c);

json to_json(const RunRecord& r);
RunRecord record_from_json(const json& j);

void write_jsonl(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_jsonl(std::istream& in);

}  // namespace ics
