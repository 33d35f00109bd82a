#pragma once
// Check records and their serialization: an ordered JSON tree and a flat TSV table.

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace adelic::harness {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, waived };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    default:
      return "waived";
  }
}

inline Status status_from(bool ok) { return ok ? Status::pass : Status::fail; }

struct Record {
  std::string name;
  std::string anchor;     // topic tag of the verified statement
  Status status = Status::pass;
  Json inputs = Json::object();
  Json outputs = Json::object();
  std::string tolerance = "exact";
  std::optional<std::uint64_t> seed;  // set whenever inputs were drawn at random
  std::optional<double> wall_ms;
  std::string note;
};

struct Report {
  std::string command;
  Json config = Json::object();
  std::vector<Record> records;
  bool timing = false;

  Record& add(Record r) {
    records.push_back(std::move(r));
    return records.back();
  }
  size_t count(Status s) const {
    size_t n = 0;
    for (const auto& r : records) n += r.status == s;
    return n;
  }
  bool all_pass() const { return count(Status::fail) == 0; }
};

// Runs f, recording wall time only when timing is on so reports stay byte-stable.
template <class F>
Record& timed(Report& rep, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  Record r = f();
  if (rep.timing)
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep.add(std::move(r));
}

inline Json to_json(const Record& r) {
  Json j;
  j["name"] = r.name;
  j["anchor"] = r.anchor;
  j["status"] = status_name(r.status);
  j["inputs"] = r.inputs;
  j["outputs"] = r.outputs;
  j["tolerance"] = r.tolerance;
  if (r.seed) j["seed"] = *r.seed;
  if (r.wall_ms) j["wall_ms"] = *r.wall_ms;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline Json to_json(const Report& rep) {
  Json j;
  j["command"] = rep.command;
  j["config"] = rep.config;
  Json recs = Json::array();
  for (const auto& r : rep.records) recs.push_back(to_json(r));
  j["records"] = recs;
  j["summary"] = {{"total", rep.records.size()},
                  {"pass", rep.count(Status::pass)},
                  {"fail", rep.count(Status::fail)},
                  {"waived", rep.count(Status::waived)}};
  return j;
}

inline std::string to_tsv(const Report& rep) {
  std::ostringstream os;
  os << "name\tanchor\tstatus\ttolerance\tseed\n";
  for (const auto& r : rep.records)
    os << r.name << '\t' << r.anchor << '\t' << status_name(r.status) << '\t' << r.tolerance << '\t'
       << (r.seed ? std::to_string(*r.seed) : "-") << '\n';
  return os.str();
}

inline Report from_json(const Json& j) {
  Report rep;
  rep.command = j.at("command").get<std::string>();
  rep.config = j.at("config");
  for (const auto& rj : j.at("records")) {
    Record r;
    r.name = rj.at("name").get<std::string>();
    r.anchor = rj.at("anchor").get<std::string>();
    std::string s = rj.at("status").get<std::string>();
    r.status = s == "pass" ? Status::pass : s == "fail" ? Status::fail : Status::waived;
    r.inputs = rj.at("inputs");
    r.outputs = rj.at("outputs");
    r.tolerance = rj.at("tolerance").get<std::string>();
    if (rj.contains("seed")) r.seed = rj.at("seed").get<std::uint64_t>();
    if (rj.contains("wall_ms")) r.wall_ms = rj.at("wall_ms").get<double>();
    if (rj.contains("note")) r.note = rj.at("note").get<std::string>();
    rep.records.push_back(std::move(r));
  }
  return rep;
}

// Writes <base>.json and <base>.tsv.
inline void write_report(const Report& rep, const std::string& base) {
  std::ofstream(base + ".json") << to_json(rep).dump(2) << '\n';
  std::ofstream(base + ".tsv") << to_tsv(rep);
}

}  // namespace adelic::harness
