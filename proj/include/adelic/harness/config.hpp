#pragma once
// Run configuration shared by the CLI subcommands, plus JSON helpers for exact values.

#include "adelic/arith.hpp"
#include "adelic/harness/report.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adelic::harness {

struct RunConfig {
  std::string command;
  long p = 5;
  std::optional<long> q;
  std::optional<int> e;          // unset: both e = 0 and e = 1
  long bound = 20;               // search box B
  long bound_guard = 1000000;
  std::optional<long> x, y;
  long precision = 6;            // N: work modulo y^N
  std::optional<long> truncation;  // M; default depends on p
  long level = 1;                // level for the pipeline
  std::uint64_t seed = 1;
  long samples = 200;            // random elements per sampled identity
  long threads = 0;              // 0: hardware concurrency
  std::string out;
  bool waive_scale = false;
  bool timing = false;

  void validate() const {
    require_prime(p, "p");
    if (q) {
      require_prime(*q, "q");
      if (*q == p) throw invalid_input("q must differ from p");
    }
    if (e && *e != 0 && *e != 1) throw invalid_input("e must be 0 or 1");
    if (bound < 1) throw invalid_input("search bound must be >= 1");
    if (bound > bound_guard) throw invalid_input("search bound exceeds the guard");
    if (precision < 1) throw invalid_input("precision must be >= 1");
    if (truncation && *truncation < 0) throw invalid_input("truncation must be >= 0");
    if (level < 1) throw invalid_input("level must be >= 1");
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["p"] = p;
    if (q) j["q"] = *q;
    if (e) j["e"] = *e;
    j["bound"] = bound;
    if (x) j["x"] = *x;
    if (y) j["y"] = *y;
    j["precision"] = precision;
    if (truncation) j["truncation"] = *truncation;
    j["level"] = level;
    j["seed"] = seed;
    j["samples"] = samples;
    j["waive_scale"] = waive_scale;
    return j;
  }
};

// Runs f; an exception becomes a failed record carrying the message.
inline Record guarded(const std::string& name, const std::string& anchor, const std::function<Record()>& f) {
  try {
    Record r = f();
    r.name = name;
    r.anchor = anchor;
    return r;
  } catch (const std::exception& ex) {
    Record r;
    r.name = name;
    r.anchor = anchor;
    r.status = Status::fail;
    r.note = std::string("exception: ") + ex.what();
    return r;
  }
}

inline Json js(const Int& v) { return v.get_str(); }
inline Json js(const Rat& v) { return v.get_str(); }
template <class T>
Json js(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(js(x));
  return a;
}
inline Json js(long v) { return v; }
inline Json js(int v) { return v; }
inline Json js(bool v) { return v; }

}  // namespace adelic::harness
