#pragma once

#include <string>
#include <utility>

#include <json.hpp>

namespace catkit {

using json = nlohmann::json;

// Structured pass/fail result for every checker.  A failing report always
// carries a counterexample; passing existence-style checks carry a witness.
// `window_certified` marks results that are only valid inside a declared
// finite window of an infinite structure.  `inconclusive` marks truncated
// searches (bound hit before the space was exhausted).
struct Report {
  bool pass = true;
  bool window_certified = false;
  bool inconclusive = false;
  long long checks = 0;
  json witness;
  json counterexample;
  std::string note;

  static Report ok(json w = json(), long long checks_ = 0) {
    Report r;
    r.pass = true;
    r.witness = std::move(w);
    r.checks = checks_;
    return r;
  }

  static Report bad(json cx, std::string note_ = "", long long checks_ = 0) {
    Report r;
    r.pass = false;
    r.counterexample = std::move(cx);
    r.note = std::move(note_);
    r.checks = checks_;
    return r;
  }

  // Conjunction: keep the first failure's counterexample, sum check counts.
  Report& merge(const Report& o) {
    checks += o.checks;
    window_certified = window_certified || o.window_certified;
    inconclusive = inconclusive || o.inconclusive;
    if (pass && !o.pass) {
      pass = false;
      counterexample = o.counterexample;
      if (note.empty()) note = o.note;
    }
    return *this;
  }

  json to_json() const {
    json j;
    j["status"] = pass ? "pass" : "fail";
    if (inconclusive) j["status"] = "inconclusive";
    j["window_certified"] = window_certified;
    j["checks"] = checks;
    if (!witness.is_null()) j["witness"] = witness;
    if (!counterexample.is_null()) j["counterexample"] = counterexample;
    if (!note.empty()) j["note"] = note;
    return j;
  }
};

// Schema / precondition violations are thrown, not returned as reports.
struct SchemaError : std::runtime_error {
  explicit SchemaError(const std::string& m) : std::runtime_error(m) {}
};
struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace catkit
