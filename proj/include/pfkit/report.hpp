#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace pfkit {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, inconclusive, error };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
    case Status::error: return "error";
  }
  return "error";
}

inline Status status_from_string(std::string_view s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "inconclusive") return Status::inconclusive;
  return Status::error;
}

/// Outcome of one named verification. A fail or inconclusive report always
/// carries a witness or a reason.
struct CheckReport {
  std::string check;
  Status status = Status::pass;
  std::string claim;  // the mathematical statement the check certifies
  Json params = Json::object();
  Json witness = nullptr;
  std::string reason;
  std::int64_t elapsed_ms = 0;
  std::optional<std::uint64_t> seed;

  bool passed() const { return status == Status::pass; }

  void fail(std::string why, Json w = nullptr) { conclude(Status::fail, std::move(why), std::move(w)); }
  void inconclusive(std::string why, Json w = nullptr) { conclude(Status::inconclusive, std::move(why), std::move(w)); }

 private:
  void conclude(Status s, std::string why, Json w) {
    // Keep the first failure; later ones would only obscure it.
    if (status != Status::pass && status != Status::inconclusive) return;
    if (status == Status::inconclusive && s == Status::inconclusive) return;
    status = s;
    reason = std::move(why);
    if (!w.is_null()) witness = std::move(w);
  }
};

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["status"] = std::string(to_string(r.status));
  if (!r.claim.empty()) j["claim"] = r.claim;
  j["params"] = r.params;
  j["witness"] = r.witness;
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline CheckReport report_from_json(const Json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.status = status_from_string(j.at("status").get<std::string>());
  if (j.contains("claim")) r.claim = j["claim"].get<std::string>();
  r.params = j.value("params", Json::object());
  r.witness = j.value("witness", Json(nullptr));
  if (j.contains("reason")) r.reason = j["reason"].get<std::string>();
  if (j.contains("seed") && !j["seed"].is_null()) r.seed = j["seed"].get<std::uint64_t>();
  r.elapsed_ms = j.value("elapsed_ms", std::int64_t{0});
  return r;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }
  double elapsed_seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pfkit
