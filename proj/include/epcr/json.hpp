#pragma once

#include <json.hpp>

#include "epcr/cycle_chase.hpp"
#include "epcr/game.hpp"
#include "epcr/solver.hpp"

namespace epcr {

// Field names mirror the text trace: {"t", "cop", "robber"} with robber
// "CAPTURED" on the capturing round.
inline nlohmann::json to_json(const Trace& trace) {
  nlohmann::json rounds = nlohmann::json::array();
  for (const auto& r : trace.rounds) {
    nlohmann::json row = {{"t", r.round}, {"cop", r.cop}};
    if (r.robber)
      row["robber"] = *r.robber;
    else
      row["robber"] = "CAPTURED";
    rounds.push_back(std::move(row));
  }
  nlohmann::json j = {{"cop_start", trace.cop_start},
                      {"robber_start", trace.robber_start},
                      {"captured", trace.captured},
                      {"rounds", std::move(rounds)}};
  if (auto cr = trace.capture_round())
    j["capture_round"] = *cr;
  else
    j["capture_round"] = nullptr;
  return j;
}

inline nlohmann::json to_json(const Outcome& o) {
  nlohmann::json j = {{"cop_winning", o.cop_winning},
                      {"winning_starts", o.winning_starts},
                      {"rounds_bound", o.rounds_bound},
                      {"stats",
                       {{"iterations", o.stats.iterations},
                        {"cells", o.stats.cells},
                        {"peak_resident_levels", o.stats.peak_resident_levels}}}};
  if (o.witness) j["witness"] = to_json(*o.witness);
  return j;
}

inline nlohmann::json to_json(const ChaseReport& report) {
  nlohmann::json starts = nlohmann::json::array();
  for (const auto& s : report.starts) {
    starts.push_back({{"cop_start", s.cop_start},
                      {"robber_start", s.robber_start},
                      {"verdict", s.verdict == ChaseVerdict::Caught ? "caught" : "evaded"},
                      {"rounds", s.rounds},
                      {"capture_round", s.capture_round ? nlohmann::json(*s.capture_round) : nlohmann::json()}});
  }
  return {{"cop_winning", report.cop_winning}, {"horizon", report.horizon}, {"starts", std::move(starts)}};
}

}  // namespace epcr
