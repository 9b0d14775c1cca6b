#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "epcr/errors.hpp"
#include "epcr/graph.hpp"
#include "epcr/period_string.hpp"

namespace epcr {

// Periodic character alignment: is there a position i with x[i mod |x|] = 1
// for every string x?
struct PcaInstance {
  std::vector<PeriodString> strings;

  explicit PcaInstance(std::vector<PeriodString> xs) : strings(std::move(xs)) {
    if (strings.empty()) throw std::invalid_argument("PCA instance has no strings");
  }

  BigInt lcm() const {
    BigInt l = 1;
    for (const auto& x : strings) l = boost::multiprecision::lcm(l, BigInt(x.size()));
    return l;
  }
};

// Smallest aligned position, found by scanning one full period.
inline std::optional<std::uint64_t> pca_solve(const PcaInstance& x,
                                              std::uint64_t budget = std::uint64_t{1} << 32) {
  const BigInt period = x.lcm();
  if (period > BigInt(budget)) throw BudgetExceeded(period.str(), std::to_string(budget), "PCA scan");
  const auto len = period.convert_to<std::uint64_t>();
  for (std::uint64_t i = 0; i < len; ++i) {
    bool aligned = true;
    for (const auto& s : x.strings) {
      if (!s[i]) {
        aligned = false;
        break;
      }
    }
    if (aligned) return i;
  }
  return std::nullopt;
}

// One bitstring per line; '#' comments and blank lines are skipped.
inline PcaInstance parse_pca(std::string_view text) {
  std::vector<PeriodString> xs;
  detail::for_each_directive(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() != 1) throw ParseError(line, "expected one bitstring per line");
    try {
      xs.emplace_back(tok[0]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line, e.what());
    }
  });
  if (xs.empty()) throw ParseError(1, "PCA file has no strings");
  return PcaInstance(std::move(xs));
}

inline std::string serialize(const PcaInstance& x) {
  std::string out;
  for (const auto& s : x.strings) out += s.str() + '\n';
  return out;
}

}  // namespace epcr
