#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace epcr {

// A nonempty binary string read cyclically: bit(t) = bits[t mod size].
// Every PeriodString holds at least one '1'.
class PeriodString {
public:
  explicit PeriodString(std::string_view bits) : bits_(bits) {
    if (bits_.empty()) throw std::invalid_argument("presence string is empty");
    bool any_one = false;
    for (char c : bits_) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("presence string '" + bits_ + "' has a symbol other than 0/1");
      any_one |= (c == '1');
    }
    if (!any_one) throw std::invalid_argument("presence string '" + bits_ + "' has no 1");
  }

  std::size_t size() const noexcept { return bits_.size(); }

  bool operator[](std::uint64_t t) const noexcept { return bits_[t % bits_.size()] == '1'; }

  const std::string& str() const noexcept { return bits_; }

  PeriodString repeated(std::size_t times) const {
    std::string out;
    out.reserve(bits_.size() * times);
    for (std::size_t i = 0; i < times; ++i) out += bits_;
    return PeriodString(out);
  }

  friend bool operator==(const PeriodString&, const PeriodString&) = default;

private:
  std::string bits_;
};

}  // namespace epcr
