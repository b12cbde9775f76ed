#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace sumdim::core {

// Self-similar set in [0,1): all points whose base-n expansion uses only the
// listed digits.  The digit list must be strictly increasing, contain 0 and
// stay inside [0, base).  dimension() is log |digits| / log base.
struct DigitCantorSpec {
  int base = 3;
  std::vector<int> digits;

  DigitCantorSpec() = default;
  DigitCantorSpec(int n, std::vector<int> S);

  double dimension() const {
    return std::log(double(digits.size())) / std::log(double(base));
  }
  int max_digit() const { return digits.empty() ? 0 : digits.back(); }
  std::string describe() const;
  bool operator==(const DigitCantorSpec&) const = default;
};

}  // namespace sumdim::core
