#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sumdim/digit_cantor.hpp"

namespace sumdim::group {

// Subset of Z_m as a bitmask, m up to 2^30.
class GroupSubset {
 public:
  GroupSubset() = default;
  explicit GroupSubset(std::uint32_t m);
  static GroupSubset from_members(std::uint32_t m, std::span<const std::uint32_t> members);

  std::uint32_t modulus() const { return m_; }
  void set(std::uint32_t r);
  bool test(std::uint32_t r) const;
  std::uint64_t popcount() const;
  bool none() const { return popcount() == 0; }
  bool full() const { return popcount() == m_; }
  std::vector<std::uint32_t> members() const;
  std::string mask_hex() const;

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  bool operator==(const GroupSubset&) const = default;

 private:
  std::uint32_t m_ = 0;
  std::vector<std::uint64_t> words_;
};

// E + S in Z_m: union of cyclic shifts of E by each s.
GroupSubset cyclic_sumset(const GroupSubset& E, std::span<const std::uint32_t> S);

// log(|E+S|/m) / log(|E|/m); nullopt when E+S covers all of Z_m (the growth
// inequality is vacuous there).  E must be nonempty and proper.
std::optional<double> ratio(const GroupSubset& E, std::span<const std::uint32_t> S);

struct ExhaustiveMode {
  bool unit_dedup = false;  // also canonicalize under multiplication by units
};
struct RandomMode {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
};
using SearchMode = std::variant<ExhaustiveMode, RandomMode>;

// Certificate for the optimal growth exponent over nonempty proper subsets.
// unconstrained means every E had a full sumset (gamma_star = 0, no witness).
struct GammaCertificate {
  std::uint32_t m = 0;
  std::vector<std::uint32_t> S;
  double gamma_star = 0.0;
  GroupSubset witness;
  bool exhaustive = false;
  bool unconstrained = false;
};

GammaCertificate best_gamma(std::uint32_t m, std::span<const std::uint32_t> S,
                            const SearchMode& mode = ExhaustiveMode{});

// Digit strings of length L as residues mod base^L: { sum s_j base^(L-j) }.
std::vector<std::uint32_t> level_digit_set(const core::DigitCantorSpec& spec, int L);
std::uint64_t pow_u64(std::uint64_t b, int e);

struct DigitSetSearchEntry {
  std::vector<std::uint32_t> S;
  double gamma_star = 0.0;
  bool flagged = false;  // gamma_star <= target (within 1e-12)
};

// All digit sets S with 0 in S and |S| = size inside Z_n, each scored by its
// exhaustive growth exponent and flagged when it meets the target.
std::vector<DigitSetSearchEntry> search_digit_sets(int n, int size, double target_gamma);

struct MassGrowthViolation {
  std::string mask_hex;
  std::uint64_t e_count = 0;
  std::uint64_t sum_count = 0;
  double lhs_log = 0.0;  // log(|E+S|/m)
  double rhs_log = 0.0;  // gamma * log(|E|/m)
};

struct MassGrowthCheck {
  core::DigitCantorSpec spec;
  int level = 0;
  double gamma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<MassGrowthViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Random subsets E of Z_{n^L} tested against |E+S_L|/m >= (|E|/m)^gamma,
// where S_L is the level-L digit set.  Inclusion probability per trial is
// drawn from {1/8, 1/4, 1/2}.  Comparison runs in log domain with 1e-9 slack
// to absorb rounding at exact-equality witnesses.
MassGrowthCheck random_mass_growth_check(const core::DigitCantorSpec& spec, int L, double gamma,
                                         std::uint64_t trials, std::uint64_t seed);

}  // namespace sumdim::group
