#include "sumdim/group.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sumdim/parallel.hpp"
#include "sumdim/rng.hpp"

namespace sumdim::group {

namespace {

constexpr double kTie = 1e-12;
constexpr int kExhaustiveBits = 27;

std::size_t words_for(std::uint32_t m) { return (std::size_t(m) + 63) / 64; }

void trim_top(std::span<std::uint64_t> words, std::uint32_t m) {
  if (m % 64) words[words.size() - 1] &= (std::uint64_t(1) << (m % 64)) - 1;
}

// dst |= src rotated left by s within m bits (dst may hold prior content).
void or_rotl(std::span<const std::uint64_t> src, std::span<std::uint64_t> dst,
             std::span<std::uint64_t> scratch, std::uint32_t m, std::uint32_t s) {
  std::size_t nw = src.size();
  std::fill(scratch.begin(), scratch.end(), 0);
  std::size_t wo = s / 64;
  unsigned bs = unsigned(s % 64);
  for (std::size_t w = 0; w < nw; ++w) {
    std::uint64_t v = src[w];
    scratch[w + wo] |= bs ? (v << bs) : v;
    if (bs) scratch[w + wo + 1] |= v >> (64 - bs);
  }
  // fold bits at index >= m back to the bottom
  std::size_t um = m / 64;
  unsigned sm = unsigned(m % 64);
  for (std::size_t k = um; k < scratch.size(); ++k) {
    std::uint64_t v = sm ? ((scratch[k] >> sm) |
                            (k + 1 < scratch.size() ? scratch[k + 1] << (64 - sm) : 0))
                         : scratch[k];
    if (v) dst[k - um] |= v;
  }
  for (std::size_t w = 0; w < nw; ++w) dst[w] |= scratch[w];
  trim_top(dst, m);
}

std::vector<std::uint32_t> normalize_shifts(std::uint32_t m, std::span<const std::uint32_t> S) {
  if (S.empty()) throw std::invalid_argument("shift set S must be nonempty");
  std::vector<std::uint32_t> out;
  out.reserve(S.size());
  for (std::uint32_t s : S) out.push_back(s % m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// --- single-word kernel for the exhaustive search (m <= 27) ---

inline std::uint64_t rotl_small(std::uint64_t x, std::uint32_t s, std::uint32_t m,
                                std::uint64_t full) {
  return ((x << s) | (x >> (m - s))) & full;
}

inline bool is_min_rotation(std::uint64_t x, std::uint32_t m, std::uint64_t full) {
  for (std::uint32_t r = 1; r < m; ++r)
    if (rotl_small(x, r, m, full) < x) return false;
  return true;
}

std::uint64_t unit_rotation_canonical(std::uint64_t x, std::uint32_t m, std::uint64_t full,
                                      std::span<const std::uint32_t> units) {
  std::uint64_t best = ~std::uint64_t(0);
  for (std::uint32_t u : units) {
    std::uint64_t img = 0;
    for (std::uint32_t i = 0; i < m; ++i)
      if (x >> i & 1) img |= std::uint64_t(1) << (std::uint64_t(u) * i % m);
    for (std::uint32_t r = 0; r < m; ++r) best = std::min(best, rotl_small(img, r, m, full));
  }
  return best;
}

struct Best {
  double r = 0.0;
  std::uint64_t mask = 0;
  bool any = false;
};

void consider(Best& b, double r, std::uint64_t mask) {
  if (!b.any) {
    b.r = r;
    b.mask = mask;
    b.any = true;
    return;
  }
  if (r > b.r + kTie) {
    b.r = r;
    b.mask = mask;
  } else if (r >= b.r - kTie) {
    if (r > b.r) b.r = r;
    if (mask < b.mask) b.mask = mask;
  }
}

GammaCertificate best_gamma_exhaustive(std::uint32_t m, std::span<const std::uint32_t> S,
                                       const ExhaustiveMode& opt) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  if (m > kExhaustiveBits)
    throw std::invalid_argument("exhaustive search requires m <= 27 (2^m enumeration budget)");
  auto shifts = normalize_shifts(m, S);
  std::uint64_t full = (std::uint64_t(1) << m) - 1;

  std::vector<double> lnp(m + 1, 0.0);  // lnp[p] = log(p/m)
  for (std::uint32_t p = 1; p <= m; ++p) lnp[p] = std::log(double(p) / double(m));

  std::vector<std::uint32_t> units;
  if (opt.unit_dedup)
    for (std::uint32_t u = 1; u < m; ++u)
      if (std::gcd(u, m) == 1) units.push_back(u);

  // Only odd masks: the minimal rotation of any nonzero class has bit 0 set.
  std::uint64_t n_odd = std::uint64_t(1) << (m - 1);
  int nchunks = m >= 16 ? 256 : 1;
  std::vector<Best> partial(std::size_t(nchunks), Best{});
  util::parallel_chunks(nchunks, [&](int c) {
    std::uint64_t begin = n_odd * std::uint64_t(c) / std::uint64_t(nchunks);
    std::uint64_t end = n_odd * std::uint64_t(c + 1) / std::uint64_t(nchunks);
    Best local;
    for (std::uint64_t k = begin; k < end; ++k) {
      std::uint64_t mask = 2 * k + 1;
      if (mask == full) continue;
      if (!is_min_rotation(mask, m, full)) continue;
      if (!units.empty() && unit_rotation_canonical(mask, m, full, units) != mask) continue;
      std::uint64_t sum = 0;
      for (std::uint32_t s : shifts) sum |= rotl_small(mask, s, m, full);
      std::uint32_t sc = std::uint32_t(std::popcount(sum));
      if (sc == m) continue;  // vacuous: sumset is everything
      std::uint32_t ec = std::uint32_t(std::popcount(mask));
      consider(local, lnp[sc] / lnp[ec], mask);
    }
    partial[std::size_t(c)] = local;
  });

  Best best;
  for (const Best& p : partial)
    if (p.any) consider(best, p.r, p.mask);

  GammaCertificate cert;
  cert.m = m;
  cert.S = shifts;
  cert.exhaustive = true;
  if (!best.any) {
    cert.unconstrained = true;
    cert.gamma_star = 0.0;
    cert.witness = GroupSubset(m);
    return cert;
  }
  cert.gamma_star = best.r;
  GroupSubset w(m);
  for (std::uint32_t i = 0; i < m; ++i)
    if (best.mask >> i & 1) w.set(i);
  cert.witness = w;
  return cert;
}

GroupSubset random_subset(std::uint32_t m, rng::Rng& rng) {
  GroupSubset E(m);
  auto words = E.words();
  for (;;) {
    int density_words = 1 + int(rng.below(3));  // p = 1/2, 1/4, 1/8
    for (auto& w : words) {
      std::uint64_t v = rng.next_u64();
      for (int j = 1; j < density_words; ++j) v &= rng.next_u64();
      w = v;
    }
    trim_top(words, m);
    if (!E.none()) return E;
  }
}

GammaCertificate best_gamma_random(std::uint32_t m, std::span<const std::uint32_t> S,
                                   const RandomMode& opt) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  auto shifts = normalize_shifts(m, S);
  rng::Rng rng(opt.seed);
  Best best;
  GroupSubset witness(m);
  std::size_t nw = words_for(m);
  std::vector<std::uint64_t> sum(nw), scratch(2 * nw + 2);
  for (std::uint64_t t = 0; t < opt.trials; ++t) {
    GroupSubset E = random_subset(m, rng);
    if (E.full()) continue;
    std::fill(sum.begin(), sum.end(), 0);
    for (std::uint32_t s : shifts) or_rotl(E.words(), sum, scratch, m, s);
    std::uint64_t sc = 0;
    for (std::uint64_t w : sum) sc += std::uint64_t(std::popcount(w));
    if (sc == m) continue;
    double r = std::log(double(sc) / m) / std::log(double(E.popcount()) / m);
    bool take = !best.any || r > best.r + kTie;
    consider(best, r, t);
    if (take) witness = E;
  }
  GammaCertificate cert;
  cert.m = m;
  cert.S = shifts;
  cert.exhaustive = false;
  if (!best.any) {
    cert.unconstrained = true;
    cert.witness = GroupSubset(m);
    return cert;
  }
  cert.gamma_star = best.r;
  cert.witness = witness;
  return cert;
}

}  // namespace

GroupSubset::GroupSubset(std::uint32_t m) : m_(m), words_(words_for(m), 0) {
  if (m < 1 || m > (std::uint32_t(1) << 30))
    throw std::invalid_argument("modulus must be in [1, 2^30]");
}

GroupSubset GroupSubset::from_members(std::uint32_t m, std::span<const std::uint32_t> members) {
  GroupSubset g(m);
  for (std::uint32_t r : members) g.set(r % m);
  return g;
}

void GroupSubset::set(std::uint32_t r) {
  if (r >= m_) throw std::invalid_argument("residue out of range");
  words_[r / 64] |= std::uint64_t(1) << (r % 64);
}

bool GroupSubset::test(std::uint32_t r) const {
  return r < m_ && (words_[r / 64] >> (r % 64) & 1);
}

std::uint64_t GroupSubset::popcount() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += std::uint64_t(std::popcount(w));
  return n;
}

std::vector<std::uint32_t> GroupSubset::members() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t r = 0; r < m_; ++r)
    if (test(r)) out.push_back(r);
  return out;
}

std::string GroupSubset::mask_hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  bool leading = true;
  for (std::size_t w = words_.size(); w-- > 0;)
    for (int nib = 15; nib >= 0; --nib) {
      unsigned v = unsigned(words_[w] >> (4 * nib)) & 0xf;
      if (leading && v == 0 && !(w == 0 && nib == 0)) continue;
      leading = false;
      s += digits[v];
    }
  return "0x" + s;
}

GroupSubset cyclic_sumset(const GroupSubset& E, std::span<const std::uint32_t> S) {
  std::uint32_t m = E.modulus();
  auto shifts = normalize_shifts(m, S);
  GroupSubset out(m);
  std::vector<std::uint64_t> scratch(2 * words_for(m) + 2);
  for (std::uint32_t s : shifts) or_rotl(E.words(), out.words(), scratch, m, s);
  return out;
}

std::optional<double> ratio(const GroupSubset& E, std::span<const std::uint32_t> S) {
  std::uint32_t m = E.modulus();
  std::uint64_t ec = E.popcount();
  if (ec == 0) throw std::invalid_argument("ratio undefined for empty E");
  if (ec == m) throw std::invalid_argument("ratio undefined for full E");
  GroupSubset sum = cyclic_sumset(E, S);
  std::uint64_t sc = sum.popcount();
  if (sc == m) return std::nullopt;
  return std::log(double(sc) / m) / std::log(double(ec) / m);
}

GammaCertificate best_gamma(std::uint32_t m, std::span<const std::uint32_t> S,
                            const SearchMode& mode) {
  if (auto* ex = std::get_if<ExhaustiveMode>(&mode)) return best_gamma_exhaustive(m, S, *ex);
  return best_gamma_random(m, S, std::get<RandomMode>(mode));
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
  std::uint64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (b != 0 && v > UINT64_MAX / b) throw std::overflow_error("integer power overflows 64 bits");
    v *= b;
  }
  return v;
}

std::vector<std::uint32_t> level_digit_set(const core::DigitCantorSpec& spec, int L) {
  if (L < 1) throw std::invalid_argument("level must be >= 1");
  std::uint64_t m = pow_u64(std::uint64_t(spec.base), L);
  if (m > (std::uint64_t(1) << 27))
    throw std::invalid_argument("base^level exceeds the 2^27 digit-set budget");
  std::vector<std::uint32_t> vals{0};
  for (int j = 0; j < L; ++j) {
    std::vector<std::uint32_t> next;
    next.reserve(vals.size() * spec.digits.size());
    for (std::uint32_t v : vals)
      for (int s : spec.digits) next.push_back(v * std::uint32_t(spec.base) + std::uint32_t(s));
    vals = std::move(next);
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::vector<DigitSetSearchEntry> search_digit_sets(int n, int size, double target_gamma) {
  if (n < 2 || n > kExhaustiveBits)
    throw std::invalid_argument("digit-set search requires 2 <= n <= 27");
  if (size < 1 || size > n) throw std::invalid_argument("digit-set size must be in [1, n]");
  std::vector<DigitSetSearchEntry> out;
  // fix 0 in S, choose the remaining size-1 digits from 1..n-1
  std::vector<std::uint32_t> pick(std::size_t(size) - 1);
  std::iota(pick.begin(), pick.end(), 1u);
  auto emit = [&] {
    std::vector<std::uint32_t> S{0};
    S.insert(S.end(), pick.begin(), pick.end());
    auto cert = best_gamma(std::uint32_t(n), S, ExhaustiveMode{});
    DigitSetSearchEntry e;
    e.S = std::move(S);
    e.gamma_star = cert.gamma_star;
    e.flagged = !cert.unconstrained && cert.gamma_star <= target_gamma + kTie;
    out.push_back(std::move(e));
  };
  if (pick.empty()) {
    emit();
    return out;
  }
  for (;;) {
    emit();
    int i = int(pick.size()) - 1;
    while (i >= 0 && pick[std::size_t(i)] == std::uint32_t(n - int(pick.size()) + i)) --i;
    if (i < 0) break;
    ++pick[std::size_t(i)];
    for (std::size_t j = std::size_t(i) + 1; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

MassGrowthCheck random_mass_growth_check(const core::DigitCantorSpec& spec, int L, double gamma,
                                         std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t m64 = pow_u64(std::uint64_t(spec.base), L);
  if (m64 > (std::uint64_t(1) << 24))
    throw std::invalid_argument("base^level exceeds the 2^24 modulus budget");
  std::uint32_t m = std::uint32_t(m64);
  auto S_L = level_digit_set(spec, L);

  MassGrowthCheck check;
  check.spec = spec;
  check.level = L;
  check.gamma = gamma;
  check.trials = trials;
  check.seed = seed;

  rng::Rng rng(seed);
  std::size_t nw = words_for(m);
  std::vector<std::uint64_t> sum(nw), scratch(2 * nw + 2);
  for (std::uint64_t t = 0; t < trials; ++t) {
    GroupSubset E = random_subset(m, rng);
    std::fill(sum.begin(), sum.end(), 0);
    for (std::uint32_t s : S_L) or_rotl(E.words(), sum, scratch, m, s);
    std::uint64_t sc = 0;
    for (std::uint64_t w : sum) sc += std::uint64_t(std::popcount(w));
    std::uint64_t ec = E.popcount();
    double lhs_log = std::log(double(sc) / m);
    double rhs_log = gamma * std::log(double(ec) / m);
    if (lhs_log < rhs_log - 1e-9) {
      MassGrowthViolation v;
      v.mask_hex = E.mask_hex();
      v.e_count = ec;
      v.sum_count = sc;
      v.lhs_log = lhs_log;
      v.rhs_log = rhs_log;
      check.violations.push_back(std::move(v));
    }
  }
  return check;
}

}  // namespace sumdim::group
