#include "sumdim/cellset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sumdim/digit_cantor.hpp"

namespace sumdim::core {

DigitCantorSpec::DigitCantorSpec(int n, std::vector<int> S) : base(n), digits(std::move(S)) {
  if (base < 2) throw std::invalid_argument("digit set base must be >= 2");
  if (digits.empty()) throw std::invalid_argument("digit set must be nonempty");
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= base)
      throw std::invalid_argument("digit " + std::to_string(digits[i]) +
                                  " out of range for base " + std::to_string(base));
    if (i > 0 && digits[i] <= digits[i - 1])
      throw std::invalid_argument("digits must be strictly increasing");
  }
  if (digits[0] != 0) throw std::invalid_argument("digit set must contain 0");
}

std::string DigitCantorSpec::describe() const {
  std::string s = "cantor(" + std::to_string(base) + ",{";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(digits[i]);
  }
  return s + "})";
}

namespace {

constexpr std::uint64_t kDenseCellBudget = std::uint64_t(1) << 26;
constexpr std::uint64_t kDenseWordBudget = std::uint64_t(1) << 23;  // 64 MiB
constexpr std::uint64_t kMaterializeBudget = std::uint64_t(1) << 23;

void check_compatible(const CellSet& A, const CellSet& B) {
  if (A.dim() != B.dim() || A.base() != B.base() || A.level() != B.level())
    throw std::invalid_argument("cell sets must share dimension, base and level");
}

// Sort + dedup a flat coordinate array of stride d, lexicographically.
std::vector<std::int64_t> canonicalize(int d, std::vector<std::int64_t> flat) {
  if (d <= 0) throw std::invalid_argument("cell dimension must be >= 1");
  if (flat.size() % std::size_t(d) != 0)
    throw std::invalid_argument("flat cell array length not a multiple of dim");
  std::size_t n = flat.size() / std::size_t(d);
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  auto less = [&](std::uint32_t a, std::uint32_t b) {
    const std::int64_t* pa = flat.data() + std::size_t(a) * d;
    const std::int64_t* pb = flat.data() + std::size_t(b) * d;
    return std::lexicographical_compare(pa, pa + d, pb, pb + d);
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<std::int64_t> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t* p = flat.data() + std::size_t(idx[i]) * d;
    if (i > 0) {
      const std::int64_t* q = out.data() + out.size() - d;
      if (std::equal(p, p + d, q)) continue;
    }
    out.insert(out.end(), p, p + d);
  }
  return out;
}

struct Bounds {
  std::array<std::int64_t, kMaxDim> lo{}, hi{};
};

Bounds axis_bounds(const CellSet& cs) {
  Bounds b;
  int d = cs.dim();
  for (int i = 0; i < d; ++i) {
    b.lo[i] = INT64_MAX;
    b.hi[i] = INT64_MIN;
  }
  const auto& flat = cs.raw();
  for (std::size_t off = 0; off < flat.size(); off += std::size_t(d))
    for (int i = 0; i < d; ++i) {
      b.lo[i] = std::min(b.lo[i], flat[off + i]);
      b.hi[i] = std::max(b.hi[i], flat[off + i]);
    }
  return b;
}

// Cells grouped into runs sharing the leading d-1 coordinates; each run keeps
// a bit row over its own span of the last coordinate.
struct RowsView {
  struct Row {
    const std::int64_t* prefix;
    std::int64_t xlo;
    std::size_t off;     // word offset into bits
    std::size_t nwords;
  };
  std::vector<Row> rows;
  std::vector<std::uint64_t> bits;
  std::uint64_t total_words = 0;
};

std::uint64_t row_words_estimate(const CellSet& cs) {
  int d = cs.dim();
  const auto& flat = cs.raw();
  std::uint64_t total = 0;
  std::size_t n = cs.count();
  std::size_t run = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    bool boundary = i == n;
    if (!boundary && d > 1)
      boundary = !std::equal(flat.data() + (i - 1) * d, flat.data() + (i - 1) * d + (d - 1),
                             flat.data() + i * d);
    if (boundary) {
      std::int64_t xlo = flat[run * d + (d - 1)];
      std::int64_t xhi = flat[(i - 1) * d + (d - 1)];
      total += std::uint64_t(xhi - xlo) / 64 + 1;
      run = i;
    }
  }
  return total;
}

RowsView build_rows(const CellSet& cs) {
  RowsView rv;
  int d = cs.dim();
  const auto& flat = cs.raw();
  std::size_t n = cs.count();
  if (n == 0) return rv;
  rv.bits.reserve(row_words_estimate(cs));
  std::size_t run = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    bool boundary = i == n;
    if (!boundary && d > 1)
      boundary = !std::equal(flat.data() + (i - 1) * d, flat.data() + (i - 1) * d + (d - 1),
                             flat.data() + i * d);
    if (boundary) {
      std::int64_t xlo = flat[run * d + (d - 1)];
      std::int64_t xhi = flat[(i - 1) * d + (d - 1)];
      std::size_t nwords = std::size_t(xhi - xlo) / 64 + 1;
      std::size_t off = rv.bits.size();
      rv.bits.resize(off + nwords, 0);
      for (std::size_t j = run; j < i; ++j) {
        std::uint64_t bit = std::uint64_t(flat[j * d + (d - 1)] - xlo);
        rv.bits[off + bit / 64] |= std::uint64_t(1) << (bit % 64);
      }
      rv.rows.push_back({flat.data() + run * d, xlo, off, nwords});
      run = i;
    }
  }
  rv.total_words = rv.bits.size();
  return rv;
}

// Result accumulator: rows over the last axis, addressed by prefix, either as
// a flat dense block or a hashed row pool.
struct Grid {
  int d = 1;
  std::array<std::int64_t, kMaxDim> plo{}, phi{};
  std::array<std::uint64_t, kMaxDim> stride{};
  std::int64_t xlo = 0, xhi = 0;
  std::uint64_t nprefix = 1;
  std::size_t row_words = 0;
  bool dense = true;

  std::vector<std::uint64_t> words;
  std::unordered_map<std::uint64_t, std::uint32_t> index;  // sparse: key -> row id
  std::vector<std::uint64_t> keys;                         // sparse: key per row id

  std::uint64_t extent(int i) const { return std::uint64_t(phi[i] - plo[i] + 1); }

  std::uint64_t pack(const std::int64_t* prefix) const {
    std::uint64_t key = 0;
    for (int i = 0; i < d - 1; ++i) key += std::uint64_t(prefix[i] - plo[i]) * stride[i];
    return key;
  }

  std::uint64_t* dense_row(std::uint64_t key) { return words.data() + key * row_words; }

  std::uint64_t* row_create(std::uint64_t key) {
    if (dense) return dense_row(key);
    auto it = index.find(key);
    if (it != index.end()) return words.data() + std::size_t(it->second) * row_words;
    std::uint32_t id = std::uint32_t(keys.size());
    index.emplace(key, id);
    keys.push_back(key);
    words.resize(words.size() + row_words, 0);
    return words.data() + std::size_t(id) * row_words;
  }
};

Grid make_grid(int d, const Bounds& pb, std::int64_t xlo, std::int64_t xhi, GridMode mode) {
  Grid g;
  g.d = d;
  g.xlo = xlo;
  g.xhi = xhi;
  g.row_words = std::size_t(xhi - xlo) / 64 + 1;
  g.nprefix = 1;
  for (int i = 0; i < d - 1; ++i) {
    g.plo[i] = pb.lo[i];
    g.phi[i] = pb.hi[i];
    std::uint64_t ext = g.extent(i);
    if (g.nprefix > (std::uint64_t(1) << 62) / ext)
      throw std::runtime_error("grid prefix box exceeds addressing budget");
    g.nprefix *= ext;
  }
  for (int i = d - 2; i >= 0; --i)
    g.stride[i] = (i == d - 2) ? 1 : g.stride[i + 1] * g.extent(i + 1);
  std::uint64_t xext = std::uint64_t(xhi - xlo + 1);
  bool cells_ok = g.nprefix <= kDenseCellBudget / xext;
  bool words_ok = g.nprefix <= kDenseWordBudget / std::uint64_t(g.row_words);
  switch (mode) {
    case GridMode::Dense:
      if (!cells_ok) throw std::runtime_error("dense grid exceeds 2^26 cell budget");
      g.dense = true;
      break;
    case GridMode::Sparse:
      g.dense = false;
      break;
    case GridMode::Auto:
      g.dense = cells_ok && words_ok;
      break;
  }
  if (g.dense) g.words.assign(std::size_t(g.nprefix) * g.row_words, 0);
  return g;
}

void or_shifted(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords,
                std::uint64_t bit_offset) {
  std::size_t w0 = bit_offset / 64;
  unsigned sh = unsigned(bit_offset % 64);
  if (sh == 0) {
    for (std::size_t w = 0; w < nwords; ++w) dst[w0 + w] |= src[w];
    return;
  }
  for (std::size_t w = 0; w < nwords; ++w) {
    std::uint64_t v = src[w];
    dst[w0 + w] |= v << sh;
    std::uint64_t high = v >> (64 - sh);
    if (high) dst[w0 + w + 1] |= high;
  }
}

// In-row dilation along the last axis: up = also set bit+1, else bit-1.
void dilate_row(std::uint64_t* row, std::size_t nwords, bool up) {
  if (up) {
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < nwords; ++w) {
      std::uint64_t v = row[w];
      row[w] = v | (v << 1) | carry;
      carry = v >> 63;
    }
  } else {
    std::uint64_t carry = 0;
    for (std::size_t w = nwords; w-- > 0;) {
      std::uint64_t v = row[w];
      row[w] = v | (v >> 1) | (carry << 63);
      carry = v & 1;
    }
  }
}

void or_rows(std::uint64_t* dst, const std::uint64_t* src, std::size_t nwords) {
  for (std::size_t w = 0; w < nwords; ++w) dst[w] |= src[w];
}

// Dilate by one step along prefix axis `axis` (up: add {0,1}, else {-1,0}).
void dilate_prefix(Grid& g, int axis, bool up) {
  std::uint64_t stride = g.stride[axis];
  std::uint64_t ext = g.extent(axis);
  if (g.dense) {
    if (up) {
      for (std::uint64_t f = g.nprefix; f-- > 0;) {
        if ((f / stride) % ext == 0) continue;
        or_rows(g.dense_row(f), g.dense_row(f - stride), g.row_words);
      }
    } else {
      for (std::uint64_t f = 0; f < g.nprefix; ++f) {
        if ((f / stride) % ext == ext - 1) continue;
        or_rows(g.dense_row(f), g.dense_row(f + stride), g.row_words);
      }
    }
    return;
  }
  // Sparse: process rows ordered so a row's outgoing contribution happens
  // before anything is merged into it (no double stepping), and copy through
  // a scratch buffer because row creation may reallocate the pool.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> snapshot;
  snapshot.reserve(g.keys.size());
  for (std::uint32_t id = 0; id < g.keys.size(); ++id) snapshot.emplace_back(g.keys[id], id);
  auto coord = [&](std::uint64_t key) { return (key / stride) % ext; };
  std::sort(snapshot.begin(), snapshot.end(), [&](const auto& a, const auto& b) {
    return up ? coord(a.first) > coord(b.first) : coord(a.first) < coord(b.first);
  });
  std::vector<std::uint64_t> scratch(g.row_words);
  for (const auto& [key, id] : snapshot) {
    std::uint64_t c = coord(key);
    if (up ? c == ext - 1 : c == 0) continue;  // cannot happen with expanded box
    std::uint64_t target = up ? key + stride : key - stride;
    std::copy_n(g.words.data() + std::size_t(id) * g.row_words, g.row_words, scratch.begin());
    or_rows(g.row_create(target), scratch.data(), g.row_words);
  }
}

// Shared sum/difference pipeline.  difference=false: {a+b+e, e in {0,1}^d};
// difference=true: {a-b+e, e in {-1,0}^d}.  Exact covers of A+B resp. A-B.
Grid minkowski_grid(const CellSet& A, const CellSet& B, bool difference, GridMode mode) {
  check_compatible(A, B);
  int d = A.dim();
  const CellSet* X = &A;  // row side
  const CellSet* Y = &B;  // enumerated side
  if (!difference) {
    std::uint64_t cost_ab = std::uint64_t(B.count()) * row_words_estimate(A);
    std::uint64_t cost_ba = std::uint64_t(A.count()) * row_words_estimate(B);
    if (cost_ba < cost_ab) std::swap(X, Y);
  }
  Bounds bx = axis_bounds(*X), by = axis_bounds(*Y);
  Bounds pb;
  std::int64_t xlo, xhi;
  if (!difference) {
    for (int i = 0; i < d - 1; ++i) {
      pb.lo[i] = bx.lo[i] + by.lo[i];
      pb.hi[i] = bx.hi[i] + by.hi[i] + 1;
    }
    xlo = bx.lo[d - 1] + by.lo[d - 1];
    xhi = bx.hi[d - 1] + by.hi[d - 1] + 1;
  } else {
    for (int i = 0; i < d - 1; ++i) {
      pb.lo[i] = bx.lo[i] - by.hi[i] - 1;
      pb.hi[i] = bx.hi[i] - by.lo[i];
    }
    xlo = bx.lo[d - 1] - by.hi[d - 1] - 1;
    xhi = bx.hi[d - 1] - by.lo[d - 1];
  }
  Grid g = make_grid(d, pb, xlo, xhi, mode);

  RowsView rows = build_rows(*X);
  const auto& yflat = Y->raw();
  std::array<std::int64_t, kMaxDim> tp{};
  for (std::size_t off = 0; off < yflat.size(); off += std::size_t(d)) {
    std::int64_t yx = yflat[off + std::size_t(d - 1)];
    for (const auto& row : rows.rows) {
      std::uint64_t bit_offset;
      if (!difference) {
        for (int i = 0; i < d - 1; ++i) tp[i] = row.prefix[i] + yflat[off + std::size_t(i)];
        bit_offset = std::uint64_t(row.xlo + yx - g.xlo);
      } else {
        for (int i = 0; i < d - 1; ++i) tp[i] = row.prefix[i] - yflat[off + std::size_t(i)];
        bit_offset = std::uint64_t(row.xlo - yx - g.xlo);
      }
      or_shifted(g.row_create(g.pack(tp.data())), rows.bits.data() + row.off, row.nwords,
                 bit_offset);
    }
  }

  bool up = !difference;
  std::size_t nrows = g.dense ? std::size_t(g.nprefix) : g.keys.size();
  for (std::size_t r = 0; r < nrows; ++r) dilate_row(g.words.data() + r * g.row_words, g.row_words, up);
  for (int axis = 0; axis < d - 1; ++axis) dilate_prefix(g, axis, up);
  return g;
}

std::uint64_t grid_count(const Grid& g) {
  std::uint64_t n = 0;
  for (std::uint64_t w : g.words) n += std::uint64_t(std::popcount(w));
  return n;
}

std::vector<std::int64_t> grid_extract(const Grid& g) {
  std::uint64_t n = grid_count(g);
  if (n > kMaterializeBudget)
    throw std::runtime_error("result has " + std::to_string(n) +
                             " cells, beyond the materialization budget; use the counting kernel");
  int d = g.d;
  std::vector<std::int64_t> flat;
  flat.reserve(std::size_t(n) * d);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> order;  // (key, row id)
  std::size_t nrows = g.dense ? std::size_t(g.nprefix) : g.keys.size();
  order.reserve(nrows);
  if (g.dense)
    for (std::uint64_t f = 0; f < g.nprefix; ++f) order.emplace_back(f, std::uint32_t(f));
  else {
    for (std::uint32_t id = 0; id < g.keys.size(); ++id) order.emplace_back(g.keys[id], id);
    std::sort(order.begin(), order.end());
  }
  std::array<std::int64_t, kMaxDim> cell{};
  for (const auto& [key, id] : order) {
    std::uint64_t rem = key;
    for (int i = 0; i < d - 1; ++i) {
      cell[i] = g.plo[i] + std::int64_t(rem / g.stride[i]);
      rem %= g.stride[i];
    }
    const std::uint64_t* row = g.words.data() + std::size_t(id) * g.row_words;
    for (std::size_t w = 0; w < g.row_words; ++w) {
      std::uint64_t v = row[w];
      while (v) {
        unsigned bit = unsigned(std::countr_zero(v));
        v &= v - 1;
        cell[d - 1] = g.xlo + std::int64_t(w * 64 + bit);
        flat.insert(flat.end(), cell.begin(), cell.begin() + d);
      }
    }
  }
  return flat;
}

}  // namespace

CellSet::CellSet(int d, int b, int L) : d_(d), b_(b), L_(L) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("cell dimension must be in [1,6]");
  if (b < 2) throw std::invalid_argument("base must be >= 2");
  if (L < 0) throw std::invalid_argument("level must be >= 0");
}

CellSet CellSet::from_cells(int d, int b, int L, std::vector<std::int64_t> flat) {
  CellSet cs(d, b, L);
  cs.cells_ = canonicalize(d, std::move(flat));
  return cs;
}

double CellSet::cell_width() const { return std::pow(double(b_), -double(L_)); }

double CellSet::measure() const {
  return double(count()) * std::pow(double(b_), -double(d_) * double(L_));
}

std::span<const std::int64_t> CellSet::cell(std::size_t i) const {
  return {cells_.data() + i * std::size_t(d_), std::size_t(d_)};
}

bool CellSet::contains(std::span<const std::int64_t> c) const {
  if (int(c.size()) != d_) throw std::invalid_argument("cell has wrong dimension");
  std::size_t lo = 0, hi = count();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    const std::int64_t* p = cells_.data() + mid * std::size_t(d_);
    if (std::lexicographical_compare(p, p + d_, c.data(), c.data() + d_))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == count()) return false;
  const std::int64_t* p = cells_.data() + lo * std::size_t(d_);
  return std::equal(p, p + d_, c.data());
}

CellSet CellSet::translated(std::span<const std::int64_t> offset) const {
  if (int(offset.size()) != d_) throw std::invalid_argument("offset has wrong dimension");
  CellSet out(d_, b_, L_);
  out.cells_ = cells_;
  for (std::size_t off = 0; off < out.cells_.size(); off += std::size_t(d_))
    for (int i = 0; i < d_; ++i) out.cells_[off + i] += offset[i];
  return out;
}

CellSet sumset_cells(const CellSet& A, const CellSet& B, GridMode mode) {
  check_compatible(A, B);
  if (A.empty() || B.empty()) return CellSet(A.dim(), A.base(), A.level());
  Grid g = minkowski_grid(A, B, false, mode);
  CellSet out(A.dim(), A.base(), A.level());
  out = CellSet::from_cells(A.dim(), A.base(), A.level(), grid_extract(g));
  return out;
}

CellSet diffset_cells(const CellSet& A, const CellSet& B, GridMode mode) {
  check_compatible(A, B);
  if (A.empty() || B.empty()) return CellSet(A.dim(), A.base(), A.level());
  Grid g = minkowski_grid(A, B, true, mode);
  return CellSet::from_cells(A.dim(), A.base(), A.level(), grid_extract(g));
}

std::uint64_t sumset_count(const CellSet& A, const CellSet& B, GridMode mode) {
  check_compatible(A, B);
  if (A.empty() || B.empty()) return 0;
  return grid_count(minkowski_grid(A, B, false, mode));
}

std::uint64_t diffset_count(const CellSet& A, const CellSet& B, GridMode mode) {
  check_compatible(A, B);
  if (A.empty() || B.empty()) return 0;
  return grid_count(minkowski_grid(A, B, true, mode));
}

CellSet refine(const CellSet& cs, int extra) {
  if (extra < 0) throw std::invalid_argument("refine step must be >= 0");
  if (extra == 0) return cs;
  int d = cs.dim();
  std::uint64_t m = 1;
  for (int i = 0; i < extra; ++i) m *= std::uint64_t(cs.base());
  std::uint64_t children = 1;
  for (int i = 0; i < d; ++i) children *= m;
  if (cs.count() > kMaterializeBudget / std::max<std::uint64_t>(children, 1))
    throw std::runtime_error("refine result exceeds materialization budget");
  CellSet out(d, cs.base(), cs.level() + extra);
  std::vector<std::int64_t> flat;
  flat.reserve(cs.count() * children * d);
  std::array<std::uint64_t, kMaxDim> t{};
  for (std::size_t i = 0; i < cs.count(); ++i) {
    auto parent = cs.cell(i);
    t.fill(0);
    for (;;) {
      for (int j = 0; j < d; ++j) flat.push_back(parent[j] * std::int64_t(m) + std::int64_t(t[j]));
      int axis = d - 1;
      while (axis >= 0 && ++t[axis] == m) t[axis--] = 0;
      if (axis < 0) break;
    }
  }
  // children of sorted parents are already sorted and distinct
  return CellSet::from_cells(d, cs.base(), cs.level() + extra, std::move(flat));
}

std::uint64_t boundary_count(const CellSet& cs) {
  int d = cs.dim();
  std::uint64_t n = 0;
  std::vector<std::int64_t> nb(std::size_t(d), 0);
  for (std::size_t i = 0; i < cs.count(); ++i) {
    auto c = cs.cell(i);
    std::copy(c.begin(), c.end(), nb.begin());
    bool boundary = false;
    for (int axis = 0; axis < d && !boundary; ++axis) {
      for (int step : {-1, 1}) {
        nb[std::size_t(axis)] = c[std::size_t(axis)] + step;
        if (!cs.contains(nb)) {
          boundary = true;
          break;
        }
      }
      nb[std::size_t(axis)] = c[std::size_t(axis)];
    }
    if (boundary) ++n;
  }
  return n;
}

void CellSet::write_csv(std::ostream& os) const {
  os << d_ << ',' << b_ << ',' << L_ << '\n';
  for (std::size_t i = 0; i < count(); ++i) {
    auto c = cell(i);
    for (int j = 0; j < d_; ++j) {
      if (j) os << ',';
      os << c[std::size_t(j)];
    }
    os << '\n';
  }
}

CellSet CellSet::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("cell csv: missing header");
  auto parse_row = [](const std::string& s) {
    std::vector<std::int64_t> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      std::size_t pos = 0;
      vals.push_back(std::stoll(tok, &pos));
      if (pos != tok.size()) throw std::runtime_error("cell csv: bad integer '" + tok + "'");
    }
    return vals;
  };
  auto header = parse_row(line);
  if (header.size() != 3) throw std::runtime_error("cell csv: header must be d,b,L");
  int d = int(header[0]), b = int(header[1]), L = int(header[2]);
  std::vector<std::int64_t> flat;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto row = parse_row(line);
    if (int(row.size()) != d) throw std::runtime_error("cell csv: row arity mismatch");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return CellSet::from_cells(d, b, L, std::move(flat));
}

}  // namespace sumdim::core
