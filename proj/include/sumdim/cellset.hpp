#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sumdim::core {

inline constexpr int kMaxDim = 6;

// Backend selection for the grid kernels.  Auto picks the dense bit grid when
// the result bounding box holds at most 2^26 cells and falls back to a hashed
// row store otherwise; the two backends must produce identical sets.
enum class GridMode { Auto, Dense, Sparse };

// A finite set of grid cells at resolution base^-level in R^d.  Cell c covers
// the half-open box  prod_i [c_i * w, (c_i + 1) * w)  with w = base^-level.
// Cells are stored as a flat, lexicographically sorted, deduplicated array of
// signed 64-bit coordinates (stride = dim).
class CellSet {
 public:
  CellSet() = default;
  CellSet(int d, int b, int L);
  static CellSet from_cells(int d, int b, int L, std::vector<std::int64_t> flat);

  int dim() const { return d_; }
  int base() const { return b_; }
  int level() const { return L_; }
  std::size_t count() const { return d_ == 0 ? 0 : cells_.size() / std::size_t(d_); }
  bool empty() const { return cells_.empty(); }
  double cell_width() const;
  double measure() const;  // count * base^(-dim*level)

  std::span<const std::int64_t> cell(std::size_t i) const;
  const std::vector<std::int64_t>& raw() const { return cells_; }
  bool contains(std::span<const std::int64_t> c) const;
  CellSet translated(std::span<const std::int64_t> offset) const;

  bool operator==(const CellSet&) const = default;

  void write_csv(std::ostream& os) const;
  static CellSet read_csv(std::istream& is);

 private:
  int d_ = 0;
  int b_ = 2;
  int L_ = 0;
  std::vector<std::int64_t> cells_;
};

// Exact cell cover of the Minkowski sum of the covered regions:
// { a + b + e : a in A, b in B, e in {0,1}^d }.
CellSet sumset_cells(const CellSet& A, const CellSet& B, GridMode mode = GridMode::Auto);
// Cover of the difference of the covered regions:
// { a - b + e : a in A, b in B, e in {-1,0}^d }.
CellSet diffset_cells(const CellSet& A, const CellSet& B, GridMode mode = GridMode::Auto);

// Counting kernels.  Same grid pipeline as the *_cells ops but without
// materializing the (possibly huge) result set.
std::uint64_t sumset_count(const CellSet& A, const CellSet& B, GridMode mode = GridMode::Auto);
std::uint64_t diffset_count(const CellSet& A, const CellSet& B, GridMode mode = GridMode::Auto);

// Subdivide every cell into base^extra children per axis (level L -> L+extra).
CellSet refine(const CellSet& cs, int extra);

// Number of cells with at least one of the 2d axis neighbors absent.
std::uint64_t boundary_count(const CellSet& cs);

}  // namespace sumdim::core
