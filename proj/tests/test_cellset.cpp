#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "sumdim/cellset.hpp"
#include "sumdim/group.hpp"
#include "sumdim/rng.hpp"

using namespace sumdim;
using core::CellSet;
using core::GridMode;

namespace {

// Oracle: quadratic enumeration of { a + b + e : e in {0,1}^d } (or the
// {-1,0}^d fattening for differences), independent of the grid kernels.
std::set<std::vector<std::int64_t>> brute_fatten(const CellSet& A, const CellSet& B, int sign,
                                                 int elo) {
  const int d = A.dim();
  std::set<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < A.count(); ++i)
    for (std::size_t j = 0; j < B.count(); ++j) {
      auto a = A.cell(i);
      auto b = B.cell(j);
      for (int e = 0; e < (1 << d); ++e) {
        std::vector<std::int64_t> c(d);
        for (int x = 0; x < d; ++x)
          c[x] = a[x] + sign * b[x] + ((e >> x) & 1) + elo;
        out.insert(std::move(c));
      }
    }
  return out;
}

std::set<std::vector<std::int64_t>> as_set(const CellSet& cs) {
  std::set<std::vector<std::int64_t>> out;
  for (std::size_t i = 0; i < cs.count(); ++i) {
    auto c = cs.cell(i);
    out.insert(std::vector<std::int64_t>(c.begin(), c.end()));
  }
  return out;
}

CellSet random_cells(int d, int b, int L, int n, std::uint64_t seed, std::int64_t span) {
  rng::Rng g(seed, 0);
  std::vector<std::int64_t> flat;
  for (int i = 0; i < n; ++i)
    for (int x = 0; x < d; ++x)
      flat.push_back(std::int64_t(g.below(std::uint64_t(span))));
  return CellSet::from_cells(d, b, L, std::move(flat));
}

}  // namespace

TEST_CASE("sumset and diffset match the quadratic oracle") {
  for (int d = 1; d <= 3; ++d) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto A = random_cells(d, 3, 4, 12, seed, 20);
      auto B = random_cells(d, 3, 4, 9, seed + 100, 20);
      CHECK(as_set(core::sumset_cells(A, B)) == brute_fatten(A, B, +1, 0));
      CHECK(as_set(core::diffset_cells(A, B)) == brute_fatten(A, B, -1, -1));
      CHECK(core::sumset_count(A, B) == brute_fatten(A, B, +1, 0).size());
      CHECK(core::diffset_count(A, B) == brute_fatten(A, B, -1, -1).size());
    }
  }
}

TEST_CASE("dense and sparse backends agree") {
  auto A = random_cells(2, 3, 5, 150, 7, 120);
  auto B = random_cells(2, 3, 5, 90, 8, 120);
  auto dense = core::sumset_cells(A, B, GridMode::Dense);
  auto sparse = core::sumset_cells(A, B, GridMode::Sparse);
  CHECK(dense == sparse);
  CHECK(core::sumset_count(A, B, GridMode::Dense) == core::sumset_count(A, B, GridMode::Sparse));
  CHECK(core::diffset_cells(A, B, GridMode::Dense) == core::diffset_cells(A, B, GridMode::Sparse));
}

TEST_CASE("sumset is commutative and translation equivariant") {
  auto A = random_cells(2, 2, 6, 25, 21, 40);
  auto B = random_cells(2, 2, 6, 30, 22, 40);
  CHECK(core::sumset_cells(A, B) == core::sumset_cells(B, A));

  const std::vector<std::int64_t> t{5, -3};
  auto shifted = core::sumset_cells(A.translated(t), B);
  CHECK(shifted == core::sumset_cells(A, B).translated(t));
}

TEST_CASE("sumset is monotone in both arguments") {
  auto A = random_cells(1, 3, 5, 30, 31, 60);
  auto B = random_cells(1, 3, 5, 20, 32, 60);
  // A restricted to a prefix of its cells
  std::vector<std::int64_t> sub(A.raw().begin(), A.raw().begin() + 12);
  auto A0 = CellSet::from_cells(1, 3, 5, std::move(sub));
  auto small = core::sumset_cells(A0, B);
  auto big = core::sumset_cells(A, B);
  CHECK(small.count() <= big.count());
  for (std::size_t i = 0; i < small.count(); ++i) CHECK(big.contains(small.cell(i)));
}

TEST_CASE("digit Cantor cells: exact counts and frozen measure") {
  const core::DigitCantorSpec spec(3, {0, 2});
  for (int L = 1; L <= 8; ++L) {
    auto digits = group::level_digit_set(spec, L);
    std::vector<std::int64_t> flat(digits.begin(), digits.end());
    auto cs = CellSet::from_cells(1, 3, L, std::move(flat));
    CHECK(cs.count() == (std::uint64_t(1) << L));
    if (L == 5) {
      // 32 cells of width 3^-5
      CHECK(cs.measure() == doctest::Approx(0.13168724279835392).epsilon(1e-14));
    }
  }
}

TEST_CASE("refine nests and scales counts") {
  auto A = random_cells(2, 3, 3, 10, 41, 15);
  auto R = core::refine(A, 2);
  CHECK(R.level() == A.level() + 2);
  CHECK(R.count() == A.count() * 81);  // 3^(2 extra * 2 dims)
  // every child cell sits inside its parent
  for (std::size_t i = 0; i < R.count(); ++i) {
    auto c = R.cell(i);
    std::vector<std::int64_t> parent{c[0] / 9, c[1] / 9};
    CHECK(A.contains(parent));
  }
}

TEST_CASE("csv round trip") {
  auto A = random_cells(2, 3, 4, 17, 51, 25);
  std::ostringstream os;
  A.write_csv(os);
  std::istringstream is(os.str());
  auto back = CellSet::read_csv(is);
  CHECK(back == A);
}

TEST_CASE("boundary count of a full square is its perimeter ring") {
  // 5x5 block: every cell on the outer ring (16 cells) misses a neighbor.
  std::vector<std::int64_t> flat;
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) {
      flat.push_back(x);
      flat.push_back(y);
    }
  auto A = CellSet::from_cells(2, 3, 2, std::move(flat));
  CHECK(core::boundary_count(A) == 16);
}
