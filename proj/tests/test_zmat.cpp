#include <doctest.h>

#include <random>

#include "bizeta/errors.hpp"
#include "bizeta/zmat.hpp"

using namespace bizeta;

namespace {

ZMat make(std::vector<std::vector<long long>> rows) {
  std::vector<std::vector<mpz_class>> conv;
  for (auto& r : rows) {
    std::vector<mpz_class> row;
    for (long long v : r) row.push_back(to_mpz(v));
    conv.push_back(row);
  }
  return ZMat::from_rows(conv, conv.empty() ? 0 : int(conv[0].size()));
}

ZMat random_mat(std::mt19937_64& rng, int rows, int cols, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  ZMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(i, j) = d(rng);
  return m;
}

mpz_class det(const ZMat& m) {
  REQUIRE(m.rows() == m.cols());
  const int n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  mpz_class acc = 0;
  ZMat sub(n - 1, n - 1);
  for (int k = 0; k < n; ++k) {
    if (m.at(0, k) == 0) continue;
    for (int i = 1; i < n; ++i)
      for (int j = 0, c = 0; j < n; ++j)
        if (j != k) sub.at(i - 1, c++) = m.at(i, j);
    acc += (k % 2 ? -1 : 1) * m.at(0, k) * det(sub);
  }
  return acc;
}

}  // namespace

TEST_CASE("hnf canonical form") {
  const ZMat h = hnf(make({{4, 6}, {2, 2}}));
  CHECK(h == make({{2, 0}, {0, 2}}));

  // generators of the same module in another order give the same basis
  CHECK(hnf(make({{2, 2}, {4, 6}})) == h);
  CHECK(hnf(make({{2, 2}, {4, 6}, {6, 8}})) == h);

  // already canonical input is a fixed point
  CHECK(hnf(h) == h);

  // pivots positive, entries above reduced
  const ZMat g = hnf(make({{-3, 1, 2}, {0, -5, 1}}));
  CHECK(g.at(0, 0) > 0);
  CHECK(g.at(1, 1) > 0);
  CHECK(g.at(0, 1) >= 0);
  CHECK(g.at(0, 1) < g.at(1, 1));
}

TEST_CASE("hnf transform is unimodular and reproduces the input") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const ZMat m = random_mat(rng, 3 + int(rng() % 3), 3 + int(rng() % 3), 6);
    const HnfResult res = hnf_with_transform(m);
    CHECK(mat_mul(res.u, m) == res.h);
    CHECK(abs(det(res.u)) == 1);
  }
}

TEST_CASE("left kernel") {
  // rows (1,2,3) and (2,4,6) are proportional
  const ZMat k = left_kernel(make({{1, 2, 3}, {2, 4, 6}}));
  CHECK(k.rows() == 1);
  CHECK(k == make({{2, -1}}));

  CHECK(left_kernel(ZMat::identity(3)).rows() == 0);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ZMat m = random_mat(rng, 4, 3, 5);
    const ZMat k2 = left_kernel(m);
    const ZMat prod = mat_mul(k2, m);
    CHECK(prod.is_zero());
  }
}

TEST_CASE("snf diagonalizes with unimodular transforms") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const ZMat m = random_mat(rng, 2 + int(rng() % 3), 2 + int(rng() % 3), 8);
    const SnfResult res = snf(m);
    CHECK(mat_mul(mat_mul(res.u, m), res.v) == res.d);
    CHECK(mat_mul(res.v, res.vinv) == ZMat::identity(m.cols()));
    for (int i = 0; i < res.d.rows(); ++i)
      for (int j = 0; j < res.d.cols(); ++j)
        if (i != j) CHECK(res.d.at(i, j) == 0);
  }
}

TEST_CASE("solve_left finds integral solutions exactly") {
  const ZMat m = make({{2, 0, 1}, {0, 3, 1}});
  const auto sol = solve_left(m, {to_mpz(2), to_mpz(3), to_mpz(2)});
  REQUIRE(sol.has_value());
  CHECK(vec_mat_mul(*sol, m) == std::vector<mpz_class>{to_mpz(2), to_mpz(3), to_mpz(2)});

  // (1, 0, 0) needs coefficient 1/2 on the first row
  CHECK_FALSE(solve_left(m, {to_mpz(1), to_mpz(0), to_mpz(0)}).has_value());
}

TEST_CASE("completion of a saturated matrix extends to a basis") {
  const ZMat c = make({{1, 2, 3}});
  const ZMat w = completion_of_saturated(c);
  REQUIRE(w.rows() == 2);
  const ZMat full = vstack(c, w);
  CHECK(abs(det(full)) == 1);

  // a non-saturated input is rejected
  CHECK_THROWS_AS(completion_of_saturated(make({{2, 4, 6}})), MathError);
}
