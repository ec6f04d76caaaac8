#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "bizeta/errors.hpp"
#include "bizeta/localring.hpp"
#include "test_oracles.hpp"

using namespace bizeta;

namespace {

RMat make(int rows, int cols, std::vector<long long> entries, const ResidueParams& rp) {
  RMat m(rows, cols);
  for (size_t i = 0; i < entries.size(); ++i) m.a[i] = rp.reduce(entries[i]);
  return m;
}

RMat random_mat(std::mt19937_64& rng, int rows, int cols, const ResidueParams& rp) {
  RMat m(rows, cols);
  for (auto& x : m.a) x = static_cast<long long>(rng() % static_cast<unsigned long long>(rp.pn));
  return m;
}

// random invertible square matrix mod p^N (unit determinant mod p)
RMat random_invertible(std::mt19937_64& rng, int n, const ResidueParams& rp) {
  for (;;) {
    RMat u = random_mat(rng, n, n, rp);
    // determinant mod p by Gaussian elimination over F_p
    std::vector<std::vector<long long>> w(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i][j] = u.at(i, j) % rp.p;
    long long det = 1;
    for (int c = 0; c < n && det != 0; ++c) {
      int piv = -1;
      for (int i = c; i < n; ++i)
        if (w[i][c] % rp.p != 0) {
          piv = i;
          break;
        }
      if (piv < 0) {
        det = 0;
        break;
      }
      std::swap(w[c], w[piv]);
      det = det * w[c][c] % rp.p;
      const long long inv = [&] {
        long long a = w[c][c] % rp.p, r = 1;
        for (long long e = rp.p - 2; e > 0; e >>= 1, a = a * a % rp.p)
          if (e & 1) r = r * a % rp.p;
        return r;
      }();
      for (int i = c + 1; i < n; ++i) {
        const long long f = w[i][c] * inv % rp.p;
        for (int j = c; j < n; ++j) w[i][j] = ((w[i][j] - f * w[c][j]) % rp.p + rp.p) % rp.p;
      }
    }
    if (det % rp.p != 0) return u;
  }
}

RMat mul(const RMat& a, const RMat& b, const ResidueParams& rp) {
  RMat c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < b.cols; ++j)
        c.at(i, j) = rp.reduce(c.at(i, j) + a.at(i, k) * b.at(k, j) % rp.pn);
    }
  return c;
}

}  // namespace

TEST_CASE("residue params validate inputs") {
  CHECK_THROWS_AS(ResidueParams(4, 1), ValidationError);
  CHECK_THROWS_AS(ResidueParams(1, 1), ValidationError);
  CHECK_THROWS_AS(ResidueParams(2, -1), ValidationError);
  CHECK(ResidueParams(7, 0).pn == 1);
  CHECK(ResidueParams(5, 3).pn == 125);
}

TEST_CASE("clamped valuation") {
  const ResidueParams rp(3, 2);
  CHECK(valuation(0, rp) == 2);
  CHECK(valuation(6, rp) == 1);
  CHECK(valuation(4, rp) == 0);
  CHECK(valuation(9, rp) == 2);  // 9 = 0 mod 9
}

TEST_CASE("elementary divisor type on pinned examples") {
  {
    const ResidueParams rp(5, 2);
    CHECK(elementary_divisor_type(make(1, 1, {0}, rp), rp) == std::vector<int>{2});
  }
  {
    const ResidueParams rp(3, 2);
    CHECK(elementary_divisor_type(make(2, 2, {1, 0, 0, 3}, rp), rp) ==
          std::vector<int>{0, 1});
    // value derived with the cokernel oracle: both pivots are units
    const RMat m = make(2, 2, {2, 4, 6, 8}, rp);
    CHECK(testkit::oracle_edt(m, rp) == std::vector<int>{0, 0});
    CHECK(elementary_divisor_type(m, rp) == std::vector<int>{0, 0});
  }
}

TEST_CASE("divisor type agrees with the cokernel oracle") {
  std::mt19937_64 rng(2024);
  for (long long p : {2LL, 3LL, 5LL}) {
    for (int N = 0; N <= 3; ++N) {
      const ResidueParams rp(p, N);
      for (int trial = 0; trial < 60; ++trial) {
        const int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 4);
        const RMat m = random_mat(rng, rows, cols, rp);
        CHECK(elementary_divisor_type(m, rp) == testkit::oracle_edt(m, rp));
      }
    }
  }
}

TEST_CASE("divisor type is an equivalence invariant") {
  std::mt19937_64 rng(99);
  for (long long p : {2LL, 3LL, 5LL}) {
    for (int N = 1; N <= 3; ++N) {
      const ResidueParams rp(p, N);
      for (int trial = 0; trial < 40; ++trial) {
        const int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 4);
        const RMat m = random_mat(rng, rows, cols, rp);
        const RMat u = random_invertible(rng, rows, rp);
        const RMat v = random_invertible(rng, cols, rp);
        CHECK(elementary_divisor_type(mul(mul(u, m, rp), v, rp), rp) ==
              elementary_divisor_type(m, rp));
      }
    }
  }
}

TEST_CASE("divisor type is permutation invariant") {
  std::mt19937_64 rng(512);
  const ResidueParams rp(3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const RMat m = random_mat(rng, 3, 4, rp);
    const auto base = elementary_divisor_type(m, rp);
    RMat s = m;
    for (int j = 0; j < 4; ++j) std::swap(s.at(0, j), s.at(2, j));  // rows 0 <-> 2
    for (int i = 0; i < 3; ++i) std::swap(s.at(i, 1), s.at(i, 3));  // cols 1 <-> 3
    CHECK(elementary_divisor_type(s, rp) == base);
  }
}

TEST_CASE("clamped sum of divisors matches the determinant valuation") {
  std::mt19937_64 rng(77);
  for (long long p : {2LL, 3LL, 5LL}) {
    const ResidueParams rp(p, 3);
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 2 + int(rng() % 2);
      const RMat m = random_mat(rng, n, n, rp);
      // determinant mod p^N by cofactor expansion
      std::function<long long(std::vector<long long>, int)> det =
          [&](std::vector<long long> a, int size) -> long long {
        if (size == 1) return a[0];
        long long acc = 0;
        for (int k = 0; k < size; ++k) {
          if (a[k] == 0) continue;
          std::vector<long long> sub;
          for (int i = 1; i < size; ++i)
            for (int j = 0; j < size; ++j)
              if (j != k) sub.push_back(a[i * size + j]);
          const long long cof = a[k] * det(sub, size - 1) % rp.pn;
          acc = rp.reduce(acc + (k % 2 ? -cof : cof));
        }
        return acc;
      };
      const long long d = det(m.a, n);
      if (valuation(d, rp) >= rp.N) continue;
      const auto t = elementary_divisor_type(m, rp);
      int sum = 0;
      for (int x : t) sum += x;
      CHECK(sum == valuation(d, rp));
    }
  }
}

TEST_CASE("pairing of antisymmetric divisor types") {
  SUBCASE("pinned examples") {
    const ResidueParams rp9(3, 2);
    const RMat b = make(2, 2, {0, 3, -3, 0}, rp9);
    CHECK(elementary_divisor_type(b, rp9) == std::vector<int>{1, 1});
    CHECK(paired_type({1, 1}, 1, rp9) == std::vector<int>{1});
    CHECK(paired_type({0, 0, 2, 2}, 2, rp9) == std::vector<int>{0, 2});
    // f32 B at y = (1,0,0) mod 5
    const ResidueParams rp5(5, 1);
    const RMat f32b = make(3, 3, {0, 1, 0, -1, 0, 0, 0, 0, 0}, rp5);
    CHECK(elementary_divisor_type(f32b, rp5) == std::vector<int>{0, 0, 1});
    CHECK(paired_type(elementary_divisor_type(f32b, rp5), 1, rp5) == std::vector<int>{0});
  }
  SUBCASE("pairing violation is detected") {
    const ResidueParams rp(3, 2);
    CHECK_THROWS_AS(paired_type({0, 1}, 1, rp), MathError);
  }
  SUBCASE("random antisymmetric matrices pair up") {
    std::mt19937_64 rng(31337);
    for (long long p : {2LL, 3LL, 5LL}) {
      for (int N = 1; N <= 3; ++N) {
        const ResidueParams rp(p, N);
        for (int trial = 0; trial < 1000; ++trial) {
          const int n = 2 + int(rng() % 3);
          RMat m(n, n);
          for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
              m.at(i, j) = static_cast<long long>(rng() % static_cast<unsigned long long>(rp.pn));
              m.at(j, i) = rp.reduce(-m.at(i, j));
            }
          const auto t = elementary_divisor_type(m, rp);
          std::map<int, int> freq;
          for (int x : t)
            if (x < rp.N) ++freq[x];
          for (const auto& [v, c] : freq) {
            (void)v;
            CHECK(c % 2 == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("type truncation guards the generic rank") {
  const ResidueParams rp(3, 2);
  CHECK(truncate_type({0, 1, 2, 2}, 2, rp) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(truncate_type({0, 1, 1}, 1, rp), MathError);
}
