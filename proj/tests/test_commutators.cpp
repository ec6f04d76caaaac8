#include <doctest.h>

#include <vector>

#include "bizeta/commutators.hpp"
#include "bizeta/errors.hpp"
#include "bizeta/lattice.hpp"

using namespace bizeta;

namespace {

LatticeProfile builtin_profile(const std::string& name) {
  auto doc = builtin_lattice_document(name);
  REQUIRE(doc.has_value());
  return profile(parse_lattice(*doc));
}

std::vector<long long> form(const LinearFormMatrix& m, int i, int j) { return m.form(i, j); }

// rank over F_p of an evaluated matrix
int rank_mod_p(RMat m, long long p) {
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int piv = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, c) % p != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(piv, j));
    long long inv = 1, a = ((m.at(rank, c) % p) + p) % p;
    for (long long e = p - 2; e > 0; e >>= 1, a = a * a % p)
      if (e & 1) inv = inv * a % p;
    for (int i = rank + 1; i < m.rows; ++i) {
      const long long f = ((m.at(i, c) % p) + p) % p * inv % p;
      for (int j = 0; j < m.cols; ++j)
        m.at(i, j) = ((m.at(i, j) - f * m.at(rank, j)) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// coordinates of a derived-lattice vector with respect to the f basis, mod p^N
std::vector<long long> f_coords(const LatticeProfile& P, const std::vector<mpz_class>& v,
                                const ResidueParams& rp) {
  const ZMat fmat = ZMat::from_rows(P.f, P.h);
  const auto x = solve_left(fmat, v);
  REQUIRE(x.has_value());
  std::vector<long long> out;
  for (const auto& c : *x) out.push_back(rp.reduce(c));
  return out;
}

}  // namespace

TEST_CASE("commutator matrices of the built-in lattices") {
  SUBCASE("heisenberg") {
    const auto [A, B] = commutator_matrices(builtin_profile("heisenberg"));
    CHECK(A.rows == 2);
    CHECK(A.cols == 1);
    CHECK(A.nvars == 2);
    CHECK(form(A, 0, 0) == std::vector<long long>{0, 1});   // X2
    CHECK(form(A, 1, 0) == std::vector<long long>{-1, 0});  // -X1
    CHECK(B.rows == 2);
    CHECK(B.cols == 2);
    CHECK(B.nvars == 1);
    CHECK(form(B, 0, 1) == std::vector<long long>{1});   // Y
    CHECK(form(B, 1, 0) == std::vector<long long>{-1});  // -Y
    CHECK(form(B, 0, 0) == std::vector<long long>{0});
  }
  SUBCASE("f32 matches the displayed matrices") {
    const auto [A, B] = commutator_matrices(builtin_profile("f32"));
    // A rows: (X2, X3, 0), (-X1, 0, X3), (0, -X1, -X2)
    CHECK(form(A, 0, 0) == std::vector<long long>{0, 1, 0});
    CHECK(form(A, 0, 1) == std::vector<long long>{0, 0, 1});
    CHECK(form(A, 0, 2) == std::vector<long long>{0, 0, 0});
    CHECK(form(A, 1, 0) == std::vector<long long>{-1, 0, 0});
    CHECK(form(A, 1, 1) == std::vector<long long>{0, 0, 0});
    CHECK(form(A, 1, 2) == std::vector<long long>{0, 0, 1});
    CHECK(form(A, 2, 0) == std::vector<long long>{0, 0, 0});
    CHECK(form(A, 2, 1) == std::vector<long long>{-1, 0, 0});
    CHECK(form(A, 2, 2) == std::vector<long long>{0, -1, 0});
    // B = [[0, Y1, Y2], [-Y1, 0, Y3], [-Y2, -Y3, 0]]
    CHECK(form(B, 0, 1) == std::vector<long long>{1, 0, 0});
    CHECK(form(B, 0, 2) == std::vector<long long>{0, 1, 0});
    CHECK(form(B, 1, 2) == std::vector<long long>{0, 0, 1});
  }
  SUBCASE("abelian is empty") {
    const auto [A, B] = commutator_matrices(builtin_profile("abelian_2"));
    CHECK(A.rows == 0);
    CHECK(A.cols == 0);
    CHECK(B.rows == 0);
  }
}

TEST_CASE("evaluation at points") {
  const auto [A, B] = commutator_matrices(builtin_profile("heisenberg"));
  {
    const ResidueParams rp(3, 2);
    const RMat m = evaluate(B, {3}, rp);
    CHECK(m.at(0, 0) == 0);
    CHECK(m.at(0, 1) == 3);
    CHECK(m.at(1, 0) == 6);  // -3 mod 9
    CHECK(m.at(1, 1) == 0);
  }
  {
    const ResidueParams rp(3, 1);
    const RMat m = evaluate(A, {0, 1}, rp);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(1, 0) == 0);
  }
  {
    const auto [A32, B32] = commutator_matrices(builtin_profile("f32"));
    (void)A32;
    const ResidueParams rp(5, 1);
    const RMat m = evaluate(B32, {1, 0, 0}, rp);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 0) == 4);
    CHECK(m.at(2, 2) == 0);
    CHECK(m.at(1, 2) == 0);
  }
  CHECK_THROWS_AS(evaluate(A, {1}, ResidueParams(3, 1)), MathError);
}

TEST_CASE("evaluated B matrices are antisymmetric") {
  for (const auto& name : {"heisenberg", "f32"}) {
    const auto P = builtin_profile(name);
    const auto [A, B] = commutator_matrices(P);
    (void)A;
    const ResidueParams rp(5, 2);
    std::vector<long long> pt(B.nvars, 0);
    for (int trial = 0; trial < 200; ++trial) {
      for (auto& x : pt) x = (x * 7 + trial + 1) % rp.pn;
      const RMat m = evaluate(B, pt, rp);
      for (int i = 0; i < m.rows; ++i) {
        CHECK(m.at(i, i) == 0);
        for (int j = 0; j < m.cols; ++j)
          CHECK(rp.reduce(m.at(i, j) + m.at(j, i)) == 0);
      }
    }
  }
}

TEST_CASE("generic ranks of the built-ins") {
  {
    const auto [A, B] = commutator_matrices(builtin_profile("heisenberg"));
    CHECK(generic_rank(A).u == 1);
    const auto gb = generic_rank(B);
    CHECK(gb.u == 2);
    CHECK(gb.u_half == 1);
  }
  {
    const auto [A, B] = commutator_matrices(builtin_profile("f32"));
    CHECK(generic_rank(A).u == 2);
    const auto gb = generic_rank(B);
    CHECK(gb.u == 2);
    CHECK(gb.u_half == 1);
  }
  {
    const auto [A, B] = commutator_matrices(builtin_profile("abelian_3"));
    CHECK(generic_rank(A).u == 0);
    CHECK(generic_rank(B).u == 0);
    CHECK(generic_rank(B).u_half == 0);
  }
}

TEST_CASE("generic rank equals the exhaustive maximum over F_p points") {
  for (const auto& name : {"heisenberg", "f32", "abelian_2"}) {
    const auto P = builtin_profile(name);
    const auto [A, B] = commutator_matrices(P);
    for (long long p : {3LL, 5LL}) {
      const ResidueParams rp(p, 1);
      for (const LinearFormMatrix* m : {&A, &B}) {
        int best = 0;
        std::vector<long long> pt(m->nvars, 0);
        const long long total = [&] {
          long long t = 1;
          for (int i = 0; i < m->nvars; ++i) t *= p;
          return t;
        }();
        for (long long idx = 0; idx < total; ++idx) {
          long long rem = idx;
          for (int i = 0; i < m->nvars; ++i) {
            pt[i] = rem % p;
            rem /= p;
          }
          best = std::max(best, rank_mod_p(evaluate(*m, pt, rp), p));
        }
        CHECK(best == generic_rank(*m).u);
      }
    }
  }
}

TEST_CASE("radical and kernel membership match the bracket condition") {
  // For every x, y: the form-side conditions A(x) y = 0 and B(y) x = 0 both
  // say that the character with coordinates y kills [g, x]; the lattice-side
  // condition is computed from brackets and f coordinates directly.
  for (const auto& name : {"heisenberg", "f32"}) {
    const auto P = builtin_profile(name);
    const auto [A, B] = commutator_matrices(P);
    const std::vector<std::pair<long long, int>> cases =
        name == std::string("heisenberg")
            ? std::vector<std::pair<long long, int>>{{3, 1}, {3, 2}, {5, 1}}
            : std::vector<std::pair<long long, int>>{{3, 1}, {5, 1}};
    for (const auto& [p, N] : cases) {
      const ResidueParams rp(p, N);
      const long long total_x = [&] {
        long long t = 1;
        for (int i = 0; i < P.a; ++i) t *= rp.pn;
        return t;
      }();
      const long long total_y = [&] {
        long long t = 1;
        for (int i = 0; i < P.b; ++i) t *= rp.pn;
        return t;
      }();
      for (long long xi = 0; xi < total_x; ++xi) {
        std::vector<long long> x(P.a);
        long long rem = xi;
        for (int i = 0; i < P.a; ++i) {
          x[i] = rem % rp.pn;
          rem /= rp.pn;
        }
        // lattice-side: f coordinates of [e_i, x] for each i
        std::vector<std::vector<long long>> bracket_coords;
        std::vector<mpz_class> xvec(P.h);
        for (int j = 0; j < P.a; ++j)
          for (int t = 0; t < P.h; ++t) xvec[t] += to_mpz(x[j]) * P.e[j][t];
        for (int i = 0; i < P.a; ++i) {
          const auto br = P.lattice.bracket(P.e[i], xvec);
          bracket_coords.push_back(f_coords(P, br, rp));
        }
        const RMat ax = evaluate(A, x, rp);
        for (long long yi = 0; yi < total_y; ++yi) {
          std::vector<long long> y(P.b);
          rem = yi;
          for (int i = 0; i < P.b; ++i) {
            y[i] = rem % rp.pn;
            rem /= rp.pn;
          }
          bool lattice_side = true;
          for (int i = 0; i < P.a && lattice_side; ++i) {
            long long acc = 0;
            for (int k = 0; k < P.b; ++k)
              acc = rp.reduce(acc + y[k] * bracket_coords[i][k] % rp.pn);
            lattice_side = acc == 0;
          }
          bool a_side = true;
          for (int i = 0; i < P.a && a_side; ++i) {
            long long acc = 0;
            for (int k = 0; k < P.b; ++k) acc = rp.reduce(acc + ax.at(i, k) * y[k] % rp.pn);
            a_side = acc == 0;
          }
          const RMat by = evaluate(B, y, rp);
          bool b_side = true;
          for (int i = 0; i < P.a && b_side; ++i) {
            long long acc = 0;
            for (int j = 0; j < P.a; ++j) acc = rp.reduce(acc + by.at(i, j) * x[j] % rp.pn);
            b_side = acc == 0;
          }
          CHECK(lattice_side == a_side);
          CHECK(lattice_side == b_side);
        }
      }
    }
  }
}
