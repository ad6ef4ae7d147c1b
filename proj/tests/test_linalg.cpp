#include "test_util.hpp"

#include <ainf/linalg.hpp>

using namespace ainf;

namespace {

Fp f2(long long v) { return Fp(v, 2); }
Fp f5(long long v) { return Fp(v, 5); }
Fp f7(long long v) { return Fp(v, 7); }

}  // namespace

TEST_CASE("Fp arithmetic and literal promotion") {
  CHECK(f7(3) + f7(5) == f7(1));
  CHECK(f7(3) * f7(5) == f7(1));
  CHECK(-f7(3) == f7(4));
  CHECK(f7(3).inverse() == f7(5));
  CHECK(f7(3) / f7(3) == f7(1));
  // unbound literals promote against bound operands
  CHECK(Fp(1) + f2(1) == f2(0));
  CHECK(Fp(-1) == f5(4));
  CHECK(Fp(10) * f7(1) == f7(3));
  CHECK_THROWS_AS(f7(0).inverse(), std::domain_error);
  CHECK_THROWS_AS((void)(f5(1) + f7(1)), std::logic_error);
}

TEST_CASE("rref picks the first nonzero pivot") {
  Mat<Rational> M(2, 2);
  M << Rational(0), Rational(2), Rational(3), Rational(4);
  auto E = rref(M);
  CHECK(E.rank == 2);
  CHECK(E.pivot_col == std::vector<int>{0, 1});
  CHECK(E.R(0, 0) == Rational(1));
  CHECK(E.R(0, 1) == Rational(0));
  CHECK(E.R(1, 1) == Rational(1));
}

TEST_CASE("solve_linear over F2: pinned example") {
  // M = [[1,1],[0,0]], b = (1,0): particular (1,0), kernel {(1,1)}.
  Mat<Fp> M(2, 2);
  M << f2(1), f2(1), f2(0), f2(0);
  Vec<Fp> b(2);
  b << f2(1), f2(0);
  auto sol = solve_linear(M, b);
  REQUIRE(sol.consistent);
  CHECK(sol.particular(0) == f2(1));
  CHECK(sol.particular(1) == f2(0));
  REQUIRE(sol.nullspace.size() == 1);
  CHECK(sol.nullspace[0](0) == f2(1));
  CHECK(sol.nullspace[0](1) == f2(1));

  Vec<Fp> b2(2);
  b2 << f2(0), f2(1);
  CHECK_FALSE(solve_linear(M, b2).consistent);
}

TEST_CASE("solve_linear over Q is exact on an ill-conditioned matrix") {
  const int n = 5;
  Mat<Rational> H(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = Rational(1, i + j + 1);
  Vec<Rational> b(n);
  for (int i = 0; i < n; ++i) b(i) = Rational(1);
  auto sol = solve_linear(H, b);
  REQUIRE(sol.consistent);
  CHECK(sol.nullspace.empty());
  Vec<Rational> r = H * sol.particular;
  for (int i = 0; i < n; ++i) CHECK(r(i) == Rational(1));
}

TEST_CASE("nullspace_basis over F5") {
  Mat<Fp> M(1, 3);
  M << f5(1), f5(1), f5(1);
  auto ns = nullspace_basis(M);
  REQUIRE(ns.size() == 2);
  CHECK(ns[0](0) == f5(4));
  CHECK(ns[0](1) == f5(1));
  CHECK(ns[0](2) == f5(0));
  CHECK(ns[1](0) == f5(4));
  CHECK(ns[1](1) == f5(0));
  CHECK(ns[1](2) == f5(1));
  CHECK(rank_of(M) == 1);
}

TEST_CASE("solve_linear handles empty shapes") {
  Mat<Rational> M(0, 3);
  Vec<Rational> b(0);
  auto sol = solve_linear(M, b);
  REQUIRE(sol.consistent);
  CHECK(sol.nullspace.size() == 3);

  Mat<Rational> M2(2, 0);
  Vec<Rational> b2(2);
  b2 << Rational(0), Rational(1);
  CHECK_FALSE(solve_linear(M2, b2).consistent);
}

AINF_TEST_MAIN
