#include "test_util.hpp"

#include <ainf/bar.hpp>
#include <ainf/json_io.hpp>

#include <random>

using namespace ainf;

namespace {

SpaceRef<Rational> make_space(std::vector<BasisElt> b) {
  return std::make_shared<GradedSpace<Rational>>(std::move(b));
}

// Fill a multimap with random homogeneous values (about density_pct percent
// of the windowed words populated, coefficients in [-2, 2]).
void randomize(MultiMap<Rational>& m, std::mt19937_64& rng, int density_pct) {
  const auto& S = *m.src;
  const auto& T = *m.tgt;
  for_each_word(S, m.arity, T.min_deg() - m.deg, T.max_deg() - m.deg,
                [&](std::span<const int> w, int sum) {
                  if (rng() % 100 >= static_cast<std::uint64_t>(density_pct))
                    return;
                  Elem<Rational> v;
                  for (int gi : T.slice(sum + m.deg)) {
                    long long c = static_cast<long long>(rng() % 5) - 2;
                    if (c) v.c.emplace_back(gi, Rational(c));
                  }
                  if (!v.zero()) m.set(w, std::move(v));
                });
}

// Random morphism from a minimal structure to a dg-shaped target.  No axioms
// are imposed: the closed-form/coalgebra agreement is a formal identity that
// must hold for arbitrary component data.
AMorphism<Rational> random_display_instance(std::uint64_t seed, int N) {
  auto H = make_space({{"p", 0}, {"q", 1}, {"r", 1}, {"s", 2}, {"t", 3}});
  auto A = make_space(
      {{"x0", 0}, {"x1", 1}, {"y1", 1}, {"x2", 2}, {"x3", 3}, {"x4", 4}});
  std::mt19937_64 rng(seed);

  AInfinity<Rational> src(H, N);
  for (int k = 2; k <= N - 1; ++k) randomize(src.ensure(k), rng, 70);

  AInfinity<Rational> tgt(A, 2);
  for (int i = 0; i < A->dim(); ++i)
    for (int j : A->slice(A->deg(i) + 1)) {
      long long c = static_cast<long long>(rng() % 5) - 2;
      if (c) tgt.d.set_entry(j, i, Rational(c));
    }
  randomize(tgt.ensure(2), rng, 70);

  AMorphism<Rational> F(std::move(src), std::move(tgt), N);
  for (int l = 1; l <= N; ++l) randomize(F.ensure(l), rng, 70);
  return F;
}

}  // namespace

TEST_CASE("dg algebras embed with vanishing structure defect") {
  auto d0 = build_algebra<Rational>(load_json_file(g_data_dir + "/degree0.json"), 0);
  CHECK(check_stasheff(from_dg(d0, 5)).ok());

  auto e1q = build_algebra<Rational>(load_json_file(g_data_dir + "/e1.json"), 0);
  auto rep = check_stasheff(from_dg(e1q, 4));
  CHECK(rep.ok());
  CHECK(rep.checks > 1000);

  auto e1f2 = build_algebra<Fp>(load_json_file(g_data_dir + "/e1.json"), 2);
  CHECK(check_stasheff(from_dg(e1f2, 5)).ok());

  auto m4 = build_algebra<Fp>(load_json_file(g_data_dir + "/massey4.json"), 2);
  CHECK(check_stasheff(from_dg(m4, 3)).ok());

  auto ac = build_algebra<Rational>(load_json_file(g_data_dir + "/acyclic.json"), 0);
  CHECK(check_stasheff(from_dg(ac, 4)).ok());
}

TEST_CASE("a fake ternary operation breaks the arity-4 identity") {
  auto A = build_algebra<Fp>(load_json_file(g_data_dir + "/e1.json"), 2);
  auto S = from_dg(A, 4);
  int a = A.V->find("a"), one = A.V->find("1");
  int w3[3] = {a, one, one};
  S.ensure(3).set(std::span<const int>(w3, 3), Elem<Fp>::unit(one, Fp(1, 2)));
  auto rep = check_stasheff(S);
  CHECK_FALSE(rep.ok());
  // at (a, 1, 1, a) the only surviving term is mul(fake(a,1,1), a) = a
  int w4[4] = {a, one, one, a};
  CHECK(stasheff_defect(S, std::span<const int>(w4, 4)) ==
        Elem<Fp>::unit(a, Fp(1, 2)));
}

TEST_CASE("identity morphism on a dg algebra is a morphism") {
  auto A = build_algebra<Rational>(load_json_file(g_data_dir + "/e1.json"), 0);
  auto S = from_dg(A, 4);
  auto id = identity_morphism(S);
  auto rep = check_morphism(id);
  CHECK(rep.ok());
  CHECK(rep.checks > 0);
  CHECK(is_isotopy(id));
}

TEST_CASE("closed-form equations match the coalgebra defect on random data") {
  // The agreement (desuspension sign) * (closed-form residual) =
  // -(coalgebra defect) is a formal identity in the component maps; it must
  // hold word-for-word even when the data satisfies no axioms at all.
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    auto F = random_display_instance(seed, 6);
    const auto& V = *F.source.V;
    long long words = 0;
    for (int n = 1; n <= 6; ++n) {
      for_each_word(V, n, V.min_deg() * n, V.max_deg() * n,
                    [&](std::span<const int> w, int) {
                      Word<Rational> W;
                      W.assign(V, w);
                      Elem<Rational> defect = morphism_defect(F, w);
                      Elem<Rational> res = display_residual(F, w);
                      ++words;
                      REQUIRE(scale(signed_scalar<Rational>(W.down()), res) ==
                              scale(Rational(-1), defect));
                    });
    }
    CHECK(words > 15000);
    // the same assertion is wired into check_morphism; random data is not a
    // morphism, so violations are expected, but the self-test must not throw
    auto rep = check_morphism(F);
    CHECK_FALSE(rep.ok());
  }
}

TEST_CASE("composition laws") {
  auto F = random_display_instance(21, 5);
  auto idt = identity_morphism(F.target);
  auto ids = identity_morphism(F.source);
  // pad identity truncations so composition keeps all five arities
  idt.max_arity = ids.max_arity = 5;

  auto left = compose(idt, F);
  auto right = compose(F, ids);
  for (int n = 1; n <= 5; ++n) {
    const MultiMap<Rational>* fn = F.comp(n);
    const MultiMap<Rational>* ln = left.comp(n);
    const MultiMap<Rational>* rn = right.comp(n);
    if (!fn) {
      CHECK(ln == nullptr);
      CHECK(rn == nullptr);
      continue;
    }
    REQUIRE(ln != nullptr);
    REQUIRE(rn != nullptr);
    CHECK(*ln == *fn);
    CHECK(*rn == *fn);
  }

  // composite of isotopy-shaped morphisms is isotopy-shaped
  auto H = F.source.V;
  std::mt19937_64 rng(31);
  AInfinity<Rational> M1(H, 4), M2(H, 4), M3(H, 4);
  AMorphism<Rational> t1(M1, M2, 4), t2(M2, M3, 4);
  t1.f.emplace(1, identity_component<Rational>(H));
  t2.f.emplace(1, identity_component<Rational>(H));
  randomize(t1.ensure(2), rng, 60);
  randomize(t2.ensure(2), rng, 60);
  randomize(t2.ensure(3), rng, 60);
  CHECK(is_isotopy(t1));
  CHECK(is_isotopy(t2));
  auto t21 = compose(t2, t1);
  CHECK(is_isotopy(t21));
  // arity-2 component of the composite of isotopies is the sum
  auto expect2 = [&]() {
    MultiMap<Rational> s(H, H, 2, -1);
    for_each_word(*H, 2, H->min_deg() + 1, H->max_deg() + 1,
                  [&](std::span<const int> w, int) {
                    const Elem<Rational>* u = t1.comp(2)->word(w);
                    const Elem<Rational>* v = t2.comp(2)->word(w);
                    Elem<Rational> sum;
                    if (u) sum = add(sum, *u);
                    if (v) sum = add(sum, *v);
                    if (!sum.zero()) s.set(w, std::move(sum));
                  });
    return s;
  }();
  REQUIRE(t21.comp(2) != nullptr);
  CHECK(*t21.comp(2) == expect2);
}

TEST_CASE("non-chain-map linear part is flagged at arity 1") {
  auto A = build_algebra<Rational>(load_json_file(g_data_dir + "/e1.json"), 0);
  auto H = make_space({{"c", 1}});
  AInfinity<Rational> src(H, 2);
  AMorphism<Rational> F(std::move(src), from_dg(A, 2), 2);
  int w1[1] = {0};
  F.ensure(1).set(std::span<const int>(w1, 1),
                  Elem<Rational>::unit(A.V->find("u"), Rational(1)));
  auto rep = check_morphism(F);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.violations.front().where.find("arity 1") != std::string::npos);
}

AINF_TEST_MAIN
