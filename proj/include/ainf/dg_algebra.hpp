#pragma once
// Finite-dimensional differential graded associative algebras and their
// structural validation (d² = 0, the graded Leibniz rule, associativity).
// Degree additivity of both maps is enforced at construction time by the
// graded containers themselves.

#include "graded.hpp"
#include "graded_map.hpp"
#include "multimap.hpp"
#include "report.hpp"

namespace ainf {

template <class K>
struct DGAlgebra {
  SpaceRef<K> V;
  GradedMap<K> d;    // degree +1
  MultiMap<K> mul;   // arity 2, degree 0
  long long p = 0;   // coefficient characteristic (0 = rationals)

  DGAlgebra() = default;
  explicit DGAlgebra(SpaceRef<K> space, long long char_p = 0)
      : V(space), d(space, space, 1), mul(space, space, 2, 0), p(char_p) {}

  Elem<K> product(const Elem<K>& a, const Elem<K>& b, Scratch<K>& acc) const {
    const Elem<K>* args[2] = {&a, &b};
    return mul.eval(std::span<const Elem<K>* const>(args, 2), acc);
  }
  Elem<K> product(const Elem<K>& a, const Elem<K>& b) const {
    Scratch<K> acc;
    return product(a, b, acc);
  }
};

// d² = 0, graded Leibniz on every basis pair, associativity on every triple
// whose inner products are not both zero (when both vanish the identity is
// 0 = 0 by bilinearity and needs no evaluation).
template <class K>
Report validate(const DGAlgebra<K>& A) {
  Report rep;
  const GradedSpace<K>& V = *A.V;
  Scratch<K> acc;

  // d∘d = 0
  for (int i = 0; i < V.dim(); ++i) {
    ++rep.checks;
    Elem<K> dd = A.d.apply(A.d.column(i));
    if (!dd.zero())
      rep.fail("d^2 on " + V.name(i), "d(d(" + V.name(i) + ")) = " + dd.str(V));
  }

  // Leibniz: d(ab) = (da)b + (-1)^{|a|} a (db)
  for (int i = 0; i < V.dim(); ++i) {
    Elem<K> di = A.d.column(i);
    Elem<K> ei = Elem<K>::unit(i);
    for (int j = 0; j < V.dim(); ++j) {
      ++rep.checks;
      int w[2] = {i, j};
      const Elem<K>* pij = A.mul.word(std::span<const int>(w, 2));
      Elem<K> dj = A.d.column(j);
      if (!pij && di.zero() && dj.zero()) continue;
      Elem<K> lhs = pij ? A.d.apply(*pij) : Elem<K>{};
      Elem<K> ej = Elem<K>::unit(j);
      Elem<K> rhs = add(A.product(di, ej, acc),
                        scale(signed_scalar<K>(V.deg(i)), A.product(ei, dj, acc)));
      if (!(lhs == rhs)) {
        rep.fail("Leibniz on (" + V.name(i) + ", " + V.name(j) + ")",
                 "d(ab) - (da)b - (-1)^|a| a(db) = " + sub(lhs, rhs).str(V));
      }
    }
  }

  // Associativity, seeded from the nonzero product table.
  for (const auto& [key, val] : A.mul.vals) {
    int i = static_cast<int>(key & 0x3ff);
    int j = static_cast<int>((key >> 10) & 0x3ff);
    Elem<K> ei = Elem<K>::unit(i), ej = Elem<K>::unit(j);
    for (int k = 0; k < V.dim(); ++k) {
      Elem<K> ek = Elem<K>::unit(k);
      // (ij)k vs i(jk)
      ++rep.checks;
      Elem<K> lhs = A.product(val, ek, acc);
      Elem<K> rhs = A.product(ei, A.product(ej, ek, acc), acc);
      if (!(lhs == rhs)) {
        rep.fail("associativity on (" + V.name(i) + ", " + V.name(j) + ", " +
                     V.name(k) + ")",
                 "((ab)c - a(bc)) = " + sub(lhs, rhs).str(V));
      }
      // k(ij) vs (ki)j — covers triples whose first inner product vanishes
      ++rep.checks;
      Elem<K> lhs2 = A.product(ek, val, acc);
      Elem<K> rhs2 = A.product(A.product(ek, ei, acc), ej, acc);
      if (!(lhs2 == rhs2)) {
        rep.fail("associativity on (" + V.name(k) + ", " + V.name(i) + ", " +
                     V.name(j) + ")",
                 "((ab)c - a(bc)) = " + sub(rhs2, lhs2).str(V));
      }
    }
  }

  return rep;
}

// Two-sided unit of a (possibly non-unital) product table, if one exists.
// The unit, when present, is a degree-0 element u with u·e_i = e_i·u = e_i
// for every basis element; found by exact linear solving.
template <class K>
std::optional<Elem<K>> find_unit(const GradedSpace<K>& V,
                                 const MultiMap<K>& mul) {
  const std::vector<int>& deg0 = V.slice(0);
  if (deg0.empty()) return std::nullopt;
  const int n = V.dim(), m = static_cast<int>(deg0.size());
  Mat<K> M(2 * n * n, m);
  Vec<K> b(2 * n * n);
  for (int r = 0; r < 2 * n * n; ++r) b(r) = K(0);
  M.setZero();
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < m; ++c) {
      int u = deg0[c];
      int wl[2] = {u, i}, wr[2] = {i, u};
      if (const Elem<K>* v = mul.word(std::span<const int>(wl, 2)))
        for (auto& [t, x] : v->c) M(i * n + t, c) = x;
      if (const Elem<K>* v = mul.word(std::span<const int>(wr, 2)))
        for (auto& [t, x] : v->c) M(n * n + i * n + t, c) = x;
    }
    b(i * n + i) = K(1);
    b(n * n + i * n + i) = K(1);
  }
  auto sol = solve_linear(M, b);
  if (!sol.consistent) return std::nullopt;
  Elem<K> u;
  for (int c = 0; c < m; ++c) {
    if (!is_zero(sol.particular(c))) u.c.emplace_back(deg0[c], sol.particular(c));
  }
  return u;
}

}  // namespace ainf
