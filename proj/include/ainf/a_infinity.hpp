#pragma once
// A∞-structures and A∞-morphisms as truncated families of multilinear maps.
//
// An AInfinity value holds a degree-+1 differential (arity-1 operation, may
// be zero) and operations μ_n of arity n and degree 2−n for 2 ≤ n ≤ max_arity;
// absent arities are zero.  An AMorphism holds components f_n of arity n and
// degree 1−n between its source and target structures, with f₁ the linear
// part.  A dg algebra embeds with μ_k = 0 for k ≥ 3; a structure is minimal
// when its differential vanishes; a morphism between structures on the same
// space is an isotopy when its linear part is the identity.

#include "dg_algebra.hpp"
#include "multimap.hpp"

#include <map>
#include <stdexcept>

namespace ainf {

// Tabulate a graded linear map as an arity-1 MultiMap.
template <class K>
MultiMap<K> as_multimap(const GradedMap<K>& g) {
  MultiMap<K> m(g.src, g.tgt, 1, g.deg);
  for (int i = 0; i < g.src->dim(); ++i) {
    Elem<K> v = g.column(i);
    if (!v.zero()) {
      int w[1] = {i};
      m.set(std::span<const int>(w, 1), std::move(v));
    }
  }
  return m;
}

template <class K>
struct AInfinity {
  SpaceRef<K> V;
  GradedMap<K> d;                 // degree +1; identically zero when minimal
  std::map<int, MultiMap<K>> mu;  // arity ≥ 2, degree 2−n; absent = zero
  int max_arity = 1;              // truncation: identities asserted through it

  explicit AInfinity(SpaceRef<K> space, int N = 1)
      : V(space), d(space, space, +1), max_arity(N) {
    if (N < 1) throw std::invalid_argument("AInfinity: truncation >= 1");
  }

  const MultiMap<K>* op(int n) const {
    auto it = mu.find(n);
    return it == mu.end() ? nullptr : &it->second;
  }

  MultiMap<K>& ensure(int n) {
    if (n < 2)
      throw std::invalid_argument(
          "AInfinity::ensure: arity 1 is the differential field");
    auto it = mu.find(n);
    if (it == mu.end()) it = mu.emplace(n, MultiMap<K>(V, V, n, 2 - n)).first;
    if (n > max_arity) max_arity = n;
    return it->second;
  }

  bool minimal() const { return d.zero(); }
  // Underlying dg algebra shape: no operations beyond the binary product.
  bool dg_shape() const {
    for (const auto& [n, m] : mu)
      if (n >= 3 && !m.zero()) return false;
    return true;
  }
};

template <class K>
AInfinity<K> from_dg(const DGAlgebra<K>& A, int N = 2) {
  AInfinity<K> S(A.V, N);
  S.d = A.d;
  S.mu.emplace(2, A.mul);
  return S;
}

template <class K>
struct AMorphism {
  AInfinity<K> source, target;
  std::map<int, MultiMap<K>> f;  // arity ≥ 1, degree 1−n; absent = zero
  int max_arity = 1;

  AMorphism(AInfinity<K> s, AInfinity<K> t, int N)
      : source(std::move(s)), target(std::move(t)), max_arity(N) {
    if (N < 1) throw std::invalid_argument("AMorphism: truncation >= 1");
  }

  const MultiMap<K>* comp(int n) const {
    auto it = f.find(n);
    return it == f.end() ? nullptr : &it->second;
  }

  MultiMap<K>& ensure(int n) {
    auto it = f.find(n);
    if (it == f.end())
      it = f.emplace(n, MultiMap<K>(source.V, target.V, n, 1 - n)).first;
    if (n > max_arity) max_arity = n;
    return it->second;
  }
};

template <class K>
MultiMap<K> identity_component(SpaceRef<K> V) {
  MultiMap<K> m(V, V, 1, 0);
  for (int i = 0; i < V->dim(); ++i) {
    int w[1] = {i};
    m.set(std::span<const int>(w, 1), Elem<K>::unit(i, K(1)));
  }
  return m;
}

template <class K>
AMorphism<K> identity_morphism(const AInfinity<K>& S) {
  AMorphism<K> F(S, S, S.max_arity);
  F.f.emplace(1, identity_component<K>(S.V));
  return F;
}

// Isotopy test: same underlying space and linear part exactly the identity.
template <class K>
bool is_isotopy(const AMorphism<K>& F) {
  if (F.source.V != F.target.V) return false;
  const MultiMap<K>* f1 = F.comp(1);
  if (!f1) return false;
  return *f1 == identity_component<K>(F.source.V);
}

}  // namespace ainf
