#pragma once
// Cohomology of a dg algebra together with exact transfer data: a choice of
// cocycle representatives ψ, a projection π, and a contracting homotopy h
// with
//     π∘ψ = id,   ψ∘π − id = d∘h + h∘d,   d∘ψ = 0,   π∘d = 0,
// plus the side conditions  h∘h = 0,  h∘ψ = 0,  π∘h = 0.
//
// Everything is derived from one decomposition per degree,
//     A^k = B^k ⊕ H̃^k ⊕ L^k,
// where B^k is the boundary space, H̃^k the chosen harmonic representatives,
// and L^k a transversal mapped isomorphically onto B^{k+1} by d, with the
// bookkeeping convention that d sends the j-th L-column of degree k to the
// j-th B-column of degree k+1.  All invariants above hold by construction;
// check_transfer re-verifies them exactly.

#include "dg_algebra.hpp"

#include <random>

namespace ainf {

template <class K>
struct DegreeSplit {
  Mat<K> B;   // columns span the boundaries in this degree
  Mat<K> Hs;  // columns are the chosen cocycle representatives
  Mat<K> L;   // columns form a transversal to the cocycles
};

template <class K>
struct TransferData {
  SpaceRef<K> A;  // ambient graded space
  SpaceRef<K> H;  // cohomology, basis labelled h<degree>_<index>
  GradedMap<K> psi;  // H -> A, degree 0
  GradedMap<K> pi;   // A -> H, degree 0
  GradedMap<K> h;    // A -> A, degree -1
  std::map<int, DegreeSplit<K>> split;  // retained for homotopy variation
};

namespace detail {

// Incremental column echelon (leading index ascending, leading entry 1).
// insert() returns the fully reduced, normalized remainder (zero if the
// vector was dependent).
template <class K>
struct ColEchelon {
  std::map<int, Vec<K>> by_lead;

  Vec<K> insert(Vec<K> v) {
    for (;;) {
      int lead = -1;
      for (int i = 0; i < v.size(); ++i) {
        if (!is_zero(v(i))) {
          lead = i;
          break;
        }
      }
      if (lead < 0) return v;  // dependent: zero remainder
      auto it = by_lead.find(lead);
      if (it == by_lead.end()) {
        K inv = K(1) / v(lead);
        for (int i = lead; i < v.size(); ++i) v(i) = v(i) * inv;
        by_lead.emplace(lead, v);
        return v;
      }
      K f = v(lead);
      for (int i = lead; i < v.size(); ++i) v(i) = v(i) - f * it->second(i);
    }
  }
};

template <class K>
Elem<K> elem_from_slice(const GradedSpace<K>& V, int k, const Vec<K>& coords) {
  const std::vector<int>& idx = V.slice(k);
  Elem<K> out;
  for (int r = 0; r < static_cast<int>(idx.size()); ++r) {
    if (!is_zero(coords(r))) out.c.emplace_back(idx[r], coords(r));
  }
  return out;
}

// Build ψ, π, h and the cohomology space from per-degree decompositions.
// When `Hspace` is supplied it is reused (dimensions must match), so that
// transfer data over the same algebra share one cohomology space.
template <class K>
TransferData<K> assemble_transfer(const DGAlgebra<K>& alg,
                                  std::map<int, DegreeSplit<K>> splits,
                                  SpaceRef<K> Hspace = nullptr) {
  const GradedSpace<K>& V = *alg.V;
  SpaceRef<K> H = Hspace;
  if (!H) {
    std::vector<BasisElt> hbasis;
    for (auto& [k, S] : splits) {
      for (int i = 0; i < S.Hs.cols(); ++i) {
        hbasis.push_back(
            {"h" + std::to_string(k) + "_" + std::to_string(i), k});
      }
    }
    H = std::make_shared<GradedSpace<K>>(std::move(hbasis));
  }

  TransferData<K> T;
  T.A = alg.V;
  T.H = H;
  T.psi = GradedMap<K>(H, alg.V, 0);
  T.pi = GradedMap<K>(alg.V, H, 0);
  T.h = GradedMap<K>(alg.V, alg.V, -1);
  T.split = std::move(splits);

  for (auto& [k, S] : T.split) {
    const int nb = static_cast<int>(S.B.cols());
    const int nh = static_cast<int>(S.Hs.cols());
    const int nl = static_cast<int>(S.L.cols());
    const int n = V.dim(k);
    if (n == 0) continue;
    if (nb + nh + nl != n)
      throw std::logic_error("assemble_transfer: split does not fill degree " +
                             std::to_string(k));
    Mat<K> P(n, n);
    if (nb) P.leftCols(nb) = S.B;
    if (nh) P.middleCols(nb, nh) = S.Hs;
    if (nl) P.rightCols(nl) = S.L;
    Mat<K> Pinv = inverse_of(P);  // throws if the split is degenerate

    // ψ on degree k: H-basis ↦ H̃ columns
    if (nh) {
      Mat<K>& psiB = T.psi.block(k);
      psiB = S.Hs;
    }
    // π on degree k: H̃-coordinate rows of P^{-1}
    if (nh) {
      Mat<K>& piB = T.pi.block(k);
      piB = Pinv.middleRows(nb, nh);
    }
    // h on degree k: boundaries map back to minus their L-preimages one
    // degree down
    if (nb) {
      auto prev = T.split.find(k - 1);
      if (prev == T.split.end() ||
          static_cast<int>(prev->second.L.cols()) != nb)
        throw std::logic_error("assemble_transfer: boundary/transversal "
                               "mismatch at degree " +
                               std::to_string(k));
      Mat<K>& hB = T.h.block(k);
      hB = -(prev->second.L * Pinv.topRows(nb));
    }
  }

  // Echelon bookkeeping fabricates structural 0/1 entries as bare integer
  // literals.  Stamp the coefficient characteristic onto every stored entry
  // so each value downstream of the transfer maps carries its modulus, even
  // when a whole computation path never touches an input coefficient.
  auto stamp = [&](GradedMap<K>& M) {
    for (auto& [k, B] : M.blocks) {
      (void)k;
      for (int i = 0; i < B.rows(); ++i)
        for (int j = 0; j < B.cols(); ++j)
          B(i, j) = ScalarOps<K>::rebind(B(i, j), alg.p);
    }
  };
  stamp(T.psi);
  stamp(T.pi);
  stamp(T.h);
  return T;
}

}  // namespace detail

// Canonical transfer data: boundaries from the pivot columns of the
// echelonized differential, harmonic representatives from its nullspace
// reduced against the boundaries, transversal from the pivot slots.
template <class K>
TransferData<K> cohomology_data(const DGAlgebra<K>& alg) {
  const GradedSpace<K>& V = *alg.V;
  std::map<int, DegreeSplit<K>> splits;
  std::map<int, Rref<K>> ech;   // echelon of d per degree
  std::map<int, std::vector<Vec<K>>> kerbasis;

  for (int k = V.min_deg(); k <= V.max_deg(); ++k) {
    const int n = V.dim(k);
    if (n == 0) continue;
    Mat<K> D = Mat<K>::Zero(V.dim(k + 1), n);
    if (const Mat<K>* b = alg.d.block_if(k)) D = *b;
    ech.emplace(k, rref(D));
    kerbasis.emplace(k, nullspace_from_rref(ech.at(k), n));
  }

  for (int k = V.min_deg(); k <= V.max_deg(); ++k) {
    const int n = V.dim(k);
    if (n == 0) continue;
    DegreeSplit<K> S;

    // Boundaries: d of the transversal slots one degree down.
    std::vector<Vec<K>> bcols;
    auto below = ech.find(k - 1);
    if (below != ech.end()) {
      Mat<K> D = Mat<K>::Zero(n, V.dim(k - 1));
      if (const Mat<K>* b = alg.d.block_if(k - 1)) D = *b;
      for (int c : below->second.pivot_col) bcols.push_back(D.col(c));
    }
    S.B = Mat<K>(n, static_cast<int>(bcols.size()));
    for (std::size_t j = 0; j < bcols.size(); ++j) S.B.col(j) = bcols[j];

    // Harmonic picks: kernel vectors independent of the boundaries.
    detail::ColEchelon<K> ce;
    for (std::size_t j = 0; j < bcols.size(); ++j) ce.insert(bcols[j]);
    std::vector<Vec<K>> hcols;
    for (const Vec<K>& v : kerbasis.at(k)) {
      Vec<K> rem = ce.insert(v);
      bool nz = false;
      for (int i = 0; i < rem.size(); ++i) nz |= !is_zero(rem(i));
      if (nz) hcols.push_back(rem);
    }
    S.Hs = Mat<K>(n, static_cast<int>(hcols.size()));
    for (std::size_t j = 0; j < hcols.size(); ++j) S.Hs.col(j) = hcols[j];

    // Transversal: standard basis vectors at the pivot slots of d.
    const std::vector<int>& piv = ech.at(k).pivot_col;
    S.L = Mat<K>::Zero(n, static_cast<int>(piv.size()));
    for (std::size_t j = 0; j < piv.size(); ++j) S.L(piv[j], j) = K(1);

    splits.emplace(k, std::move(S));
  }
  return detail::assemble_transfer(alg, std::move(splits));
}

// Re-verify every identity the transfer data promises.
template <class K>
Report check_transfer(const DGAlgebra<K>& alg, const TransferData<K>& T) {
  Report rep;
  auto expect_zero = [&](const GradedMap<K>& M, const std::string& what) {
    ++rep.checks;
    if (!M.zero()) rep.fail(what, "nonzero map");
  };
  auto idH = GradedMap<K>::identity(T.H);
  auto idA = GradedMap<K>::identity(T.A);
  expect_zero(add(compose(T.pi, T.psi), scale(K(-1), idH)), "pi . psi = id");
  expect_zero(compose(alg.d, T.psi), "d . psi = 0");
  expect_zero(compose(T.pi, alg.d), "pi . d = 0");
  expect_zero(add(add(compose(alg.d, T.h), compose(T.h, alg.d)),
                  add(scale(K(-1), compose(T.psi, T.pi)), idA)),
              "d h + h d = psi pi - id");
  expect_zero(compose(T.h, T.h), "h . h = 0");
  expect_zero(compose(T.h, T.psi), "h . psi = 0");
  expect_zero(compose(T.pi, T.h), "pi . h = 0");
  return rep;
}

// Class of an exact cocycle; rejects non-cocycles.
template <class K>
Elem<K> cocycle_class(const DGAlgebra<K>& alg, const TransferData<K>& T,
                      const Elem<K>& x) {
  Elem<K> dx = alg.d.apply(x);
  if (!dx.zero())
    throw std::invalid_argument("cocycle_class: d(x) = " + dx.str(*alg.V) +
                                " is nonzero");
  return T.pi.apply(x);
}

template <class K>
Elem<K> representative(const TransferData<K>& T, const Elem<K>& cls) {
  return T.psi.apply(cls);
}

// Deterministic variation of the transfer data: representatives shift by
// exact boundaries (ψ′ = ψ + d∘r) and the transversal shifts inside the
// boundaries (L″ = L + B·s), after which ψ′, π′, h″ are reassembled from the
// perturbed decomposition.  π is unchanged by construction — the new
// transversal and representatives differ from the old ones by boundary
// columns, which π annihilates.  Seed 0 returns the input unchanged.
template <class K>
TransferData<K> vary_homotopy(const DGAlgebra<K>& alg,
                              const TransferData<K>& T, std::uint64_t seed) {
  if (seed == 0) return T;
  std::mt19937_64 rng(seed);
  const long long mod = alg.p;
  auto draw = [&rng, mod]() -> long long {
    if (mod > 0)
      return static_cast<long long>(rng() % static_cast<std::uint64_t>(mod));
    return static_cast<long long>(rng() % 3) - 1;  // rationals: -1, 0, 1
  };

  const GradedSpace<K>& V = *alg.V;
  std::map<int, DegreeSplit<K>> splits = T.split;
  for (auto& [k, S] : splits) {
    // representative shifts: ψ′ column += d(random element one degree down)
    for (int c = 0; c < S.Hs.cols(); ++c) {
      Elem<K> r;
      for (int i : V.slice(k - 1)) {
        long long x = draw();
        if (x) r.c.emplace_back(i, ScalarOps<K>::rebind(K(x), mod));
      }
      Elem<K> dr = alg.d.apply(r);
      for (auto& [t, x] : dr.c) {
        S.Hs(V.pos_in_deg(t), c) = S.Hs(V.pos_in_deg(t), c) + x;
      }
    }
    // transversal shifts: L″ column += random boundary column combination
    for (int c = 0; c < S.L.cols(); ++c) {
      for (int b = 0; b < S.B.cols(); ++b) {
        long long x = draw();
        if (x) S.L.col(c) += S.B.col(b) * ScalarOps<K>::rebind(K(x), mod);
      }
    }
  }
  return detail::assemble_transfer(alg, std::move(splits), T.H);
}

// Product induced on cohomology: μ(α, β) = π(ψα · ψβ), tabulated on every
// pair whose value degree is supported.
template <class K>
MultiMap<K> induced_product(const DGAlgebra<K>& alg, const TransferData<K>& T) {
  MultiMap<K> mu(T.H, T.H, 2, 0);
  const GradedSpace<K>& H = *T.H;
  Scratch<K> acc;
  for (int i = 0; i < H.dim(); ++i) {
    Elem<K> pi_i = T.psi.column(i);
    for (int j = 0; j < H.dim(); ++j) {
      if (H.dim(H.deg(i) + H.deg(j)) == 0) continue;
      Elem<K> prod = alg.product(pi_i, T.psi.column(j), acc);
      Elem<K> val = T.pi.apply(prod);
      if (val.zero()) continue;
      int w[2] = {i, j};
      mu.set(std::span<const int>(w, 2), std::move(val));
    }
  }
  return mu;
}

}  // namespace ainf
