#pragma once
// Stage-wise construction of an isotopy between two minimal structures on
// the same space with the same binary product: a morphism with identity
// linear part whose components f_2, f_3, ... are solved one arity at a time.
//
// Because both differentials vanish, the arity-m morphism identity contains
// f_n only for n < m (the n = m occurrences are glued to a differential),
// so f_n is determined by the arity-(n+1) identity alone: writing the
// identity's defect with f_n = 0 as R, the unknown enters linearly through
//   * insertions  f_n ∘ (1^{⊗i} ⊗ mu_2 ⊗ 1^{⊗(n-1-i)})           (source product)
//   * the splits  mu'_2 ∘ (f_n ⊗ f_1)  and  mu'_2 ∘ (f_1 ⊗ f_n)  (target product)
// with exactly the insertion/split sign exponents of the defect evaluator,
// and the stage system is L(f_n) = -R.  A solved stage leaves every identity
// through arity n+1 exact, so later stages never disturb earlier ones; the
// final candidate is re-checked in full.
//
// When the product has a strict unit spanning degree 0, degrees are
// non-negative, and no higher operation of either structure touches a unit
// word, the stage systems are restricted to the normalized subcomplex (unit
// letters excluded), which shrinks them by orders of magnitude: equations at
// normalized words couple only normalized unknowns, so a full solution
// restricts to a normalized one and an unsolvable restricted stage rules out
// the full stage as well.  The omitted unit-word equations are covered by
// the final full check; if it ever failed, the solve is rerun unrestricted.

#include <optional>
#include <stdexcept>
#include <vector>

#include "bar.hpp"
#include "hochschild.hpp"

namespace ainf {

// A morphism with identity linear part from M1 to M2 satisfying the morphism
// identities through arity N, found stage by stage with free coordinates set
// to zero; nullopt when some stage system is unsolvable.
template <class K>
std::optional<AMorphism<K>> find_isotopy(const AInfinity<K>& M1, const AInfinity<K>& M2, int N) {
  if (M1.V != M2.V)
    throw std::invalid_argument("find_isotopy: structures live on different spaces");
  if (!M1.minimal() || !M2.minimal())
    throw std::invalid_argument("find_isotopy: both structures must be minimal");
  if (N < 1) throw std::invalid_argument("find_isotopy: truncation >= 1");
  if (N > 6) throw std::invalid_argument("find_isotopy: truncation beyond supported arity");
  const MultiMap<K>* p2 = M1.op(2);
  const MultiMap<K>* q2 = M2.op(2);
  const bool z1 = !p2 || p2->zero(), z2 = !q2 || q2->zero();
  if (z1 != z2 || (!z1 && !(*p2 == *q2)))
    throw std::invalid_argument("find_isotopy: binary products differ");

  const GradedSpace<K>& H = *M1.V;

  std::optional<int> unit = (p2 && !p2->zero()) ? strict_unit(*p2) : std::nullopt;
  bool norm_ok = unit.has_value() && H.dim(0) == 1 && H.min_deg() >= 0;
  if (norm_ok) {
    for (const AInfinity<K>* M : {&M1, &M2}) {
      for (const auto& [k, m] : M->mu)
        if (k >= 3 && !vanishes_on_letter(m, *unit)) {
          norm_ok = false;
          break;
        }
      if (!norm_ok) break;
    }
  }
  const long long mod = p2 ? coefficient_modulus<K>(*p2) : 0;

  for (int pass = 0; pass < 2; ++pass) {
    const bool normalized = norm_ok && pass == 0;
    if (pass == 1 && !norm_ok) break;

    AMorphism<K> F(M1, M2, N);
    F.f.emplace(1, identity_component<K>(M1.V));

    bool solved = true;
    for (int n = 2; n + 1 <= N && solved; ++n) {
      detail::CochainBasis<K> basis(H, n, 1 - n, normalized, unit ? *unit : -1);
      detail::CochainSystem<K> sys(basis.cols, mod);

      detail::OpTable<K> sops(F.source, n + 1);
      detail::OpTable<K> tops(F.target, n + 1);
      auto comps = detail::comp_table(F, n + 1);
      Word<K> W;
      Scratch<K> acc, work;
      std::vector<const Elem<K>*> argbuf;
      std::vector<int> uw(static_cast<std::size_t>(n));
      std::vector<std::vector<std::pair<int, K>>> block;
      std::vector<K> rhsv;
      bool consistent = true;

      // the arity-(n+1) identity lands in degree (sum of word degrees) + 1 - n
      for_each_word(H, n + 1, H.min_deg() + n - 1, H.max_deg() + n - 1,
                    [&](std::span<const int> w, int sum) {
        if (!consistent) return;
        if (normalized)
          for (int x : w)
            if (x == *unit) return;
        const int vd = sum + 1 - n;
        const int nv = H.dim(vd);
        if (nv == 0) return;
        W.assign(H, w);
        block.assign(static_cast<std::size_t>(nv), {});

        // unknown through insertions: f_n ∘ (1^{⊗i} ⊗ mu_2 ⊗ 1^{⊗(n-1-i)})
        if (p2 && !p2->zero()) {
          for (int i = 0; i + 2 <= n + 1; ++i) {
            const int pair[2] = {w[i], w[i + 1]};
            const Elem<K>* prod = p2->word(std::span<const int>(pair, 2));
            if (!prod) continue;
            const K sgn = signed_scalar<K>(insertion_exp(W.sd, i, 2));
            for (const auto& [m, a] : prod->c) {
              for (int t = 0; t < i; ++t) uw[static_cast<std::size_t>(t)] = w[t];
              uw[static_cast<std::size_t>(i)] = m;
              for (int t = i + 1; t < n; ++t) uw[static_cast<std::size_t>(t)] = w[t + 1];
              const int col0 = basis.col_base(uw);
              if (col0 < 0) continue;
              for (int t = 0; t < nv; ++t)
                block[static_cast<std::size_t>(t)].emplace_back(col0 + t, sgn * a);
            }
          }
        }
        // unknown through splits: mu'_2(f_n ⊗ id) and mu'_2(id ⊗ f_n),
        // carrying the same extra sign flip as every split in the defect
        if (q2 && !q2->zero()) {
          {
            const int parts[2] = {n, 1};
            const K sgn = signed_scalar<K>(1 + split_exp(W.sd, std::span<const int>(parts, 2)));
            const int col0 = basis.col_base(w.first(static_cast<std::size_t>(n)));
            if (col0 >= 0) {
              const int dv = sum - H.deg(w[n]) + 1 - n;
              const std::vector<int>& sl = H.slice(dv);
              for (std::size_t j = 0; j < sl.size(); ++j) {
                const int pr[2] = {sl[j], w[n]};
                if (const Elem<K>* prod = q2->word(std::span<const int>(pr, 2)))
                  for (const auto& [r, a] : prod->c)
                    block[static_cast<std::size_t>(H.pos_in_deg(r))].emplace_back(
                        col0 + static_cast<int>(j), sgn * a);
              }
            }
          }
          {
            const int parts[2] = {1, n};
            const K sgn = signed_scalar<K>(1 + split_exp(W.sd, std::span<const int>(parts, 2)));
            const int col0 = basis.col_base(w.subspan(1));
            if (col0 >= 0) {
              const int dv = sum - H.deg(w[0]) + 1 - n;
              const std::vector<int>& sl = H.slice(dv);
              for (std::size_t j = 0; j < sl.size(); ++j) {
                const int pr[2] = {w[0], sl[j]};
                if (const Elem<K>* prod = q2->word(std::span<const int>(pr, 2)))
                  for (const auto& [r, a] : prod->c)
                    block[static_cast<std::size_t>(H.pos_in_deg(r))].emplace_back(
                        col0 + static_cast<int>(j), sgn * a);
              }
            }
          }
        }

        // known part: the identity's defect with f_n treated as zero
        Elem<K> R = detail::defect_morphism(sops, tops, comps, W, acc, work, argbuf);
        rhsv.assign(static_cast<std::size_t>(nv), K(0));
        for (const auto& [i, a] : R.c) rhsv[static_cast<std::size_t>(H.pos_in_deg(i))] = K(-1) * a;

        for (int t = 0; t < nv; ++t) {
          for (const auto& [col, a] : block[static_cast<std::size_t>(t)]) sys.coeff(col, a);
          sys.rhs(rhsv[static_cast<std::size_t>(t)]);
          if (!sys.end_row()) {
            consistent = false;
            return;
          }
        }
      });

      if (!consistent) return std::nullopt;
      std::optional<std::vector<K>> x = sys.solve();
      if (!x) return std::nullopt;
      MultiMap<K> tau = detail::assemble_cochain(basis, *x, M1.V, M2.V);
      if (!tau.zero()) F.f.emplace(n, std::move(tau));
    }
    if (!solved) return std::nullopt;

    if (check_morphism(F).ok()) return F;
    if (!normalized)
      throw std::logic_error("find_isotopy: solved components fail the morphism identity");
    // a normalized candidate missed an omitted unit-word equation: rerun full
  }
  return std::nullopt;
}

}  // namespace ainf
