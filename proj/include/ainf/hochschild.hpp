#pragma once
// Hochschild cochain calculus for a graded associative product.
//
// A degree-s cochain in arity k is a MultiMap with src == tgt == H, arity k,
// deg s.  The differential of such a cochain c against a product mu2
// (arity 2, degree 0, associative) is the arity-(k+1), degree-s cochain
//
//   (delta c)(x_0,...,x_k) = -(-1)^{s*|x_0|} x_0 * c(x_1,...,x_k)
//                          + sum_{i=0}^{k-1} (-1)^i c(..., x_i * x_{i+1}, ...)
//                          + (-1)^k c(x_0,...,x_{k-1}) * x_k,
//
// where the merge at 0-based position i carries sign (-1)^i.  delta o delta
// = 0 whenever mu2 is associative.
//
// hochschild_cobound solves delta(u) = target for u exactly, streaming one
// linear equation per (word, value coordinate) over the degree window where
// the unknown can be nonzero.  When the product has a strict unit that spans
// the whole degree-0 slice, all degrees are non-negative, and the target
// vanishes on every word containing that unit, the solve is restricted to
// the normalized subcomplex (no unit letter in any word).  Under those
// hypotheses the equations at normalized words couple only normalized
// unknowns, so a full solution restricts to a normalized one (the restricted
// verdict agrees with the full complex), and normalized cochains are closed
// under delta, so a normalized witness solves the full equation.  Every
// witness is re-checked against the definition before being returned.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "mod2.hpp"
#include "multimap.hpp"

namespace ainf {

template <class K>
MultiMap<K> hochschild_differential(const MultiMap<K>& mu2, const MultiMap<K>& c) {
  if (mu2.arity != 2 || mu2.deg != 0)
    throw std::invalid_argument("hochschild_differential: product must have arity 2, degree 0");
  if (mu2.src != mu2.tgt || c.src != c.tgt || mu2.src != c.src)
    throw std::invalid_argument("hochschild_differential: cochain and product must live on one space");
  const int k = c.arity;
  if (k + 1 > 6)
    throw std::invalid_argument("hochschild_differential: resulting arity exceeds supported maximum");
  const GradedSpace<K>& H = *mu2.src;
  const int s = c.deg;
  MultiMap<K> out(c.src, c.tgt, k + 1, s);
  if (H.dim() == 0) return out;

  Scratch<K> acc;
  std::vector<int> sub(static_cast<std::size_t>(k));
  for_each_word(H, k + 1, H.min_deg() - s, H.max_deg() - s, [&](std::span<const int> w, int) {
    acc.reset(H.dim());
    // x_0 * c(tail), sign -(-1)^{s*|x_0|}
    if (const Elem<K>* tail = c.word(w.subspan(1))) {
      const K sgn = signed_scalar<K>(1 + static_cast<long long>(s) * H.deg(w[0]));
      for (const auto& [i, a] : tail->c) {
        const int pair[2] = {w[0], i};
        if (const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2)))
          for (const auto& [j, b] : prod->c) acc.add(j, sgn * a * b);
      }
    }
    // merges: c(..., x_i * x_{i+1}, ...) with sign (-1)^i
    for (int i = 0; i < k; ++i) {
      const int pair[2] = {w[i], w[i + 1]};
      const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2));
      if (!prod) continue;
      const K sgn = signed_scalar<K>(i);
      for (const auto& [m, a] : prod->c) {
        for (int t = 0; t < i; ++t) sub[static_cast<std::size_t>(t)] = w[t];
        sub[static_cast<std::size_t>(i)] = m;
        for (int t = i + 1; t < k; ++t) sub[static_cast<std::size_t>(t)] = w[t + 1];
        if (const Elem<K>* v = c.word(sub))
          for (const auto& [j, b] : v->c) acc.add(j, sgn * a * b);
      }
    }
    // c(head) * x_k, sign (-1)^k
    if (const Elem<K>* head = c.word(w.first(static_cast<std::size_t>(k)))) {
      const K sgn = signed_scalar<K>(k);
      for (const auto& [i, a] : head->c) {
        const int pair[2] = {i, w[k]};
        if (const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2)))
          for (const auto& [j, b] : prod->c) acc.add(j, sgn * a * b);
      }
    }
    Elem<K> v = acc.gather();
    if (!v.c.empty()) out.set(w, std::move(v));
  });
  return out;
}

// Index of a basis element of degree 0 that multiplies as a strict two-sided
// unit under mu2, if one exists.
template <class K>
std::optional<int> strict_unit(const MultiMap<K>& mu2) {
  const GradedSpace<K>& H = *mu2.src;
  for (int e : H.slice(0)) {
    bool ok = true;
    for (int x = 0; x < H.dim() && ok; ++x) {
      const Elem<K> want = Elem<K>::unit(x, K(1));
      const int le[2] = {e, x}, ri[2] = {x, e};
      const Elem<K>* l = mu2.word(std::span<const int>(le, 2));
      const Elem<K>* r = mu2.word(std::span<const int>(ri, 2));
      ok = l && r && *l == want && *r == want;
    }
    if (ok) return e;
  }
  return std::nullopt;
}

inline bool word_key_contains(std::uint64_t key, int arity, int letter) {
  for (int t = 0; t < arity; ++t)
    if (static_cast<int>((key >> (10 * t)) & 0x3ff) == letter) return true;
  return false;
}

template <class K>
bool vanishes_on_letter(const MultiMap<K>& m, int letter) {
  for (const auto& [key, v] : m.vals)
    if (!v.c.empty() && word_key_contains(key, m.arity, letter)) return false;
  return true;
}

// First bound modulus found among the coefficients, 0 if none (or K is not a
// prime field).  Used only to pick the packed mod-2 backend.
template <class K>
long long coefficient_modulus(const MultiMap<K>& m) {
  if constexpr (std::is_same_v<K, Fp>) {
    for (const auto& [key, v] : m.vals) {
      (void)key;
      for (const auto& [i, a] : v.c) {
        (void)i;
        if (a.p) return a.p;
      }
    }
  }
  return 0;
}

namespace detail {

// Column layout for an unknown arity-k, degree-s cochain: one column per
// (word, value coordinate), with word letters running over the reachable
// degree window and value coordinates over the forced value degree's slice.
template <class K>
struct CochainBasis {
  const GradedSpace<K>& H;
  int arity, deg;
  bool normalized;
  int unit;
  std::vector<std::uint64_t> words;      // packed words, in for_each_word order
  std::vector<int> vdeg;                 // value degree of each word
  std::vector<int> off;                  // first column of each word's block
  std::map<std::uint64_t, int> index;    // packed word -> position in `words`
  int cols = 0;

  CochainBasis(const GradedSpace<K>& space, int k, int s, bool norm, int unit_idx)
      : H(space), arity(k), deg(s), normalized(norm), unit(unit_idx) {
    for_each_word(H, k, H.min_deg() - s, H.max_deg() - s, [&](std::span<const int> w, int sum) {
      if (normalized)
        for (int x : w)
          if (x == unit) return;
      const int vd = sum + s;
      const int n = H.dim(vd);
      if (n == 0) return;
      const std::uint64_t key = pack_word(w);
      index.emplace(key, static_cast<int>(words.size()));
      words.push_back(key);
      vdeg.push_back(vd);
      off.push_back(cols);
      cols += n;
    });
  }

  // First column of the word's block, or -1 when the word is outside the
  // basis (degree window miss or normalized exclusion).  Coordinate t of the
  // value (position inside its degree slice) lives at column base + t.
  int col_base(std::span<const int> w) const {
    auto it = index.find(pack_word(w));
    return it == index.end() ? -1 : off[static_cast<std::size_t>(it->second)];
  }
};

// Rebuild the cochain a solution vector encodes under a CochainBasis layout.
template <class K>
MultiMap<K> assemble_cochain(const CochainBasis<K>& basis, const std::vector<K>& x,
                             SpaceRef<K> src, SpaceRef<K> tgt) {
  MultiMap<K> u(src, tgt, basis.arity, basis.deg);
  std::vector<int> letters(static_cast<std::size_t>(basis.arity));
  for (std::size_t i = 0; i < basis.words.size(); ++i) {
    const std::uint64_t key = basis.words[i];
    for (int t = 0; t < basis.arity; ++t)
      letters[static_cast<std::size_t>(t)] = static_cast<int>((key >> (10 * t)) & 0x3ff);
    Elem<K> v;
    const std::vector<int>& sl = basis.H.slice(basis.vdeg[i]);
    for (std::size_t t = 0; t < sl.size(); ++t) {
      const K& a = x[static_cast<std::size_t>(basis.off[i]) + t];
      if (!is_zero(a)) v.c.emplace_back(sl[t], a);
    }
    std::sort(v.c.begin(), v.c.end(),
              [](const std::pair<int, K>& a, const std::pair<int, K>& b) { return a.first < b.first; });
    if (!v.c.empty()) u.set(letters, std::move(v));
  }
  return u;
}

// Streaming exact solver for one linear system: packed GF(2) elimination
// when the scalars are F_2, dense exact elimination otherwise (guarded by a
// size limit; every bundled and generated input stays far below it).
template <class K>
class CochainSystem {
 public:
  CochainSystem(int ncols, long long mod) : ncols_(ncols), mod_(mod) {
    if constexpr (std::is_same_v<K, Fp>) {
      if (mod_ == 2) m2_.emplace(ncols);
    }
  }

  void coeff(int col, const K& a) {
    if (m2_) {
      if (odd_fp(a)) row_cols_.push_back(col);
    } else {
      row_entries_.emplace_back(col, a);
    }
  }

  void rhs(const K& a) {
    if (m2_) {
      if (odd_fp(a)) row_rhs_bit_ = !row_rhs_bit_;
    } else {
      row_rhs_ = row_rhs_ + a;
    }
  }

  // Finish the current equation; returns false once the system is known
  // inconsistent (callers may stop early).
  bool end_row() {
    if (m2_) {
      const bool ok = m2_->add(row_cols_, row_rhs_bit_);
      row_cols_.clear();
      row_rhs_bit_ = false;
      return ok;
    }
    dense_rows_.push_back(std::move(row_entries_));
    dense_rhs_.push_back(row_rhs_);
    row_entries_.clear();
    row_rhs_ = K(0);
    if (static_cast<long long>(dense_rows_.size()) * std::max(ncols_, 1) > kDenseLimit)
      throw std::invalid_argument("cochain solve: dense system too large for the exact backend");
    return true;
  }

  std::optional<std::vector<K>> solve() {
    if (m2_) {
      if (!m2_->consistent()) return std::nullopt;
      std::vector<std::uint8_t> bits = m2_->solve();
      std::vector<K> x(static_cast<std::size_t>(ncols_), K(0));
      for (int j = 0; j < ncols_; ++j)
        if (bits[static_cast<std::size_t>(j)]) x[static_cast<std::size_t>(j)] = fp_one();
      return x;
    }
    const int rows = static_cast<int>(dense_rows_.size());
    Mat<K> M = Mat<K>::Zero(rows, ncols_);
    Vec<K> b = Vec<K>::Zero(rows);
    for (int r = 0; r < rows; ++r) {
      for (const auto& [c, a] : dense_rows_[static_cast<std::size_t>(r)]) M(r, c) = M(r, c) + a;
      b(r) = dense_rhs_[static_cast<std::size_t>(r)];
    }
    LinearSolution<K> sol = solve_linear(M, b);
    if (!sol.consistent) return std::nullopt;
    std::vector<K> x(static_cast<std::size_t>(ncols_));
    for (int j = 0; j < ncols_; ++j) x[static_cast<std::size_t>(j)] = sol.particular(j);
    return x;
  }

 private:
  static bool odd_fp(const K& a) {
    if constexpr (std::is_same_v<K, Fp>) {
      return ((a.v % 2) + 2) % 2 == 1;
    } else {
      (void)a;
      return false;
    }
  }
  K fp_one() const {
    if constexpr (std::is_same_v<K, Fp>) {
      return Fp(1, mod_);
    } else {
      return K(1);
    }
  }

  static constexpr long long kDenseLimit = 4'000'000;
  int ncols_;
  long long mod_;
  std::optional<Mod2Solver> m2_;
  std::vector<int> row_cols_;
  bool row_rhs_bit_ = false;
  std::vector<std::pair<int, K>> row_entries_;
  K row_rhs_ = K(0);
  std::vector<std::vector<std::pair<int, K>>> dense_rows_;
  std::vector<K> dense_rhs_;
};

}  // namespace detail

// Solve delta(u) = target for an arity-(target.arity - 1) cochain u of the
// same degree.  Returns the witness with free coordinates set to zero, or
// nullopt when the target is not a coboundary.  The witness is verified
// against hochschild_differential before being returned.
template <class K>
std::optional<MultiMap<K>> hochschild_cobound(const MultiMap<K>& mu2, const MultiMap<K>& target) {
  if (mu2.arity != 2 || mu2.deg != 0)
    throw std::invalid_argument("hochschild_cobound: product must have arity 2, degree 0");
  if (mu2.src != mu2.tgt || target.src != target.tgt || mu2.src != target.src)
    throw std::invalid_argument("hochschild_cobound: cochain and product must live on one space");
  const int k = target.arity - 1;
  if (k < 1) throw std::invalid_argument("hochschild_cobound: target arity must be at least 2");
  const GradedSpace<K>& H = *mu2.src;
  const int s = target.deg;

  const std::optional<int> unit = strict_unit(mu2);
  bool normalized = unit.has_value() && H.dim(0) == 1 && H.min_deg() >= 0 &&
                    vanishes_on_letter(target, *unit);

  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt == 1) {
      if (!normalized) break;  // the full complex already ran
      normalized = false;      // normalized witness failed verification: retry full
    }
    detail::CochainBasis<K> basis(H, k, s, normalized, unit ? *unit : -1);
    detail::CochainSystem<K> sys(basis.cols, coefficient_modulus<K>(mu2));

    // One equation block per arity-(k+1) word in the window; each block has
    // one scalar row per value coordinate in the equation's value degree.
    bool consistent = true;
    std::vector<int> sub(static_cast<std::size_t>(k));
    std::vector<std::vector<std::pair<int, K>>> block;
    std::vector<K> rhsv;
    for_each_word(H, k + 1, H.min_deg() - s, H.max_deg() - s, [&](std::span<const int> w, int sum) {
      if (!consistent) return;
      if (normalized)
        for (int x : w)
          if (x == *unit) return;
      const int vd = sum + s;
      const int nv = H.dim(vd);
      if (nv == 0) return;
      block.assign(static_cast<std::size_t>(nv), {});

      // term 1: -(-1)^{s|x_0|} x_0 * u(x_1..x_k)
      {
        const int dv = sum - H.deg(w[0]) + s;
        const int base_col = basis.col_base(w.subspan(1));
        if (base_col >= 0 && H.dim(dv) > 0) {
          const K sgn = signed_scalar<K>(1 + static_cast<long long>(s) * H.deg(w[0]));
          const std::vector<int>& sl = H.slice(dv);
          for (std::size_t j = 0; j < sl.size(); ++j) {
            const int pair[2] = {w[0], sl[j]};
            if (const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2)))
              for (const auto& [r, a] : prod->c)
                block[static_cast<std::size_t>(H.pos_in_deg(r))].emplace_back(
                    base_col + static_cast<int>(j), sgn * a);
          }
        }
      }
      // merges: (-1)^i u(..., x_i x_{i+1}, ...) -- identity on value coordinates
      for (int i = 0; i < k; ++i) {
        const int pair[2] = {w[i], w[i + 1]};
        const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2));
        if (!prod) continue;
        const K sgn = signed_scalar<K>(i);
        for (const auto& [m, a] : prod->c) {
          for (int t = 0; t < i; ++t) sub[static_cast<std::size_t>(t)] = w[t];
          sub[static_cast<std::size_t>(i)] = m;
          for (int t = i + 1; t < k; ++t) sub[static_cast<std::size_t>(t)] = w[t + 1];
          const int col0 = basis.col_base(sub);
          if (col0 < 0) continue;
          for (int t = 0; t < nv; ++t)
            block[static_cast<std::size_t>(t)].emplace_back(col0 + t, sgn * a);
        }
      }
      // last term: (-1)^k u(x_0..x_{k-1}) * x_k
      {
        const int dv = sum - H.deg(w[k]) + s;
        const int base_col = basis.col_base(w.first(static_cast<std::size_t>(k)));
        if (base_col >= 0 && H.dim(dv) > 0) {
          const K sgn = signed_scalar<K>(k);
          const std::vector<int>& sl = H.slice(dv);
          for (std::size_t j = 0; j < sl.size(); ++j) {
            const int pair[2] = {sl[j], w[k]};
            if (const Elem<K>* prod = mu2.word(std::span<const int>(pair, 2)))
              for (const auto& [r, a] : prod->c)
                block[static_cast<std::size_t>(H.pos_in_deg(r))].emplace_back(
                    base_col + static_cast<int>(j), sgn * a);
          }
        }
      }

      rhsv.assign(static_cast<std::size_t>(nv), K(0));
      if (const Elem<K>* rv = target.word(w))
        for (const auto& [i, a] : rv->c) rhsv[static_cast<std::size_t>(H.pos_in_deg(i))] = a;
      for (int t = 0; t < nv; ++t) {
        for (const auto& [col, a] : block[static_cast<std::size_t>(t)]) sys.coeff(col, a);
        sys.rhs(rhsv[static_cast<std::size_t>(t)]);
        if (!sys.end_row()) {
          consistent = false;
          return;
        }
      }
    });

    // Inconsistency is a genuine verdict in either mode: a full solution
    // would restrict to a normalized one, so the restricted system being
    // unsolvable rules out the full complex as well.
    if (!consistent) return std::nullopt;
    std::optional<std::vector<K>> x = sys.solve();
    if (!x) return std::nullopt;

    MultiMap<K> u = detail::assemble_cochain(basis, *x, target.src, target.tgt);
    if (hochschild_differential(mu2, u) == target) return u;
    if (!normalized)
      throw std::logic_error("hochschild_cobound: solver produced a non-solution on the full complex");
    // fall through: retry on the full complex
  }
  return std::nullopt;
}

// Whether two Hochschild cocycles of equal arity and degree differ by a
// coboundary; on success the second component is a cochain cobounding a - b.
template <class K>
std::pair<bool, MultiMap<K>> universal_massey_class(const MultiMap<K>& mu2, const MultiMap<K>& a,
                                                    const MultiMap<K>& b) {
  if (!hochschild_differential(mu2, a).zero() || !hochschild_differential(mu2, b).zero())
    throw std::invalid_argument("universal_massey_class: both inputs must be Hochschild cocycles");
  MultiMap<K> diff = sub(a, b);
  std::optional<MultiMap<K>> w = hochschild_cobound(mu2, diff);
  if (!w) return {false, MultiMap<K>(a.src, a.tgt, a.arity - 1, a.deg)};
  return {true, std::move(*w)};
}

}  // namespace ainf
