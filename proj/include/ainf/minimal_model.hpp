#pragma once
// Canonical minimal model of a dg algebra from a cohomology transfer datum.
//
// Stage n rearranges the arity-n morphism equation: with all operations and
// components of arity < n known, the obstruction
//
//   Φ_n(w) = Σ (insertion terms through μ_k, 2 ≤ k ≤ n−1, into ψ_{n−k+1})
//          − Σ_{a=1}^{n−1} (product terms ψ_a ⊗ ψ_{n−a})        (desuspended)
//
// is a cocycle in the algebra (asserted at every word), and
//
//   μ_n := −π∘Φ_n,   ψ_n := −h∘Φ_n
//
// satisfies  dψ_n = ψμ_n + Φ_n  exactly, because ψπ − id = dh + hd.  Values
// are produced on demand: the value at a word only consumes lower-arity
// values at contiguous subwords (with one slot substituted along supports),
// so sparse queries stay sparse; full per-arity tabulation drives the
// packaged model.

#include "bar.hpp"
#include "transfer_data.hpp"

#include <unordered_set>

namespace ainf {

template <class K>
struct CanonicalModel {
  AInfinity<K> model;       // on H, zero differential
  AMorphism<K> connecting;  // model -> embedded dg algebra
  TransferData<K> transfer;
};

template <class K>
class ModelBuilder {
 public:
  // alg must outlive the builder.
  ModelBuilder(const DGAlgebra<K>& alg, TransferData<K> t, int n)
      : A(alg), T(std::move(t)), N(n), complete_(static_cast<std::size_t>(n) + 1, false) {
    if (n < 2) throw std::invalid_argument("ModelBuilder: truncation >= 2");
    psi_.emplace(1, as_multimap(T.psi));
    complete_[1] = true;
  }

  const TransferData<K>& transfer() const { return T; }
  int truncation() const { return N; }

  // Operation / component value at a basis word (computing it if needed).
  const Elem<K>& mu_value(int n, std::span<const int> w) {
    if (n == 1) return zero_elem();
    ensure(n, w);
    return lookup(mu_, n, w);
  }
  const Elem<K>& psi_value(int n, std::span<const int> w) {
    if (n != 1) ensure(n, w);
    return lookup(psi_, n, w);
  }

  // Multilinear extensions over sparse arguments.
  Elem<K> mu_eval(int n, std::span<const Elem<K>* const> args) {
    return eval_ensured(n, args, /*component=*/false);
  }
  Elem<K> psi_eval(int n, std::span<const Elem<K>* const> args) {
    return eval_ensured(n, args, /*component=*/true);
  }

  // The arity-n obstruction at a basis word, recomputed from scratch (public
  // so its defining identities can be asserted independently in tests).
  Elem<K> phi_at(int n, std::span<const int> w) {
    check_arity(n, w);
    Word<K> W;
    W.assign(*T.H, w);
    const long long base = W.down();
    Scratch<K> acc, work;
    acc.reset(A.V->dim());
    for (int k = 2; k <= n - 1; ++k) {
      const int l = n - k + 1;
      for (int i = 0; i + k <= n; ++i) {
        const Elem<K>& mid = mu_value(k, w.subspan(i, k));
        if (mid.zero()) continue;
        const long long e = base + insertion_exp(W.sd, i, k);
        add_patched_psi(l, w.first(i), mid, w.subspan(i + k), e, acc);
      }
    }
    for (int a = 1; a <= n - 1; ++a) {
      const int parts_arr[2] = {a, n - a};
      const std::span<const int> parts(parts_arr, 2);
      const Elem<K>& v1 = psi_value(a, w.first(a));
      if (v1.zero()) continue;
      const Elem<K>& v2 = psi_value(n - a, w.subspan(a));
      if (v2.zero()) continue;
      const long long e = base + split_exp(W.sd, parts) + 1;
      const Elem<K>* args[2] = {&v1, &v2};
      Elem<K> prod = A.mul.eval(std::span<const Elem<K>* const>(args, 2), work);
      if (!prod.zero()) acc.add(signed_scalar<K>(e), prod);
    }
    return acc.gather();
  }

  // Tabulate every arity ≤ n on all words that can carry a nonzero value.
  void tabulate(int n) {
    for (int k = 2; k <= n; ++k) {
      if (complete_[k]) continue;
      for_each_word(*T.H, k, A.V->min_deg() + k - 2, A.V->max_deg() + k - 2,
                    [&](std::span<const int> w, int) { ensure(k, w); });
      complete_[k] = true;
    }
  }

  // Number of words evaluated so far at arity n (lazy-use diagnostics).
  std::size_t computed(int n) const {
    auto it = done_.find(n);
    return it == done_.end() ? 0 : it->second.size();
  }

  CanonicalModel<K> package() {
    tabulate(N);
    AInfinity<K> model(T.H, N);
    for (auto& [n, m] : mu_)
      if (!m.zero()) model.mu.emplace(n, m);
    AMorphism<K> conn(model, from_dg(A, N), N);
    for (auto& [n, m] : psi_)
      if (!m.zero()) conn.f.emplace(n, m);
    return CanonicalModel<K>{std::move(model), std::move(conn), T};
  }

 private:
  const DGAlgebra<K>& A;
  TransferData<K> T;
  int N;
  std::map<int, MultiMap<K>> mu_, psi_;
  std::map<int, std::unordered_set<std::uint64_t>> done_;
  std::vector<char> complete_;

  static const Elem<K>& zero_elem() {
    static const Elem<K> z{};
    return z;
  }

  void check_arity(int n, std::span<const int> w) const {
    if (n < 2 || n > N)
      throw std::invalid_argument("ModelBuilder: arity outside truncation");
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("ModelBuilder: word length mismatch");
  }

  const Elem<K>& lookup(std::map<int, MultiMap<K>>& store, int n,
                        std::span<const int> w) const {
    auto it = store.find(n);
    if (it == store.end()) return zero_elem();
    const Elem<K>* v = it->second.word(w);
    return v ? *v : zero_elem();
  }

  MultiMap<K>& slot(std::map<int, MultiMap<K>>& store, int n, int deg,
                    SpaceRef<K> tgt) {
    auto it = store.find(n);
    if (it == store.end())
      it = store.emplace(n, MultiMap<K>(T.H, tgt, n, deg)).first;
    return it->second;
  }

  void ensure(int n, std::span<const int> w) {
    check_arity(n, w);
    if (complete_[n]) return;
    const std::uint64_t key = pack_word(w);
    auto& done = done_[n];
    if (done.count(key)) return;
    int wd = 0;
    for (int i : w) wd += T.H->deg(i);
    const int phi_deg = wd + 2 - n;
    if (phi_deg >= A.V->min_deg() && phi_deg <= A.V->max_deg()) {
      Elem<K> phi = phi_at(n, w);
      if (!A.d.apply(phi).zero())
        throw std::logic_error("minimal model: obstruction is not a cocycle at arity " +
                               std::to_string(n) + " on " + word_str(*T.H, w));
      if (!phi.zero()) {
        Elem<K> m = scale(K(-1), T.pi.apply(phi));
        Elem<K> p = scale(K(-1), T.h.apply(phi));
        if (!m.zero()) slot(mu_, n, 2 - n, T.H).set(w, std::move(m));
        if (!p.zero()) slot(psi_, n, 1 - n, A.V).set(w, std::move(p));
      }
    }
    done.insert(key);
  }

  void add_patched_psi(int l, std::span<const int> pre, const Elem<K>& mid,
                       std::span<const int> post, long long e, Scratch<K>& acc) {
    std::vector<int> word(static_cast<std::size_t>(l));
    std::copy(pre.begin(), pre.end(), word.begin());
    std::copy(post.begin(), post.end(), word.begin() + pre.size() + 1);
    const K s = signed_scalar<K>(e);
    for (const auto& [r, c] : mid.c) {
      word[pre.size()] = r;
      const Elem<K>& val = psi_value(l, word);
      if (!val.zero()) acc.add(s * c, val);
    }
  }

  Elem<K> eval_ensured(int n, std::span<const Elem<K>* const> args, bool component) {
    if (static_cast<int>(args.size()) != n)
      throw std::invalid_argument("ModelBuilder: arity mismatch");
    for (auto* a : args)
      if (a->zero()) return {};
    Scratch<K> acc;
    acc.reset(component ? A.V->dim() : T.H->dim());
    std::vector<int> w(static_cast<std::size_t>(n));
    std::vector<std::size_t> pos(static_cast<std::size_t>(n), 0);
    std::vector<K> pre(static_cast<std::size_t>(n) + 1, K(1));
    int t = 0;
    while (true) {
      if (t == n) {
        const Elem<K>& v = component ? psi_value(n, w) : mu_value(n, w);
        if (!v.zero()) acc.add(pre[static_cast<std::size_t>(n)], v);
        --t;
        ++pos[t];
      }
      while (t >= 0 && pos[t] == args[t]->c.size()) {
        pos[t] = 0;
        --t;
        if (t >= 0) ++pos[t];
      }
      if (t < 0) break;
      w[t] = args[t]->c[pos[t]].first;
      pre[t + 1] = pre[t] * args[t]->c[pos[t]].second;
      ++t;
    }
    return acc.gather();
  }
};

template <class K>
CanonicalModel<K> canonical_minimal_model(const DGAlgebra<K>& A,
                                          const TransferData<K>& T, int N) {
  ModelBuilder<K> B(A, T, N);
  return B.package();
}

}  // namespace ainf
