#pragma once
// Multilinear graded maps V^{⊗n} → W of fixed arity and degree, tabulated on
// basis words.  Words pack into one 64-bit key (10 bits per slot), so spaces
// are limited to dimension 1024 and arity to 6 — comfortably above anything
// this library tabulates.

#include "graded.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>

namespace ainf {

inline std::uint64_t pack_word(std::span<const int> w) {
  std::uint64_t key = 0;
  for (std::size_t t = 0; t < w.size(); ++t) {
    key |= static_cast<std::uint64_t>(w[t]) << (10 * t);
  }
  return key;
}

template <class K>
struct MultiMap {
  SpaceRef<K> src, tgt;
  int arity = 1;
  int deg = 0;
  std::unordered_map<std::uint64_t, Elem<K>> vals;  // zero values omitted

  MultiMap() = default;
  MultiMap(SpaceRef<K> s, SpaceRef<K> t, int n, int d)
      : src(s), tgt(t), arity(n), deg(d) {
    if (n < 1 || n > 6) throw std::invalid_argument("MultiMap: arity 1..6");
    if (s->dim() > 1024) throw std::invalid_argument("MultiMap: dim > 1024");
  }

  int word_deg(std::span<const int> w) const {
    int s = 0;
    for (int i : w) s += src->deg(i);
    return s;
  }

  const Elem<K>* word(std::span<const int> w) const {
    auto it = vals.find(pack_word(w));
    return it == vals.end() ? nullptr : &it->second;
  }
  const Elem<K>* word_key(std::uint64_t key) const {
    auto it = vals.find(key);
    return it == vals.end() ? nullptr : &it->second;
  }

  void set(std::span<const int> w, Elem<K> v) {
    if (static_cast<int>(w.size()) != arity)
      throw std::invalid_argument("MultiMap::set: arity mismatch");
    int expect = word_deg(w) + deg;
    for (auto& [i, x] : v.c) {
      (void)x;
      if (tgt->deg(i) != expect)
        throw std::invalid_argument("MultiMap::set: value degree mismatch");
    }
    if (v.zero())
      vals.erase(pack_word(w));
    else
      vals.insert_or_assign(pack_word(w), std::move(v));
  }

  bool zero() const { return vals.empty(); }

  // Full multilinear evaluation on sparse arguments.
  Elem<K> eval(std::span<const Elem<K>* const> args, Scratch<K>& acc) const {
    acc.reset(tgt->dim());
    std::vector<int> w(arity);
    std::vector<std::size_t> pos(arity, 0);
    for (auto* a : args)
      if (a->zero()) return Elem<K>{};
    int t = 0;
    K running = K(1);
    std::vector<K> pre(arity + 1, K(1));
    // odometer over the support product
    while (true) {
      if (t == arity) {
        if (const Elem<K>* v = word(w)) acc.add(pre[arity], *v);
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
    (void)running;
    return acc.gather();
  }

  bool operator==(const MultiMap& o) const {
    if (arity != o.arity || deg != o.deg) return false;
    for (auto& [k, v] : vals) {
      const Elem<K>* ov = o.word_key(k);
      if (!ov || !(*ov == v)) return false;
    }
    for (auto& [k, v] : o.vals) {
      (void)v;
      if (!vals.count(k)) return false;
    }
    return true;
  }
};

template <class K>
MultiMap<K> scale(const K& a, const MultiMap<K>& m) {
  MultiMap<K> out(m.src, m.tgt, m.arity, m.deg);
  for (const auto& [k, v] : m.vals) {
    Elem<K> s = scale(a, v);
    if (!s.zero()) out.vals.emplace(k, std::move(s));
  }
  return out;
}

template <class K>
MultiMap<K> add(const MultiMap<K>& a, const MultiMap<K>& b) {
  if (a.arity != b.arity || a.deg != b.deg)
    throw std::invalid_argument("MultiMap add: shape mismatch");
  MultiMap<K> out = a;
  for (const auto& [k, v] : b.vals) {
    auto it = out.vals.find(k);
    if (it == out.vals.end()) {
      out.vals.emplace(k, v);
    } else {
      Elem<K> s = add(it->second, v);
      if (s.zero())
        out.vals.erase(it);
      else
        it->second = std::move(s);
    }
  }
  return out;
}

template <class K>
MultiMap<K> sub(const MultiMap<K>& a, const MultiMap<K>& b) {
  return add(a, scale(K(-1), b));
}

// Enumerate every arity-n basis word whose total degree lies in [lo, hi],
// pruning whole degree blocks via the space's min/max basis degree.
template <class K, class F>
void for_each_word(const GradedSpace<K>& V, int n, int lo, int hi, F&& fn) {
  if (n <= 0 || V.dim() == 0) return;
  std::vector<int> w(n);
  const int dmin = V.min_deg(), dmax = V.max_deg();
  auto rec = [&](auto&& self, int t, int sum) -> void {
    if (t == n) {
      if (sum >= lo && sum <= hi) fn(std::span<const int>(w), sum);
      return;
    }
    int rest = n - t - 1;
    for (int i = 0; i < V.dim(); ++i) {
      int s = sum + V.deg(i);
      if (s + rest * dmin > hi) continue;
      if (s + rest * dmax < lo) continue;
      w[t] = i;
      self(self, t + 1, s);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace ainf
