#pragma once
// Randomized dg-algebra fixtures: free truncated algebras on a few graded
// generators.  The basis consists of all generator words of total degree at
// most a cutoff (plus the empty word, a strict unit), the product is
// concatenation (zero past the cutoff — high-degree words span an ideal, so
// associativity survives truncation), and each generator's differential is a
// random cocycle in the subalgebra spanned by strictly earlier generators.
// Triangularity plus the Leibniz extension makes d² = 0 automatic, and every
// instance is validated by the caller.

#include <ainf/dg_algebra.hpp>
#include <ainf/linalg.hpp>

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using namespace ainf;

template <class K>
K random_scalar(std::mt19937& rng, long long p) {
  if constexpr (std::is_same_v<K, Fp>) {
    return Fp(static_cast<long long>(rng() % static_cast<unsigned>(p)), p);
  } else {
    static const int pool[] = {-2, -1, 0, 1, 2, 3};
    return K(pool[rng() % 6]);
  }
}

template <class K>
K random_nonzero_scalar(std::mt19937& rng, long long p) {
  while (true) {
    K x = random_scalar<K>(rng, p);
    if (!is_zero(x)) return x;
  }
}

template <class K>
DGAlgebra<K> random_dg_algebra(std::mt19937& rng, long long p) {
  struct Cfg {
    std::vector<int> gdeg;
    int cut;
  };
  static const std::vector<Cfg> cfgs = {
      {{1, 1}, 2},     //  7 words
      {{1, 2}, 3},     //  7
      {{1, 1, 2}, 2},  //  8
      {{1}, 4},        //  5 (no admissible differential: minimal instance)
      {{1, 2}, 4},     // 12
  };
  const Cfg& cfg = cfgs[rng() % cfgs.size()];
  const int G = static_cast<int>(cfg.gdeg.size());
  static const char* gname[] = {"x", "y", "z"};

  // All generator words of degree <= cut, by nondecreasing length.
  std::vector<std::vector<int>> words = {{}};
  std::vector<int> wdeg = {0};
  for (std::size_t head = 0; head < words.size(); ++head) {
    for (int g = 0; g < G; ++g) {
      const int d = wdeg[head] + cfg.gdeg[static_cast<std::size_t>(g)];
      if (d > cfg.cut) continue;
      std::vector<int> w = words[head];
      w.push_back(g);
      // breadth-first growth appends each word exactly once per suffix letter,
      // but the same word can arise only through its unique spelling, so no
      // duplicate check is needed in a free algebra
      words.push_back(std::move(w));
      wdeg.push_back(d);
    }
  }
  // appending on the right enumerates each word once via its own prefix chain,
  // but prefix order interleaves degrees; sort by (degree, spelling) for a
  // stable, readable basis
  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (wdeg[a] != wdeg[b]) return wdeg[a] < wdeg[b];
    return words[a] < words[b];
  });

  std::vector<BasisElt> basis;
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> word_of;
  for (std::size_t t = 0; t < order.size(); ++t) {
    const std::vector<int>& w = words[order[t]];
    std::string nm;
    for (int g : w) nm += gname[g];
    if (nm.empty()) nm = "1";
    basis.push_back({nm, wdeg[order[t]]});
    index.emplace(w, static_cast<int>(t));
    word_of.push_back(w);
  }

  auto space = std::make_shared<GradedSpace<K>>(std::move(basis));
  DGAlgebra<K> A(space, p);

  // product: concatenation, zero past the cutoff
  for (int i = 0; i < space->dim(); ++i) {
    for (int j = 0; j < space->dim(); ++j) {
      if (space->deg(i) + space->deg(j) > cfg.cut) continue;
      std::vector<int> cat = word_of[static_cast<std::size_t>(i)];
      cat.insert(cat.end(), word_of[static_cast<std::size_t>(j)].begin(),
                 word_of[static_cast<std::size_t>(j)].end());
      const int w[2] = {i, j};
      A.mul.set(std::span<const int>(w, 2),
                Elem<K>::unit(index.at(cat), K(1)));
    }
  }

  // differential: d(1) = 0; each generator gets a random cocycle of the right
  // degree supported on words in strictly earlier generators, then Leibniz
  // determines d on every longer word (words are sorted by degree, and
  // d(g . rest) needs d only on the strictly shorter word `rest`)
  std::vector<Elem<K>> dval(static_cast<std::size_t>(space->dim()));
  std::vector<char> dset(static_cast<std::size_t>(space->dim()), 0);
  dset[static_cast<std::size_t>(index.at({}))] = 1;

  Scratch<K> acc;
  auto leibniz = [&](auto&& self, int wi) -> const Elem<K>& {
    if (dset[static_cast<std::size_t>(wi)]) return dval[static_cast<std::size_t>(wi)];
    const std::vector<int>& w = word_of[static_cast<std::size_t>(wi)];
    const int g = w[0];
    std::vector<int> rest(w.begin() + 1, w.end());
    const int gi = index.at({g});
    const int ri = index.at(rest);
    const Elem<K>& dg = self(self, gi);
    const Elem<K>& dr = self(self, ri);
    Elem<K> left = A.product(dg, Elem<K>::unit(ri, K(1)), acc);
    Elem<K> right = A.product(Elem<K>::unit(gi, K(1)), dr, acc);
    dval[static_cast<std::size_t>(wi)] =
        add(left, scale(signed_scalar<K>(space->deg(gi)), right));
    dset[static_cast<std::size_t>(wi)] = 1;
    return dval[static_cast<std::size_t>(wi)];
  };

  for (int g = 0; g < G; ++g) {
    const int gi = index.at({g});
    const int want = space->deg(gi) + 1;
    // candidate support: words of degree deg(g)+1 in generators < g
    std::vector<int> elig;
    for (int i = 0; i < space->dim(); ++i) {
      if (space->deg(i) != want) continue;
      bool early = !word_of[static_cast<std::size_t>(i)].empty();
      for (int h : word_of[static_cast<std::size_t>(i)])
        if (h >= g) early = false;
      if (early) elig.push_back(i);
    }
    Elem<K> dg;
    if (!elig.empty()) {
      // restrict d to the eligible span (closed under d: letters stay < g)
      Mat<K> M = Mat<K>::Zero(space->dim(), static_cast<int>(elig.size()));
      for (std::size_t c = 0; c < elig.size(); ++c) {
        const Elem<K>& col = leibniz(leibniz, elig[c]);
        for (const auto& [r, a] : col.c) M(r, static_cast<int>(c)) = a;
      }
      std::vector<Vec<K>> ker = nullspace_basis(M);
      acc.reset(space->dim());
      for (const Vec<K>& kv : ker) {
        const K coef = random_scalar<K>(rng, p);
        if (is_zero(coef)) continue;
        for (std::size_t c = 0; c < elig.size(); ++c)
          if (!is_zero(kv(static_cast<int>(c)))) acc.add(elig[c], coef * kv(static_cast<int>(c)));
      }
      dg = acc.gather();
    }
    for (const auto& [r, a] : dg.c) A.d.set_entry(r, gi, a);
    dval[static_cast<std::size_t>(gi)] = std::move(dg);
    dset[static_cast<std::size_t>(gi)] = 1;
  }
  for (int i = 0; i < space->dim(); ++i) {
    if (word_of[static_cast<std::size_t>(i)].size() <= 1) continue;  // unit, generators done
    const Elem<K>& di = leibniz(leibniz, i);
    for (const auto& [r, a] : di.c) A.d.set_entry(r, i, a);
  }

  return A;
}

}  // namespace fixtures
