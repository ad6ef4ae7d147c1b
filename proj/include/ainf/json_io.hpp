#pragma once
// JSON documents describing dg algebras, either by an explicit basis with a
// full product table or as a truncated free (tensor) algebra presentation
// that this layer expands.
//
// Document shape:
//   {
//     "field": "Q" | "Fp:<prime>",
//     "basis": [{"name": "x", "degree": 1}, ...],
//     "differential": {"x": {"y": 1, "z": "1/2"}, ...},
//     "product": [{"left": "x", "right": "y", "value": {"z": 2}}, ...]
//   }
// or
//   {
//     "field": ...,
//     "free": {
//       "generators": [{"name": "a", "degree": 1}, ...],
//       "differential": {"u": {"a b": 1}, ...},
//       "truncation": 3
//     }
//   }
//
// A free presentation expands to the basis of all words of length ≤
// truncation (the empty word is named "1" and is the algebra unit), with
// concatenation as product (zero past the truncation) and the given
// generator differentials extended as a degree-+1 derivation.

#include "dg_algebra.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace ainf {

struct FieldTag {
  long long p = 0;  // 0 = rationals, otherwise a prime
};

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

inline FieldTag parse_field(const nlohmann::json& doc) {
  if (!doc.contains("field") || !doc["field"].is_string())
    throw std::invalid_argument("document: missing string \"field\"");
  std::string f = doc["field"].get<std::string>();
  if (f == "Q") return {0};
  if (f.rfind("Fp:", 0) == 0) {
    long long p = 0;
    try {
      p = std::stoll(f.substr(3));
    } catch (...) {
      throw std::invalid_argument("document: unreadable field tag " + f);
    }
    if (!is_prime(p))
      throw std::invalid_argument("document: modulus " + std::to_string(p) +
                                  " is not prime");
    return {p};
  }
  throw std::invalid_argument("document: unknown field tag " + f +
                              " (expected \"Q\" or \"Fp:<prime>\")");
}

template <class K>
K coeff_from_json(const nlohmann::json& j, long long p);

template <>
inline Rational coeff_from_json<Rational>(const nlohmann::json& j, long long) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational(j.get<std::string>());
    } catch (...) {
      throw std::invalid_argument("document: bad rational literal " +
                                  j.get<std::string>());
    }
  }
  throw std::invalid_argument("document: coefficient must be int or string");
}

template <>
inline Fp coeff_from_json<Fp>(const nlohmann::json& j, long long p) {
  if (j.is_number_integer()) return Fp(j.get<long long>(), p);
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Fp(std::stoll(s), p);
      return Fp(std::stoll(s.substr(0, slash)), p) /
             Fp(std::stoll(s.substr(slash + 1)), p);
    } catch (const std::domain_error&) {
      throw;
    } catch (...) {
      throw std::invalid_argument("document: bad coefficient literal " + s);
    }
  }
  throw std::invalid_argument("document: coefficient must be int or string");
}

template <class K>
Elem<K> elem_from_json(const nlohmann::json& combo, const GradedSpace<K>& V,
                       long long p) {
  if (!combo.is_object())
    throw std::invalid_argument("document: linear combination must be an object");
  Scratch<K> acc;
  acc.reset(V.dim());
  for (auto it = combo.begin(); it != combo.end(); ++it) {
    int idx = V.find(it.key());
    if (idx < 0)
      throw std::invalid_argument("document: unknown basis name " + it.key());
    acc.add(idx, coeff_from_json<K>(it.value(), p));
  }
  return acc.gather();
}

namespace detail {

template <class K>
DGAlgebra<K> build_explicit(const nlohmann::json& doc, long long p) {
  std::vector<BasisElt> basis;
  for (const auto& e : doc.at("basis")) {
    basis.push_back({e.at("name").get<std::string>(), e.at("degree").get<int>()});
  }
  auto V = std::make_shared<GradedSpace<K>>(std::move(basis));
  DGAlgebra<K> A(V, p);
  if (doc.contains("differential")) {
    for (auto it = doc["differential"].begin(); it != doc["differential"].end();
         ++it) {
      int i = V->find(it.key());
      if (i < 0)
        throw std::invalid_argument("document: differential of unknown name " +
                                    it.key());
      Elem<K> v = elem_from_json<K>(it.value(), *V, p);
      for (auto& [t, x] : v.c) {
        if (V->deg(t) != V->deg(i) + 1)
          throw std::invalid_argument(
              "document: differential of " + it.key() +
              " must be homogeneous of degree " + std::to_string(V->deg(i) + 1));
        A.d.set_entry(t, i, x);
      }
    }
  }
  if (doc.contains("product")) {
    for (const auto& e : doc["product"]) {
      int i = V->find(e.at("left").get<std::string>());
      int j = V->find(e.at("right").get<std::string>());
      if (i < 0 || j < 0)
        throw std::invalid_argument("document: product entry names unknown");
      int w[2] = {i, j};
      try {
        A.mul.set(std::span<const int>(w, 2),
                  elem_from_json<K>(e.at("value"), *V, p));
      } catch (const std::invalid_argument& ex) {
        throw std::invalid_argument("document: product (" +
                                    V->name(i) + ", " + V->name(j) + "): " +
                                    ex.what());
      }
    }
  }
  return A;
}

inline std::string word_name(const std::vector<int>& w,
                             const std::vector<BasisElt>& gens) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += ' ';
    s += gens[w[t]].name;
  }
  return s;
}

template <class K>
DGAlgebra<K> build_free(const nlohmann::json& fr, long long p) {
  std::vector<BasisElt> gens;
  for (const auto& e : fr.at("generators")) {
    gens.push_back({e.at("name").get<std::string>(), e.at("degree").get<int>()});
    if (gens.back().deg < 0)
      throw std::invalid_argument(
          "document: free generators must have degree >= 0");
    if (gens.back().name.find(' ') != std::string::npos ||
        gens.back().name == "1")
      throw std::invalid_argument("document: bad generator name " +
                                  gens.back().name);
  }
  const int T = fr.at("truncation").get<int>();
  if (T < 1) throw std::invalid_argument("document: truncation must be >= 1");
  const int g = static_cast<int>(gens.size());

  // All words of length <= T, by length then lexicographically.
  std::vector<std::vector<int>> words{{}};
  {
    std::vector<std::vector<int>> layer{{}};
    for (int len = 1; len <= T; ++len) {
      std::vector<std::vector<int>> next;
      for (const auto& w : layer) {
        for (int i = 0; i < g; ++i) {
          auto w2 = w;
          w2.push_back(i);
          next.push_back(std::move(w2));
        }
      }
      words.insert(words.end(), next.begin(), next.end());
      layer = std::move(next);
      if (static_cast<int>(words.size()) > 1024)
        throw std::invalid_argument(
            "document: truncated free algebra exceeds 1024 basis words");
    }
  }

  std::vector<BasisElt> basis;
  basis.reserve(words.size());
  for (const auto& w : words) {
    int deg = 0;
    for (int i : w) deg += gens[i].deg;
    basis.push_back({word_name(w, gens), deg});
  }
  auto V = std::make_shared<GradedSpace<K>>(std::move(basis));
  DGAlgebra<K> A(V, p);

  // Concatenation product, zero past the truncation.
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (static_cast<int>(words[a].size() + words[b].size()) > T) continue;
      std::vector<int> cat = words[a];
      cat.insert(cat.end(), words[b].begin(), words[b].end());
      int idx = V->find(word_name(cat, gens));
      int w2[2] = {static_cast<int>(a), static_cast<int>(b)};
      A.mul.set(std::span<const int>(w2, 2), Elem<K>::unit(idx));
    }
  }

  // Generator differentials, then the derivation extension to all words.
  std::vector<Elem<K>> dgen(g);
  if (fr.contains("differential")) {
    for (auto it = fr["differential"].begin(); it != fr["differential"].end();
         ++it) {
      int gi = -1;
      for (int i = 0; i < g; ++i)
        if (gens[i].name == it.key()) gi = i;
      if (gi < 0)
        throw std::invalid_argument("document: differential of unknown generator " +
                                    it.key());
      dgen[gi] = elem_from_json<K>(it.value(), *V, p);
      for (auto& [t, x] : dgen[gi].c) {
        (void)x;
        if (V->deg(t) != gens[gi].deg + 1)
          throw std::invalid_argument(
              "document: differential of " + it.key() +
              " must be homogeneous of degree " +
              std::to_string(gens[gi].deg + 1));
        if (V->name(t) == "1")
          throw std::invalid_argument(
              "document: differential may not hit the empty word");
      }
    }
  }
  Scratch<K> acc;
  for (std::size_t a = 0; a < words.size(); ++a) {
    const std::vector<int>& w = words[a];
    acc.reset(V->dim());
    int sign_deg = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      // (-1)^{|g_1...g_{i-1}|} g_1..g_{i-1} d(g_i) g_{i+1}..g_k
      for (auto& [t, x] : dgen[w[i]].c) {
        // basis index t corresponds to words[t]; splice it in place of slot i
        std::vector<int> out(words[a].begin(), words[a].begin() + i);
        out.insert(out.end(), words[t].begin(), words[t].end());
        out.insert(out.end(), words[a].begin() + i + 1, words[a].end());
        if (static_cast<int>(out.size()) > T) continue;
        int idx = V->find(word_name(out, gens));
        acc.add(idx, signed_scalar<K>(sign_deg) * x);
      }
      sign_deg += gens[w[i]].deg;
    }
    Elem<K> dw = acc.gather();
    for (auto& [t, x] : dw.c) A.d.set_entry(t, static_cast<int>(a), x);
  }
  return A;
}

}  // namespace detail

template <class K>
DGAlgebra<K> build_algebra(const nlohmann::json& doc, long long p) {
  if (doc.contains("free")) return detail::build_free<K>(doc["free"], p);
  if (doc.contains("basis")) return detail::build_explicit<K>(doc, p);
  throw std::invalid_argument(
      "document: expected either \"basis\" or \"free\"");
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& ex) {
    throw std::invalid_argument("cannot parse " + path + ": " + ex.what());
  }
  return doc;
}

}  // namespace ainf
