// Command half of the engine.  Every command loads one algebra document,
// runs exact computations, and reports each asserted identity with its
// residual (always exactly zero on a pass — the arithmetic is exact, so a
// pass is equality, not closeness).

#include "ainf/engine.hpp"

#include "ainf/hochschild.hpp"
#include "ainf/isotopy.hpp"
#include "ainf/json_io.hpp"
#include "ainf/massey.hpp"
#include "ainf/serialize.hpp"

#include <algorithm>
#include <sstream>

namespace ainf::engine {

using nlohmann::json;

namespace {

std::string field_str(long long p) {
  return p ? "Fp:" + std::to_string(p) : std::string("Q");
}

// Collects named identity groups with pass/fail residuals for the report.
struct IdentityLog {
  json arr = json::array();
  bool all_ok = true;

  void add(const std::string& name, const Report& r) {
    json v = json::array();
    for (const auto& viol : r.violations)
      v.push_back({{"where", viol.where}, {"detail", viol.detail}});
    arr.push_back({{"name", name},
                   {"checks", r.checks},
                   {"residual", r.ok() ? "0" : "nonzero"},
                   {"violations", v}});
    all_ok = all_ok && r.ok();
  }
  void add_flag(const std::string& name, bool ok,
                const std::string& detail = "") {
    json v = json::array();
    if (!ok && !detail.empty())
      v.push_back({{"where", name}, {"detail", detail}});
    arr.push_back({{"name", name},
                   {"checks", 1},
                   {"residual", ok ? "0" : "nonzero"},
                   {"violations", v}});
    all_ok = all_ok && ok;
  }

  void to_text(std::ostringstream& os) const {
    for (const auto& e : arr) {
      os << "  [" << (e["residual"] == "0" ? "ok" : "FAIL") << "] "
         << e["name"].get<std::string>() << " (" << e["checks"].get<int>()
         << (e["checks"].get<int>() == 1 ? " check" : " checks") << ")\n";
      for (const auto& v : e["violations"])
        os << "        " << v["where"].get<std::string>() << ": "
           << v["detail"].get<std::string>() << "\n";
    }
  }
};

json base_report(const std::string& cmd, const std::string& path,
                 long long p) {
  return json{{"command", cmd}, {"document", path}, {"field", field_str(p)}};
}

Outcome finish(json rep, IdentityLog& log, std::ostringstream& os,
               bool ok_beyond_log = true) {
  Outcome out;
  out.status = (log.all_ok && ok_beyond_log) ? 0 : 1;
  rep["identities"] = log.arr;
  rep["status"] = out.status;
  log.to_text(os);
  os << (out.status == 0 ? "PASS" : "FAIL") << "\n";
  out.text = os.str();
  out.report = std::move(rep);
  return out;
}

std::vector<int> unpack_word(std::uint64_t key, int arity) {
  std::vector<int> w(arity);
  for (int t = 0; t < arity; ++t)
    w[t] = static_cast<int>((key >> (10 * t)) & 1023);
  return w;
}

// Nonzero entries of a tabulated multilinear map, sorted by input word.
template <class K>
std::vector<std::pair<std::vector<int>, const Elem<K>*>> sorted_entries(
    const MultiMap<K>& m) {
  std::vector<std::pair<std::vector<int>, const Elem<K>*>> out;
  out.reserve(m.vals.size());
  for (const auto& [key, v] : m.vals)
    out.emplace_back(unpack_word(key, m.arity), &v);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <class K>
json multimap_to_json(const MultiMap<K>& m, const GradedSpace<K>& src,
                      const GradedSpace<K>& tgt) {
  json arr = json::array();
  for (const auto& [w, v] : sorted_entries(m)) {
    json args = json::array();
    for (int i : w) args.push_back(src.name(i));
    arr.push_back({{"args", args}, {"value", elem_to_json(*v, tgt)}});
  }
  return arr;
}

template <class K>
void multimap_to_text(std::ostringstream& os, const MultiMap<K>& m,
                      const GradedSpace<K>& src, const GradedSpace<K>& tgt,
                      std::size_t cap) {
  auto entries = sorted_entries(m);
  std::size_t shown = 0;
  for (const auto& [w, v] : entries) {
    if (shown == cap) {
      os << "    ... and " << (entries.size() - shown) << " more\n";
      break;
    }
    os << "    (";
    for (std::size_t t = 0; t < w.size(); ++t)
      os << (t ? ", " : "") << src.name(w[t]);
    os << ") -> " << v->str(tgt) << "\n";
    ++shown;
  }
}

template <class K>
std::vector<Elem<K>> resolve_classes(const GradedSpace<K>& H,
                                     const std::vector<std::string>& names,
                                     long long p) {
  std::vector<Elem<K>> out;
  out.reserve(names.size());
  for (const auto& nm : names) {
    int i = H.find(nm);
    if (i < 0) {
      std::string have;
      for (int j = 0; j < H.dim() && j < 12; ++j)
        have += (j ? ", " : "") + H.name(j);
      if (H.dim() > 12) have += ", ...";
      throw std::invalid_argument("unknown class name " + nm +
                                  " (cohomology labels: " +
                                  (H.dim() ? have : std::string("none")) + ")");
    }
    out.push_back(Elem<K>::unit(i, ScalarOps<K>::rebind(K(1), p)));
  }
  return out;
}

template <class K>
Elem<K> eval_op(const MultiMap<K>* m, std::span<const Elem<K>> xs) {
  if (!m) return Elem<K>{};
  std::vector<const Elem<K>*> ptr;
  ptr.reserve(xs.size());
  for (const auto& e : xs) ptr.push_back(&e);
  Scratch<K> acc;
  return m->eval(std::span<const Elem<K>* const>(ptr.data(), ptr.size()), acc);
}

template <class K>
std::vector<int> class_degrees_of(const GradedSpace<K>& H,
                                  std::span<const Elem<K>> xs) {
  std::vector<int> degs;
  degs.reserve(xs.size());
  for (const auto& x : xs) degs.push_back(*x.deg(H));
  return degs;
}

int clamp_arity(int requested, int fallback, int n_min) {
  int N = requested > 0 ? requested : fallback;
  if (N < n_min || N > 6)
    throw std::invalid_argument("truncation arity " + std::to_string(N) +
                                " out of supported range " +
                                std::to_string(n_min) + "..6");
  return N;
}

// ---------------------------------------------------------------------------
// Commands.

template <class K>
Outcome cmd_validate(const DGAlgebra<K>& A, const std::string& path) {
  Report r = validate(A);
  IdentityLog log;
  log.add("differential and product axioms", r);
  std::optional<Elem<K>> unit = find_unit(*A.V, A.mul);

  json rep = base_report("validate", path, A.p);
  rep["dimension"] = A.V->dim();
  rep["unit"] = unit ? elem_to_json(*unit, *A.V) : json(nullptr);

  std::ostringstream os;
  os << "validate " << path << " over " << field_str(A.p) << "\n";
  os << "  dimension " << A.V->dim() << ", degrees " << A.V->min_deg() << ".."
     << A.V->max_deg() << "\n";
  os << "  unit: " << (unit ? unit->str(*A.V) : std::string("none")) << "\n";
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_cohomology(const DGAlgebra<K>& A, const std::string& path) {
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  Report r = check_transfer(A, T);
  IdentityLog log;
  log.add("projection/representative/homotopy identities", r);

  json rep = base_report("cohomology", path, A.p);
  json betti = json::object();
  json classes = json::array();
  std::ostringstream os;
  os << "cohomology of " << path << " over " << field_str(A.p) << "\n";
  if (H.dim() == 0) os << "  zero in every degree\n";
  for (int k = H.min_deg(); k <= H.max_deg() && H.dim() > 0; ++k) {
    if (H.dim(k) == 0) continue;
    betti[std::to_string(k)] = H.dim(k);
    os << "  degree " << k << ": dimension " << H.dim(k) << "\n";
    for (int i : H.slice(k)) {
      Elem<K> repr = T.psi.column(i);
      classes.push_back({{"label", H.name(i)},
                         {"degree", k},
                         {"representative", elem_to_json(repr, *A.V)}});
      os << "    " << H.name(i) << " = [" << repr.str(*A.V) << "]\n";
    }
  }
  rep["betti"] = std::move(betti);
  rep["classes"] = std::move(classes);
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_model(const DGAlgebra<K>& A, const std::string& path,
                  const Options& opt) {
  const int N = clamp_arity(opt.max_arity, 3, 2);
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  CanonicalModel<K> C = canonical_minimal_model(A, T, N);
  IdentityLog log;
  log.add("structure identities through arity " + std::to_string(N),
          check_stasheff(C.model));
  log.add("connecting-morphism identities", check_morphism(C.connecting));

  json rep = base_report("model", path, A.p);
  rep["max_arity"] = N;
  std::ostringstream os;
  os << "canonical minimal structure of " << path << " through arity " << N
     << "\n";
  json ops = json::object();
  for (int n = 2; n <= N; ++n) {
    const MultiMap<K>* m = C.model.op(n);
    os << "  arity " << n << ": "
       << (m ? m->vals.size() : std::size_t{0}) << " nonzero entries\n";
    if (m) {
      ops[std::to_string(n)] = multimap_to_json(*m, H, H);
      multimap_to_text(os, *m, H, H, 20);
    } else {
      ops[std::to_string(n)] = json::array();
    }
  }
  rep["operations"] = std::move(ops);
  json comps = json::object();
  for (int n = 1; n <= N; ++n) {
    const MultiMap<K>* f = C.connecting.comp(n);
    comps[std::to_string(n)] =
        f ? multimap_to_json(*f, H, *A.V) : json::array();
  }
  rep["connecting_components"] = std::move(comps);
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_massey(const DGAlgebra<K>& A, const std::string& path,
                   const std::vector<std::string>& names, const Options& opt) {
  (void)opt;  // the set computation is exact; no tunables apply
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  std::vector<Elem<K>> xs = resolve_classes(H, names, A.p);
  const int n = static_cast<int>(xs.size());
  if (n < 2) throw std::invalid_argument("massey needs at least two classes");
  if (n > 6)
    throw std::invalid_argument("massey supports up to six classes");

  json rep = base_report("massey", path, A.p);
  rep["inputs"] = names;
  rep["order"] = n;
  std::ostringstream os;
  os << "product set of order " << n << " on " << path << "\n";
  IdentityLog log;

  const std::vector<int> degs = class_degrees_of(H, std::span<const Elem<K>>(xs));
  const int eps = epsilon(std::span<const int>(degs));
  rep["epsilon"] = eps;

  if (n == 2) {
    CanonicalModel<K> C = canonical_minimal_model(A, T, 2);
    Elem<K> v = eval_op(C.model.op(2), std::span<const Elem<K>>(xs));
    rep["defined"] = true;
    rep["representative"] = elem_to_json(v, H);
    rep["indeterminacy"] = json::array();
    rep["quotient_nonzero"] = !v.zero();
    os << "  singleton {" << v.str(H) << "} (the induced product; empty "
       << "indeterminacy)\n";
    log.add_flag("defining system exists", true);
    return finish(std::move(rep), log, os);
  }

  if (n == 3) {
    AffineClassSet<K> S = triple_massey(A, T, xs[0], xs[1], xs[2]);
    if (S.empty()) {
      rep["defined"] = false;
      os << "  no defining system (a pairwise induced product is nonzero)\n";
      log.add_flag("defining system exists", false,
                   "a pairwise induced product is nonzero");
      return finish(std::move(rep), log, os);
    }
    rep["defined"] = true;
    rep["representative"] = elem_to_json(*S.representative, H);
    json ind = json::array();
    for (const auto& b : S.indeterminacy) ind.push_back(elem_to_json(b, H));
    rep["indeterminacy"] = std::move(ind);
    const bool qnz = !affine_contains(H, S, Elem<K>{});
    rep["quotient_nonzero"] = qnz;
    os << "  representative " << S.representative->str(H) << "\n";
    os << "  indeterminacy dimension " << S.indeterminacy.size() << "\n";
    for (const auto& b : S.indeterminacy)
      os << "    basis " << b.str(H) << "\n";
    os << "  quotient class " << (qnz ? "nonzero" : "zero") << "\n";
    CanonicalModel<K> C = canonical_minimal_model(A, T, 3);
    Elem<K> mu = eval_op(C.model.op(3), std::span<const Elem<K>>(xs));
    Elem<K> weighted = scale(signed_scalar<K>(eps == -1 ? 1 : 0), mu);
    log.add_flag("defining system exists", true);
    log.add_flag("sign-weighted ternary operation lies in the set",
                 affine_contains(H, S, weighted));
    os << "  sign " << (eps == 1 ? "+1" : "-1") << ", weighted operation "
       << weighted.str(H) << "\n";
    return finish(std::move(rep), log, os);
  }

  // Longer products: report the member produced by the canonical entries.
  CanonicalModel<K> C = canonical_minimal_model(A, T, n);
  DefiningSystem<K> D;
  try {
    D = bootstrap_defining_system(C, std::span<const Elem<K>>(xs));
  } catch (const std::invalid_argument& ex) {
    rep["defined"] = false;
    os << "  no defining system: " << ex.what() << "\n";
    log.add_flag("defining system exists", false, ex.what());
    return finish(std::move(rep), log, os);
  }
  log.add_flag("defining system exists", true);
  log.add("defining-system validation", validate_defining_system(A, T, D));
  MasseyCocycle<K> cd = c_of_D(A, T, D);
  rep["defined"] = true;
  rep["member_class"] = elem_to_json(cd.cls, H);
  Elem<K> mu = eval_op(C.model.op(n), std::span<const Elem<K>>(xs));
  Elem<K> weighted = scale(signed_scalar<K>(eps == -1 ? 1 : 0), mu);
  rep["weighted_operation"] = elem_to_json(weighted, H);
  log.add_flag("sign-weighted operation equals the canonical member",
               weighted == cd.cls);
  os << "  member class " << cd.cls.str(H) << " (degree " << cd.degree
     << ")\n";
  os << "  sign " << (eps == 1 ? "+1" : "-1") << ", weighted operation "
     << weighted.str(H) << "\n";
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_oracle(const DGAlgebra<K>& A, const std::string& path,
                   const std::vector<std::string>& names, const Options& opt) {
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  std::vector<Elem<K>> xs = resolve_classes(H, names, A.p);
  if (xs.size() < 2)
    throw std::invalid_argument("oracle needs at least two classes");

  std::vector<Elem<K>> set =
      brute_force_massey(A, T, std::span<const Elem<K>>(xs), opt.bound);
  std::vector<std::string> strs;
  strs.reserve(set.size());
  bool zero_in = false;
  for (const auto& e : set) {
    strs.push_back(e.str(H));
    zero_in = zero_in || e.zero();
  }
  std::sort(strs.begin(), strs.end());

  json rep = base_report("oracle", path, A.p);
  rep["inputs"] = names;
  rep["bound"] = opt.bound;
  rep["defined"] = !set.empty();
  rep["count"] = set.size();
  rep["contains_zero"] = zero_in;
  rep["classes"] = strs;

  std::ostringstream os;
  os << "exhaustive product set of order " << xs.size() << " on " << path
     << "\n";
  if (set.empty()) {
    os << "  empty: no defining system over this field\n";
  } else {
    os << "  " << set.size() << (set.size() == 1 ? " class" : " classes")
       << (zero_in ? ", containing zero" : ", not containing zero") << "\n";
    std::size_t shown = 0;
    for (const auto& s : strs) {
      if (shown == 24) {
        os << "    ... and " << (strs.size() - shown) << " more\n";
        break;
      }
      os << "    " << s << "\n";
      ++shown;
    }
  }
  IdentityLog log;
  log.add_flag("enumeration completed within the bound", true);
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_isotopy(const DGAlgebra<K>& A, const std::string& path,
                    const Options& opt) {
  const int N = clamp_arity(opt.max_arity, 4, 2);
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  TransferData<K> Ta = vary_homotopy(A, T, opt.seed_a);
  TransferData<K> Tb = vary_homotopy(A, T, opt.seed_b);
  IdentityLog log;
  log.add("transfer identities for seed " + std::to_string(opt.seed_a),
          check_transfer(A, Ta));
  log.add("transfer identities for seed " + std::to_string(opt.seed_b),
          check_transfer(A, Tb));
  CanonicalModel<K> Ca = canonical_minimal_model(A, Ta, N);
  CanonicalModel<K> Cb = canonical_minimal_model(A, Tb, N);

  json rep = base_report("isotopy", path, A.p);
  rep["seed_a"] = opt.seed_a;
  rep["seed_b"] = opt.seed_b;
  rep["max_arity"] = N;
  std::ostringstream os;
  os << "isotopy search between models from homotopy seeds "
     << opt.seed_a << " and " << opt.seed_b << " through arity " << N << "\n";

  const MultiMap<K>* p2 = Ca.model.op(2);
  const MultiMap<K>* q2 = Cb.model.op(2);
  const bool mu2_equal = (!p2 && !q2) || (p2 && q2 && *p2 == *q2) ||
                         (p2 && !q2 && p2->zero()) ||
                         (!p2 && q2 && q2->zero());
  rep["mu2_equal"] = mu2_equal;
  log.add_flag("binary operations agree", mu2_equal);
  if (!mu2_equal) return finish(std::move(rep), log, os);

  std::optional<AMorphism<K>> F = find_isotopy(Ca.model, Cb.model, N);
  rep["found"] = F.has_value();
  if (!F) {
    os << "  no isotopy found by the stage-by-stage construction\n";
    log.add_flag("isotopy found", false,
                 "stage construction hit an unsolvable system");
    return finish(std::move(rep), log, os);
  }
  log.add_flag("isotopy found", true);
  log.add("morphism identities of the isotopy", check_morphism(*F));

  json comps = json::object();
  for (int k = 1; k <= N; ++k) {
    const MultiMap<K>* f = F->comp(k);
    comps[std::to_string(k)] = f ? multimap_to_json(*f, H, H) : json::array();
  }
  rep["components"] = std::move(comps);

  // The quadratic correction must cobound the difference of the ternary
  // operations in the Hochschild complex of the shared binary product.
  MultiMap<K> mu2 = p2 ? *p2 : MultiMap<K>(T.H, T.H, 2, 0);
  MultiMap<K> m3a = Ca.model.op(3) ? *Ca.model.op(3)
                                   : MultiMap<K>(T.H, T.H, 3, -1);
  MultiMap<K> m3b = Cb.model.op(3) ? *Cb.model.op(3)
                                   : MultiMap<K>(T.H, T.H, 3, -1);
  MultiMap<K> tau2 = F->comp(2) ? *F->comp(2) : MultiMap<K>(T.H, T.H, 2, -1);
  MultiMap<K> hd = hochschild_differential(mu2, tau2);
  const bool cobounds = (hd == sub(m3a, m3b)) || (hd == sub(m3b, m3a));
  rep["tau2_cobounds_ternary_difference"] = cobounds;
  log.add_flag("quadratic correction cobounds the ternary difference",
               cobounds);
  os << "  correction sizes:";
  for (int k = 2; k <= N; ++k) {
    const MultiMap<K>* f = F->comp(k);
    os << " tau" << k << "=" << (f ? f->vals.size() : std::size_t{0});
  }
  os << "\n";
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_curvature(const DGAlgebra<K>& A, const std::string& path,
                      const std::vector<std::string>& names,
                      const Options& opt) {
  (void)opt;
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  std::vector<Elem<K>> xs = resolve_classes(H, names, A.p);
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument("curvature needs at least two classes");
  if (n > 7)
    throw std::invalid_argument("curvature supports up to seven classes");

  json rep = base_report("curvature", path, A.p);
  rep["inputs"] = names;
  std::ostringstream os;
  os << "matrix curvature of the canonical defining system on " << path
     << "\n";
  IdentityLog log;

  CanonicalModel<K> C = canonical_minimal_model(A, T, std::max(2, n - 1));
  DefiningSystem<K> D;
  try {
    D = bootstrap_defining_system(C, std::span<const Elem<K>>(xs));
  } catch (const std::invalid_argument& ex) {
    rep["defined"] = false;
    os << "  no defining system: " << ex.what() << "\n";
    log.add_flag("defining system exists", false, ex.what());
    return finish(std::move(rep), log, os);
  }
  rep["defined"] = true;
  log.add_flag("defining system exists", true);

  MatrixCurvature<K> R = matrix_curvature(A, D);
  Report v = validate_defining_system(A, T, D);
  json interior = json::array();
  for (const auto& [slot, val] : R.interior)
    interior.push_back({{"row", slot.first},
                        {"col", slot.second},
                        {"value", elem_to_json(val, *A.V)}});
  rep["interior_vanishes"] = R.interior_ok;
  rep["nonzero_interior"] = std::move(interior);
  rep["corner"] = elem_to_json(R.corner, *A.V);
  rep["corner_class"] = elem_to_json(T.pi.apply(R.corner), H);
  log.add("defining-system validation", v);
  log.add_flag("interior curvature vanishes", R.interior_ok);
  log.add_flag("interior vanishing matches validation",
               R.interior_ok == v.ok());
  os << "  interior entries: "
     << (R.interior_ok ? "all zero" : "nonzero present") << "\n";
  os << "  corner entry [" << R.corner.str(*A.V) << "] represents "
     << T.pi.apply(R.corner).str(H) << "\n";
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome cmd_theorem_check(const DGAlgebra<K>& A, const std::string& path,
                          const std::vector<std::string>& names,
                          const Options& opt) {
  TransferData<K> T = cohomology_data(A);
  const GradedSpace<K>& H = *T.H;
  std::vector<Elem<K>> xs = resolve_classes(H, names, A.p);
  const int n = static_cast<int>(xs.size());
  if (n < 2)
    throw std::invalid_argument("theorem-check needs at least two classes");
  const int N = clamp_arity(opt.max_arity > 0 ? std::max(opt.max_arity, n) : 0,
                            n, n);

  json rep = base_report("theorem-check", path, A.p);
  rep["inputs"] = names;
  rep["order"] = n;
  rep["max_arity"] = N;
  const std::vector<int> degs =
      class_degrees_of(H, std::span<const Elem<K>>(xs));
  rep["epsilon"] = epsilon(std::span<const int>(degs));

  std::ostringstream os;
  os << "membership-theorem check of order " << n << " on " << path << "\n";
  Report r = massey_membership_theorem_check(A, T, std::span<const Elem<K>>(xs),
                                             N, opt.bound);
  bool hypothesis_failed = false;
  for (const auto& viol : r.violations)
    hypothesis_failed = hypothesis_failed ||
                        viol.detail.find("arity-") != std::string::npos ||
                        viol.where.find("arity-") != std::string::npos;
  if (hypothesis_failed)
    os << "  no defining system: the vanishing hypothesis fails\n";
  IdentityLog log;
  log.add("membership theorem", r);
  rep["no_defining_system"] = hypothesis_failed;
  return finish(std::move(rep), log, os);
}

template <class K>
Outcome run_typed(const std::string& cmd,
                  const std::vector<std::string>& classes,
                  const DGAlgebra<K>& A, const std::string& path,
                  const Options& opt) {
  if (cmd == "validate") return cmd_validate(A, path);
  if (cmd == "cohomology") return cmd_cohomology(A, path);
  if (cmd == "model") return cmd_model(A, path, opt);
  if (cmd == "massey") return cmd_massey(A, path, classes, opt);
  if (cmd == "oracle") return cmd_oracle(A, path, classes, opt);
  if (cmd == "isotopy") return cmd_isotopy(A, path, opt);
  if (cmd == "curvature") return cmd_curvature(A, path, classes, opt);
  if (cmd == "theorem-check") return cmd_theorem_check(A, path, classes, opt);
  throw std::invalid_argument("unknown command " + cmd);
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {
      "validate", "cohomology", "model",     "massey",
      "oracle",   "isotopy",    "curvature", "theorem-check"};
  return c;
}

Outcome run(const std::string& command,
            const std::vector<std::string>& classes,
            const std::string& document_path, const Options& opt) {
  try {
    json doc = load_json_file(document_path);
    FieldTag f = parse_field(doc);
    if (f.p == 0) {
      DGAlgebra<Rational> A = build_algebra<Rational>(doc, 0);
      return run_typed<Rational>(command, classes, A, document_path, opt);
    }
    DGAlgebra<Fp> A = build_algebra<Fp>(doc, f.p);
    return run_typed<Fp>(command, classes, A, document_path, opt);
  } catch (const std::invalid_argument& ex) {
    Outcome out;
    out.status = 2;
    out.text = std::string("input error: ") + ex.what() + "\n";
    out.report = {{"command", command},
                  {"document", document_path},
                  {"status", 2},
                  {"error", ex.what()}};
    return out;
  } catch (const std::exception& ex) {
    Outcome out;
    out.status = 2;
    out.text = std::string("internal error: ") + ex.what() + "\n";
    out.report = {{"command", command},
                  {"document", document_path},
                  {"status", 2},
                  {"error", ex.what()}};
    return out;
  }
}

}  // namespace ainf::engine
