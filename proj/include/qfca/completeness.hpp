#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcat.hpp"

namespace qfca {

// ---------------------------------------------------------------------------
// Joins and meets in the underlying preorder of a category. Universal
// objects are only determined up to isomorphism; we always return the
// least-index representative of the iso class, and -1 when the bound does
// not exist.

inline Obj order_join(const VCategory& x, std::span<const Obj> xs) {
  for (Obj c = 0; c < x.size(); ++c) {
    bool ub = true;
    for (Obj s : xs)
      if (!x.obj_leq(s, c)) {
        ub = false;
        break;
      }
    if (!ub) continue;
    bool least = true;
    for (Obj d = 0; d < x.size() && least; ++d) {
      bool dub = true;
      for (Obj s : xs)
        if (!x.obj_leq(s, d)) {
          dub = false;
          break;
        }
      if (dub && !x.obj_leq(c, d)) least = false;
    }
    if (least) return c;
  }
  return -1;
}

inline Obj order_meet(const VCategory& x, std::span<const Obj> xs) {
  for (Obj c = 0; c < x.size(); ++c) {
    bool lb = true;
    for (Obj s : xs)
      if (!x.obj_leq(c, s)) {
        lb = false;
        break;
      }
    if (!lb) continue;
    bool greatest = true;
    for (Obj d = 0; d < x.size() && greatest; ++d) {
      bool dlb = true;
      for (Obj s : xs)
        if (!x.obj_leq(d, s)) {
          dlb = false;
          break;
        }
      if (dlb && !x.obj_leq(d, c)) greatest = false;
    }
    if (greatest) return c;
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Completeness: tensored + cotensored + order-complete. The witness keeps
// the tensor and cotensor tables and answers join/meet queries on demand.

struct CompletenessWitness {
  CatPtr category;
  Obj bottom = -1, top = -1;
  std::vector<Obj> tensor_table;    // |V| x m
  std::vector<Obj> cotensor_table;  // |V| x m

  Obj tensor(Elem v, Obj x) const {
    return tensor_table[static_cast<std::size_t>(v) * category->size() + x];
  }
  Obj cotensor(Elem v, Obj x) const {
    return cotensor_table[static_cast<std::size_t>(v) * category->size() + x];
  }
  Obj join(std::span<const Obj> xs) const {
    Obj r = order_join(*category, xs);
    if (r < 0) throw NotComplete("join vanished from a complete category");
    return r;
  }
  Obj meet(std::span<const Obj> xs) const {
    Obj r = order_meet(*category, xs);
    if (r < 0) throw NotComplete("meet vanished from a complete category");
    return r;
  }
  Obj join(std::initializer_list<Obj> xs) const {
    return join(std::span<const Obj>(xs.begin(), xs.size()));
  }
  Obj meet(std::initializer_list<Obj> xs) const {
    return meet(std::span<const Obj>(xs.begin(), xs.size()));
  }
};

namespace detail {

// Least-index object t with X(t,y) = v -> X(x,y) for all y; -1 if none.
inline Obj find_tensor(const VCategory& x, Elem v, Obj a) {
  const Quantale& q = x.q();
  for (Obj t = 0; t < x.size(); ++t) {
    bool ok = true;
    for (Obj y = 0; y < x.size() && ok; ++y)
      ok = x.hom(t, y) == q.residuate(v, x.hom(a, y));
    if (ok) return t;
  }
  return -1;
}

// Least-index object c with X(y,c) = v -> X(y,x) for all y; -1 if none.
inline Obj find_cotensor(const VCategory& x, Elem v, Obj a) {
  const Quantale& q = x.q();
  for (Obj c = 0; c < x.size(); ++c) {
    bool ok = true;
    for (Obj y = 0; y < x.size() && ok; ++y)
      ok = x.hom(y, c) == q.residuate(v, x.hom(y, a));
    if (ok) return c;
  }
  return -1;
}

}  // namespace detail

struct CompletenessReport {
  std::optional<CompletenessWitness> witness;
  std::string refusal;  // names the missing (v,x) pair or subset
};

inline CompletenessReport check_complete(const CatPtr& xp) {
  const VCategory& x = *xp;
  const Quantale& q = x.q();
  CompletenessWitness w;
  w.category = xp;

  w.bottom = order_join(x, {});
  if (w.bottom < 0) return {std::nullopt, "the empty subset has no join"};
  w.top = order_meet(x, {});
  if (w.top < 0) return {std::nullopt, "the empty subset has no meet"};
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = a + 1; b < x.size(); ++b) {
      std::vector<Obj> pair{a, b};
      if (order_join(x, pair) < 0)
        return {std::nullopt, "{" + x.object(a) + "," + x.object(b) +
                                  "} has no join"};
      if (order_meet(x, pair) < 0)
        return {std::nullopt, "{" + x.object(a) + "," + x.object(b) +
                                  "} has no meet"};
    }

  w.tensor_table.resize(static_cast<std::size_t>(q.size()) * x.size());
  w.cotensor_table.resize(static_cast<std::size_t>(q.size()) * x.size());
  for (Elem v = 0; v < q.size(); ++v)
    for (Obj a = 0; a < x.size(); ++a) {
      Obj t = detail::find_tensor(x, v, a);
      if (t < 0)
        return {std::nullopt, "no tensor of (" + q.label(v) + "," +
                                  x.object(a) + ")"};
      Obj c = detail::find_cotensor(x, v, a);
      if (c < 0)
        return {std::nullopt, "no cotensor of (" + q.label(v) + "," +
                                  x.object(a) + ")"};
      w.tensor_table[static_cast<std::size_t>(v) * x.size() + a] = t;
      w.cotensor_table[static_cast<std::size_t>(v) * x.size() + a] = c;
    }
  return {std::move(w), ""};
}

inline std::optional<CompletenessWitness> is_complete(const CatPtr& x) {
  return check_complete(x).witness;
}

inline CompletenessWitness require_complete(const CatPtr& x,
                                            const char* where) {
  auto rep = check_complete(x);
  if (!rep.witness)
    throw NotComplete(std::string(where) + ": " + rep.refusal);
  return *std::move(rep.witness);
}

// ---------------------------------------------------------------------------
// Suprema and infima of V-valued (co)presheaves.

// mu must be a presheaf on X, i.e. a V-functor X^op -> V.
inline void require_presheaf(const VCategory& x, std::span<const Elem> mu,
                             const char* where) {
  const Quantale& q = x.q();
  if (static_cast<int>(mu.size()) != x.size())
    throw TypeMismatch(std::string(where) + ": array length mismatch");
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = 0; b < x.size(); ++b)
      if (!q.leq(x.hom(b, a), q.residuate(mu[a], mu[b])))
        throw TypeMismatch(std::string(where) +
                           ": array is not a presheaf at (" + x.object(a) +
                           "," + x.object(b) + ")");
}

// lam must be a copresheaf on X, i.e. a V-functor X -> V.
inline void require_copresheaf(const VCategory& x, std::span<const Elem> lam,
                               const char* where) {
  const Quantale& q = x.q();
  if (static_cast<int>(lam.size()) != x.size())
    throw TypeMismatch(std::string(where) + ": array length mismatch");
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = 0; b < x.size(); ++b)
      if (!q.leq(x.hom(a, b), q.residuate(lam[a], lam[b])))
        throw TypeMismatch(std::string(where) +
                           ": array is not a copresheaf at (" + x.object(a) +
                           "," + x.object(b) + ")");
}

// Least-index object s with X(s,y) = /\_a mu(a) -> X(a,y) for all y.
inline Obj sup(const VCategory& x, std::span<const Elem> mu) {
  require_presheaf(x, mu, "sup");
  const Quantale& q = x.q();
  for (Obj s = 0; s < x.size(); ++s) {
    bool ok = true;
    for (Obj y = 0; y < x.size() && ok; ++y) {
      Elem rhs = q.top();
      for (Obj a = 0; a < x.size(); ++a)
        rhs = q.meet2(rhs, q.residuate(mu[a], x.hom(a, y)));
      ok = x.hom(s, y) == rhs;
    }
    if (ok) return s;
  }
  throw NotComplete("sup: no object realizes the supremum");
}

// Least-index object s with X(y,s) = /\_a lam(a) -> X(y,a) for all y.
inline Obj inf(const VCategory& x, std::span<const Elem> lam) {
  require_copresheaf(x, lam, "inf");
  const Quantale& q = x.q();
  for (Obj s = 0; s < x.size(); ++s) {
    bool ok = true;
    for (Obj y = 0; y < x.size() && ok; ++y) {
      Elem rhs = q.top();
      for (Obj a = 0; a < x.size(); ++a)
        rhs = q.meet2(rhs, q.residuate(lam[a], x.hom(y, a)));
      ok = x.hom(y, s) == rhs;
    }
    if (ok) return s;
  }
  throw NotComplete("inf: no object realizes the infimum");
}

// ---------------------------------------------------------------------------
// Yoneda embeddings.

struct Embedding {
  FunctorCategory presheaves;  // the target functor category, pre-dualized
  VFunctor functor;
  CatPtr target;  // functor's target (dual of presheaves.cat() for co-Yoneda)
};

// x |-> X(-,x), into the category of V-functors X^op -> V.
inline Embedding yoneda(const CatPtr& x, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(x->quantale());
  FunctorCategory p(dual(x), v, b);
  std::vector<Obj> map(x->size());
  for (Obj a = 0; a < x->size(); ++a) {
    std::vector<Obj> row(x->size());
    for (Obj c = 0; c < x->size(); ++c) row[c] = x->hom(c, a);
    map[a] = p.require_index(row, "yoneda");
  }
  CatPtr cat = p.cat();
  return {std::move(p), {x, cat, std::move(map)}, cat};
}

// x |-> X(x,-), into the dual of the category of V-functors X -> V.
inline Embedding co_yoneda(const CatPtr& x, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(x->quantale());
  FunctorCategory p(x, v, b);
  std::vector<Obj> map(x->size());
  for (Obj a = 0; a < x->size(); ++a) {
    std::vector<Obj> row(x->size());
    for (Obj c = 0; c < x->size(); ++c) row[c] = x->hom(a, c);
    map[a] = p.require_index(row, "co_yoneda");
  }
  CatPtr t = dual(p.cat());
  return {std::move(p), {x, t, std::move(map)}, t};
}

// ---------------------------------------------------------------------------
// Pushforward of V-valued maps: (f->(mu))(y) = \/_x Y(fx,y) * mu(x).

inline std::vector<Elem> f_arrow(const VFunctor& f,
                                 std::span<const Elem> mu) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  const Quantale& q = x.q();
  if (static_cast<int>(mu.size()) != x.size())
    throw TypeMismatch("f_arrow: array length mismatch");
  std::vector<Elem> out(y.size(), q.bottom());
  for (Obj b = 0; b < y.size(); ++b)
    for (Obj a = 0; a < x.size(); ++a)
      out[b] = q.join2(out[b], q.tensor(y.hom(f.map[a], b), mu[a]));
  return out;
}

// ---------------------------------------------------------------------------
// The canonical dense/codense bifunctors into functor categories built from
// tensors: iota(a,x): b |-> A(b,a) * x and iota_dag(a,x): b |-> A(a,b) * x.

struct IotaBundle {
  FunctorCategory fc;   // the enumerated functor category
  VBifunctor bifunctor; // into fc.cat() (or its dual, for iota_dag)
};

// iota: A (x) X -> X^{A^op}; requires X complete.
inline IotaBundle iota(const CatPtr& a, const CatPtr& x,
                       const CompletenessWitness& wx, Budget b = {}) {
  FunctorCategory fc(dual(a), x, b);
  const int ma = a->size(), mx = x->size();
  std::vector<Obj> table(static_cast<std::size_t>(ma) * mx);
  std::vector<Obj> row(ma);
  for (Obj ai = 0; ai < ma; ++ai)
    for (Obj xi = 0; xi < mx; ++xi) {
      for (Obj bi = 0; bi < ma; ++bi) row[bi] = wx.tensor(a->hom(bi, ai), xi);
      table[static_cast<std::size_t>(ai) * mx + xi] =
          fc.require_index(row, "iota");
    }
  CatPtr target = fc.cat();
  return {std::move(fc), {a, x, target, std::move(table)}};
}

// iota_dag: A (x) X^op -> (X^A)^op; requires X complete.
inline IotaBundle iota_dag(const CatPtr& a, const CatPtr& x,
                           const CompletenessWitness& wx, Budget b = {}) {
  FunctorCategory fc(a, x, b);
  const int ma = a->size(), mx = x->size();
  std::vector<Obj> table(static_cast<std::size_t>(ma) * mx);
  std::vector<Obj> row(ma);
  for (Obj ai = 0; ai < ma; ++ai)
    for (Obj xi = 0; xi < mx; ++xi) {
      for (Obj bi = 0; bi < ma; ++bi) row[bi] = wx.tensor(a->hom(ai, bi), xi);
      table[static_cast<std::size_t>(ai) * mx + xi] =
          fc.require_index(row, "iota_dag");
    }
  CatPtr target = dual(fc.cat());
  return {std::move(fc), {a, dual(x), target, std::move(table)}};
}

inline Obj iota_object(const CatPtr& a, const CatPtr& x,
                       const CompletenessWitness& wx, Obj ai, Obj xi,
                       Budget b = {}) {
  return iota(a, x, wx, b).bifunctor.at(ai, xi);
}

inline Obj iota_dag_object(const CatPtr& a, const CatPtr& x,
                           const CompletenessWitness& wx, Obj ai, Obj xi,
                           Budget b = {}) {
  return iota_dag(a, x, wx, b).bifunctor.at(ai, xi);
}

// ---------------------------------------------------------------------------
// Density. The hom criterion is O(m^3); the sup-based definition, which
// needs a presheaf enumeration, is kept for cross-checks on small instances.

inline bool is_dense(const VFunctor& f, std::string* witness = nullptr) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  const Quantale& q = y.q();
  for (Obj b = 0; b < y.size(); ++b)
    for (Obj b2 = 0; b2 < y.size(); ++b2) {
      Elem acc = q.top();
      for (Obj a = 0; a < x.size(); ++a)
        acc = q.meet2(acc, q.residuate(y.hom(f.map[a], b),
                                       y.hom(f.map[a], b2)));
      if (acc != y.hom(b, b2)) {
        if (witness)
          *witness = "criterion fails at (" + y.object(b) + "," +
                     y.object(b2) + ")";
        return false;
      }
    }
  return true;
}

inline bool is_codense(const VFunctor& f, std::string* witness = nullptr) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  const Quantale& q = y.q();
  for (Obj b = 0; b < y.size(); ++b)
    for (Obj b2 = 0; b2 < y.size(); ++b2) {
      Elem acc = q.top();
      for (Obj a = 0; a < x.size(); ++a)
        acc = q.meet2(acc, q.residuate(y.hom(b2, f.map[a]),
                                       y.hom(b, f.map[a])));
      if (acc != y.hom(b, b2)) {
        if (witness)
          *witness = "criterion fails at (" + y.object(b) + "," +
                     y.object(b2) + ")";
        return false;
      }
    }
  return true;
}

// Definition-level density: every target object is, up to iso, the sup of
// the pushforward of some presheaf on the source. Exponential in |source|;
// cross-check use only.
inline bool is_dense_by_definition(const VFunctor& f, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(f.source->quantale());
  FunctorCategory pre(dual(f.source), v, b);
  VFunctor fop = dual_functor(f);
  std::vector<char> hit(f.target->size(), 0);
  for (Obj i = 0; i < pre.size(); ++i) {
    std::vector<Elem> pushed = f_arrow(fop, pre.map(i));
    // pushed is a presheaf on the target; its sup in Y^op-flavor is the sup
    // of the original presheaf along f.
    Obj s = sup(*f.target, pushed);
    for (Obj t = 0; t < f.target->size(); ++t)
      if (f.target->obj_iso(t, s)) hit[t] = 1;
  }
  for (char h : hit)
    if (!h) return false;
  return true;
}

inline bool is_codense_by_definition(const VFunctor& f, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(f.source->quantale());
  FunctorCategory co(f.source, v, b);
  std::vector<char> hit(f.target->size(), 0);
  for (Obj i = 0; i < co.size(); ++i) {
    std::vector<Elem> pushed = f_arrow(f, co.map(i));
    Obj s = inf(*f.target, pushed);
    for (Obj t = 0; t < f.target->size(); ++t)
      if (f.target->obj_iso(t, s)) hit[t] = 1;
  }
  for (char h : hit)
    if (!h) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Adjoint functors: search, and the equivalent characterizations between
// complete categories (sup preservation; underlying adjoint plus tensor
// preservation).

inline std::optional<VFunctor> find_right_adjoint(const VFunctor& f) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  std::vector<Obj> g(y.size());
  for (Obj b = 0; b < y.size(); ++b) {
    Obj found = -1;
    for (Obj c = 0; c < x.size() && found < 0; ++c) {
      bool ok = true;
      for (Obj a = 0; a < x.size() && ok; ++a)
        ok = y.hom(f.map[a], b) == x.hom(a, c);
      if (ok) found = c;
    }
    if (found < 0) return std::nullopt;
    g[b] = found;
  }
  return VFunctor{f.target, f.source, std::move(g)};
}

// Given g: B -> A, search for f: A -> B with B(fa,b) = A(a,gb) everywhere.
inline std::optional<VFunctor> find_left_adjoint(const VFunctor& g) {
  const VCategory& bcat = *g.source;
  const VCategory& acat = *g.target;
  std::vector<Obj> f(acat.size());
  for (Obj a = 0; a < acat.size(); ++a) {
    Obj found = -1;
    for (Obj c = 0; c < bcat.size() && found < 0; ++c) {
      bool ok = true;
      for (Obj b = 0; b < bcat.size() && ok; ++b)
        ok = bcat.hom(c, b) == acat.hom(a, g.map[b]);
      if (ok) found = c;
    }
    if (found < 0) return std::nullopt;
    f[a] = found;
  }
  return VFunctor{g.target, g.source, std::move(f)};
}

// f preserves suprema: f(sup mu) iso sup((f^op)->(mu)) for every presheaf.
inline bool preserves_sups(const VFunctor& f, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(f.source->quantale());
  FunctorCategory pre(dual(f.source), v, b);
  VFunctor fop = dual_functor(f);
  for (Obj i = 0; i < pre.size(); ++i) {
    Obj lhs = f.map[sup(*f.source, pre.map(i))];
    Obj rhs = sup(*f.target, f_arrow(fop, pre.map(i)));
    if (!f.target->obj_iso(lhs, rhs)) return false;
  }
  return true;
}

inline bool preserves_infs(const VFunctor& f, Budget b = {}) {
  CatPtr v = VCategory::self_enrichment(f.source->quantale());
  FunctorCategory co(f.source, v, b);
  for (Obj i = 0; i < co.size(); ++i) {
    Obj lhs = f.map[inf(*f.source, co.map(i))];
    Obj rhs = inf(*f.target, f_arrow(f, co.map(i)));
    if (!f.target->obj_iso(lhs, rhs)) return false;
  }
  return true;
}

inline bool preserves_tensors(const VFunctor& f, const CompletenessWitness& wx,
                              const CompletenessWitness& wy) {
  const Quantale& q = f.source->q();
  for (Elem v = 0; v < q.size(); ++v)
    for (Obj a = 0; a < f.source->size(); ++a)
      if (!f.target->obj_iso(f.map[wx.tensor(v, a)],
                             wy.tensor(v, f.map[a])))
        return false;
  return true;
}

inline bool preserves_cotensors(const VFunctor& f,
                                const CompletenessWitness& wx,
                                const CompletenessWitness& wy) {
  const Quantale& q = f.source->q();
  for (Elem v = 0; v < q.size(); ++v)
    for (Obj a = 0; a < f.source->size(); ++a)
      if (!f.target->obj_iso(f.map[wx.cotensor(v, a)],
                             wy.cotensor(v, f.map[a])))
        return false;
  return true;
}

// Left adjoint between the underlying preorders: each {x : fx <= y} has a
// greatest element sent below y.
inline bool order_left_adjoint(const VFunctor& f) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  for (Obj b = 0; b < y.size(); ++b) {
    Obj best = -1;
    for (Obj c = 0; c < x.size() && best < 0; ++c) {
      if (!y.obj_leq(f.map[c], b)) continue;
      bool greatest = true;
      for (Obj d = 0; d < x.size() && greatest; ++d)
        if (y.obj_leq(f.map[d], b) && !x.obj_leq(d, c)) greatest = false;
      if (greatest) best = c;
    }
    if (best < 0) return false;
  }
  return true;
}

}  // namespace qfca
