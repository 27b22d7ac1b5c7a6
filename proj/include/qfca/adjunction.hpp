#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "completeness.hpp"

namespace qfca {

// ---------------------------------------------------------------------------
// Two-variable adjunctions between complete categories:
//   Z(prod(x,y), z) = X(x, over(z,y)) = Y(y, under(x,z)).
// The two residual tables are always derived from the product table and then
// the identity is verified exhaustively; hand-written residuals are never
// trusted.

struct TwoVarAdjunction {
  CatPtr X, Y, Z;
  CompletenessWitness wx, wy, wz;
  std::vector<Obj> prod_table;   // |X| x |Y| -> Z
  std::vector<Obj> over_table;   // |Z| x |Y| -> X
  std::vector<Obj> under_table;  // |X| x |Z| -> Y

  Obj prod(Obj x, Obj y) const { return prod_table[x * Y->size() + y]; }
  Obj over(Obj z, Obj y) const { return over_table[z * Y->size() + y]; }
  Obj under(Obj x, Obj z) const { return under_table[x * Z->size() + z]; }
};

namespace detail {

inline void verify_two_var(const TwoVarAdjunction& t, const char* where) {
  require_same_quantale(t.X->quantale(), t.Y->quantale(), where);
  require_same_quantale(t.X->quantale(), t.Z->quantale(), where);
  for (Obj x = 0; x < t.X->size(); ++x)
    for (Obj y = 0; y < t.Y->size(); ++y)
      for (Obj z = 0; z < t.Z->size(); ++z) {
        Elem a = t.Z->hom(t.prod(x, y), z);
        Elem b = t.X->hom(x, t.over(z, y));
        Elem c = t.Y->hom(y, t.under(x, z));
        if (a != b || a != c)
          throw NotCocontinuous(
              std::string(where) + ": hom identity fails at (x,y,z) = (" +
              t.X->object(x) + "," + t.Y->object(y) + "," + t.Z->object(z) +
              "): Z(x.y,z) = " + t.X->q().label(a) + ", X(x,z/y) = " +
              t.X->q().label(b) + ", Y(y,x\\z) = " + t.X->q().label(c));
      }
  std::string w;
  VBifunctor p{t.X, t.Y, t.Z, t.prod_table};
  if (!verify_bifunctor(p, &w))
    throw NotCocontinuous(std::string(where) + ": product table: " + w);
  VBifunctor o{t.Z, dual(t.Y), t.X, t.over_table};
  if (!verify_bifunctor(o, &w))
    throw NotCocontinuous(std::string(where) + ": over table: " + w);
  VBifunctor u{dual(t.X), t.Z, t.Y, t.under_table};
  if (!verify_bifunctor(u, &w))
    throw NotCocontinuous(std::string(where) + ": under table: " + w);
}

}  // namespace detail

// Builds a two-variable adjunction from a product bifunctor by deriving
// over(z,y) as the join of {x : prod(x,y) <= z} and under(x,z) as the join
// of {y : prod(x,y) <= z}, then verifying the triple hom identity. Fails
// with NotCocontinuous when the product does not preserve suprema in one
// of its arguments.
inline TwoVarAdjunction derive_two_var(CatPtr x, CatPtr y, CatPtr z,
                                       std::vector<Obj> prod_table) {
  TwoVarAdjunction t;
  t.X = std::move(x);
  t.Y = std::move(y);
  t.Z = std::move(z);
  if (prod_table.size() !=
      static_cast<std::size_t>(t.X->size()) * t.Y->size())
    throw BadSize("derive_two_var: product table has wrong shape");
  for (Obj v : prod_table)
    if (v < 0 || v >= t.Z->size())
      throw BadSize("derive_two_var: product value out of range");
  t.prod_table = std::move(prod_table);
  t.wx = require_complete(t.X, "derive_two_var (X)");
  t.wy = require_complete(t.Y, "derive_two_var (Y)");
  t.wz = require_complete(t.Z, "derive_two_var (Z)");

  t.over_table.resize(static_cast<std::size_t>(t.Z->size()) * t.Y->size());
  std::vector<Obj> pool;
  for (Obj zz = 0; zz < t.Z->size(); ++zz)
    for (Obj yy = 0; yy < t.Y->size(); ++yy) {
      pool.clear();
      for (Obj xx = 0; xx < t.X->size(); ++xx)
        if (t.Z->obj_leq(t.prod(xx, yy), zz)) pool.push_back(xx);
      t.over_table[zz * t.Y->size() + yy] = t.wx.join(pool);
    }
  t.under_table.resize(static_cast<std::size_t>(t.X->size()) * t.Z->size());
  for (Obj xx = 0; xx < t.X->size(); ++xx)
    for (Obj zz = 0; zz < t.Z->size(); ++zz) {
      pool.clear();
      for (Obj yy = 0; yy < t.Y->size(); ++yy)
        if (t.Z->obj_leq(t.prod(xx, yy), zz)) pool.push_back(yy);
      t.under_table[xx * t.Z->size() + zz] = t.wy.join(pool);
    }

  detail::verify_two_var(t, "derive_two_var");
  return t;
}

// Assembles and verifies a two-variable adjunction from explicit tables.
inline TwoVarAdjunction make_two_var(CatPtr x, CatPtr y, CatPtr z,
                                     std::vector<Obj> prod_table,
                                     std::vector<Obj> over_table,
                                     std::vector<Obj> under_table) {
  TwoVarAdjunction t;
  t.X = std::move(x);
  t.Y = std::move(y);
  t.Z = std::move(z);
  t.prod_table = std::move(prod_table);
  t.over_table = std::move(over_table);
  t.under_table = std::move(under_table);
  if (t.prod_table.size() !=
          static_cast<std::size_t>(t.X->size()) * t.Y->size() ||
      t.over_table.size() !=
          static_cast<std::size_t>(t.Z->size()) * t.Y->size() ||
      t.under_table.size() !=
          static_cast<std::size_t>(t.X->size()) * t.Z->size())
    throw BadSize("make_two_var: a table has the wrong shape");
  t.wx = require_complete(t.X, "make_two_var (X)");
  t.wy = require_complete(t.Y, "make_two_var (Y)");
  t.wz = require_complete(t.Z, "make_two_var (Z)");
  detail::verify_two_var(t, "make_two_var");
  return t;
}

// (V, V, V, tensor): both residuals come out as residuation.
inline TwoVarAdjunction quantale_two_var(const QuantalePtr& q) {
  CatPtr v = VCategory::self_enrichment(q);
  const int n = q->size();
  std::vector<Obj> prod(static_cast<std::size_t>(n) * n);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) prod[a * n + b] = q->tensor(a, b);
  return derive_two_var(v, v, v, std::move(prod));
}

// (V, X, X, tensor of X): over is the hom of X, under is the cotensor.
inline TwoVarAdjunction tensor_cotensor_two_var(const CatPtr& x) {
  CatPtr v = VCategory::self_enrichment(x->quantale());
  CompletenessWitness wx = require_complete(x, "tensor_cotensor_two_var");
  const int n = v->size(), m = x->size();
  std::vector<Obj> prod(static_cast<std::size_t>(n) * m);
  for (Elem a = 0; a < n; ++a)
    for (Obj b = 0; b < m; ++b) prod[a * m + b] = wx.tensor(a, b);
  return derive_two_var(v, x, x, std::move(prod));
}

// The two associated two-variable adjunctions. Their tables are the
// originals, re-typed between dual categories; both are re-verified.
struct Associates {
  TwoVarAdjunction via_under;  // (X, Z^op, Y^op, under, over^d, prod)
  TwoVarAdjunction via_over;   // (Z^op, Y, X^op, over, prod, under^d)
};

inline Associates associates(const TwoVarAdjunction& t) {
  const int nx = t.X->size(), ny = t.Y->size(), nz = t.Z->size();

  std::vector<Obj> over_swapped(static_cast<std::size_t>(ny) * nz);
  for (Obj z = 0; z < nz; ++z)
    for (Obj y = 0; y < ny; ++y) over_swapped[y * nz + z] = t.over(z, y);
  std::vector<Obj> under_swapped(static_cast<std::size_t>(nz) * nx);
  for (Obj x = 0; x < nx; ++x)
    for (Obj z = 0; z < nz; ++z) under_swapped[z * nx + x] = t.under(x, z);

  TwoVarAdjunction ii = make_two_var(t.X, dual(t.Z), dual(t.Y),
                                     t.under_table, over_swapped,
                                     t.prod_table);
  TwoVarAdjunction iii = make_two_var(dual(t.Z), t.Y, dual(t.X),
                                      t.over_table, t.prod_table,
                                      under_swapped);
  return {std::move(ii), std::move(iii)};
}

// ---------------------------------------------------------------------------
// Isbell and Kan operators. A table phi is a V-bifunctor A^op (x) B -> W
// presented with left = A^op (a dual category); the operators act on
// element arrays and use the underlying joins/meets of the target
// categories, returning least-index representatives.

namespace detail {

inline void require_table(const VBifunctor& phi,
                          const CatPtr& expected_target, const char* where) {
  if (phi.target.get() != expected_target.get() &&
      !phi.target->table_identical(*expected_target))
    throw TypeMismatch(std::string(where) +
                       ": bifunctor lands in the wrong category");
  std::string w;
  if (!verify_bifunctor(phi, &w))
    throw TypeMismatch(std::string(where) + ": table is not a V-bifunctor (" +
                       w + ")");
}

// mu must be a V-functor dom -> cod given as an object array.
inline void require_functor_array(const CatPtr& dom, const CatPtr& cod,
                                  std::span<const Obj> mu, const char* where) {
  if (static_cast<int>(mu.size()) != dom->size())
    throw TypeMismatch(std::string(where) + ": array length mismatch");
  for (Obj v : mu)
    if (v < 0 || v >= cod->size())
      throw TypeMismatch(std::string(where) + ": array value out of range");
  const Quantale& q = dom->q();
  for (Obj a = 0; a < dom->size(); ++a)
    for (Obj b = 0; b < dom->size(); ++b)
      if (!q.leq(dom->hom(a, b), cod->hom(mu[a], mu[b])))
        throw TypeMismatch(std::string(where) + ": array is not a V-functor");
}

}  // namespace detail

// (phi_up mu)(b) = /\_a over(phi(a,b), mu(a)), a functor B -> X.
// phi: A^op (x) B -> Z, mu in Y^{A^op}.
inline std::vector<Obj> isbell_up(const TwoVarAdjunction& t,
                                  const VBifunctor& phi,
                                  std::span<const Obj> mu) {
  detail::require_table(phi, t.Z, "isbell_up");
  detail::require_functor_array(phi.left, t.Y, mu, "isbell_up");
  const int na = phi.left->size(), nb = phi.right->size();
  std::vector<Obj> out(nb);
  std::vector<Obj> pool(na);
  for (Obj b = 0; b < nb; ++b) {
    for (Obj a = 0; a < na; ++a) pool[a] = t.over(phi.at(a, b), mu[a]);
    out[b] = t.wx.meet(pool);
  }
  return out;
}

// (phi_down lam)(a) = /\_b under(lam(b), phi(a,b)), a functor A^op -> Y.
// lam in X^B.
inline std::vector<Obj> isbell_down(const TwoVarAdjunction& t,
                                    const VBifunctor& phi,
                                    std::span<const Obj> lam) {
  detail::require_table(phi, t.Z, "isbell_down");
  detail::require_functor_array(phi.right, t.X, lam, "isbell_down");
  const int na = phi.left->size(), nb = phi.right->size();
  std::vector<Obj> out(na);
  std::vector<Obj> pool(nb);
  for (Obj a = 0; a < na; ++a) {
    for (Obj b = 0; b < nb; ++b) pool[b] = t.under(lam[b], phi.at(a, b));
    out[a] = t.wy.meet(pool);
  }
  return out;
}

// (psi_star lam)(a) = \/_b prod(lam(b), psi(a,b)), a functor A^op -> Z.
// psi: A^op (x) B -> Y, lam in X^{B^op}.
inline std::vector<Obj> kan_star_upper(const TwoVarAdjunction& t,
                                       const VBifunctor& psi,
                                       std::span<const Obj> lam) {
  detail::require_table(psi, t.Y, "kan_star_upper");
  detail::require_functor_array(dual(psi.right), t.X, lam, "kan_star_upper");
  const int na = psi.left->size(), nb = psi.right->size();
  std::vector<Obj> out(na);
  std::vector<Obj> pool(nb);
  for (Obj a = 0; a < na; ++a) {
    for (Obj b = 0; b < nb; ++b) pool[b] = t.prod(lam[b], psi.at(a, b));
    out[a] = t.wz.join(pool);
  }
  return out;
}

// (psi_lower mu)(b) = /\_a over(mu(a), psi(a,b)), a functor B^op -> X.
// mu in Z^{A^op}.
inline std::vector<Obj> kan_star_lower(const TwoVarAdjunction& t,
                                       const VBifunctor& psi,
                                       std::span<const Obj> mu) {
  detail::require_table(psi, t.Y, "kan_star_lower");
  detail::require_functor_array(psi.left, t.Z, mu, "kan_star_lower");
  const int na = psi.left->size(), nb = psi.right->size();
  std::vector<Obj> out(nb);
  std::vector<Obj> pool(na);
  for (Obj b = 0; b < nb; ++b) {
    for (Obj a = 0; a < na; ++a) pool[a] = t.over(mu[a], psi.at(a, b));
    out[b] = t.wx.meet(pool);
  }
  return out;
}

// (zeta_lower lam)(a) = /\_b under(zeta(a,b), lam(b)), a functor A -> Y.
// zeta: A^op (x) B -> X, lam in Z^B (an object of (Z^B)^op).
inline std::vector<Obj> kan_dag_lower(const TwoVarAdjunction& t,
                                      const VBifunctor& zeta,
                                      std::span<const Obj> lam) {
  detail::require_table(zeta, t.X, "kan_dag_lower");
  detail::require_functor_array(zeta.right, t.Z, lam, "kan_dag_lower");
  const int na = zeta.left->size(), nb = zeta.right->size();
  std::vector<Obj> out(na);
  std::vector<Obj> pool(nb);
  for (Obj a = 0; a < na; ++a) {
    for (Obj b = 0; b < nb; ++b) pool[b] = t.under(zeta.at(a, b), lam[b]);
    out[a] = t.wy.meet(pool);
  }
  return out;
}

// (zeta_upper mu)(b) = \/_a prod(zeta(a,b), mu(a)), a functor B -> Z.
// mu in Y^A (an object of (Y^A)^op).
inline std::vector<Obj> kan_dag_upper(const TwoVarAdjunction& t,
                                      const VBifunctor& zeta,
                                      std::span<const Obj> mu) {
  detail::require_table(zeta, t.X, "kan_dag_upper");
  detail::require_functor_array(dual(zeta.left), t.Y, mu, "kan_dag_upper");
  const int na = zeta.left->size(), nb = zeta.right->size();
  std::vector<Obj> out(nb);
  std::vector<Obj> pool(na);
  for (Obj b = 0; b < nb; ++b) {
    for (Obj a = 0; a < na; ++a) pool[a] = t.prod(zeta.at(a, b), mu[a]);
    out[b] = t.wz.join(pool);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closure operators and their fixed points.

struct ClosureReport {
  CatPtr carrier;
  std::vector<Obj> closure_map;
  std::vector<Obj> fixed;  // least-index representatives, sorted
};

// Verifies 1 <= h and hh iso h, collects the fixed points (one least-index
// representative per iso class), and checks that the restriction of h is
// left adjoint to the inclusion of the fixed points.
inline ClosureReport closure_fixed_points(const CatPtr& carrier,
                                          std::vector<Obj> h) {
  const VCategory& c = *carrier;
  if (static_cast<int>(h.size()) != c.size())
    throw NotClosure("closure map has wrong length");
  std::string w;
  VFunctor hf{carrier, carrier, h};
  if (!verify_vfunctor(hf, &w))
    throw NotClosure("closure map is not a V-functor: " + w);
  for (Obj a = 0; a < c.size(); ++a)
    if (!c.obj_leq(a, h[a]))
      throw NotClosure("1 <= h fails at " + c.object(a));
  for (Obj a = 0; a < c.size(); ++a)
    if (!c.obj_iso(h[h[a]], h[a]))
      throw NotClosure("hh iso h fails at " + c.object(a));

  std::vector<Obj> fixed;
  std::vector<char> seen(c.size(), 0);
  for (Obj a = 0; a < c.size(); ++a) {
    if (!c.obj_iso(h[a], a) || seen[a]) continue;
    fixed.push_back(a);
    for (Obj b = a; b < c.size(); ++b)
      if (c.obj_iso(a, b)) seen[b] = 1;
  }

  for (Obj a = 0; a < c.size(); ++a)
    for (Obj b : fixed)
      if (c.hom(h[a], b) != c.hom(a, b))
        throw NotClosure("restriction of h is not left adjoint to the "
                         "inclusion at (" + c.object(a) + "," + c.object(b) +
                         ")");

  return {carrier, std::move(h), std::move(fixed)};
}

// ---------------------------------------------------------------------------
// Concept lattices: the fixed points of the closure induced by the Isbell
// or Kan adjunction of a table, with the mate of each concept under the
// opposing adjoint and the inherited homs.

enum class LatticeKind { isbell, kan_star, kan_dag };

inline const char* to_string(LatticeKind k) {
  switch (k) {
    case LatticeKind::isbell: return "isbell";
    case LatticeKind::kan_star: return "kan_star";
    case LatticeKind::kan_dag: return "kan_dag";
  }
  return "?";
}

struct Concept {
  Obj carrier_index = -1;
  std::vector<Obj> primary;
  std::vector<Obj> mate;
};

struct ConceptLattice {
  LatticeKind kind = LatticeKind::isbell;
  CatPtr cat;       // the lattice itself: one object per concept
  CatPtr carrier;   // the ambient functor category (dualized for kan_dag)
  std::vector<Concept> concepts;
  std::vector<Obj> closure_map;  // endomap on the carrier

  int size() const { return static_cast<int>(concepts.size()); }

  // Concept whose primary component is iso to the given array; -1 if none.
  Obj find(const CatPtr& value_cat, std::span<const Obj> arr) const {
    for (int i = 0; i < size(); ++i) {
      const auto& p = concepts[i].primary;
      bool ok = p.size() == arr.size();
      for (std::size_t j = 0; j < arr.size() && ok; ++j)
        ok = value_cat->obj_iso(p[j], arr[j]);
      if (ok) return i;
    }
    return -1;
  }
};

inline ConceptLattice concept_lattice(const TwoVarAdjunction& t,
                                      LatticeKind kind,
                                      const VBifunctor& table,
                                      Budget budget = {}) {
  ConceptLattice out;
  out.kind = kind;

  FunctorCategory fc = [&] {
    switch (kind) {
      case LatticeKind::isbell:
        return functor_category(table.left, t.Y, budget);
      case LatticeKind::kan_star:
        return functor_category(dual(table.right), t.X, budget);
      case LatticeKind::kan_dag:
        return functor_category(table.right, t.Z, budget);
    }
    throw TypeMismatch("concept_lattice: bad kind");
  }();
  out.carrier = kind == LatticeKind::kan_dag ? dual(fc.cat()) : fc.cat();

  auto close = [&](std::span<const Obj> v) {
    switch (kind) {
      case LatticeKind::isbell:
        return isbell_down(t, table, isbell_up(t, table, v));
      case LatticeKind::kan_star:
        return kan_star_lower(t, table, kan_star_upper(t, table, v));
      case LatticeKind::kan_dag:
        return kan_dag_upper(t, table, kan_dag_lower(t, table, v));
    }
    throw TypeMismatch("concept_lattice: bad kind");
  };
  auto mate = [&](std::span<const Obj> v) {
    switch (kind) {
      case LatticeKind::isbell: return isbell_up(t, table, v);
      case LatticeKind::kan_star: return kan_star_upper(t, table, v);
      case LatticeKind::kan_dag: return kan_dag_lower(t, table, v);
    }
    throw TypeMismatch("concept_lattice: bad kind");
  };

  out.closure_map.resize(fc.size());
  for (Obj i = 0; i < fc.size(); ++i)
    out.closure_map[i] =
        fc.require_index(close(fc.map(i)), "concept_lattice");

  ClosureReport report = closure_fixed_points(out.carrier, out.closure_map);

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < report.fixed.size(); ++i) {
    Obj rep = report.fixed[i];
    Concept c;
    c.carrier_index = rep;
    c.primary = fc.map(rep);
    c.mate = mate(c.primary);
    out.concepts.push_back(std::move(c));
    labels.push_back("c" + std::to_string(i));
  }

  const int k = static_cast<int>(out.concepts.size());
  std::vector<Elem> hom(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      hom[static_cast<std::size_t>(i) * k + j] =
          out.carrier->hom(out.concepts[i].carrier_index,
                           out.concepts[j].carrier_index);
  out.cat = VCategory::make_flat(t.X->quantale(), std::move(labels),
                                 std::move(hom));

  if (!is_complete(out.cat))
    throw NotClosure("concept_lattice: fixed points do not form a complete "
                     "category");
  return out;
}

}  // namespace qfca
