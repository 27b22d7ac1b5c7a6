#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "quantale.hpp"

namespace qfca {

// Index into a category's object list.
using Obj = int;

class VCategory;
using CatPtr = std::shared_ptr<const VCategory>;

// A finite category enriched in a quantale: an object list plus a hom
// matrix X(x,y) subject to k <= X(x,x) and X(x,y) * X(y,z) <= X(x,z).
// Equivalently, a fuzzy preorder. Immutable after validation.
class VCategory {
public:
  static CatPtr make(QuantalePtr q, std::vector<std::string> objects,
                     const std::vector<std::vector<Elem>>& hom) {
    const int m = static_cast<int>(objects.size());
    if (static_cast<int>(hom.size()) != m)
      throw BadSize("hom must be " + std::to_string(m) + "x" +
                    std::to_string(m));
    std::vector<Elem> flat(m * m);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(hom[i].size()) != m)
        throw BadSize("hom row " + std::to_string(i) + " has wrong length");
      for (int j = 0; j < m; ++j) {
        if (hom[i][j] < 0 || hom[i][j] >= q->size())
          throw BadSize("hom(" + std::to_string(i) + "," + std::to_string(j) +
                        ") is not a carrier index");
        flat[i * m + j] = hom[i][j];
      }
    }
    return make_flat(std::move(q), std::move(objects), std::move(flat));
  }

  static CatPtr make_flat(QuantalePtr q, std::vector<std::string> objects,
                          std::vector<Elem> hom) {
    return CatPtr(new VCategory(std::move(q), std::move(objects),
                                std::move(hom)));
  }

  // V itself as a V-category, with hom(x,y) = x -> y.
  static CatPtr self_enrichment(QuantalePtr q) {
    const int n = q->size();
    std::vector<Elem> hom(n * n);
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y) hom[x * n + y] = q->residuate(x, y);
    return make_flat(q, q->labels(), std::move(hom));
  }

  // Free V-category on a set: identities are the unit, everything else is
  // the bottom element.
  static CatPtr discrete(QuantalePtr q, std::vector<std::string> objects) {
    const int m = static_cast<int>(objects.size());
    std::vector<Elem> hom(m * m, q->bottom());
    for (int i = 0; i < m; ++i) hom[i * m + i] = q->unit();
    return make_flat(std::move(q), std::move(objects), std::move(hom));
  }

  int size() const { return m_; }
  const std::string& object(Obj x) const { return objects_[x]; }
  const std::vector<std::string>& objects() const { return objects_; }
  Elem hom(Obj x, Obj y) const { return hom_[x * m_ + y]; }
  const std::vector<Elem>& hom_table() const { return hom_; }
  const QuantalePtr& quantale() const { return q_; }
  const Quantale& q() const { return *q_; }

  Obj index_of(const std::string& label) const {
    for (Obj i = 0; i < m_; ++i)
      if (objects_[i] == label) return i;
    return -1;
  }

  // Underlying preorder: x <= y iff k <= X(x,y).
  bool obj_leq(Obj x, Obj y) const { return ord_[x * m_ + y]; }
  bool obj_iso(Obj x, Obj y) const { return obj_leq(x, y) && obj_leq(y, x); }

  std::vector<std::vector<bool>> underlying_order() const {
    std::vector<std::vector<bool>> r(m_, std::vector<bool>(m_));
    for (Obj x = 0; x < m_; ++x)
      for (Obj y = 0; y < m_; ++y) r[x][y] = obj_leq(x, y);
    return r;
  }

  // All pairs x != y with x iso y, listed with x < y.
  std::vector<std::pair<Obj, Obj>> iso_pairs() const {
    std::vector<std::pair<Obj, Obj>> r;
    for (Obj x = 0; x < m_; ++x)
      for (Obj y = x + 1; y < m_; ++y)
        if (obj_iso(x, y)) r.emplace_back(x, y);
    return r;
  }

  bool is_separated() const { return iso_pairs().empty(); }

  // Least-index representative of the iso class of x.
  Obj canonical(Obj x) const {
    for (Obj y = 0; y < m_; ++y)
      if (obj_iso(x, y)) return y;
    return x;
  }

  bool table_identical(const VCategory& other) const {
    return q_.get() == other.q_.get() && objects_ == other.objects_ &&
           hom_ == other.hom_;
  }

private:
  VCategory(QuantalePtr q, std::vector<std::string> objects,
            std::vector<Elem> table)
      : q_(std::move(q)), objects_(std::move(objects)), hom_(std::move(table)),
        m_(static_cast<int>(objects_.size())) {
    if (hom_.size() != static_cast<std::size_t>(m_) * m_)
      throw BadSize("hom table has the wrong shape");
    for (Obj x = 0; x < m_; ++x)
      if (!q_->leq(q_->unit(), hom(x, x)))
        throw ReflexivityFail("k <= hom(x,x) fails at object " + objects_[x] +
                              ": hom = " + q_->label(hom(x, x)));
    for (Obj x = 0; x < m_; ++x)
      for (Obj y = 0; y < m_; ++y)
        for (Obj z = 0; z < m_; ++z)
          if (!q_->leq(q_->tensor(hom(x, y), hom(y, z)), hom(x, z)))
            throw TransitivityFail(
                "composition fails on (" + objects_[x] + "," + objects_[y] +
                "," + objects_[z] + "): " + q_->label(hom(x, y)) + " * " +
                q_->label(hom(y, z)) + " <= " + q_->label(hom(x, z)) +
                " does not hold");
    ord_.resize(m_ * m_);
    for (Obj x = 0; x < m_; ++x)
      for (Obj y = 0; y < m_; ++y)
        ord_[x * m_ + y] = q_->leq(q_->unit(), hom(x, y));
  }

  QuantalePtr q_;
  std::vector<std::string> objects_;
  std::vector<Elem> hom_;
  std::vector<char> ord_;
  int m_;
};

// ---------------------------------------------------------------------------
// Constructions on categories.

inline CatPtr dual(const CatPtr& x) {
  const int m = x->size();
  std::vector<Elem> hom(m * m);
  for (Obj a = 0; a < m; ++a)
    for (Obj b = 0; b < m; ++b) hom[a * m + b] = x->hom(b, a);
  return VCategory::make_flat(x->quantale(), x->objects(), std::move(hom));
}

namespace detail {
inline CatPtr pairwise(const CatPtr& x, const CatPtr& y, bool use_tensor,
                       const char* where) {
  require_same_quantale(x->quantale(), y->quantale(), where);
  const Quantale& q = x->q();
  const int mx = x->size(), my = y->size();
  std::vector<std::string> objects;
  objects.reserve(mx * my);
  for (Obj a = 0; a < mx; ++a)
    for (Obj b = 0; b < my; ++b)
      objects.push_back("(" + x->object(a) + "," + y->object(b) + ")");
  std::vector<Elem> hom(mx * my * mx * my);
  for (Obj a = 0; a < mx; ++a)
    for (Obj b = 0; b < my; ++b)
      for (Obj c = 0; c < mx; ++c)
        for (Obj d = 0; d < my; ++d) {
          Elem h = use_tensor ? q.tensor(x->hom(a, c), y->hom(b, d))
                              : q.meet2(x->hom(a, c), y->hom(b, d));
          hom[(a * my + b) * mx * my + (c * my + d)] = h;
        }
  return VCategory::make_flat(x->quantale(), std::move(objects),
                              std::move(hom));
}
}  // namespace detail

// Product category: homs are meets of component homs.
inline CatPtr product(const CatPtr& x, const CatPtr& y) {
  return detail::pairwise(x, y, false, "product");
}

// Tensor product category: homs are tensors of component homs.
inline CatPtr tensor_product(const CatPtr& x, const CatPtr& y) {
  return detail::pairwise(x, y, true, "tensor_product");
}

// ---------------------------------------------------------------------------
// Functors.

struct VFunctor {
  CatPtr source;
  CatPtr target;
  std::vector<Obj> map;

  Obj operator()(Obj x) const { return map[x]; }
};

inline VFunctor identity_functor(const CatPtr& x) {
  std::vector<Obj> map(x->size());
  for (Obj i = 0; i < x->size(); ++i) map[i] = i;
  return {x, x, std::move(map)};
}

// Same map between the dual categories.
inline VFunctor dual_functor(const VFunctor& f) {
  return {dual(f.source), dual(f.target), f.map};
}

inline bool verify_vfunctor(const VFunctor& f, std::string* witness = nullptr) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  require_same_quantale(x.quantale(), y.quantale(), "verify_vfunctor");
  if (static_cast<int>(f.map.size()) != x.size())
    throw TypeMismatch("functor map has wrong length");
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = 0; b < x.size(); ++b)
      if (!x.q().leq(x.hom(a, b), y.hom(f.map[a], f.map[b]))) {
        if (witness)
          *witness = "X(" + x.object(a) + "," + x.object(b) +
                     ") <= Y(f" + x.object(a) + ",f" + x.object(b) +
                     ") fails";
        return false;
      }
  return true;
}

// Pointwise order on functors: f <= g iff k <= Y(fx,gx) for every x.
inline bool functor_leq(const VFunctor& f, const VFunctor& g) {
  const VCategory& y = *f.target;
  for (Obj a = 0; a < f.source->size(); ++a)
    if (!y.obj_leq(f.map[a], g.map[a])) return false;
  return true;
}

inline bool is_fully_faithful(const VFunctor& f) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = 0; b < x.size(); ++b)
      if (x.hom(a, b) != y.hom(f.map[a], f.map[b])) return false;
  return true;
}

inline bool is_essentially_surjective(const VFunctor& f) {
  const VCategory& y = *f.target;
  for (Obj b = 0; b < y.size(); ++b) {
    bool hit = false;
    for (Obj a = 0; a < f.source->size() && !hit; ++a)
      hit = y.obj_iso(b, f.map[a]);
    if (!hit) return false;
  }
  return true;
}

inline bool is_equivalence(const VFunctor& f) {
  return is_fully_faithful(f) && is_essentially_surjective(f);
}

// Exhaustive check of Y(fx,y) = X(x,gy) for f: X -> Y, g: Y -> X.
inline bool check_adjunction(const VFunctor& f, const VFunctor& g) {
  const VCategory& x = *f.source;
  const VCategory& y = *f.target;
  if (g.source.get() != &y && !g.source->table_identical(y))
    throw TypeMismatch("check_adjunction: g does not start at f's target");
  if (g.target.get() != &x && !g.target->table_identical(x))
    throw TypeMismatch("check_adjunction: g does not end at f's source");
  for (Obj a = 0; a < x.size(); ++a)
    for (Obj b = 0; b < y.size(); ++b)
      if (y.hom(f.map[a], b) != x.hom(a, g.map[b])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Bifunctors.

// A map of pairs left x right -> target. Whether it is a V-bifunctor is
// checked against the tensor product of the declared sides, so contravariant
// arguments are expressed by passing a dual category as the side.
struct VBifunctor {
  CatPtr left;
  CatPtr right;
  CatPtr target;
  std::vector<Obj> table;  // row-major |left| x |right|

  Obj at(Obj x, Obj y) const { return table[x * right->size() + y]; }
};

inline VBifunctor make_bifunctor(CatPtr left, CatPtr right, CatPtr target,
                                 const std::vector<std::vector<Obj>>& table) {
  const int ml = left->size(), mr = right->size();
  if (static_cast<int>(table.size()) != ml)
    throw BadSize("bifunctor table must have " + std::to_string(ml) + " rows");
  std::vector<Obj> flat(ml * mr);
  for (int i = 0; i < ml; ++i) {
    if (static_cast<int>(table[i].size()) != mr)
      throw BadSize("bifunctor table row " + std::to_string(i) +
                    " has wrong length");
    for (int j = 0; j < mr; ++j) {
      if (table[i][j] < 0 || table[i][j] >= target->size())
        throw BadSize("bifunctor value at (" + std::to_string(i) + "," +
                      std::to_string(j) + ") is not an object of the target");
      flat[i * mr + j] = table[i][j];
    }
  }
  return {std::move(left), std::move(right), std::move(target),
          std::move(flat)};
}

// Both partial maps must be V-functors; this is equivalent to
// V-functoriality out of the tensor product of the sides.
inline bool verify_bifunctor(const VBifunctor& f,
                             std::string* witness = nullptr) {
  const VCategory& l = *f.left;
  const VCategory& r = *f.right;
  const VCategory& t = *f.target;
  require_same_quantale(l.quantale(), r.quantale(), "verify_bifunctor");
  require_same_quantale(l.quantale(), t.quantale(), "verify_bifunctor");
  const Quantale& q = l.q();
  for (Obj x = 0; x < l.size(); ++x)
    for (Obj y = 0; y < r.size(); ++y)
      for (Obj y2 = 0; y2 < r.size(); ++y2)
        if (!q.leq(r.hom(y, y2), t.hom(f.at(x, y), f.at(x, y2)))) {
          if (witness)
            *witness = "partial map phi(" + l.object(x) +
                       ",-) is not a V-functor at (" + r.object(y) + "," +
                       r.object(y2) + ")";
          return false;
        }
  for (Obj y = 0; y < r.size(); ++y)
    for (Obj x = 0; x < l.size(); ++x)
      for (Obj x2 = 0; x2 < l.size(); ++x2)
        if (!q.leq(l.hom(x, x2), t.hom(f.at(x, y), f.at(x2, y)))) {
          if (witness)
            *witness = "partial map phi(-," + r.object(y) +
                       ") is not a V-functor at (" + l.object(x) + "," +
                       l.object(x2) + ")";
          return false;
        }
  return true;
}

// Argument swap: f^d(y,x) = f(x,y).
inline VBifunctor swap_arguments(const VBifunctor& f) {
  const int ml = f.left->size(), mr = f.right->size();
  std::vector<Obj> flat(ml * mr);
  for (int x = 0; x < ml; ++x)
    for (int y = 0; y < mr; ++y) flat[y * ml + x] = f.at(x, y);
  return {f.right, f.left, f.target, std::move(flat)};
}

// ---------------------------------------------------------------------------
// Functor categories.

struct Budget {
  std::size_t max_objects = 50'000;
  std::size_t max_visited = 1'000'000;
};

// The category of all V-functors X -> Y, with hom(f,g) the meet over x of
// Y(fx,gx). Objects are enumerated by backtracking over image tuples with
// early pruning on partial functoriality, and come out in lexicographic
// order of the image tuple.
class FunctorCategory {
public:
  FunctorCategory(CatPtr dom, CatPtr cod, Budget budget = {})
      : dom_(std::move(dom)), cod_(std::move(cod)) {
    require_same_quantale(dom_->quantale(), cod_->quantale(),
                          "functor_category");
    enumerate(budget);
    build_category();
  }

  const CatPtr& dom() const { return dom_; }
  const CatPtr& cod() const { return cod_; }
  const CatPtr& cat() const { return cat_; }
  int size() const { return static_cast<int>(maps_.size()); }
  const std::vector<Obj>& map(Obj i) const { return maps_[i]; }
  const std::vector<std::vector<Obj>>& maps() const { return maps_; }
  VFunctor functor_at(Obj i) const { return {dom_, cod_, maps_[i]}; }

  // Index of an image tuple; the tuples are sorted, so this is a binary
  // search. -1 if the map is not a V-functor.
  Obj index_of(std::span<const Obj> map) const {
    auto it = std::lower_bound(maps_.begin(), maps_.end(), map,
                               [](const std::vector<Obj>& a,
                                  std::span<const Obj> b) {
                                 return std::lexicographical_compare(
                                     a.begin(), a.end(), b.begin(), b.end());
                               });
    if (it == maps_.end() ||
        !std::equal(it->begin(), it->end(), map.begin(), map.end()))
      return -1;
    return static_cast<Obj>(it - maps_.begin());
  }

  Obj require_index(std::span<const Obj> map, const char* where) const {
    Obj i = index_of(map);
    if (i < 0)
      throw NotClosure(std::string(where) +
                       ": computed map is not an enumerated V-functor");
    return i;
  }

private:
  void enumerate(const Budget& budget) {
    const int m = dom_->size();
    const int n = cod_->size();
    if (n == 0 && m > 0) return;  // no maps at all
    std::vector<Obj> image(m, 0);
    std::size_t visited = 0;
    const Quantale& q = dom_->q();

    auto consistent = [&](int i) {
      for (int j = 0; j <= i; ++j) {
        if (!q.leq(dom_->hom(j, i), cod_->hom(image[j], image[i])))
          return false;
        if (!q.leq(dom_->hom(i, j), cod_->hom(image[i], image[j])))
          return false;
      }
      return true;
    };

    // Iterative DFS over positions; image values rise lexicographically.
    int pos = 0;
    std::vector<Obj> next(m, 0);
    if (m == 0) {
      maps_.push_back({});
      return;
    }
    while (pos >= 0) {
      if (next[pos] >= n) {
        --pos;
        if (pos >= 0) ++next[pos];
        continue;
      }
      image[pos] = next[pos];
      if (++visited > budget.max_visited)
        throw BudgetExceeded("functor enumeration visited more than " +
                             std::to_string(budget.max_visited) +
                             " partial assignments");
      if (!consistent(pos)) {
        ++next[pos];
        continue;
      }
      if (pos == m - 1) {
        maps_.push_back(image);
        if (maps_.size() > budget.max_objects)
          throw BudgetExceeded("functor category exceeds the cap of " +
                               std::to_string(budget.max_objects) +
                               " objects");
        ++next[pos];
      } else {
        ++pos;
        next[pos] = 0;
      }
    }
  }

  void build_category() {
    const int k = static_cast<int>(maps_.size());
    const int m = dom_->size();
    const Quantale& q = dom_->q();
    std::vector<std::string> labels;
    labels.reserve(k);
    for (const auto& f : maps_) {
      std::ostringstream os;
      os << "<";
      for (int i = 0; i < m; ++i) {
        if (i) os << ",";
        os << f[i];
      }
      os << ">";
      labels.push_back(os.str());
    }
    std::vector<Elem> hom(static_cast<std::size_t>(k) * k);
    for (int f = 0; f < k; ++f)
      for (int g = 0; g < k; ++g) {
        Elem acc = q.top();
        for (int x = 0; x < m; ++x)
          acc = q.meet2(acc, cod_->hom(maps_[f][x], maps_[g][x]));
        hom[static_cast<std::size_t>(f) * k + g] = acc;
      }
    cat_ = VCategory::make_flat(dom_->quantale(), std::move(labels),
                                std::move(hom));
  }

  CatPtr dom_, cod_, cat_;
  std::vector<std::vector<Obj>> maps_;
};

inline FunctorCategory functor_category(CatPtr x, CatPtr y, Budget b = {}) {
  return FunctorCategory(std::move(x), std::move(y), b);
}

}  // namespace qfca
