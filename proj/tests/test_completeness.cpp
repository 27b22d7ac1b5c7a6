#include <catch2/catch_amalgamated.hpp>

#include "qfca/completeness.hpp"

using namespace qfca;

namespace {

std::vector<CatPtr> small_categories(const QuantalePtr& q, int m) {
  std::vector<CatPtr> out;
  const int n = q->size();
  std::vector<Elem> hom(m * m, 0);
  std::size_t total = 1;
  for (int i = 0; i < m * m; ++i) total *= n;
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("o" + std::to_string(i));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (int i = 0; i < m * m; ++i) {
      hom[i] = static_cast<Elem>(c % n);
      c /= n;
    }
    try {
      out.push_back(VCategory::make_flat(q, names, hom));
    } catch (const error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("V as a category is complete; tensors and cotensors are * and ->") {
  for (auto q : {Quantale::boolean2(), Quantale::lukasiewicz(3)}) {
    auto v = VCategory::self_enrichment(q);
    auto w = is_complete(v);
    REQUIRE(w.has_value());
    for (Elem a = 0; a < q->size(); ++a)
      for (Elem r = 0; r < q->size(); ++r) {
        REQUIRE(w->tensor(a, r) == q->tensor(a, r));
        REQUIRE(w->cotensor(a, r) == q->residuate(a, r));
      }
    REQUIRE(w->bottom == q->bottom());
    REQUIRE(w->top == q->top());
  }
}

TEST_CASE("a two-object discrete category is incomplete") {
  auto q = Quantale::boolean2();
  auto d = VCategory::discrete(q, {"a", "b"});
  auto rep = check_complete(d);
  REQUIRE_FALSE(rep.witness.has_value());
  REQUIRE_FALSE(rep.refusal.empty());
  REQUIRE_THROWS_AS(require_complete(d, "test"), NotComplete);
}

TEST_CASE("order joins and meets pick least-index representatives") {
  auto q = Quantale::boolean2();
  // objects 0 and 1 isomorphic, both above 2
  std::vector<std::vector<Elem>> hom{{1, 1, 0}, {1, 1, 0}, {1, 1, 1}};
  auto x = VCategory::make(q, {"a", "b", "c"}, hom);
  std::vector<Obj> pair{2, 1};
  REQUIRE(order_join(*x, pair) == 0);  // iso class {0,1}, least index 0
  REQUIRE(order_meet(*x, pair) == 2);
}

TEST_CASE("sup of a representable presheaf is the representing object") {
  auto q = Quantale::lukasiewicz(3);
  auto v = VCategory::self_enrichment(q);
  for (Obj x0 = 0; x0 < v->size(); ++x0) {
    std::vector<Elem> mu(v->size());
    for (Obj b = 0; b < v->size(); ++b) mu[b] = v->hom(b, x0);
    REQUIRE(v->obj_iso(sup(*v, mu), x0));
    std::vector<Elem> lam(v->size());
    for (Obj b = 0; b < v->size(); ++b) lam[b] = v->hom(x0, b);
    REQUIRE(v->obj_iso(inf(*v, lam), x0));
  }
}

TEST_CASE("in V itself, sup is the join of the characteristic subset") {
  auto q = Quantale::boolean2();
  auto v = VCategory::self_enrichment(q);
  auto pre = functor_category(dual(v), v);
  for (Obj i = 0; i < pre.size(); ++i) {
    std::vector<Elem> mu(pre.map(i).begin(), pre.map(i).end());
    std::vector<Elem> members;
    for (Obj b = 0; b < v->size(); ++b)
      if (mu[b] == 1) members.push_back(b);
    REQUIRE(sup(*v, mu) == q->join(members));
  }
}

TEST_CASE("inf of the constant-bottom copresheaf is the top object") {
  auto q = Quantale::lukasiewicz(3);
  auto v = VCategory::self_enrichment(q);
  std::vector<Elem> lam(v->size(), q->bottom());
  REQUIRE(inf(*v, lam) == q->top());
  std::vector<Elem> mu(v->size(), q->bottom());
  REQUIRE(sup(*v, mu) == q->bottom());
}

TEST_CASE("sup on an incomplete category raises NotComplete") {
  auto q = Quantale::boolean2();
  auto d = VCategory::discrete(q, {"a", "b"});
  std::vector<Elem> mu{1, 1};  // a presheaf on a discrete category
  REQUIRE_THROWS_AS(sup(*d, mu), NotComplete);
}

TEST_CASE("Yoneda identities hold exhaustively on small instances") {
  for (auto q : {Quantale::boolean2(), Quantale::goedel(3)}) {
    for (const auto& x : small_categories(q, 2)) {
      auto emb = yoneda(x);
      const FunctorCategory& p = emb.presheaves;
      for (Obj a = 0; a < x->size(); ++a)
        for (Obj m = 0; m < p.size(); ++m)
          REQUIRE(p.cat()->hom(emb.functor.map[a], m) == p.map(m)[a]);

      auto coemb = co_yoneda(x);
      const FunctorCategory& c = coemb.presheaves;
      for (Obj a = 0; a < x->size(); ++a)
        for (Obj m = 0; m < c.size(); ++m)
          REQUIRE(coemb.target->hom(m, coemb.functor.map[a]) == c.map(m)[a]);

      REQUIRE(is_fully_faithful(emb.functor));
      REQUIRE(is_fully_faithful(coemb.functor));
      if (x->is_separated()) {
        // injective on objects
        for (Obj a = 0; a < x->size(); ++a)
          for (Obj b = a + 1; b < x->size(); ++b)
            REQUIRE(emb.functor.map[a] != emb.functor.map[b]);
      }
    }
  }
}

TEST_CASE("f_arrow of the identity preserves sups") {
  auto q = Quantale::goedel(3);
  auto v = VCategory::self_enrichment(q);
  auto pre = functor_category(dual(v), v);
  VFunctor idop = dual_functor(identity_functor(v));
  for (Obj i = 0; i < pre.size(); ++i) {
    std::vector<Elem> mu(pre.map(i).begin(), pre.map(i).end());
    auto pushed = f_arrow(idop, mu);
    REQUIRE(v->obj_iso(sup(*v, pushed), sup(*v, mu)));
  }
}

TEST_CASE("f_arrow sends representables to representables") {
  auto q = Quantale::boolean2();
  auto v = VCategory::self_enrichment(q);
  auto x = VCategory::make(q, {"a", "b"}, {{1, 1}, {0, 1}});
  auto fcs = functor_category(x, v);
  for (Obj fi = 0; fi < fcs.size(); ++fi) {
    VFunctor f = fcs.functor_at(fi);
    VFunctor fop = dual_functor(f);
    for (Obj x0 = 0; x0 < x->size(); ++x0) {
      std::vector<Elem> mu(x->size());
      for (Obj b = 0; b < x->size(); ++b) mu[b] = x->hom(b, x0);
      auto pushed = f_arrow(fop, mu);
      for (Obj y = 0; y < v->size(); ++y)
        REQUIRE(pushed[y] == v->hom(y, f.map[x0]));
    }
  }
}

TEST_CASE("f_arrow of constant bottom is constant bottom") {
  auto q = Quantale::lukasiewicz(4);
  auto v = VCategory::self_enrichment(q);
  std::vector<Elem> mu(v->size(), q->bottom());
  auto pushed = f_arrow(identity_functor(v), mu);
  for (Elem e : pushed) REQUIRE(e == q->bottom());
}

TEST_CASE("iota at the unit is the Yoneda embedding when X = V") {
  auto q = Quantale::lukasiewicz(3);
  auto v = VCategory::self_enrichment(q);
  auto wv = require_complete(v, "test");
  auto a = VCategory::make(q, {"p", "r"}, {{2, 1}, {0, 2}});
  auto bundle = iota(a, v, wv);
  auto emb = yoneda(a);
  for (Obj ai = 0; ai < a->size(); ++ai)
    REQUIRE(bundle.bifunctor.at(ai, q->unit()) == emb.functor.map[ai]);

  auto dag = iota_dag(a, v, wv);
  auto coemb = co_yoneda(a);
  for (Obj ai = 0; ai < a->size(); ++ai)
    REQUIRE(dag.bifunctor.at(ai, q->unit()) == coemb.functor.map[ai]);
}

TEST_CASE("iota over the Lawvere chain computes formal balls") {
  auto q = Quantale::lawvere(4);
  auto v = VCategory::self_enrichment(q);
  auto wv = require_complete(v, "test");
  // a three-point metric space: d(a,b)=1, d(b,c)=2, d(a,c)=3
  auto a = VCategory::make(q, {"a", "b", "c"},
                           {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
  auto bundle = iota(a, v, wv);
  for (Obj center = 0; center < 3; ++center)
    for (Elem radius = 0; radius < q->size(); ++radius) {
      const auto& ball = bundle.fc.map(bundle.bifunctor.at(center, radius));
      for (Obj b = 0; b < 3; ++b)
        REQUIRE(ball[b] == q->tensor(a->hom(b, center), radius));
    }
}

TEST_CASE("generalized Yoneda identities for iota and iota_dag") {
  for (auto q : {Quantale::boolean2(), Quantale::goedel(3)}) {
    auto v = VCategory::self_enrichment(q);
    auto wv = require_complete(v, "test");
    for (const auto& a : small_categories(q, 2)) {
      auto bundle = iota(a, v, wv);
      const FunctorCategory& fc = bundle.fc;
      for (Obj ai = 0; ai < a->size(); ++ai)
        for (Obj x = 0; x < v->size(); ++x)
          for (Obj m = 0; m < fc.size(); ++m)
            REQUIRE(fc.cat()->hom(bundle.bifunctor.at(ai, x), m) ==
                    v->hom(x, fc.map(m)[ai]));

      auto dag = iota_dag(a, v, wv);
      for (Obj ai = 0; ai < a->size(); ++ai)
        for (Obj x = 0; x < v->size(); ++x)
          for (Obj m = 0; m < dag.fc.size(); ++m)
            REQUIRE(dag.bifunctor.target->hom(m, dag.bifunctor.at(ai, x)) ==
                    v->hom(x, dag.fc.map(m)[ai]));
    }
  }
}

TEST_CASE("essentially surjective functors are dense and codense") {
  auto q = Quantale::goedel(3);
  auto v = VCategory::self_enrichment(q);
  REQUIRE(is_dense(identity_functor(v)));
  REQUIRE(is_codense(identity_functor(v)));
}

TEST_CASE("a constant functor into a chain is not dense") {
  auto q = Quantale::boolean2();
  auto v = VCategory::self_enrichment(q);
  auto one = VCategory::make(q, {"pt"}, {{1}});
  VFunctor c{one, v, {0}};  // constant at bottom
  std::string w;
  REQUIRE_FALSE(is_dense(c, &w));
  REQUIRE_FALSE(w.empty());
}

TEST_CASE("iota is dense and iota_dag is codense (criterion)") {
  for (auto q : {Quantale::boolean2(), Quantale::goedel(3)}) {
    auto v = VCategory::self_enrichment(q);
    auto wv = require_complete(v, "test");
    for (const auto& a : small_categories(q, 2)) {
      auto bundle = iota(a, v, wv);
      VFunctor f{tensor_product(a, v), bundle.fc.cat(),
                 bundle.bifunctor.table};
      REQUIRE(is_dense(f));

      auto dag = iota_dag(a, v, wv);
      VFunctor g{tensor_product(a, dual(v)), dag.bifunctor.target,
                 dag.bifunctor.table};
      REQUIRE(is_codense(g));
    }
  }
}

TEST_CASE("hom criterion for density agrees with the sup definition") {
  auto q = Quantale::boolean2();
  auto v = VCategory::self_enrichment(q);
  auto wv = require_complete(v, "test");
  auto a = VCategory::make(q, {"p", "r"}, {{1, 1}, {0, 1}});
  auto bundle = iota(a, v, wv);
  VFunctor f{tensor_product(a, v), bundle.fc.cat(), bundle.bifunctor.table};
  REQUIRE(is_dense(f) == is_dense_by_definition(f));
  REQUIRE(is_dense(f));

  auto dag = iota_dag(a, v, wv);
  VFunctor g{tensor_product(a, dual(v)), dag.bifunctor.target,
             dag.bifunctor.table};
  REQUIRE(is_codense(g) == is_codense_by_definition(g));

  // and on a functor that is not dense
  auto one = VCategory::make(q, {"pt"}, {{1}});
  VFunctor c{one, v, {0}};
  REQUIRE(is_dense_by_definition(c) == is_dense(c));
}

TEST_CASE("hom continuity in complete categories") {
  auto q = Quantale::lukasiewicz(3);
  auto v = VCategory::self_enrichment(q);
  auto p = product(v, v);
  auto wp = require_complete(p, "test");
  const int m = p->size();
  for (int mask = 0; mask < (1 << m); ++mask) {
    std::vector<Obj> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) s.push_back(i);
    Obj j = wp.join(s);
    Obj mt = wp.meet(s);
    for (Obj x = 0; x < m; ++x) {
      Elem macc = q->top(), jacc = q->top();
      for (Obj y : s) {
        macc = q->meet2(macc, p->hom(x, y));
        jacc = q->meet2(jacc, p->hom(y, x));
      }
      REQUIRE(p->hom(x, mt) == macc);
      REQUIRE(p->hom(j, x) == jacc);
    }
  }
}

TEST_CASE("adjoint characterizations agree between complete categories") {
  auto q = Quantale::goedel(3);
  auto v = VCategory::self_enrichment(q);
  auto p = product(v, v);
  auto wv = require_complete(v, "test");
  auto wp = require_complete(p, "test");

  int adjoints = 0;
  auto fc = functor_category(v, p);
  for (Obj i = 0; i < fc.size(); ++i) {
    VFunctor f = fc.functor_at(i);
    bool by_search = find_right_adjoint(f).has_value();
    bool by_sups = preserves_sups(f);
    bool by_tensors = order_left_adjoint(f) && preserves_tensors(f, wv, wp);
    REQUIRE(by_search == by_sups);
    REQUIRE(by_search == by_tensors);
    if (by_search) {
      ++adjoints;
      REQUIRE(check_adjunction(f, *find_right_adjoint(f)));
    }
  }
  REQUIRE(adjoints > 0);
}

TEST_CASE("right adjoints are exactly the inf-preserving functors") {
  auto q = Quantale::goedel(3);
  auto v = VCategory::self_enrichment(q);
  auto p = product(v, v);
  auto wv = require_complete(v, "test");
  auto wp = require_complete(p, "test");
  int adjoints = 0;
  auto fc = functor_category(v, p);
  for (Obj i = 0; i < fc.size(); ++i) {
    VFunctor f = fc.functor_at(i);
    bool by_search = find_left_adjoint(f).has_value();
    bool by_infs = preserves_infs(f);
    REQUIRE(by_search == by_infs);
    if (by_search) {
      ++adjoints;
      REQUIRE(check_adjunction(*find_left_adjoint(f), f));
      REQUIRE(preserves_cotensors(f, wv, wp));
    }
  }
  REQUIRE(adjoints > 0);
}

TEST_CASE("functor categories over complete targets are complete pointwise") {
  auto q = Quantale::goedel(3);
  auto v = VCategory::self_enrichment(q);
  auto a = VCategory::make(q, {"p", "r"}, {{2, 1}, {0, 2}});
  auto fc = functor_category(a, v);
  auto w = is_complete(fc.cat());
  REQUIRE(w.has_value());
  auto wv = require_complete(v, "test");
  // tensors and cotensors are pointwise
  for (Elem e = 0; e < q->size(); ++e)
    for (Obj i = 0; i < fc.size(); ++i) {
      const auto& t = fc.map(w->tensor(e, i));
      for (Obj x = 0; x < a->size(); ++x)
        REQUIRE(v->obj_iso(t[x], wv.tensor(e, fc.map(i)[x])));
      const auto& c = fc.map(w->cotensor(e, i));
      for (Obj x = 0; x < a->size(); ++x)
        REQUIRE(v->obj_iso(c[x], wv.cotensor(e, fc.map(i)[x])));
    }
}
