#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace qfca {

// ---------------------------------------------------------------------------
// A fuzzy formal context: objects A, attributes B, and an incidence table
// valued in one of the categories of a two-variable adjunction. The mode
// selects which concept lattice the context induces. When no triple is
// declared the context lives over (V, V, V, tensor).

struct FuzzyContext {
  QuantalePtr q;
  CatPtr objects;     // A
  CatPtr attributes;  // B
  LatticeKind mode = LatticeKind::isbell;
  TwoVarAdjunction triple;
  CatPtr value_cat;   // Z, Y or X of the triple, depending on the mode
  std::vector<Obj> incidence;  // |A| x |B|, objects of value_cat

  Obj at(Obj a, Obj b) const { return incidence[a * attributes->size() + b]; }

  // The incidence as a calculus bifunctor A^op (x) B -> value_cat.
  VBifunctor bifunctor() const {
    return {dual(objects), attributes, value_cat, incidence};
  }

  ConceptLattice lattice(Budget budget = {}) const {
    return concept_lattice(triple, mode, bifunctor(), budget);
  }
};

inline LatticeKind parse_mode(const std::string& s) {
  if (s == "isbell") return LatticeKind::isbell;
  if (s == "kan_star") return LatticeKind::kan_star;
  if (s == "kan_dag") return LatticeKind::kan_dag;
  throw SchemaError("unknown mode '" + s + "'");
}

inline CatPtr value_category(const TwoVarAdjunction& t, LatticeKind mode) {
  switch (mode) {
    case LatticeKind::isbell: return t.Z;
    case LatticeKind::kan_star: return t.Y;
    case LatticeKind::kan_dag: return t.X;
  }
  throw SchemaError("bad mode");
}

namespace detail {

inline void validate_incidence(FuzzyContext& ctx) {
  const int nb = ctx.attributes->size();
  for (Obj a = 0; a < ctx.objects->size(); ++a)
    for (Obj b = 0; b < nb; ++b) {
      Obj v = ctx.incidence[a * nb + b];
      if (v < 0 || v >= ctx.value_cat->size())
        throw ValidationError("incidence cell (" + std::to_string(a) + "," +
                              std::to_string(b) +
                              ") does not index the value category of mode " +
                              to_string(ctx.mode));
    }
  std::string w;
  VBifunctor bf = ctx.bifunctor();
  if (!verify_bifunctor(bf, &w))
    throw ValidationError("incidence is not a V-bifunctor: " + w);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  for (auto& c : cells) {
    while (!c.empty() && (c.front() == ' ' || c.front() == '\t'))
      c.erase(c.begin());
    while (!c.empty() && (c.back() == ' ' || c.back() == '\t')) c.pop_back();
  }
  return cells;
}

}  // namespace detail

// CSV shortcut: header row names the attributes, first column names the
// objects, cells are 0/1, and the context lives over the Boolean quantale.
inline FuzzyContext load_context_csv(const std::filesystem::path& path,
                                     LatticeKind mode = LatticeKind::isbell) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw ParseError(path.string() + ": empty file");
  auto header = detail::split_csv_line(line);
  if (header.size() < 2)
    throw ParseError(path.string() + ": header needs at least one attribute");
  std::vector<std::string> attrs(header.begin() + 1, header.end());

  std::vector<std::string> objs;
  std::vector<Obj> cells;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    auto parts = detail::split_csv_line(line);
    if (parts.size() != header.size())
      throw ParseError(path.string() + ":" + std::to_string(row) +
                       ": expected " + std::to_string(header.size()) +
                       " cells");
    objs.push_back(parts[0]);
    for (std::size_t c = 1; c < parts.size(); ++c) {
      if (parts[c] != "0" && parts[c] != "1")
        throw ValidationError(path.string() + ": cell (" +
                              std::to_string(row) + "," + std::to_string(c) +
                              ") must be 0 or 1, got '" + parts[c] + "'");
      cells.push_back(parts[c] == "1" ? 1 : 0);
    }
  }
  if (objs.empty()) throw ParseError(path.string() + ": no object rows");

  FuzzyContext ctx;
  ctx.q = Quantale::boolean2();
  ctx.objects = VCategory::discrete(ctx.q, objs);
  ctx.attributes = VCategory::discrete(ctx.q, attrs);
  ctx.mode = mode;
  ctx.triple = quantale_two_var(ctx.q);
  ctx.value_cat = value_category(ctx.triple, mode);
  ctx.incidence = std::move(cells);
  detail::validate_incidence(ctx);
  return ctx;
}

inline FuzzyContext load_context_json(const nlohmann::json& j, Loader& loader,
                                      const std::string& where) {
  FuzzyContext ctx;
  try {
    if (!j.contains("quantale"))
      throw SchemaError(where + ": missing 'quantale'");
    ctx.q = loader.quantale(j["quantale"]);
    auto objs = j.at("objects").get<std::vector<std::string>>();
    auto attrs = j.at("attributes").get<std::vector<std::string>>();
    if (j.contains("object_hom"))
      ctx.objects = VCategory::make(
          ctx.q, objs, j["object_hom"].get<std::vector<std::vector<Elem>>>());
    else
      ctx.objects = VCategory::discrete(ctx.q, objs);
    if (j.contains("attribute_hom"))
      ctx.attributes = VCategory::make(
          ctx.q, attrs,
          j["attribute_hom"].get<std::vector<std::vector<Elem>>>());
    else
      ctx.attributes = VCategory::discrete(ctx.q, attrs);
    ctx.mode = parse_mode(j.value("mode", "isbell"));

    if (!j.contains("triple") ||
        j["triple"].value("preset", "") == "quantale") {
      ctx.triple = quantale_two_var(ctx.q);
    } else if (j["triple"].value("preset", "") == "tensor-cotensor") {
      CatPtr x = loader.category(j["triple"].at("X"), ctx.q);
      require_same_quantale(x->quantale(), ctx.q, where);
      ctx.triple = tensor_cotensor_two_var(x);
    } else {
      const auto& tj = j["triple"];
      CatPtr x = loader.category(tj.at("X"), ctx.q);
      CatPtr y = loader.category(tj.at("Y"), ctx.q);
      CatPtr z = loader.category(tj.at("Z"), ctx.q);
      auto wt = tj.at("with").get<std::vector<std::vector<Obj>>>();
      if (static_cast<int>(wt.size()) != x->size())
        throw SchemaError(where + ": 'with' table must be |X| rows");
      std::vector<Obj> flat;
      for (const auto& r : wt) {
        if (static_cast<int>(r.size()) != y->size())
          throw SchemaError(where + ": 'with' row length must be |Y|");
        flat.insert(flat.end(), r.begin(), r.end());
      }
      ctx.triple = derive_two_var(x, y, z, std::move(flat));
    }
    ctx.value_cat = value_category(ctx.triple, ctx.mode);

    const auto& inc = j.at("incidence");
    if (static_cast<int>(inc.size()) != ctx.objects->size())
      throw SchemaError(where + ": incidence must have one row per object");
    for (int r = 0; r < static_cast<int>(inc.size()); ++r) {
      const auto& row = inc[r];
      if (static_cast<int>(row.size()) != ctx.attributes->size())
        throw SchemaError(where + ": incidence row " + std::to_string(r) +
                          " has wrong length");
      for (int c = 0; c < static_cast<int>(row.size()); ++c) {
        Obj v = -1;
        if (row[c].is_number_integer()) {
          v = row[c].get<Obj>();
        } else if (row[c].is_string()) {
          v = ctx.value_cat->index_of(row[c].get<std::string>());
        }
        if (v < 0 || v >= ctx.value_cat->size())
          throw ValidationError(where + ": incidence cell (" +
                                std::to_string(r) + "," + std::to_string(c) +
                                ") is not a value of the target category");
        ctx.incidence.push_back(v);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(where + ": " + e.what());
  }
  detail::validate_incidence(ctx);
  return ctx;
}

// Dispatches on the file extension: .csv is the Boolean shortcut, anything
// else is parsed as JSON.
inline FuzzyContext load_context(const std::filesystem::path& path,
                                 LatticeKind csv_mode = LatticeKind::isbell) {
  if (path.extension() == ".csv") return load_context_csv(path, csv_mode);
  Loader loader(path.parent_path());
  return load_context_json(Loader::parse_file(path), loader, path.string());
}

inline nlohmann::json to_json(const FuzzyContext& ctx) {
  nlohmann::json j;
  j["quantale"] = to_json(*ctx.q);
  j["objects"] = ctx.objects->objects();
  j["attributes"] = ctx.attributes->objects();
  bool disc_obj = ctx.objects->table_identical(
      *VCategory::discrete(ctx.q, ctx.objects->objects()));
  if (!disc_obj) j["object_hom"] = to_json(*ctx.objects, false)["hom"];
  bool disc_attr = ctx.attributes->table_identical(
      *VCategory::discrete(ctx.q, ctx.attributes->objects()));
  if (!disc_attr) j["attribute_hom"] = to_json(*ctx.attributes, false)["hom"];
  j["mode"] = to_string(ctx.mode);
  // round-trippable triple: emit the full custom form unless it is the
  // default quantale triple
  auto vq = VCategory::self_enrichment(ctx.q);
  bool is_default = ctx.triple.X->table_identical(*vq) &&
                    ctx.triple.Y->table_identical(*vq) &&
                    ctx.triple.Z->table_identical(*vq);
  if (is_default) {
    bool is_tensor = true;
    for (Elem a = 0; a < ctx.q->size() && is_tensor; ++a)
      for (Elem b = 0; b < ctx.q->size() && is_tensor; ++b)
        is_tensor = ctx.triple.prod(a, b) == ctx.q->tensor(a, b);
    is_default = is_tensor;
  }
  if (!is_default) {
    nlohmann::json tj;
    tj["X"] = to_json(*ctx.triple.X, false);
    tj["Y"] = to_json(*ctx.triple.Y, false);
    tj["Z"] = to_json(*ctx.triple.Z, false);
    std::vector<std::vector<Obj>> wt(ctx.triple.X->size(),
                                     std::vector<Obj>(ctx.triple.Y->size()));
    for (Obj x = 0; x < ctx.triple.X->size(); ++x)
      for (Obj y = 0; y < ctx.triple.Y->size(); ++y)
        wt[x][y] = ctx.triple.prod(x, y);
    tj["with"] = wt;
    j["triple"] = tj;
  }
  std::vector<std::vector<Obj>> inc(ctx.objects->size(),
                                    std::vector<Obj>(ctx.attributes->size()));
  for (Obj a = 0; a < ctx.objects->size(); ++a)
    for (Obj b = 0; b < ctx.attributes->size(); ++b) inc[a][b] = ctx.at(a, b);
  j["incidence"] = inc;
  return j;
}

// ---------------------------------------------------------------------------
// Lattice artifacts: JSON (reloadable as a plain category) and DOT.

namespace detail {

// Renders one component of a concept as label:value pairs, omitting bottom
// grades and abbreviating top grades to the bare label.
inline std::string render_graded_set(const VCategory& index_cat,
                                     const VCategory& value_cat,
                                     std::span<const Obj> values,
                                     Obj bottom_value, Obj top_value) {
  std::string out = "{";
  bool first = true;
  for (Obj i = 0; i < index_cat.size(); ++i) {
    if (value_cat.obj_iso(values[i], bottom_value)) continue;
    if (!first) out += ",";
    first = false;
    out += index_cat.object(i);
    if (!value_cat.obj_iso(values[i], top_value))
      out += ":" + value_cat.object(values[i]);
  }
  return out + "}";
}

}  // namespace detail

// Covering pairs (lower, upper) of the lattice's underlying order: the
// transitive reduction of the strict order on concepts.
inline std::vector<std::pair<Obj, Obj>> covering_pairs(const VCategory& cat) {
  std::vector<std::pair<Obj, Obj>> out;
  auto lt = [&](Obj x, Obj y) {
    return cat.obj_leq(x, y) && !cat.obj_leq(y, x);
  };
  for (Obj x = 0; x < cat.size(); ++x)
    for (Obj y = 0; y < cat.size(); ++y) {
      if (!lt(x, y)) continue;
      bool covering = true;
      for (Obj z = 0; z < cat.size() && covering; ++z)
        if (lt(x, z) && lt(z, y)) covering = false;
      if (covering) out.emplace_back(x, y);
    }
  return out;
}

struct PrimaryMateCats {
  CatPtr primary_index, primary_value, mate_index, mate_value;
};

// Which categories index and grade the two components of a concept.
inline PrimaryMateCats concept_components(const FuzzyContext& ctx) {
  const TwoVarAdjunction& t = ctx.triple;
  switch (ctx.mode) {
    case LatticeKind::isbell:
      return {ctx.objects, t.Y, ctx.attributes, t.X};
    case LatticeKind::kan_star:
      return {ctx.attributes, t.X, ctx.objects, t.Z};
    case LatticeKind::kan_dag:
      return {ctx.attributes, t.Z, ctx.objects, t.Y};
  }
  throw SchemaError("bad mode");
}

// The extent|intent node label of one concept.
inline std::string concept_label(const ConceptLattice& l,
                                 const FuzzyContext& ctx, int i) {
  auto parts = concept_components(ctx);
  auto wp = require_complete(parts.primary_value, "concept_label");
  auto wm = require_complete(parts.mate_value, "concept_label");
  const auto& c = l.concepts[i];
  return detail::render_graded_set(*parts.primary_index, *parts.primary_value,
                                   c.primary, wp.bottom, wp.top) +
         "|" +
         detail::render_graded_set(*parts.mate_index, *parts.mate_value,
                                   c.mate, wm.bottom, wm.top);
}

inline nlohmann::json lattice_to_json(const ConceptLattice& l,
                                      const FuzzyContext& ctx) {
  nlohmann::json j = to_json(*l.cat);
  j["kind"] = to_string(l.kind);
  auto parts = concept_components(ctx);
  nlohmann::json cs = nlohmann::json::array();
  for (int i = 0; i < l.size(); ++i) {
    const auto& c = l.concepts[i];
    nlohmann::json e;
    e["primary"] = c.primary;
    e["mate"] = c.mate;
    nlohmann::json pl = nlohmann::json::array(), ml = nlohmann::json::array();
    for (Obj v : c.primary) pl.push_back(parts.primary_value->object(v));
    for (Obj v : c.mate) ml.push_back(parts.mate_value->object(v));
    e["primary_labels"] = pl;
    e["mate_labels"] = ml;
    e["label"] = concept_label(l, ctx, i);
    cs.push_back(e);
  }
  j["concepts"] = cs;
  return j;
}

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

inline std::string to_dot(const ConceptLattice& l, const FuzzyContext& ctx) {
  std::ostringstream os;
  os << "digraph concept_lattice {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (int i = 0; i < l.size(); ++i)
    os << "  c" << i << " [label=\"" << dot_escape(concept_label(l, ctx, i))
       << "\"];\n";
  for (auto [lo, hi] : covering_pairs(*l.cat))
    os << "  c" << lo << " -> c" << hi << ";\n";
  os << "}\n";
  return os.str();
}

// DOT from a saved lattice artifact: nodes use the stored labels, edges are
// recomputed from the reloaded hom table.
inline std::string saved_lattice_to_dot(const nlohmann::json& j,
                                        Loader& loader) {
  CatPtr cat = loader.category(j);
  std::vector<std::string> labels(cat->size());
  for (Obj i = 0; i < cat->size(); ++i) labels[i] = cat->object(i);
  if (j.contains("concepts")) {
    const auto& cs = j["concepts"];
    for (Obj i = 0; i < cat->size() &&
                    i < static_cast<int>(cs.size()); ++i)
      if (cs[i].contains("label")) labels[i] = cs[i]["label"];
  }
  std::ostringstream os;
  os << "digraph concept_lattice {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (Obj i = 0; i < cat->size(); ++i)
    os << "  c" << i << " [label=\"" << dot_escape(labels[i]) << "\"];\n";
  for (auto [lo, hi] : covering_pairs(*cat))
    os << "  c" << lo << " -> c" << hi << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Bundled fixture instances.

struct Fixture {
  std::string name;
  std::string description;
  FuzzyContext context;
  int expected_concepts = -1;     // -1 when unspecified
  bool expect_entire_carrier = false;
};

inline std::vector<std::string> fixture_names() {
  return {"v-distributor-2x2",  "evaluation-isbell", "evaluation-kan",
          "singleton-cotensor", "hom-distributor-identity",
          "lawvere-formal-balls"};
}

inline Fixture fixtures(const std::string& name) {
  Fixture f;
  f.name = name;
  if (name == "v-distributor-2x2") {
    f.description =
        "Boolean distributor between two 2-chains; 2 Isbell concepts";
    FuzzyContext& ctx = f.context;
    ctx.q = Quantale::boolean2();
    ctx.objects = VCategory::make(ctx.q, {"a1", "a2"}, {{1, 1}, {0, 1}});
    ctx.attributes = VCategory::make(ctx.q, {"b1", "b2"}, {{1, 1}, {0, 1}});
    ctx.mode = LatticeKind::isbell;
    ctx.triple = quantale_two_var(ctx.q);
    ctx.value_cat = value_category(ctx.triple, ctx.mode);
    ctx.incidence = {1, 1, 0, 1};
    f.expected_concepts = 2;
  } else if (name == "evaluation-isbell" || name == "evaluation-kan") {
    f.description = "evaluation bifunctor over the goedel 3-chain; every "
                    "object of the presheaf category is a concept";
    FuzzyContext& ctx = f.context;
    ctx.q = Quantale::goedel(3);
    auto v = VCategory::self_enrichment(ctx.q);
    ctx.objects = VCategory::discrete(ctx.q, {"a1", "a2"});
    auto pre = functor_category(dual(ctx.objects), v);
    ctx.attributes = pre.cat();
    ctx.mode = name == "evaluation-isbell" ? LatticeKind::isbell
                                           : LatticeKind::kan_star;
    ctx.triple = tensor_cotensor_two_var(v);
    ctx.value_cat = value_category(ctx.triple, ctx.mode);
    ctx.incidence.resize(
        static_cast<std::size_t>(ctx.objects->size()) * pre.size());
    for (Obj a = 0; a < ctx.objects->size(); ++a)
      for (Obj m = 0; m < pre.size(); ++m)
        ctx.incidence[a * pre.size() + m] = pre.map(m)[a];
    f.expected_concepts = pre.size();
    f.expect_entire_carrier = name == "evaluation-isbell";
  } else if (name == "singleton-cotensor") {
    f.description = "one attribute over the lukasiewicz 3-chain; the "
                    "concepts are the cotensors of the column";
    FuzzyContext& ctx = f.context;
    ctx.q = Quantale::lukasiewicz(3);
    auto v = VCategory::self_enrichment(ctx.q);
    ctx.objects = VCategory::make(ctx.q, {"a1", "a2"}, {{2, 1}, {0, 2}});
    ctx.attributes = VCategory::make(ctx.q, {"*"}, {{ctx.q->unit()}});
    ctx.mode = LatticeKind::isbell;
    ctx.triple = tensor_cotensor_two_var(v);
    ctx.value_cat = value_category(ctx.triple, ctx.mode);
    ctx.incidence = {2, 1};  // tau = (1, 1/2)
    f.expected_concepts = 2;
  } else if (name == "hom-distributor-identity") {
    f.description = "the hom of a category as a distributor; the kan_dag "
                    "closure is the identity";
    FuzzyContext& ctx = f.context;
    ctx.q = Quantale::goedel(3);
    auto v = VCategory::self_enrichment(ctx.q);
    ctx.objects = VCategory::make(ctx.q, {"a1", "a2", "a3"},
                                  {{2, 1, 1}, {0, 2, 1}, {0, 0, 2}});
    ctx.attributes = ctx.objects;
    ctx.mode = LatticeKind::kan_dag;
    ctx.triple = tensor_cotensor_two_var(v);
    ctx.value_cat = value_category(ctx.triple, ctx.mode);
    for (Obj a = 0; a < 3; ++a)
      for (Obj b = 0; b < 3; ++b)
        ctx.incidence.push_back(ctx.objects->hom(a, b));
    f.expect_entire_carrier = true;
  } else if (name == "lawvere-formal-balls") {
    f.description = "a three-point metric space over the truncated Lawvere "
                    "chain; its hom as a distributor";
    FuzzyContext& ctx = f.context;
    ctx.q = Quantale::lawvere(4);
    ctx.objects = VCategory::make(ctx.q, {"a", "b", "c"},
                                  {{0, 1, 3}, {1, 0, 2}, {3, 2, 0}});
    ctx.attributes = ctx.objects;
    ctx.mode = LatticeKind::isbell;
    ctx.triple = quantale_two_var(ctx.q);
    ctx.value_cat = value_category(ctx.triple, ctx.mode);
    for (Obj a = 0; a < 3; ++a)
      for (Obj b = 0; b < 3; ++b)
        ctx.incidence.push_back(ctx.objects->hom(a, b));
  } else {
    throw UnknownFixture("no fixture named '" + name + "'");
  }
  detail::validate_incidence(f.context);
  return f;
}

}  // namespace qfca
