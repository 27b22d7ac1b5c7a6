#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "representation.hpp"

namespace qfca {

// ---------------------------------------------------------------------------
// JSON writers.

inline nlohmann::json to_json(const Quantale& q) {
  nlohmann::json j;
  j["carrier"] = q.labels();
  std::vector<std::vector<bool>> leq(q.size(), std::vector<bool>(q.size()));
  std::vector<std::vector<Elem>> tensor(q.size(),
                                        std::vector<Elem>(q.size()));
  for (Elem x = 0; x < q.size(); ++x)
    for (Elem y = 0; y < q.size(); ++y) {
      leq[x][y] = q.leq(x, y);
      tensor[x][y] = q.tensor(x, y);
    }
  j["leq"] = leq;
  j["tensor"] = tensor;
  j["unit"] = q.unit();
  return j;
}

inline nlohmann::json to_json(const VCategory& c, bool embed_quantale = true) {
  nlohmann::json j;
  if (embed_quantale) j["quantale"] = to_json(c.q());
  j["objects"] = c.objects();
  std::vector<std::vector<Elem>> hom(c.size(), std::vector<Elem>(c.size()));
  for (Obj x = 0; x < c.size(); ++x)
    for (Obj y = 0; y < c.size(); ++y) hom[x][y] = c.hom(x, y);
  j["hom"] = hom;
  return j;
}

inline nlohmann::json to_json(const RepresentationCertificate& cert) {
  nlohmann::json j;
  j["kind"] = to_string(cert.kind);
  j["complete_ok"] = cert.complete_ok;
  j["dense_ok"] = cert.dense_ok;
  j["codense_ok"] = cert.codense_ok;
  j["hom_identity_ok"] = cert.hom_identity_ok;
  j["h_functorial"] = cert.h_functorial;
  j["h_fully_faithful"] = cert.h_fully_faithful;
  j["h_ess_surjective"] = cert.h_ess_surjective;
  j["valid"] = cert.valid();
  j["h"] = cert.h;
  j["witnesses"] = cert.witnesses;
  return j;
}

// ---------------------------------------------------------------------------
// Loader. Quantales are canonicalized by structure, so every file loaded
// through one Loader that names the same quantale shares one instance and
// the resulting categories interoperate.

class Loader {
public:
  explicit Loader(std::filesystem::path base = ".") : base_(std::move(base)) {}

  static nlohmann::json parse_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ParseError("cannot open " + p.string());
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(p.string() + ": " + e.what());
    }
    return j;
  }

  nlohmann::json resolve(const nlohmann::json& j) const {
    if (j.is_string())
      return parse_file(base_ / j.get<std::string>());
    return j;
  }

  QuantalePtr quantale(const nlohmann::json& spec) {
    nlohmann::json j = resolve(spec);
    if (!j.is_object()) throw SchemaError("quantale: expected an object");
    if (!j.contains("builtin"))
      for (const char* f : {"carrier", "leq", "tensor", "unit"})
        if (!j.contains(f))
          throw SchemaError(std::string("quantale: missing field '") + f +
                            "'");
    std::string cache_key = j.dump();
    auto it = cache_.find(cache_key);
    if (it != cache_.end()) return it->second;

    QuantalePtr q;
    try {
      if (j.contains("builtin")) {
        q = Quantale::builtin(j["builtin"].get<std::string>(),
                              j.value("n", 0));
      } else {
        q = Quantale::make(j["carrier"].get<std::vector<std::string>>(),
                           j["leq"].get<std::vector<std::vector<bool>>>(),
                           j["tensor"].get<std::vector<std::vector<Elem>>>(),
                           j["unit"].get<Elem>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("quantale: ") + e.what());
    }
    cache_.emplace(std::move(cache_key), q);
    return q;
  }

  // Category file: { "quantale": ..., "objects": [...], "hom": [[...]] },
  // or { "quantale": ..., "self": true } for V as a category over itself.
  CatPtr category(const nlohmann::json& spec, QuantalePtr fallback = {}) {
    nlohmann::json j = resolve(spec);
    if (!j.is_object()) throw SchemaError("category: expected an object");
    QuantalePtr q = j.contains("quantale") ? quantale(j["quantale"])
                                           : std::move(fallback);
    if (!q) throw SchemaError("category: no quantale given");
    if (j.value("self", false)) return VCategory::self_enrichment(q);
    try {
      auto objects = j.at("objects").get<std::vector<std::string>>();
      auto hom = j.at("hom").get<std::vector<std::vector<Elem>>>();
      return VCategory::make(q, std::move(objects), hom);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("category: ") + e.what());
    }
  }

  VFunctor functor(const nlohmann::json& spec) {
    nlohmann::json j = resolve(spec);
    try {
      CatPtr src = category(j.at("source"));
      CatPtr tgt = category(j.at("target"), src->quantale());
      auto map = j.at("map").get<std::vector<Obj>>();
      if (static_cast<int>(map.size()) != src->size())
        throw SchemaError("functor: map length does not match the source");
      for (Obj v : map)
        if (v < 0 || v >= tgt->size())
          throw SchemaError("functor: map value out of range");
      return {std::move(src), std::move(tgt), std::move(map)};
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("functor: ") + e.what());
    }
  }

  // Bifunctor file: { "A": cat, "B": cat, "target": cat, "table": [[...]] }.
  // The table is indexed by objects of A and B; variance is decided by the
  // consumer, so the sides are returned untouched.
  struct RawBifunctor {
    CatPtr a, b, target;
    std::vector<std::vector<Obj>> table;
  };

  RawBifunctor bifunctor(const nlohmann::json& spec) {
    nlohmann::json j = resolve(spec);
    try {
      CatPtr a = category(j.at("A"));
      CatPtr b = category(j.at("B"), a->quantale());
      CatPtr target = category(j.at("target"), a->quantale());
      auto table = j.at("table").get<std::vector<std::vector<Obj>>>();
      if (static_cast<int>(table.size()) != a->size())
        throw SchemaError(
            "bifunctor: table must have one row per object of A");
      for (const auto& row : table) {
        if (static_cast<int>(row.size()) != b->size())
          throw SchemaError("bifunctor: row length does not match B");
        for (Obj v : row)
          if (v < 0 || v >= target->size())
            throw SchemaError("bifunctor: table value out of range");
      }
      return {std::move(a), std::move(b), std::move(target),
              std::move(table)};
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("bifunctor: ") + e.what());
    }
  }

  const std::filesystem::path& base() const { return base_; }

private:
  std::filesystem::path base_;
  std::map<std::string, QuantalePtr> cache_;
};

}  // namespace qfca
