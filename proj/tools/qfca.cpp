// qfca command line: validate quantale/category/functor/bifunctor/context
// files, enumerate concept lattices, verify representation certificates,
// and emit bundled fixture instances.
//
// Exit codes: 0 success, 1 validation failure, 2 budget exceeded,
// 3 I/O or parse error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfca/qfca.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kBudget = 2, kIo = 3 };

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (text.empty() || text.back() != '\n') std::cout << "\n";
      return;
    }
    std::ofstream out(path);
    if (!out) throw qfca::ParseError("cannot write " + path);
    out << text;
  }
};

std::string detect_kind(const fs::path& p, const json& j) {
  if (p.extension() == ".csv") return "context";
  if (j.contains("incidence")) return "context";
  if (j.contains("map")) return "functor";
  if (j.contains("table")) return "bifunctor";
  if (j.contains("objects") && j.contains("hom")) return "category";
  if (j.contains("carrier") || j.contains("builtin")) return "quantale";
  throw qfca::SchemaError(p.string() + ": unrecognized file schema");
}

// Validates one file; returns a one-line report. Throws on failure.
std::string check_file(const fs::path& p, bool deep) {
  if (p.extension() == ".csv") {
    auto ctx = qfca::load_context_csv(p);
    return "ok context " + p.string() + " (" +
           std::to_string(ctx.objects->size()) + " objects, " +
           std::to_string(ctx.attributes->size()) + " attributes)";
  }
  json j = qfca::Loader::parse_file(p);
  qfca::Loader loader(p.parent_path());
  std::string kind = detect_kind(p, j);
  std::ostringstream os;
  if (kind == "quantale") {
    auto q = loader.quantale(j);
    os << "ok quantale " << p.string() << " (" << q->size() << " elements";
    if (deep) os << "; monoid, distributivity and residuation verified";
    os << ")";
  } else if (kind == "category") {
    auto c = loader.category(j);
    os << "ok category " << p.string() << " (" << c->size() << " objects";
    if (deep) {
      os << (c->is_separated() ? "; separated" : "; not separated");
      os << (qfca::is_complete(c) ? "; complete" : "; not complete");
    }
    os << ")";
  } else if (kind == "functor") {
    auto f = loader.functor(j);
    std::string w;
    if (!qfca::verify_vfunctor(f, &w))
      throw qfca::ValidationError(p.string() + ": " + w);
    os << "ok functor " << p.string();
    if (deep) {
      if (qfca::is_fully_faithful(f)) os << " (fully faithful";
      else os << " (not fully faithful";
      os << (qfca::is_essentially_surjective(f) ? ", essentially surjective)"
                                                : ")");
    }
  } else if (kind == "bifunctor") {
    auto raw = loader.bifunctor(j);
    std::vector<qfca::Obj> flat;
    for (const auto& row : raw.table)
      flat.insert(flat.end(), row.begin(), row.end());
    // contexts and distributor tables are contravariant in A
    qfca::VBifunctor bf{qfca::dual(raw.a), raw.b, raw.target, flat};
    std::string w;
    if (!qfca::verify_bifunctor(bf, &w))
      throw qfca::ValidationError(p.string() + ": " + w);
    os << "ok bifunctor " << p.string() << " (" << raw.a->size() << "x"
       << raw.b->size() << ")";
  } else {
    auto ctx = qfca::load_context(p);
    os << "ok context " << p.string() << " ("
       << ctx.objects->size() << " objects, " << ctx.attributes->size()
       << " attributes, mode " << qfca::to_string(ctx.mode) << ")";
  }
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"exact concept lattices over finite quantales"};
  app.require_subcommand(1);

  std::size_t budget_objects = 50'000;
  app.add_option("--budget", budget_objects,
                 "cap on enumerated functor-category objects");

  // check -------------------------------------------------------------
  auto* cmd_check = app.add_subcommand("check", "validate input files");
  std::vector<std::string> check_paths;
  cmd_check->add_option("files", check_paths, "files to validate")
      ->required();

  // concepts ----------------------------------------------------------
  auto* cmd_concepts =
      app.add_subcommand("concepts", "enumerate the concept lattice");
  std::string concepts_path, concepts_mode, concepts_format = "json";
  Output concepts_out;
  cmd_concepts->add_option("context", concepts_path, "context file")
      ->required();
  cmd_concepts->add_option("--mode", concepts_mode,
                           "isbell | kan_star | kan_dag");
  cmd_concepts->add_option("--format", concepts_format, "dot | json")
      ->check(CLI::IsMember({"dot", "json"}));
  cmd_concepts->add_option("--out", concepts_out.path, "output file");

  // verify ------------------------------------------------------------
  auto* cmd_verify = app.add_subcommand(
      "verify", "verify laws of input files or a representation");
  std::vector<std::string> verify_paths;
  std::vector<std::string> rep_paths;
  std::string verify_kind = "isbell", triple_path;
  Output verify_out;
  cmd_verify->add_option("files", verify_paths, "files to verify");
  cmd_verify
      ->add_option("--representation", rep_paths,
                   "table.json C.json alpha.json beta.json")
      ->expected(4);
  cmd_verify->add_option("--kind", verify_kind,
                         "isbell | kan_star | kan_dag");
  cmd_verify->add_option("--triple", triple_path,
                         "two-variable adjunction file (X,Y,Z,with)");
  cmd_verify->add_option("--out", verify_out.path, "certificate output");

  // fixtures ----------------------------------------------------------
  auto* cmd_fixtures =
      app.add_subcommand("fixtures", "list or emit bundled instances");
  std::string fixture_name;
  Output fixture_out;
  cmd_fixtures->add_option("name", fixture_name, "fixture name");
  cmd_fixtures->add_option("--out", fixture_out.path, "output file");

  // export ------------------------------------------------------------
  auto* cmd_export = app.add_subcommand(
      "export", "re-render a saved lattice or category file");
  std::string export_path, export_format = "dot";
  Output export_out;
  cmd_export->add_option("file", export_path, "lattice or category JSON")
      ->required();
  cmd_export->add_option("--format", export_format, "dot | json")
      ->check(CLI::IsMember({"dot", "json"}));
  cmd_export->add_option("--out", export_out.path, "output file");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  qfca::Budget budget;
  budget.max_objects = budget_objects;
  budget.max_visited = std::max<std::size_t>(1'000'000, 20 * budget_objects);

  if (cmd_check->parsed()) {
    for (const auto& f : check_paths) std::cout << check_file(f, false) << "\n";
    return kOk;
  }

  if (cmd_concepts->parsed()) {
    qfca::FuzzyContext ctx = qfca::load_context(concepts_path);
    if (!concepts_mode.empty()) {
      ctx.mode = qfca::parse_mode(concepts_mode);
      ctx.value_cat = qfca::value_category(ctx.triple, ctx.mode);
      qfca::detail::validate_incidence(ctx);
    }
    auto lattice = ctx.lattice(budget);
    if (concepts_format == "dot")
      concepts_out.write(qfca::to_dot(lattice, ctx));
    else
      concepts_out.write(qfca::lattice_to_json(lattice, ctx).dump(2));
    std::cerr << lattice.size() << " concepts\n";
    return kOk;
  }

  if (cmd_verify->parsed()) {
    if (!rep_paths.empty()) {
      qfca::Loader loader(fs::path(rep_paths[0]).parent_path());
      auto raw = loader.bifunctor(qfca::Loader::parse_file(rep_paths[0]));
      qfca::TwoVarAdjunction triple =
          triple_path.empty()
              ? qfca::quantale_two_var(raw.a->quantale())
              : [&] {
                  json tj = qfca::Loader::parse_file(triple_path);
                  qfca::Loader tl(fs::path(triple_path).parent_path());
                  auto x = tl.category(tj.at("X"));
                  auto y = tl.category(tj.at("Y"), x->quantale());
                  auto z = tl.category(tj.at("Z"), x->quantale());
                  auto wt = tj.at("with")
                                .get<std::vector<std::vector<qfca::Obj>>>();
                  std::vector<qfca::Obj> flat;
                  for (const auto& r : wt)
                    flat.insert(flat.end(), r.begin(), r.end());
                  return qfca::derive_two_var(x, y, z, std::move(flat));
                }();
      auto kind = qfca::parse_mode(verify_kind);
      qfca::CatPtr target = qfca::value_category(triple, kind);
      if (!raw.target->table_identical(*target))
        throw qfca::TypeMismatch(
            "table target does not match the triple category for kind " +
            std::string(qfca::to_string(kind)));
      std::vector<qfca::Obj> flat;
      for (const auto& row : raw.table)
        flat.insert(flat.end(), row.begin(), row.end());
      qfca::VBifunctor table{qfca::dual(raw.a), raw.b, target, flat};
      std::string w;
      if (!qfca::verify_bifunctor(table, &w))
        throw qfca::ValidationError(rep_paths[0] + ": " + w);

      qfca::CatPtr c = loader.category(qfca::Loader::parse_file(rep_paths[1]),
                                       raw.a->quantale());
      auto load_side = [&](const std::string& path) {
        auto side = loader.bifunctor(qfca::Loader::parse_file(path));
        std::vector<qfca::Obj> sflat;
        for (const auto& row : side.table)
          sflat.insert(sflat.end(), row.begin(), row.end());
        return sflat;
      };
      auto cert = qfca::verify_representation(
          triple, kind, table, c, load_side(rep_paths[2]),
          load_side(rep_paths[3]), budget);
      verify_out.write(qfca::to_json(cert).dump(2));
      return cert.valid() ? kOk : kInvalid;
    }
    if (verify_paths.empty())
      throw CLI::ValidationError("verify", "no files given");
    json report = json::array();
    int exit_code = kOk;
    for (const auto& f : verify_paths) {
      json entry;
      entry["file"] = f;
      try {
        entry["ok"] = true;
        entry["detail"] = check_file(f, true);
      } catch (const qfca::error& e) {
        entry["ok"] = false;
        entry["error"] = e.kind();
        entry["witness"] = e.what();
        int code = kInvalid;
        if (e.kind() == "BudgetExceeded") code = kBudget;
        if (e.kind() == "ParseError" || e.kind() == "SchemaError") code = kIo;
        if (exit_code == kOk) exit_code = code;
      }
      report.push_back(entry);
    }
    verify_out.write(report.dump(2));
    return exit_code;
  }

  if (cmd_fixtures->parsed()) {
    if (fixture_name.empty()) {
      for (const auto& n : qfca::fixture_names()) {
        auto f = qfca::fixtures(n);
        std::cout << n << ": " << f.description << "\n";
      }
      return kOk;
    }
    auto f = qfca::fixtures(fixture_name);
    fixture_out.write(qfca::to_json(f.context).dump(2));
    return kOk;
  }

  if (cmd_export->parsed()) {
    json j = qfca::Loader::parse_file(export_path);
    qfca::Loader loader(fs::path(export_path).parent_path());
    if (export_format == "json")
      export_out.write(j.dump(2));
    else
      export_out.write(qfca::saved_lattice_to_dot(j, loader));
    return kOk;
  }

  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const qfca::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const qfca::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const qfca::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const qfca::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  }
}
