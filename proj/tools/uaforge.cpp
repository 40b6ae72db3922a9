// uaforge: command-line front end to the library and the claim harness.
//
// Exit codes: 0 success (or every claim passes), 1 a check failed, 2 usage or
// I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "uaforge/analysis.hpp"
#include "uaforge/catalog.hpp"
#include "uaforge/congruence.hpp"
#include "uaforge/error.hpp"
#include "uaforge/evaluator.hpp"
#include "uaforge/harness.hpp"
#include "uaforge/io.hpp"
#include "uaforge/parser.hpp"

using namespace uaforge;

namespace {

  constexpr int kOk    = 0;
  constexpr int kFail  = 1;
  constexpr int kUsage = 2;

  std::vector<std::string> split(std::string const& s, char sep) {
    std::vector<std::string> out;
    std::string              item;
    std::istringstream       in(s);
    while (std::getline(in, item, sep)) {
      if (!item.empty()) {
        out.push_back(item);
      }
    }
    return out;
  }

  Element element_arg(FiniteAlgebra const& alg, std::string const& text) {
    auto x = alg.parse_element(text);
    if (!x) {
      throw Error("'" + text + "' is not an element of " + alg.name());
    }
    return *x;
  }

  std::string render(FiniteAlgebra const& alg, std::span<Element const> xs) {
    std::string s = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      s += (i ? "," : "") + alg.element_name(xs[i]);
    }
    return s + "}";
  }

  std::string render_partition(FiniteAlgebra const& alg, Partition const& p) {
    std::string s = "[";
    auto        blocks = p.blocks();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      s += (i ? "," : "") + render(alg, blocks[i]);
    }
    return s + "]";
  }

  int cmd_build(std::string const& id, std::string const& out) {
    auto entry = catalog::build(id);
    auto text  = entry.to_json();
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) {
        throw Error("cannot write " + out);
      }
      f << text;
    }
    return kOk;
  }

  int cmd_sg(std::string const& file, std::string const& gens) {
    auto                 alg = load_algebra(file);
    std::vector<Element> xs;
    for (auto const& g : split(gens, ',')) {
      xs.push_back(element_arg(alg, g));
    }
    auto s = sg_closure(alg, xs);
    std::cout << render(alg, s.elements) << "\n";
    return kOk;
  }

  int cmd_con(std::string const& file, std::string const& principal) {
    auto alg = load_algebra(file);
    if (!principal.empty()) {
      auto pair = split(principal, ',');
      if (pair.size() != 2) {
        throw CLI::ValidationError("--principal", "expects two elements a,b");
      }
      auto p = principal_congruence(alg, element_arg(alg, pair[0]), element_arg(alg, pair[1]));
      std::cout << render_partition(alg, p) << "\n";
      return kOk;
    }
    auto lat = congruence_lattice(alg);
    for (auto const& p : lat.congruences) {
      std::cout << render_partition(alg, p) << "\n";
    }
    auto mono = monolith(lat);
    std::cout << "congruences: " << lat.size() << "\n"
              << "monolith: " << (mono ? render_partition(alg, *mono) : "none") << "\n"
              << "simple: " << (lat.size() == 2 ? "yes" : "no")
              << ", SI: " << (is_si(lat) ? "yes" : "no")
              << ", FSI: " << (is_fsi(lat) ? "yes" : "no") << "\n";
    return kOk;
  }

  int cmd_eval(std::string const& file, std::string const& src, std::string const& assign) {
    auto                                         alg = load_algebra(file);
    auto                                         f   = parse_formula(src, alg.signature());
    std::vector<std::pair<std::string, Element>> env;
    for (auto const& item : split(assign, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw CLI::ValidationError("--assign", "expects x=E pairs");
      }
      auto name = item.substr(0, eq);
      if (!f.find_variable(name)) {
        throw Error("formula has no variable '" + name + "'");
      }
      env.emplace_back(name, element_arg(alg, item.substr(eq + 1)));
    }
    bool value = eval_formula(alg, f, env);
    std::cout << (value ? "true" : "false") << "\n";
    return value ? kOk : kFail;
  }

  int cmd_functional(std::vector<std::string> const& files,
                     std::string const&              src,
                     std::size_t                     arity) {
    std::vector<FiniteAlgebra> algs;
    for (auto const& file : files) {
      algs.push_back(load_algebra(file));
    }
    bool functional = true;
    for (auto const& alg : algs) {
      auto f = parse_formula(src, alg.signature());
      try {
        auto t = induced_partial_function(alg, f, arity);
        std::cout << alg.name() << ": functional, "
                  << (t.is_total(alg.size()) ? "total" : "partial") << "\n";
        for (auto const& [args, v] : t.values) {
          std::string tuple;
          for (std::size_t i = 0; i < args.size(); ++i) {
            tuple += (i ? "," : "") + alg.element_name(args[i]);
          }
          std::cout << "  f(" << tuple << ") = " << alg.element_name(v) << "\n";
        }
      } catch (FunctionalityError const& e) {
        functional = false;
        std::cout << alg.name() << ": not functional at " << render(alg, e.args()) << " ("
                  << alg.element_name(e.first()) << " and " << alg.element_name(e.second())
                  << ")\n";
      }
    }
    return functional ? kOk : kFail;
  }

  int cmd_homs(std::string const& a_file, std::string const& b_file, bool injective, bool aut) {
    auto    a    = load_algebra(a_file);
    auto    b    = load_algebra(b_file);
    HomKind kind = aut ? HomKind::Bijective : injective ? HomKind::Injective : HomKind::All;
    auto    set  = homs(a, b, kind);
    for (auto const& m : set.maps) {
      std::string line;
      for (Element x = 0; x < m.size(); ++x) {
        line += (x ? " " : "") + a.element_name(x) + "->" + b.element_name(m[x]);
      }
      std::cout << line << "\n";
    }
    std::cout << set.maps.size() << " maps\n";
    return kOk;
  }

  int cmd_check(std::string const& id, bool all, bool deep, bool json) {
    std::size_t                       n = deep ? 4 : harness::kDefaultN;
    std::vector<harness::ClaimResult> results;
    if (!id.empty()) {
      results.push_back(harness::run_claim(id, n));
    } else if (all) {
      results = harness::run_all({}, n);
    } else {
      throw CLI::ValidationError("check", "give a claim id or --all");
    }
    std::cout << (json ? harness::report_json(results) : harness::report_text(results));
    bool ok = std::all_of(results.begin(), results.end(), [](auto const& r) {
      return r.status == harness::Status::Pass;
    });
    return ok ? kOk : kFail;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite universal algebra workbench"};
  app.require_subcommand(1);

  std::string id, out, file, gens, principal, formula, assign, a_file, b_file;
  std::vector<std::string> files;
  std::size_t              arity = 1;
  bool injective = false, aut = false, all = false, deep = false, json = false;

  auto* build = app.add_subcommand("build", "Write a catalog object as JSON");
  build->add_option("id", id, "Catalog id, e.g. sec2.A or An?n=3")->required();
  build->add_option("-o,--output", out, "Output file (default stdout)");

  auto* sg = app.add_subcommand("sg", "Subuniverse generated by elements");
  sg->add_option("file", file)->required();
  sg->add_option("--gens", gens, "Comma-separated element names or indices");

  auto* con = app.add_subcommand("con", "Congruence lattice or a principal congruence");
  con->add_option("file", file)->required();
  con->add_option("--principal", principal, "Pair a,b");

  auto* eval = app.add_subcommand("eval", "Evaluate a formula");
  eval->add_option("file", file)->required();
  eval->add_option("--formula", formula)->required();
  eval->add_option("--assign", assign, "x=E,... for the free variables");

  auto* functional = app.add_subcommand("functional", "Check functionality, print the table");
  functional->add_option("files", files)->required();
  functional->add_option("--formula", formula)->required();
  functional->add_option("--arity", arity)->check(CLI::PositiveNumber);

  auto* hom = app.add_subcommand("homs", "Enumerate homomorphisms A -> B");
  hom->add_option("A", a_file)->required();
  hom->add_option("B", b_file)->required();
  auto* inj_flag = hom->add_flag("--injective", injective, "Embeddings only");
  hom->add_flag("--auto", aut, "Isomorphisms only")->excludes(inj_flag);

  auto* check = app.add_subcommand("check", "Run claim checks");
  check->add_option("id", id, "Claim id, e.g. S2.SG-EMPTY or S3.FKN?n=3");
  check->add_flag("--all", all, "Run every registered claim");
  check->add_flag("--deep", deep, "Use n = 4 for the powerset claims");
  check->add_flag("--json", json, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*build) {
      return cmd_build(id, out);
    }
    if (*sg) {
      return cmd_sg(file, gens);
    }
    if (*con) {
      return cmd_con(file, principal);
    }
    if (*eval) {
      return cmd_eval(file, formula, assign);
    }
    if (*functional) {
      return cmd_functional(files, formula, arity);
    }
    if (*hom) {
      return cmd_homs(a_file, b_file, injective, aut);
    }
    if (*check) {
      return cmd_check(id, all, deep, json);
    }
  } catch (CLI::Error const& e) {
    std::cerr << "uaforge: " << e.what() << "\n";
    return kUsage;
  } catch (std::exception const& e) {
    std::cerr << "uaforge: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
