#include "catkit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "catkit/arith.hpp"
#include "catkit/catalogue.hpp"
#include "catkit/categoricity.hpp"
#include "catkit/coding.hpp"
#include "catkit/enumerate.hpp"
#include "catkit/errors.hpp"
#include "catkit/eval.hpp"
#include "catkit/henkin.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/parser.hpp"
#include "catkit/printer.hpp"
#include "catkit/schemas.hpp"
#include "catkit/tptp.hpp"
#include "catkit/transforms.hpp"

namespace catkit::cli {

namespace {

struct Options {
  std::string formula_path;
  std::string key;
  std::vector<std::string> model_paths;
  std::string theory_path;
  std::string conjecture_path;
  std::string pool_path;
  std::string rpool_path;
  std::string out_path;
  std::string pred = "u0";
  std::string pred2 = "u1";
  std::string fn_name = "F1f";
  std::string var = "y1";
  std::string mode = "guarded";
  std::string primary = "eps1";
  int kappa = 2;
  int size = 2;
  int depth = 1;
  int arity = 1;
  int bound = 20;
  int psi_bound = 10;
  int jobs = 1;
  std::uint64_t capacity = EvalOptions{}.so_capacity;
  bool capacity_set = false;
  std::uint64_t seed = 0;
  bool up_to_iso = false;
  bool use_isom = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SemanticError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path, std::ios::binary);
  if (!file) throw SemanticError("cannot write '" + opt.out_path + "'");
  file << text;
}

struct LoadedFormula {
  Vocabulary vocab;
  FormulaPtr formula;
};

LoadedFormula load_input(const Options& opt, bool require_sentence) {
  if (!opt.key.empty()) {
    catalogue::CatalogueEntry entry = catalogue::get(opt.key);
    if (!entry.sentence)
      throw SemanticError("catalogue key '" + opt.key + "' is a theory, not a sentence");
    return {entry.vocab, entry.sentence};
  }
  if (opt.formula_path.empty()) throw SemanticError("either --formula or --key is required");
  FormulaFile file = parse_formula_file(read_file(opt.formula_path), require_sentence);
  if (!file.formula) throw SemanticError("'" + opt.formula_path + "' contains no formula");
  return {file.vocab, file.formula};
}

std::string vocab_decls(const Vocabulary& vocab) {
  std::ostringstream os;
  for (const auto& r : vocab.relations()) os << "rel " << r.name << " " << r.arity << "\n";
  for (const auto& f : vocab.functions()) os << "fun " << f.name << " " << f.arity << "\n";
  return os.str();
}

std::string formula_file_text(const Vocabulary& vocab, const FormulaPtr& f) {
  return vocab_decls(vocab) + render_formula(f) + "\n";
}

// Vocabulary header plus one formula per non-empty line.
struct LoadedPool {
  Vocabulary vocab;
  std::vector<FormulaPtr> formulas;
};

LoadedPool load_pool(const std::string& path) {
  LoadedPool out;
  std::istringstream in(read_file(path));
  std::string line;
  std::string decls;
  std::vector<std::string> bodies;
  bool in_body = false;
  while (std::getline(in, line)) {
    std::string stripped = line.substr(0, line.find('#'));
    std::istringstream probe(stripped);
    std::string first;
    if (!(probe >> first)) continue;
    if (!in_body && (first == "rel" || first == "fun")) {
      decls += stripped + "\n";
      continue;
    }
    in_body = true;
    bodies.push_back(stripped);
  }
  out.vocab = parse_vocabulary(decls);
  for (const auto& body : bodies) out.formulas.push_back(parse_formula(body, out.vocab));
  return out;
}

EvalOptions eval_options(const Options& opt) {
  EvalOptions eo;
  eo.so_capacity = opt.capacity;
  return eo;
}

transforms::IsoMode iso_mode(const Options& opt) {
  if (opt.mode == "guarded") return transforms::IsoMode::Guarded;
  if (opt.mode == "literal") return transforms::IsoMode::Literal;
  throw SemanticError("--mode must be guarded or literal");
}

int dispatch(const std::string& command, const Options& opt, std::ostream& out) {
  if (command == "parse") {
    LoadedFormula input = load_input(opt, false);
    FreeProfile frees = free_symbols(input.formula);
    std::ostringstream os;
    os << "ok\n";
    os << "symbols";
    for (const auto& s : frees.symbols) os << " " << s;
    os << "\nfree-fo";
    for (const auto& s : frees.fo_vars) os << " " << s;
    os << "\nfree-so";
    for (const auto& s : frees.so_vars) os << " " << s.name;
    os << "\n";
    emit(opt, out, os.str());
    return 0;
  }
  if (command == "render") {
    LoadedFormula input = load_input(opt, false);
    emit(opt, out, formula_file_text(input.vocab, input.formula));
    return 0;
  }
  if (command == "relativize") {
    LoadedFormula input = load_input(opt, true);
    FormulaPtr result = transforms::relativize(input.formula, opt.pred);
    Vocabulary vocab = input.vocab;
    vocab.add_relation(opt.pred, 1);
    emit(opt, out, formula_file_text(vocab, result));
    return 0;
  }
  if (command == "prime") {
    LoadedFormula input = load_input(opt, false);
    auto ren = transforms::VocabularyRenaming::primes(input.vocab);
    emit(opt, out, formula_file_text(ren.target(), transforms::prime(input.formula, ren)));
    return 0;
  }
  if (command == "res") {
    LoadedFormula input = load_input(opt, false);
    FormulaPtr result = transforms::res_sentence(input.vocab, opt.pred);
    Vocabulary vocab = input.vocab;
    vocab.add_relation(opt.pred, 1);
    emit(opt, out, formula_file_text(vocab, result));
    return 0;
  }
  if (command == "iso") {
    LoadedFormula input = load_input(opt, false);
    auto ren = transforms::VocabularyRenaming::primes(input.vocab);
    transforms::IsoFunction fn{opt.fn_name, is_so_function_variable_name(opt.fn_name)};
    FormulaPtr result =
        transforms::iso_sentence(input.vocab, ren, fn, opt.pred, opt.pred2, iso_mode(opt));
    Vocabulary vocab = Vocabulary::merged(input.vocab, ren.target());
    vocab.add_relation(opt.pred, 1);
    vocab.add_relation(opt.pred2, 1);
    if (!fn.is_variable) vocab.add_function(fn.name, 1);
    emit(opt, out, formula_file_text(vocab, result));
    return 0;
  }
  if (command == "catplus") {
    LoadedFormula input = load_input(opt, true);
    auto ren = transforms::VocabularyRenaming::primes(input.vocab);
    auto names = transforms::default_cat_names(input.vocab, ren);
    FormulaPtr result = transforms::cat_plus(input.formula, input.vocab, ren, names, iso_mode(opt));
    emit(opt, out,
         formula_file_text(transforms::cat_plus_vocabulary(input.vocab, ren, names), result));
    return 0;
  }
  if (command == "cat") {
    LoadedFormula input = load_input(opt, true);
    FormulaPtr result = transforms::cat_sentence(input.formula, input.vocab, iso_mode(opt));
    emit(opt, out, render_formula(result) + "\n");
    return 0;
  }
  if (command == "eval") {
    LoadedFormula input = load_input(opt, true);
    if (opt.model_paths.size() != 1) throw SemanticError("eval needs exactly one --model");
    FiniteStructure m = parse_structure(read_file(opt.model_paths[0]));
    bool value = eval_full(m, input.formula, {}, eval_options(opt));
    emit(opt, out, std::string(value ? "true" : "false") + "\n");
    return 0;
  }
  if (command == "eval-henkin") {
    LoadedFormula input = load_input(opt, true);
    if (opt.model_paths.size() != 1) throw SemanticError("eval-henkin needs exactly one --model");
    HenkinStructure h = parse_henkin_structure(read_file(opt.model_paths[0]));
    bool value = eval_henkin(h, input.formula, {}, eval_options(opt));
    emit(opt, out, std::string(value ? "true" : "false") + "\n");
    return 0;
  }
  if (command == "closure-check") {
    if (opt.model_paths.size() != 1)
      throw SemanticError("closure-check needs exactly one --model");
    if (opt.theory_path.empty()) throw SemanticError("closure-check needs --theory");
    HenkinStructure h = parse_henkin_structure(read_file(opt.model_paths[0]));
    transforms::TheoryInstanceSet instances =
        transforms::parse_theory(read_file(opt.theory_path), h.base.vocab());
    semantics::ClosureReport report = semantics::check_closure(h, instances, eval_options(opt));
    emit(opt, out, semantics::write_report(report, h.base));
    return 0;
  }
  if (command == "enum") {
    LoadedFormula input = load_input(opt, false);
    std::vector<FiniteStructure> all =
        opt.up_to_iso ? categoricity::enumerate_up_to_iso(input.vocab, opt.size, opt.capacity)
                      : categoricity::enumerate_structures(input.vocab, opt.size, opt.capacity);
    std::ostringstream os;
    os << "count " << all.size() << "\n";
    for (const auto& m : all) os << write_structure(m) << "\n";
    emit(opt, out, os.str());
    return 0;
  }
  if (command == "find-iso") {
    if (opt.model_paths.size() != 2) throw SemanticError("find-iso needs two --model files");
    FiniteStructure a = parse_structure(read_file(opt.model_paths[0]));
    FiniteStructure b = parse_structure(read_file(opt.model_paths[1]));
    auto cert = categoricity::find_isomorphism(a, b);
    std::ostringstream os;
    if (!cert) {
      os << "none\n";
    } else {
      os << "isomorphism";
      for (int v : cert->map) os << " " << v;
      os << "\nchecked " << (cert->checked ? "true" : "false") << "\n";
    }
    emit(opt, out, os.str());
    return 0;
  }
  if (command == "check-cat") {
    LoadedFormula input = load_input(opt, true);
    auto report =
        categoricity::categorical_up_to(input.formula, input.vocab, opt.kappa, eval_options(opt),
                                        opt.jobs);
    emit(opt, out, categoricity::write_report(report));
    return 0;
  }
  if (command == "cat-truth") {
    LoadedFormula input = load_input(opt, true);
    bool value = categoricity::cat_truth(input.formula, input.vocab, opt.kappa, eval_options(opt),
                                         iso_mode(opt));
    emit(opt, out, std::string("cat-truth ") + (value ? "true" : "false") + "\n");
    return 0;
  }
  if (command == "lemma-check") {
    LoadedFormula input = load_input(opt, true);
    auto report = categoricity::lemma_eq_check(input.formula, input.vocab, opt.kappa,
                                               eval_options(opt), opt.jobs);
    emit(opt, out, categoricity::write_report(report, opt.kappa));
    return 0;
  }
  if (command == "unique-iso") {
    LoadedFormula input = load_input(opt, true);
    auto report =
        categoricity::unique_isomorphism(input.formula, input.vocab, opt.kappa, eval_options(opt));
    emit(opt, out, categoricity::write_report(report));
    return 0;
  }
  if (command == "gen-comprehension") {
    if (opt.pool_path.empty()) throw SemanticError("gen-comprehension needs --pool");
    LoadedPool pool = load_pool(opt.pool_path);
    auto theory = transforms::comprehension_instances(pool.vocab, pool.formulas, opt.arity);
    emit(opt, out, transforms::write_theory(theory));
    return 0;
  }
  if (command == "gen-induction") {
    LoadedFormula input = load_input(opt, false);
    FormulaPtr instance = transforms::induction_instance(input.formula, opt.var,
                                                         transforms::kAddSym,
                                                         transforms::kMulSym);
    emit(opt, out, render_formula(instance) + "\n");
    return 0;
  }
  if (command == "gen-pa-doubled") {
    std::vector<FormulaPtr> pool = transforms::induction_pool(opt.depth);
    auto theory = transforms::peano_doubled(pool, pool, opt.depth);
    emit(opt, out, transforms::write_theory(theory));
    return 0;
  }
  if (command == "gen-zfc") {
    std::string eps = opt.primary;
    if (eps != "eps1" && eps != "eps2") throw SemanticError("--primary must be eps1 or eps2");
    std::string other = eps == "eps1" ? "eps2" : "eps1";
    std::vector<FormulaPtr> sep;
    std::vector<FormulaPtr> rep;
    if (!opt.pool_path.empty()) sep = load_pool(opt.pool_path).formulas;
    if (!opt.rpool_path.empty()) rep = load_pool(opt.rpool_path).formulas;
    auto theory = transforms::zfc_extended(eps, other, sep, rep);
    emit(opt, out, transforms::write_theory(theory));
    return 0;
  }
  if (command == "build-phi") {
    transforms::GraphFormulas graph = transforms::build_graph_formula();
    std::ostringstream os;
    os << vocab_decls(transforms::doubled_arith_vocabulary());
    os << "psi " << render_formula(graph.psi) << "\n";
    os << "phi " << render_formula(graph.phi) << "\n";
    emit(opt, out, os.str());
    return 0;
  }
  if (command == "verify-phi") {
    // The arithmetic evaluator has its own default capacity; --capacity
    // overrides it for larger formula-level bounds.
    std::uint64_t b = opt.capacity_set ? opt.capacity
                                       : arith::StandardDoubledModel{}.capacity;
    auto model = arith::StandardDoubledModel::standard(b);
    auto report = arith::verify_phi_graph(model, opt.bound, opt.psi_bound);
    emit(opt, out, arith::write_report(report));
    return 0;
  }
  if (command == "export-prover") {
    if (opt.theory_path.empty()) throw SemanticError("export-prover needs --theory");
    Vocabulary vocab = transforms::doubled_arith_vocabulary();
    if (!opt.formula_path.empty())
      vocab = parse_formula_file(read_file(opt.formula_path)).vocab;
    transforms::TheoryInstanceSet theory =
        transforms::parse_theory(read_file(opt.theory_path), vocab);
    FormulaPtr conjecture;
    if (opt.use_isom) {
      conjecture = transforms::isom_statement();
    } else {
      if (opt.conjecture_path.empty())
        throw SemanticError("export-prover needs --conjecture or --isom");
      FormulaFile file = parse_formula_file(read_file(opt.conjecture_path), true);
      if (!file.formula) throw SemanticError("conjecture file contains no formula");
      conjecture = file.formula;
    }
    emit(opt, out, arith::write_tptp(theory, conjecture));
    return 0;
  }
  if (command == "catalogue-list") {
    std::ostringstream os;
    for (const auto& key : catalogue::keys()) os << key << "\n";
    emit(opt, out, os.str());
    return 0;
  }
  if (command == "catalogue-show") {
    if (opt.key.empty()) throw SemanticError("catalogue show needs --key");
    catalogue::CatalogueEntry entry = catalogue::get(opt.key);
    std::ostringstream os;
    os << "key " << entry.key << "\n";
    os << "note " << entry.note << "\n";
    os << vocab_decls(entry.vocab);
    if (entry.sentence) os << "sentence " << render_formula(entry.sentence) << "\n";
    if (entry.theory) os << transforms::write_theory(*entry.theory);
    emit(opt, out, os.str());
    return 0;
  }
  throw InternalError("unrouted command '" + command + "'");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"catkit - second-order categoricity toolkit"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("CATKIT_CAPACITY")) {
    try {
      opt.capacity = std::stoull(env);
      opt.capacity_set = true;
    } catch (const std::exception&) {
      err << "invalid CATKIT_CAPACITY\n";
      return 1;
    }
  }

  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--capacity", opt.capacity, "search-space capacity bound")
        ->each([&opt](const std::string&) { opt.capacity_set = true; });
    cmd->add_option("--seed", opt.seed, "random seed (reserved for sampling subcommands)");
    cmd->add_option("--jobs", opt.jobs, "worker threads for enumeration filters")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", opt.out_path, "write output to this file instead of stdout");
  };
  auto add_formula = [&opt](CLI::App* cmd) {
    cmd->add_option("--formula", opt.formula_path, "formula file (vocabulary header + formula)");
    cmd->add_option("--key", opt.key, "catalogue key instead of --formula");
  };

  std::vector<std::pair<std::string, CLI::App*>> commands;
  auto make = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd);
    commands.emplace_back(name, cmd);
    return cmd;
  };

  { auto* c = make("parse", "parse a formula and report its symbols"); add_formula(c); }
  { auto* c = make("render", "canonical fully parenthesized form"); add_formula(c); }
  {
    auto* c = make("relativize", "restrict all quantifiers to a unary predicate");
    add_formula(c);
    c->add_option("--pred", opt.pred, "the relativizing predicate");
  }
  { auto* c = make("prime", "rename every symbol to its primed copy"); add_formula(c); }
  {
    auto* c = make("res", "subdomain sentence: nonempty and function-closed");
    add_formula(c);
    c->add_option("--pred", opt.pred, "the subdomain predicate");
  }
  {
    auto* c = make("iso", "isomorphism sentence between the two relativized parts");
    add_formula(c);
    c->add_option("--pred", opt.pred, "first subdomain predicate");
    c->add_option("--pred2", opt.pred2, "second subdomain predicate");
    c->add_option("--fn", opt.fn_name, "mapping name (F1f-style names are variables)");
    c->add_option("--mode", opt.mode, "guarded|literal conjunct form");
  }
  {
    auto* c = make("cat", "categoricity sentence of the empty vocabulary");
    add_formula(c);
    c->add_option("--mode", opt.mode, "guarded|literal conjunct form");
  }
  {
    auto* c = make("catplus", "open categoricity implication over both vocabularies");
    add_formula(c);
    c->add_option("--mode", opt.mode, "guarded|literal conjunct form");
  }
  {
    auto* c = make("eval", "full second-order truth in a finite structure");
    add_formula(c);
    c->add_option("--model", opt.model_paths, "structure file");
  }
  {
    auto* c = make("eval-henkin", "truth with quantifiers ranging over the families");
    add_formula(c);
    c->add_option("--model", opt.model_paths, "Henkin structure file");
  }
  {
    auto* c = make("closure-check", "comprehension closure of a Henkin structure");
    c->add_option("--model", opt.model_paths, "Henkin structure file");
    c->add_option("--theory", opt.theory_path, "comprehension instance file");
  }
  {
    auto* c = make("enum", "enumerate interpretations of a vocabulary");
    add_formula(c);
    c->add_option("--size", opt.size, "domain size");
    c->add_flag("--uptoiso", opt.up_to_iso, "one representative per isomorphism class");
  }
  {
    auto* c = make("find-iso", "search for an isomorphism between two structures");
    c->add_option("--model", opt.model_paths, "two structure files");
  }
  {
    auto* c = make("check-cat", "bounded categoricity by model enumeration");
    add_formula(c);
    c->add_option("--kappa", opt.kappa, "size bound");
  }
  {
    auto* c = make("cat-truth", "truth of the categoricity sentence at a cardinality");
    add_formula(c);
    c->add_option("--kappa", opt.kappa, "cardinality");
    c->add_option("--mode", opt.mode, "guarded|literal conjunct form");
  }
  {
    auto* c = make("lemma-check", "agreement of the three categoricity readings");
    add_formula(c);
    c->add_option("--kappa", opt.kappa, "size bound");
  }
  {
    auto* c = make("unique-iso", "count isomorphisms between the models found");
    add_formula(c);
    c->add_option("--kappa", opt.kappa, "size bound");
  }
  {
    auto* c = make("gen-comprehension", "comprehension instances from a formula pool");
    c->add_option("--pool", opt.pool_path, "pool file: vocabulary header + one formula per line");
    c->add_option("--arity", opt.arity, "arity of the comprehended relation");
  }
  {
    auto* c = make("gen-induction", "one induction instance for a formula");
    add_formula(c);
    c->add_option("--var", opt.var, "induction variable");
  }
  {
    auto* c = make("gen-pa-doubled", "doubled arithmetic theory with induction pools");
    c->add_option("--depth", opt.depth, "term depth of the generated induction pool");
  }
  {
    auto* c = make("gen-zfc", "set-theory axioms with extended-vocabulary schemas");
    c->add_option("--pool", opt.pool_path, "separation pool file (element variable z1)");
    c->add_option("--rpool", opt.rpool_path, "replacement pool file (variables x1, y1)");
    c->add_option("--primary", opt.primary, "membership symbol: eps1 or eps2");
  }
  { make("build-phi", "the coded-graph formulas psi and phi"); }
  {
    auto* c = make("verify-phi", "check the coded graph on the doubled standard model");
    c->add_option("--bound", opt.bound, "largest argument checked");
    c->add_option("--psi-bound", opt.psi_bound, "largest argument checked at the formula level");
  }
  {
    auto* c = make("export-prover", "write a first-order prover problem file");
    c->add_option("--theory", opt.theory_path, "axiom set file");
    c->add_option("--conjecture", opt.conjecture_path, "conjecture formula file");
    c->add_flag("--isom", opt.use_isom, "use the built-in definable-isomorphism conjecture");
    c->add_option("--formula", opt.formula_path,
                  "optional file whose vocabulary header is used to parse the theory");
  }
  {
    CLI::App* c = app.add_subcommand("catalogue", "built-in sentences and theories");
    CLI::App* list = c->add_subcommand("list", "list catalogue keys");
    add_common(list);
    commands.emplace_back("catalogue-list", list);
    CLI::App* show = c->add_subcommand("show", "print one catalogue entry");
    add_common(show);
    show->add_option("--key", opt.key, "catalogue key");
    commands.emplace_back("catalogue-show", show);
    c->require_subcommand(1);
  }

  std::vector<const char*> argv;
  std::string program = "catkit";
  argv.push_back(program.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code == 0 ? 0 : 1;
  }

  try {
    for (const auto& [name, cmd] : commands)
      if (cmd->parsed()) return dispatch(name, opt, out);
    err << "no subcommand given\n";
    return 1;
  } catch (const CapacityError& e) {
    err << "capacity: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace catkit::cli
