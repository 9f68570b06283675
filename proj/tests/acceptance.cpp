// Acceptance suite: one criterion per section, one pass/fail line each.
// Every criterion writes a deterministic report (no wall-clock content);
// the determinism criterion regenerates all of them and compares bytes.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "catkit/arith.hpp"
#include "catkit/catalogue.hpp"
#include "catkit/categoricity.hpp"
#include "catkit/cli.hpp"
#include "catkit/coding.hpp"
#include "catkit/enumerate.hpp"
#include "catkit/eval.hpp"
#include "catkit/henkin.hpp"
#include "catkit/hygiene.hpp"
#include "catkit/parser.hpp"
#include "catkit/printer.hpp"
#include "catkit/schemas.hpp"
#include "catkit/structure.hpp"
#include "catkit/transforms.hpp"
#include "gen.hpp"

using namespace catkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSuiteSeed = 20240808;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- shared
// The criterion-1 suite: seeded random (sentence, structure, subdomain)
// triples over one unary relation, one binary relation, one unary function
// and one constant. Criterion 4 reuses exactly these triples.

Vocabulary law_vocab() {
  Vocabulary v;
  v.add_relation("R", 1);
  v.add_relation("E", 2);
  v.add_function("f", 1);
  v.add_function("c", 0);
  return v;
}

struct LawTriple {
  FormulaPtr sentence;
  FiniteStructure structure;  // interprets the vocabulary plus u0
};

std::vector<LawTriple> law_suite(int count) {
  Vocabulary v = law_vocab();
  Vocabulary extended = v;
  extended.add_relation("u0", 1);
  testgen::GenOptions opt;
  opt.vocab = v;
  opt.max_depth = 4;
  opt.so_nesting_cap = 2;
  testgen::Rng rng(kSuiteSeed);
  testgen::FormulaGen gen(rng, opt);
  std::vector<LawTriple> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    LawTriple triple;
    triple.sentence = gen.sentence();
    int n = 1 + rng.below(3);
    triple.structure = testgen::random_structure(rng, extended, n);
    std::vector<bool> closed = testgen::random_closed_subset(rng, reduct(triple.structure, v));
    RelTable u = empty_relation(n, 1);
    for (int e = 0; e < n; ++e)
      u.bits[static_cast<std::size_t>(e)] = closed[static_cast<std::size_t>(e)];
    triple.structure.set_relation("u0", u);
    out.push_back(std::move(triple));
  }
  return out;
}

// ------------------------------------------------------------ criterion 1

std::string criterion1(bool& pass) {
  Vocabulary v = law_vocab();
  FormulaPtr res = transforms::res_sentence(v, "u0");
  auto suite = law_suite(1000);
  int agree = 0, res_ok = 0;
  for (const auto& triple : suite) {
    if (eval_full(triple.structure, res)) ++res_ok;
    bool outer = eval_full(triple.structure, transforms::relativize(triple.sentence, "u0"));
    bool inner = eval_full(relativized_substructure(triple.structure, "u0"), triple.sentence);
    if (outer == inner) ++agree;
  }
  pass = agree == 1000 && res_ok == 1000;
  std::ostringstream os;
  os << "criterion relativization-law\n";
  os << "seed " << kSuiteSeed << "\n";
  os << "triples 1000\n";
  os << "res-satisfied " << res_ok << "\n";
  os << "agreements " << agree << "\n";
  os << "failures " << (1000 - agree) << "\n";
  return os.str();
}

// ------------------------------------------------------------ criterion 2

std::string criterion2(bool& pass, const fs::path& corpus_dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".fml") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ostringstream os;
  os << "criterion lemma-eq-harness\n";
  int cases = 0, agreements = 0;
  for (const auto& file : files) {
    FormulaFile parsed = parse_formula_file(slurp(file), /*require_sentence=*/true);
    for (int kappa = 1; kappa <= 3; ++kappa) {
      auto report = categoricity::lemma_eq_check(parsed.formula, parsed.vocab, kappa);
      ++cases;
      if (report.agree) ++agreements;
      os << file.filename().string() << " kappa " << kappa << " categorical "
         << (report.bounded_categorical ? "true" : "false") << " cat-truth "
         << (report.cat_truth_value ? "true" : "false") << " catplus "
         << (report.cat_plus_valid ? "true" : "false") << " "
         << (report.agree ? "agree" : "DISAGREE") << "\n";
    }
  }
  os << "sentences " << files.size() << "\n";
  os << "cases " << cases << "\n";
  os << "agreements " << agreements << "\n";
  pass = cases >= 60 && agreements == cases && files.size() >= 20;
  return os.str();
}

// ------------------------------------------------------------ criterion 3

std::string criterion3(bool& pass) {
  std::ostringstream os;
  os << "criterion catalogue-finite-unsatisfiability\n";
  pass = true;
  struct Case {
    const char* key;
    int max_n;
  };
  for (const Case& c : {Case{"N2", 5}, Case{"I2", 4}, Case{"P2", 4}}) {
    auto entry = catalogue::get(c.key);
    CompiledFormula compiled(entry.sentence, entry.vocab);
    std::uint64_t structures = 0, models = 0;
    for (int n = 1; n <= c.max_n; ++n) {
      std::uint64_t total = categoricity::interpretation_count(entry.vocab, n, 1ull << 32);
      for (std::uint64_t i = 0; i < total; ++i)
        if (compiled.eval(categoricity::structure_at(entry.vocab, n, i))) ++models;
      structures += total;
    }
    os << c.key << " max-size " << c.max_n << " structures " << structures << " models "
       << models << "\n";
    if (models != 0) pass = false;
  }
  return os.str();
}

// ------------------------------------------------------------ criterion 4

std::string criterion4(bool& pass) {
  auto suite = law_suite(1000);
  int agree = 0;
  for (const auto& triple : suite) {
    HenkinStructure h = full_family(triple.structure, {1, 2}, {0, 1});
    bool full = eval_full(triple.structure, triple.sentence);
    bool henkin = eval_henkin(h, triple.sentence);
    if (full == henkin) ++agree;
  }

  // The handcrafted deficient family: only the empty set is available, so
  // the universal-set comprehension instance fails with a witness.
  Vocabulary empty;
  auto instances =
      transforms::comprehension_instances(empty, {parse_formula("y1 = y1", empty)}, 1);
  HenkinStructure weak;
  weak.base = FiniteStructure(Vocabulary{}, 2);
  weak.rel_families[1] = {empty_relation(2, 1)};
  auto closure = semantics::check_closure(weak, instances);
  bool deficient_detected = !closure.verdicts.empty() && !closure.verdicts[0] &&
                            !closure.failures.empty() && closure.failures[0].reverified &&
                            closure.failures[0].missing == full_relation(2, 1);

  pass = agree == 1000 && deficient_detected;
  std::ostringstream os;
  os << "criterion henkin-agreement\n";
  os << "seed " << kSuiteSeed << "\n";
  os << "pairs 1000\n";
  os << "agreements " << agree << "\n";
  os << "deficient-family-instance fail\n";
  os << "deficient-family-witness " << (deficient_detected ? "reverified" : "missing") << "\n";
  return os.str();
}

// ------------------------------------------------------------ criterion 5

std::string criterion5(bool& pass) {
  Vocabulary v;
  v.add_relation("E", 2);
  transforms::VocabularyRenaming ren = transforms::VocabularyRenaming::primes(v);
  Vocabulary merged_vocab = Vocabulary::merged(v, ren.target());
  merged_vocab.add_relation("u0", 1);
  merged_vocab.add_relation("u1", 1);
  FormulaPtr exists_iso = Formula::exists_fun(
      "F1f", transforms::iso_sentence(v, ren, {"F1f", true}, "u0", "u1"));
  CompiledFormula compiled(exists_iso, merged_vocab);

  auto merge = [&](const FiniteStructure& a, const FiniteStructure& b) {
    int n = a.size() + b.size();
    FiniteStructure m(merged_vocab, n);
    RelTable e = empty_relation(n, 2), ep = empty_relation(n, 2);
    RelTable u0 = empty_relation(n, 1), u1 = empty_relation(n, 1);
    for (int i = 0; i < a.size(); ++i) u0.bits[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < b.size(); ++i) u1.bits[static_cast<std::size_t>(a.size() + i)] = true;
    const RelTable& ea = a.relation("E");
    for (std::uint64_t r = 0; r < ea.bits.size(); ++r)
      if (ea.bits[r]) e.bits[tuple_rank(tuple_at(r, a.size(), 2), n)] = true;
    const RelTable& eb = b.relation("E");
    for (std::uint64_t r = 0; r < eb.bits.size(); ++r) {
      if (!eb.bits[r]) continue;
      std::vector<int> t = tuple_at(r, b.size(), 2);
      for (int& x : t) x += a.size();
      ep.bits[tuple_rank(t, n)] = true;
    }
    m.set_relation("E", e);
    m.set_relation("E_p", ep);
    m.set_relation("u0", u0);
    m.set_relation("u1", u1);
    return m;
  };

  // Symmetry pruning: both sides of the comparison are invariant under
  // relabeling either component, so one representative per isomorphism
  // class suffices; a seeded sample of labeled pairs double-checks that.
  std::vector<FiniteStructure> reps;
  for (int n = 1; n <= 3; ++n)
    for (auto& m : categoricity::enumerate_up_to_iso(v, n, 1 << 20)) reps.push_back(std::move(m));

  std::uint64_t pairs = 0, agreements = 0, iso_pairs = 0;
  for (const auto& a : reps) {
    for (const auto& b : reps) {
      bool sentence = compiled.eval(merge(a, b));
      bool search = categoricity::find_isomorphism(a, b).has_value();
      ++pairs;
      if (sentence == search) ++agreements;
      if (search) ++iso_pairs;
    }
  }

  testgen::Rng rng(kSuiteSeed + 5);
  std::uint64_t sampled = 0, sampled_agree = 0;
  auto all3 = categoricity::enumerate_structures(v, 3, 1 << 20);
  for (int i = 0; i < 60; ++i) {
    const auto& a = all3[static_cast<std::size_t>(rng.below(static_cast<int>(all3.size())))];
    const auto& b = all3[static_cast<std::size_t>(rng.below(static_cast<int>(all3.size())))];
    bool sentence = compiled.eval(merge(a, b));
    bool search = categoricity::find_isomorphism(a, b).has_value();
    ++sampled;
    if (sentence == search) ++sampled_agree;
  }

  pass = agreements == pairs && sampled_agree == sampled;
  std::ostringstream os;
  os << "criterion iso-cross-validation\n";
  os << "representatives " << reps.size() << "\n";
  os << "pairs " << pairs << "\n";
  os << "agreements " << agreements << "\n";
  os << "isomorphic-pairs " << iso_pairs << "\n";
  os << "sampled-labeled-pairs " << sampled << "\n";
  os << "sampled-agreements " << sampled_agree << "\n";
  return os.str();
}

// ------------------------------------------------------------ criterion 6

std::string criterion6(bool& pass) {
  auto model = arith::StandardDoubledModel::standard(std::uint64_t{1} << 62);
  // The residue codes grow like the lcm of the moduli, so the formula
  // level is validated up to 12 while the map-level checks run to 20.
  arith::PhiGraphReport report = arith::verify_phi_graph(model, 20, 12);
  pass = report.total && report.unique && report.identity && report.add_hom &&
         report.mul_hom && report.psi_validated;
  std::ostringstream os;
  os << "criterion coded-graph-shadow\n";
  os << arith::write_report(report);
  return os.str();
}

// ------------------------------------------------------------ criterion 7

std::string criterion7(bool& pass, const fs::path& golden_dir) {
  std::ostringstream os;
  os << "criterion schema-golden-files\n";
  pass = true;

  std::ostringstream pa_out, pa_err;
  int code = cli::run({"gen-pa-doubled", "--depth", "1"}, pa_out, pa_err);
  bool pa_match = code == 0 && pa_out.str() == slurp(golden_dir / "pa_doubled_d1.theory");
  os << "pa-doubled-depth1 " << (pa_match ? "match" : "MISMATCH") << "\n";

  std::ostringstream zfc_out, zfc_err;
  code = cli::run({"gen-zfc", "--pool", (golden_dir / "zfc_pool3.fml").string()}, zfc_out,
                  zfc_err);
  bool zfc_match = code == 0 && zfc_out.str() == slurp(golden_dir / "zfc_pool3.theory");
  os << "zfc-pool3 " << (zfc_match ? "match" : "MISMATCH") << "\n";

  // Every generated sentence re-parses to itself.
  bool reparse = true;
  auto check_theory = [&reparse](const std::string& text, const Vocabulary& vocab) {
    auto theory = transforms::parse_theory(text, vocab);
    for (const auto& s : theory.sentences) {
      FormulaPtr back = parse_formula(render_formula(s), vocab, true);
      if (!equal(back, s)) reparse = false;
    }
  };
  check_theory(pa_out.str(), transforms::doubled_arith_vocabulary());
  Vocabulary zfc_vocab;
  zfc_vocab.add_relation("eps1", 2);
  zfc_vocab.add_relation("eps2", 2);
  check_theory(zfc_out.str(), zfc_vocab);
  os << "reparse " << (reparse ? "ok" : "FAIL") << "\n";

  pass = pa_match && zfc_match && reparse;
  return os.str();
}

// ------------------------------------------------------------ criterion 8

struct CriterionRun {
  std::vector<std::string> reports;  // criteria 1..7 in order
  std::vector<bool> passes;
};

CriterionRun run_all(const fs::path& corpus_dir, const fs::path& golden_dir) {
  CriterionRun run;
  bool ok = false;
  run.reports.push_back(criterion1(ok));
  run.passes.push_back(ok);
  run.reports.push_back(criterion2(ok, corpus_dir));
  run.passes.push_back(ok);
  run.reports.push_back(criterion3(ok));
  run.passes.push_back(ok);
  run.reports.push_back(criterion4(ok));
  run.passes.push_back(ok);
  run.reports.push_back(criterion5(ok));
  run.passes.push_back(ok);
  run.reports.push_back(criterion6(ok));
  run.passes.push_back(ok);
  run.reports.push_back(criterion7(ok, golden_dir));
  run.passes.push_back(ok);
  return run;
}

bool cli_double_run(const fs::path& scratch) {
  // Two fresh in-process invocations with identical inputs must produce
  // byte-identical files.
  fs::path first = scratch / "det_a.theory";
  fs::path second = scratch / "det_b.theory";
  for (const fs::path& p : {first, second}) {
    std::ostringstream out, err;
    int code = cli::run({"gen-pa-doubled", "--depth", "1", "--out", p.string()}, out, err);
    if (code != 0) return false;
  }
  if (slurp(first) != slurp(second)) return false;

  std::ostringstream a_out, a_err, b_out, b_err;
  std::vector<std::string> args{"verify-phi", "--bound", "12", "--psi-bound", "6"};
  if (cli::run(args, a_out, a_err) != 0) return false;
  if (cli::run(args, b_out, b_err) != 0) return false;
  return a_out.str() == b_out.str();
}

}  // namespace

int main(int argc, char** argv) {
  fs::path source_dir = CATKIT_SOURCE_DIR;
  fs::path corpus_dir = source_dir / "tests" / "corpus";
  fs::path golden_dir = source_dir / "tests" / "golden";
  fs::path scratch = fs::temp_directory_path() / "catkit_acceptance";
  if (argc > 1) scratch = argv[1];
  fs::create_directories(scratch);

  const char* names[] = {
      "relativization-law",     "lemma-eq-harness", "catalogue-unsat",
      "henkin-agreement",       "iso-cross-validation", "coded-graph-shadow",
      "schema-golden-files",
  };

  int failures = 0;
  auto t0 = Clock::now();
  CriterionRun first = run_all(corpus_dir, golden_dir);
  auto t1 = Clock::now();

  // Re-derive every report from scratch for the determinism criterion.
  CriterionRun second = run_all(corpus_dir, golden_dir);
  auto t2 = Clock::now();

  for (int i = 0; i < 7; ++i) {
    std::ofstream file(scratch / ("criterion_" + std::to_string(i + 1) + ".txt"),
                       std::ios::binary);
    file << first.reports[static_cast<std::size_t>(i)];
    bool pass = first.passes[static_cast<std::size_t>(i)] &&
                second.passes[static_cast<std::size_t>(i)];
    if (!pass) ++failures;
    std::cout << "criterion " << (i + 1) << " [" << names[i] << "]: "
              << (pass ? "PASS" : "FAIL") << "\n";
  }

  bool deterministic = first.reports == second.reports && cli_double_run(scratch);
  if (!deterministic) ++failures;
  std::cout << "criterion 8 [determinism]: " << (deterministic ? "PASS" : "FAIL") << "\n";

  std::cout << "reports written to " << scratch.string() << "\n";
  std::cout << "first pass " << std::chrono::duration<double>(t1 - t0).count()
            << "s, second pass " << std::chrono::duration<double>(t2 - t1).count() << "s\n";
  std::cout << (failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}
