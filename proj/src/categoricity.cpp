#include "catkit/categoricity.hpp"

#include <future>
#include <sstream>

#include "catkit/enumerate.hpp"
#include "catkit/errors.hpp"
#include "catkit/hygiene.hpp"

namespace catkit::categoricity {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Categorical: return "categorical";
    case Verdict::NonCategorical: return "non-categorical";
    case Verdict::Vacuous: return "vacuous";
  }
  return "?";
}

namespace {

// Indices of the models of `compiled` among the interpretations of size n,
// ascending. Chunked across threads when jobs > 1; the merge keeps index
// order, so the result is independent of the thread count.
std::vector<std::uint64_t> model_indices(const CompiledFormula& compiled, const Vocabulary& vocab,
                                         int n, const EvalOptions& opts, int jobs,
                                         std::uint64_t total) {
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> hits;
    for (std::uint64_t i = begin; i < end; ++i) {
      if (compiled.eval(structure_at(vocab, n, i), {}, opts)) hits.push_back(i);
    }
    return hits;
  };
  if (jobs <= 1 || total < 1024) return scan(0, total);

  std::vector<std::future<std::vector<std::uint64_t>>> futures;
  std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) / static_cast<std::uint64_t>(jobs);
  for (int j = 0; j < jobs; ++j) {
    std::uint64_t begin = chunk * static_cast<std::uint64_t>(j);
    std::uint64_t end = std::min(total, begin + chunk);
    if (begin >= end) break;
    futures.push_back(std::async(std::launch::async, scan, begin, end));
  }
  std::vector<std::uint64_t> hits;
  for (auto& fut : futures) {
    std::vector<std::uint64_t> part = fut.get();
    hits.insert(hits.end(), part.begin(), part.end());
  }
  return hits;
}

}  // namespace

CategoricityReport categorical_up_to(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                                     const EvalOptions& opts, int jobs) {
  if (kappa < 1) throw SemanticError("kappa must be >= 1");
  CategoricityReport report;
  report.kappa = kappa;

  const FiniteStructure* first_rep = nullptr;
  for (int n = 1; n <= kappa; ++n) {
    CompiledFormula compiled(f, vocab);
    std::uint64_t total = interpretation_count(vocab, n, opts.so_capacity);
    std::vector<std::uint64_t> hits = model_indices(compiled, vocab, n, opts, jobs, total);
    report.structures_enumerated += total;
    report.models_found += hits.size();

    SizeCensus census;
    census.size = n;
    census.model_count = hits.size();
    for (std::uint64_t index : hits) {
      FiniteStructure m = structure_at(vocab, n, index);
      bool placed = false;
      for (IsoClass& cls : census.classes) {
        auto cert = find_isomorphism(m, cls.rep);
        if (cert) {
          ++cls.members;
          if (!cls.sample) cls.sample = std::move(cert);
          placed = true;
          break;
        }
      }
      if (!placed) census.classes.push_back({std::move(m), 1, std::nullopt});
    }
    report.census.push_back(std::move(census));
  }

  std::uint64_t classes_total = 0;
  for (const auto& census : report.census) classes_total += census.classes.size();
  if (classes_total == 0) {
    report.verdict = Verdict::Vacuous;
    return report;
  }
  if (classes_total == 1) {
    report.verdict = Verdict::Categorical;
    return report;
  }
  report.verdict = Verdict::NonCategorical;
  // Witness: the first two class representatives in (size, index) order.
  for (const auto& census : report.census) {
    for (const auto& cls : census.classes) {
      if (!first_rep) {
        first_rep = &cls.rep;
        continue;
      }
      report.witness = {*first_rep, cls.rep};
      report.witness_same_size = first_rep->size() == cls.rep.size();
      return report;
    }
  }
  throw InternalError("witness selection failed");
}

bool cat_truth(const FormulaPtr& f, const Vocabulary& vocab, int kappa, const EvalOptions& opts,
               transforms::IsoMode mode) {
  if (kappa < 1) throw SemanticError("kappa must be >= 1");
  FormulaPtr cat = transforms::cat_sentence(f, vocab, mode);
  FiniteStructure bare(Vocabulary{}, kappa);
  return eval_full(bare, cat, {}, opts);
}

LemmaEqReport lemma_eq_check(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                             const EvalOptions& opts, int jobs) {
  LemmaEqReport report;
  report.bounded = categorical_up_to(f, vocab, kappa, opts, jobs);
  report.bounded_categorical = report.bounded.verdict != Verdict::NonCategorical;
  report.cat_truth_value = cat_truth(f, vocab, kappa, opts);

  transforms::VocabularyRenaming ren = transforms::VocabularyRenaming::primes(vocab);
  transforms::CatNames names = transforms::default_cat_names(vocab, ren);
  FormulaPtr plus = transforms::cat_plus(f, vocab, ren, names);
  Vocabulary extended = transforms::cat_plus_vocabulary(vocab, ren, names);

  CompiledFormula compiled(plus, extended);
  report.cat_plus_valid = true;
  std::uint64_t total = interpretation_count(extended, kappa, opts.so_capacity);
  for (std::uint64_t i = 0; i < total; ++i) {
    FiniteStructure m = structure_at(extended, kappa, i);
    if (!compiled.eval(m, {}, opts)) {
      report.cat_plus_valid = false;
      report.counterexample = std::move(m);
      break;
    }
  }

  report.agree = report.bounded_categorical == report.cat_truth_value &&
                 report.cat_truth_value == report.cat_plus_valid;
  return report;
}

UniqueIsoReport unique_isomorphism(const FormulaPtr& f, const Vocabulary& vocab, int kappa,
                                   const EvalOptions& opts) {
  UniqueIsoReport report;
  report.base = categorical_up_to(f, vocab, kappa, opts);
  std::vector<const FiniteStructure*> reps;
  for (const auto& census : report.base.census)
    for (const auto& cls : census.classes) reps.push_back(&cls.rep);
  report.all_unique = !reps.empty();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i; j < reps.size(); ++j) {
      PairIsoCount pair;
      pair.first_size = reps[i]->size();
      pair.second_size = reps[j]->size();
      pair.isomorphisms = count_isomorphisms(*reps[i], *reps[j]);
      if (pair.isomorphisms != 1) report.all_unique = false;
      report.pairs.push_back(pair);
    }
  }
  return report;
}

namespace {

void put_witness(std::ostringstream& os, const FiniteStructure& m) {
  os << "witness begin\n" << write_structure(m) << "witness end\n";
}

}  // namespace

std::string write_report(const CategoricityReport& report) {
  std::ostringstream os;
  os << "verdict " << verdict_name(report.verdict) << "\n";
  os << "kappa " << report.kappa << "\n";
  for (const auto& census : report.census)
    os << "models " << census.size << " " << census.model_count << "\n";
  for (const auto& census : report.census)
    os << "classes " << census.size << " " << census.classes.size() << "\n";
  os << "stat structures " << report.structures_enumerated << "\n";
  os << "stat models " << report.models_found << "\n";
  if (report.witness) {
    os << "witness kind " << (report.witness_same_size ? "same-size" : "size-mismatch") << "\n";
    put_witness(os, report.witness->first);
    put_witness(os, report.witness->second);
  }
  return os.str();
}

std::string write_report(const LemmaEqReport& report, int kappa) {
  std::ostringstream os;
  os << "kappa " << kappa << "\n";
  os << "categorical-up-to " << (report.bounded_categorical ? "true" : "false") << " ("
     << verdict_name(report.bounded.verdict) << ")\n";
  os << "cat-truth " << (report.cat_truth_value ? "true" : "false") << "\n";
  os << "catplus-valid " << (report.cat_plus_valid ? "true" : "false") << "\n";
  os << "verdict " << (report.agree ? "agree" : "disagree") << "\n";
  if (report.counterexample) put_witness(os, *report.counterexample);
  return os.str();
}

std::string write_report(const UniqueIsoReport& report) {
  std::ostringstream os;
  os << "verdict " << verdict_name(report.base.verdict) << "\n";
  os << "kappa " << report.base.kappa << "\n";
  for (const auto& pair : report.pairs)
    os << "pair " << pair.first_size << " " << pair.second_size << " isomorphisms "
       << pair.isomorphisms << "\n";
  os << "unique " << (report.all_unique ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace catkit::categoricity
