#pragma once

#include <map>
#include <string>

#include "catkit/ast.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::transforms {

// An arity-preserving bijection from a source vocabulary onto a disjoint
// copy of it.
class VocabularyRenaming {
 public:
  VocabularyRenaming(const Vocabulary& source, std::map<std::string, std::string> map);

  // The default renaming appends `_p` (collision-avoided) to every symbol.
  static VocabularyRenaming primes(const Vocabulary& source);

  const Vocabulary& source() const { return source_; }
  const Vocabulary& target() const { return target_; }
  const std::map<std::string, std::string>& map() const { return map_; }
  const std::string& at(const std::string& symbol) const;

 private:
  Vocabulary source_;
  Vocabulary target_;
  std::map<std::string, std::string> map_;
};

// The sentence making `upred` a nonempty subdomain closed under every
// function symbol of the vocabulary.
FormulaPtr res_sentence(const Vocabulary& vocab, const std::string& upred);

// Restricts all quantifiers of f to `upred`: first-order quantifiers are
// guarded directly, relation variables by inclusion in the corresponding
// power of `upred`, and function variables by mapping `upred`-tuples into
// `upred` (their values elsewhere are unconstrained).
FormulaPtr relativize(const FormulaPtr& f, const std::string& upred);

// Structure-identical formula with every symbol replaced along `ren`.
FormulaPtr prime(const FormulaPtr& f, const VocabularyRenaming& ren);

enum class IsoMode {
  Guarded,  // injectivity / preservation / commutation carry upred-guards
  Literal,  // the classical unguarded conjuncts
};

// The mapping symbol or variable of an isomorphism sentence.
struct IsoFunction {
  std::string name;
  bool is_variable = true;  // second-order function variable vs. unary symbol
};

// The sentence stating that F is an isomorphism from the L-part
// relativized to `upred` onto the renamed part relativized to `upred2`.
FormulaPtr iso_sentence(const Vocabulary& vocab, const VocabularyRenaming& ren,
                        const IsoFunction& fn, const std::string& upred,
                        const std::string& upred2, IsoMode mode = IsoMode::Guarded);

struct CatNames {
  std::string upred = "u0";
  std::string upred2 = "u1";
  std::string fvar = "F1f";
};

// Picks upred / upred2 / fvar names that avoid the vocabulary and its
// renamed copy.
CatNames default_cat_names(const Vocabulary& vocab, const VocabularyRenaming& ren);

// (Res(U) & Res'(U') & f^U & f'^U') -> exists F ISO(F, U, U'),
// a sentence over vocab + renamed copy + the two unary predicates.
FormulaPtr cat_plus(const FormulaPtr& f, const Vocabulary& vocab, const VocabularyRenaming& ren,
                    const CatNames& names, IsoMode mode = IsoMode::Guarded);
FormulaPtr cat_plus(const FormulaPtr& f, const Vocabulary& vocab, IsoMode mode = IsoMode::Guarded);

// The vocabulary of cat_plus output: U, U', then the originals, then the
// renamed copies.
Vocabulary cat_plus_vocabulary(const Vocabulary& vocab, const VocabularyRenaming& ren,
                               const CatNames& names);

// Universally closes cat_plus over U, U' and every symbol of both copies;
// the result is a sentence of the empty vocabulary.
FormulaPtr cat_sentence(const FormulaPtr& f, const Vocabulary& vocab,
                        IsoMode mode = IsoMode::Guarded);

}  // namespace catkit::transforms
