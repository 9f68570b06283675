#pragma once

#include <optional>
#include <string>
#include <vector>

#include "catkit/ast.hpp"
#include "catkit/schemas.hpp"
#include "catkit/vocabulary.hpp"

namespace catkit::catalogue {

struct CatalogueEntry {
  std::string key;
  std::string note;  // what the construction axiomatizes
  Vocabulary vocab;
  FormulaPtr sentence;  // set for single-sentence entries
  std::optional<transforms::TheoryInstanceSet> theory;
};

std::vector<std::string> keys();
CatalogueEntry get(const std::string& key);

}  // namespace catkit::catalogue
