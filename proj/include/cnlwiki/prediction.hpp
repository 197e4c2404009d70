#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace cnlwiki {

/// Word categories a predictive editor expands against the live vocabulary.
enum class Category {
  NounSingular,
  NounPlural,
  ProperName,
  VerbThirdSingular,
  VerbPlural,
  VerbPastParticiple,
  Number,
};

std::string_view to_string(Category c);
std::optional<Category> category_from_string(std::string_view s);

/// The tokens that may follow a prefix. A concrete token is possible iff it is
/// listed in `function_words` or its category is in `categories`. Numbers are
/// additionally bounded below by `number_min` ("less than" excludes 0).
struct Prediction {
  std::set<std::string> function_words;
  std::set<Category> categories;
  int number_min = 0;

  bool empty() const { return function_words.empty() && categories.empty(); }

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

}  // namespace cnlwiki
