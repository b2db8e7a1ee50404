// Porter's original suffix-stripping algorithm (Program 14(3), 1980), with
// the rule tables as published. Later revisions (the "logi" and "bli" rules,
// the short-word guard) are deliberately absent.

#include <array>
#include <string>
#include <string_view>

#include "pvoice/textprep.hpp"

namespace pvoice {

namespace {

bool is_vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// y is a consonant at the start of a word or after a vowel.
bool is_consonant(std::string_view w, std::size_t i) {
  if (is_vowel_letter(w[i])) return false;
  if (w[i] == 'y') return i == 0 || !is_consonant(w, i - 1);
  return true;
}

// m in [C](VC){m}[V].
int measure(std::string_view stem) {
  int m = 0;
  bool previous_vowel = false;
  for (std::size_t i = 0; i < stem.size(); ++i) {
    const bool consonant = is_consonant(stem, i);
    if (consonant && previous_vowel) ++m;
    previous_vowel = !consonant;
  }
  return m;
}

bool contains_vowel(std::string_view stem) {
  for (std::size_t i = 0; i < stem.size(); ++i)
    if (!is_consonant(stem, i)) return true;
  return false;
}

bool ends_double_consonant(std::string_view w) {
  const auto n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: ends consonant-vowel-consonant, the last not w, x or y.
bool ends_cvc(std::string_view w) {
  const auto n = w.size();
  if (n < 3) return false;
  const char last = w[n - 1];
  return is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) && last != 'w' &&
         last != 'x' && last != 'y';
}

enum class Condition { None, MeasurePositive, MeasureAboveOne, MeasureAboveOneAndSorT };

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
  Condition condition;
};

bool holds(Condition c, std::string_view stem) {
  switch (c) {
    case Condition::None: return true;
    case Condition::MeasurePositive: return measure(stem) > 0;
    case Condition::MeasureAboveOne: return measure(stem) > 1;
    case Condition::MeasureAboveOneAndSorT:
      return measure(stem) > 1 && !stem.empty() && (stem.back() == 's' || stem.back() == 't');
  }
  return false;
}

// The first rule whose suffix matches decides; if its condition fails the
// word is left alone.
template <std::size_t N>
void apply_first(std::string& w, const std::array<Rule, N>& rules) {
  for (const auto& r : rules) {
    if (!w.ends_with(r.suffix)) continue;
    const std::string_view stem(w.data(), w.size() - r.suffix.size());
    if (holds(r.condition, stem)) w = std::string(stem).append(r.replacement);
    return;
  }
}

void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> rules{{
      {"sses", "ss", Condition::None},
      {"ies", "i", Condition::None},
      {"ss", "ss", Condition::None},
      {"s", "", Condition::None},
  }};
  apply_first(w, rules);
}

void step1b(std::string& w) {
  if (w.ends_with("eed")) {
    if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
    return;
  }
  std::size_t cut = 0;
  if (w.ends_with("ed")) cut = 2;
  else if (w.ends_with("ing")) cut = 3;
  if (cut == 0 || !contains_vowel(std::string_view(w).substr(0, w.size() - cut))) return;
  w.erase(w.end() - static_cast<std::ptrdiff_t>(cut), w.end());

  if (w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    const char last = w.back();
    if (last != 'l' && last != 's' && last != 'z') w.pop_back();
  } else if (measure(w) == 1 && ends_cvc(w)) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (w.ends_with('y') && contains_vowel(std::string_view(w).substr(0, w.size() - 1))) w.back() = 'i';
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{{
      {"ational", "ate", Condition::MeasurePositive},
      {"tional", "tion", Condition::MeasurePositive},
      {"enci", "ence", Condition::MeasurePositive},
      {"anci", "ance", Condition::MeasurePositive},
      {"izer", "ize", Condition::MeasurePositive},
      {"abli", "able", Condition::MeasurePositive},
      {"alli", "al", Condition::MeasurePositive},
      {"entli", "ent", Condition::MeasurePositive},
      {"eli", "e", Condition::MeasurePositive},
      {"ousli", "ous", Condition::MeasurePositive},
      {"ization", "ize", Condition::MeasurePositive},
      {"ation", "ate", Condition::MeasurePositive},
      {"ator", "ate", Condition::MeasurePositive},
      {"alism", "al", Condition::MeasurePositive},
      {"iveness", "ive", Condition::MeasurePositive},
      {"fulness", "ful", Condition::MeasurePositive},
      {"ousness", "ous", Condition::MeasurePositive},
      {"aliti", "al", Condition::MeasurePositive},
      {"iviti", "ive", Condition::MeasurePositive},
      {"biliti", "ble", Condition::MeasurePositive},
  }};
  apply_first(w, rules);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{{
      {"icate", "ic", Condition::MeasurePositive},
      {"ative", "", Condition::MeasurePositive},
      {"alize", "al", Condition::MeasurePositive},
      {"iciti", "ic", Condition::MeasurePositive},
      {"ical", "ic", Condition::MeasurePositive},
      {"ful", "", Condition::MeasurePositive},
      {"ness", "", Condition::MeasurePositive},
  }};
  apply_first(w, rules);
}

void step4(std::string& w) {
  static constexpr std::array<Rule, 19> rules{{
      {"al", "", Condition::MeasureAboveOne},
      {"ance", "", Condition::MeasureAboveOne},
      {"ence", "", Condition::MeasureAboveOne},
      {"er", "", Condition::MeasureAboveOne},
      {"ic", "", Condition::MeasureAboveOne},
      {"able", "", Condition::MeasureAboveOne},
      {"ible", "", Condition::MeasureAboveOne},
      {"ant", "", Condition::MeasureAboveOne},
      {"ement", "", Condition::MeasureAboveOne},
      {"ment", "", Condition::MeasureAboveOne},
      {"ent", "", Condition::MeasureAboveOne},
      {"ion", "", Condition::MeasureAboveOneAndSorT},
      {"ou", "", Condition::MeasureAboveOne},
      {"ism", "", Condition::MeasureAboveOne},
      {"ate", "", Condition::MeasureAboveOne},
      {"iti", "", Condition::MeasureAboveOne},
      {"ous", "", Condition::MeasureAboveOne},
      {"ive", "", Condition::MeasureAboveOne},
      {"ize", "", Condition::MeasureAboveOne},
  }};
  apply_first(w, rules);
}

void step5a(std::string& w) {
  if (!w.ends_with('e')) return;
  const std::string_view stem(w.data(), w.size() - 1);
  const int m = measure(stem);
  if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
  if (w.ends_with("ll") && measure(std::string_view(w).substr(0, w.size() - 1)) > 1) w.pop_back();
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w(word);
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace pvoice
