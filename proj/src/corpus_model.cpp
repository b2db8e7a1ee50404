#include "pvoice/corpus_model.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "pvoice/errors.hpp"

namespace pvoice {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(Label label) noexcept {
  return label == Label::PatientVoice ? "patient_voice" : "not_relevant";
}

std::optional<Label> parse_label(std::string_view text) noexcept {
  if (text == "patient_voice") return Label::PatientVoice;
  if (text == "not_relevant") return Label::NotRelevant;
  return std::nullopt;
}

Source Source::parse(std::string_view text) {
  const auto s = lower(text);
  if (s == "reddit") return reddit();
  if (s == "socialgist") return socialgist();
  if (s == "combined") return combined();
  if (s.empty()) throw ConfigError("empty source name");
  return other(s);
}

std::string Source::to_string() const {
  switch (kind) {
    case Kind::Reddit: return "reddit";
    case Kind::SocialGist: return "socialgist";
    case Kind::Combined: return "combined";
    case Kind::Other: break;
  }
  return name;
}

Domain Domain::parse(std::string_view text) {
  const auto s = lower(text);
  if (s == "cardiovascular") return cardiovascular();
  if (s == "oncology") return oncology();
  if (s == "immunology") return immunology();
  if (s == "neurology") return neurology();
  if (s == "combined") return combined();
  if (s.empty()) throw ConfigError("empty domain name");
  return other(s);
}

std::string Domain::to_string() const {
  switch (kind) {
    case Kind::Cardiovascular: return "cardiovascular";
    case Kind::Oncology: return "oncology";
    case Kind::Immunology: return "immunology";
    case Kind::Neurology: return "neurology";
    case Kind::Combined: return "combined";
    case Kind::Other: break;
  }
  return name;
}

std::string DatasetKey::to_string() const { return source.to_string() + "/" + domain.to_string(); }

DatasetKey DatasetKey::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (lower(text) == "all") return all();
    throw ConfigError("dataset key must look like source/domain: '" + std::string(text) + "'");
  }
  return {Source::parse(text.substr(0, slash)), Domain::parse(text.substr(slash + 1))};
}

std::string DatasetKey::file_stem() const { return source.to_string() + "__" + domain.to_string(); }

std::vector<std::string> validate_bundle(const SplitBundle& bundle) {
  std::vector<std::string> violations;
  if (bundle.train.empty()) violations.emplace_back("empty train partition");

  struct Named {
    const char* name;
    const std::vector<LabeledPost>* posts;
  };
  const std::array<Named, 3> parts{{{"train", &bundle.train},
                                    {"validation", &bundle.validation},
                                    {"test", &bundle.test}}};
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      std::unordered_set<std::string_view> ids;
      for (const auto& p : *parts[b].posts) ids.insert(p.post.id);
      std::unordered_set<std::string_view> reported;
      for (const auto& p : *parts[a].posts) {
        if (ids.contains(p.post.id) && reported.insert(p.post.id).second) {
          violations.push_back("duplicate id " + p.post.id + " in " + parts[a].name + "/" + parts[b].name);
        }
      }
    }
  }
  return violations;
}

std::array<std::size_t, kNumLabels> label_counts(const std::vector<LabeledPost>& posts) {
  std::array<std::size_t, kNumLabels> counts{};
  for (const auto& p : posts) ++counts[index_of(p.label)];
  return counts;
}

}  // namespace pvoice
