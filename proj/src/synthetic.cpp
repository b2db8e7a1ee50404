#include "pvoice/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "pvoice/errors.hpp"
#include "pvoice/ingestion.hpp"
#include "pvoice/random.hpp"
#include "pvoice/textprep.hpp"

namespace pvoice {

namespace {

// The lexicon is fixed; only sampling depends on the generator seed.
constexpr std::uint64_t kLexiconSeed = 0x5eed'1e71'c0deULL;

// Consonant-vowel syllables ending in 'a' or 'o' are fixed points of the
// Porter stemmer, so every generated word survives preprocessing intact.
constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "ao";

class Lexicon {
 public:
  explicit Lexicon(std::uint64_t seed) : rng_(seed), stop_(StopWords::english()) {}

  std::vector<std::string> pool(std::size_t n) {
    std::vector<std::string> out;
    while (out.size() < n) {
      std::string w;
      const auto syllables = 2 + rng_.below(2);
      for (std::uint64_t s = 0; s < syllables; ++s) {
        w += kConsonants[rng_.below(kConsonants.size())];
        w += kVowels[rng_.below(kVowels.size())];
      }
      if (stop_.contains(w) || !used_.insert(w).second) continue;
      out.push_back(std::move(w));
    }
    return out;
  }

 private:
  Xoshiro256 rng_;
  StopWords stop_;
  std::set<std::string> used_;
};

// Zipf-like sampler with exponent 1 over a fixed word list.
class Pool {
 public:
  Pool() = default;
  explicit Pool(std::vector<std::string> words) : words_(std::move(words)) {
    double total = 0.0;
    for (std::size_t r = 0; r < words_.size(); ++r) {
      total += 1.0 / static_cast<double>(r + 1);
      cumulative_.push_back(total);
    }
    for (auto& c : cumulative_) c /= total;
  }

  const std::string& draw(Xoshiro256& rng) const {
    const auto u = rng.uniform01();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return words_[std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), words_.size() - 1)];
  }
  const std::vector<std::string>& words() const { return words_; }

 private:
  std::vector<std::string> words_;
  std::vector<double> cumulative_;
};

struct Pools {
  Pool general;
  std::map<Domain, Pool> domain;
  std::map<Source, Pool> source;
  std::map<DatasetKey, Pool> specific;
  Pool pv, nr;
};

std::string make_text(const SyntheticSpec& spec, const Pools& pools, const DatasetKey& key, Label label,
                      Xoshiro256& rng) {
  const auto length = spec.min_length + rng.below(spec.max_length - spec.min_length + 1);
  const auto& own = label == Label::PatientVoice ? pools.pv : pools.nr;
  const auto& other = label == Label::PatientVoice ? pools.nr : pools.pv;
  std::string text;
  for (std::uint64_t i = 0; i < length; ++i) {
    double u = rng.uniform01();
    const Pool* p = &pools.general;
    if ((u -= spec.signal_share) < 0) p = rng.uniform01() < spec.label_noise ? &other : &own;
    else if ((u -= spec.domain_share) < 0) p = &pools.domain.at(key.domain);
    else if ((u -= spec.source_share) < 0) p = &pools.source.at(key.source);
    else if ((u -= spec.specific_share) < 0) p = &pools.specific.at(key);
    if (!text.empty()) text += ' ';
    text += p->draw(rng);
  }
  text += '.';
  return text;
}

std::vector<LabeledPost> make_posts(const SyntheticSpec& spec, const Pools& pools, const DatasetKey& key,
                                    std::size_t n, std::string_view tag, Xoshiro256& rng) {
  std::vector<LabeledPost> posts;
  const auto n_pv = static_cast<std::size_t>(std::llround(spec.patient_voice_fraction * static_cast<double>(n)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = i < n_pv ? Label::PatientVoice : Label::NotRelevant;
    char id[24];
    std::snprintf(id, sizeof id, "%04zu", i + 1);
    Post post{key.file_stem() + "-" + std::string(tag) + id, key.source, key.domain,
              make_text(spec, pools, key, label, rng), std::nullopt};
    posts.push_back({std::move(post), label});
  }
  rng.shuffle(std::span<LabeledPost>(posts));
  return posts;
}

}  // namespace

void SyntheticSpec::validate() const {
  const auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!in_unit(patient_voice_fraction) || !in_unit(label_noise)) throw ConfigError("fractions must lie in [0, 1]");
  for (double s : {domain_share, source_share, specific_share, signal_share})
    if (!in_unit(s)) throw ConfigError("token shares must lie in [0, 1]");
  if (domain_share + source_share + specific_share + signal_share > 1.0) throw ConfigError("token shares exceed 1");
  if (min_length < 1 || max_length < min_length) throw ConfigError("need 1 <= min_length <= max_length");
  if (general_pool == 0 || domain_pool == 0 || source_pool == 0 || specific_pool == 0 || signal_pool == 0) {
    throw ConfigError("word pools must be non-empty");
  }
}

std::vector<DatasetKey> standard_dataset_keys() {
  std::vector<DatasetKey> keys;
  for (const auto& s : {Source::reddit(), Source::socialgist()})
    for (const auto& d : {Domain::cardiovascular(), Domain::oncology(), Domain::immunology(), Domain::neurology()})
      keys.push_back({s, d});
  std::sort(keys.begin(), keys.end());
  return keys;
}

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const auto keys = spec.datasets.empty() ? standard_dataset_keys() : spec.datasets;

  Lexicon lex(kLexiconSeed);
  Pools pools;
  pools.pv = Pool(lex.pool(spec.signal_pool));
  pools.nr = Pool(lex.pool(spec.signal_pool));
  pools.general = Pool(lex.pool(spec.general_pool));
  for (const auto& k : keys) {
    if (!pools.domain.contains(k.domain)) pools.domain.emplace(k.domain, Pool(lex.pool(spec.domain_pool)));
    if (!pools.source.contains(k.source)) pools.source.emplace(k.source, Pool(lex.pool(spec.source_pool)));
    if (!pools.specific.contains(k)) pools.specific.emplace(k, Pool(lex.pool(spec.specific_pool)));
  }

  SyntheticCorpus corpus;
  corpus.patient_voice_terms = pools.pv.words();
  corpus.not_relevant_terms = pools.nr.words();
  const auto add = [&](const Pool& p) {
    corpus.lexicon.insert(corpus.lexicon.end(), p.words().begin(), p.words().end());
  };
  add(pools.pv);
  add(pools.nr);
  add(pools.general);
  for (const auto& [_, p] : pools.domain) add(p);
  for (const auto& [_, p] : pools.source) add(p);
  for (const auto& [_, p] : pools.specific) add(p);
  std::sort(corpus.lexicon.begin(), corpus.lexicon.end());

  Xoshiro256 rng(spec.seed);
  for (const auto& k : keys) {
    SyntheticDataset d{k, make_posts(spec, pools, k, spec.posts_per_dataset, "p", rng),
                       make_posts(spec, pools, k, spec.test_per_dataset, "t", rng)};
    corpus.datasets.push_back(std::move(d));
  }
  return corpus;
}

std::vector<SplitBundle> synthetic_bundles(const SyntheticCorpus& corpus, Fraction train_fraction,
                                           std::uint64_t seed) {
  std::vector<SplitBundle> bundles;
  for (const auto& d : corpus.datasets) {
    auto split = stratified_split(d.pool, train_fraction, seed);
    bundles.push_back({d.key, std::move(split.train), std::move(split.validation), d.test});
  }
  return bundles;
}

std::string synthetic_embeddings(const SyntheticCorpus& corpus, std::size_t width, std::uint64_t seed) {
  if (width == 0) throw ConfigError("embedding width must be positive");
  Xoshiro256 rng(seed);
  std::vector<double> direction(width);
  for (auto& v : direction) v = rng.uniform(-1.0, 1.0);

  const std::set<std::string> pv(corpus.patient_voice_terms.begin(), corpus.patient_voice_terms.end());
  const std::set<std::string> nr(corpus.not_relevant_terms.begin(), corpus.not_relevant_terms.end());
  std::string out = std::to_string(corpus.lexicon.size()) + " " + std::to_string(width) + "\n";
  char buf[32];
  for (const auto& w : corpus.lexicon) {
    const double lean = pv.contains(w) ? 0.3 : nr.contains(w) ? -0.3 : 0.0;
    out += w;
    for (std::size_t k = 0; k < width; ++k) {
      std::snprintf(buf, sizeof buf, " %.6f", lean * direction[k] + rng.uniform(-0.1, 0.1));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<AnnotationRecord> synthetic_annotations(std::span<const LabeledPost> posts, std::size_t annotators,
                                                    double agreement, std::uint64_t seed) {
  if (!(agreement >= 0.0 && agreement <= 1.0)) throw ConfigError("agreement must lie in [0, 1]");
  Xoshiro256 rng(seed);
  std::vector<AnnotationRecord> records;
  for (const auto& p : posts) {
    for (std::size_t a = 0; a < annotators; ++a) {
      auto label = p.label;
      if (rng.uniform01() >= agreement) label = kLabels[rng.below(kNumLabels)];
      records.push_back({p.post.id, "annotator" + std::to_string(a + 1), label});
    }
  }
  return records;
}

std::vector<LabeledPost> separable_toy_corpus(std::size_t n, std::uint64_t seed) {
  static const std::vector<std::string> pv_words{"pain", "diagnosed", "chemo", "scared", "surgery", "my",
                                                 "symptoms", "doctor", "tired", "medication"};
  static const std::vector<std::string> nr_words{"stock", "study", "announced", "funding", "trial",
                                                 "company", "market", "press", "investors", "quarterly"};
  Xoshiro256 rng(seed);
  std::vector<LabeledPost> posts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto label = i % 2 == 0 ? Label::PatientVoice : Label::NotRelevant;
    const auto& words = label == Label::PatientVoice ? pv_words : nr_words;
    std::string text;
    const auto length = 4 + rng.below(5);
    for (std::uint64_t k = 0; k < length; ++k) {
      if (!text.empty()) text += ' ';
      text += words[rng.below(words.size())];
    }
    posts.push_back({Post{"toy-" + std::to_string(i + 1), Source::reddit(), Domain::oncology(), text, std::nullopt},
                     label});
  }
  return posts;
}

}  // namespace pvoice
