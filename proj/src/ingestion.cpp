#include "pvoice/ingestion.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"
#include "pvoice/random.hpp"
#include "pvoice/unicode.hpp"

namespace pvoice {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// One decoded record, before conversion to Post / LabeledPost.
struct RawRecord {
  std::size_t line = 0;
  std::unordered_map<std::string, std::string> strings;
  std::optional<std::int64_t> created_at;
};

const std::string* field(const RawRecord& r, const std::string& name) {
  auto it = r.strings.find(name);
  return it == r.strings.end() ? nullptr : &it->second;
}

const std::string& required(const RawRecord& r, const std::string& name) {
  const auto* v = field(r, name);
  if (!v) throw ParseError("missing required field '" + name + "'", r.line);
  return *v;
}

template <typename OnLine>
void for_each_line(const fs::path& path, OnLine&& on_line) {
  auto in = open_for_reading(path);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    on_line(line, number);
  }
  if (in.bad()) throw IoError("read failed: " + path.string());
}

std::vector<RawRecord> read_jsonl(const fs::path& path) {
  std::vector<RawRecord> out;
  for_each_line(path, [&](const std::string& line, std::size_t number) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), number);
    }
    if (!j.is_object()) throw ParseError("record is not a JSON object", number);
    RawRecord r;
    r.line = number;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "created_at") {
        if (it->is_null()) continue;
        if (!it->is_number_integer()) throw ParseError("created_at must be an integer", number);
        r.created_at = it->get<std::int64_t>();
      } else if (it->is_string()) {
        r.strings.emplace(it.key(), it->get<std::string>());
      } else if (it.key() == "id" || it.key() == "source" || it.key() == "domain" || it.key() == "text" ||
                 it.key() == "label" || it.key() == "post_id" || it.key() == "annotator_id") {
        throw ParseError("field '" + it.key() + "' must be a string", number);
      }
    }
    out.push_back(std::move(r));
  });
  return out;
}

std::vector<RawRecord> read_csv(const fs::path& path) {
  auto in = open_for_reading(path);
  csv::Reader reader(in);
  std::vector<std::string> header;
  std::vector<RawRecord> out;
  if (!reader.next(header)) return out;
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);

  std::vector<std::string> row;
  while (reader.next(row)) {
    if (row.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                           std::to_string(row.size()),
                       reader.record_line());
    }
    RawRecord r;
    r.line = reader.record_line();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == "created_at") {
        if (row[i].empty()) continue;
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(row[i].data(), row[i].data() + row[i].size(), v);
        if (ec != std::errc{} || ptr != row[i].data() + row[i].size()) {
          throw ParseError("created_at must be an integer", r.line);
        }
        r.created_at = v;
      } else {
        r.strings.emplace(header[i], std::move(row[i]));
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RawRecord> read_records(const fs::path& path, FileFormat format) {
  return format == FileFormat::Csv ? read_csv(path) : read_jsonl(path);
}

Post to_post(const RawRecord& r) {
  Post p;
  p.id = required(r, "id");
  if (p.id.empty()) throw ParseError("empty id", r.line);
  try {
    p.source = Source::parse(required(r, "source"));
    p.domain = Domain::parse(required(r, "domain"));
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), r.line);
  }
  p.text = required(r, "text");
  p.created_at = r.created_at;
  return p;
}

Label to_label(const RawRecord& r) {
  const auto& text = required(r, "label");
  auto label = parse_label(text);
  if (!label) throw ParseError("unknown label '" + text + "' (expected patient_voice or not_relevant)", r.line);
  return *label;
}

json post_json(const Post& p) {
  json j;
  j["id"] = p.id;
  j["source"] = p.source.to_string();
  j["domain"] = p.domain.to_string();
  j["text"] = p.text;
  if (p.created_at) j["created_at"] = *p.created_at;
  return j;
}

// Shared first-occurrence filter over anything exposing a Post.
template <typename T, typename GetPost>
std::vector<T> dedup_impl(std::span<const T> items, GetPost get) {
  std::unordered_set<std::string> ids;
  std::unordered_set<std::string> bodies;
  std::vector<T> kept;
  for (const auto& item : items) {
    const Post& p = get(item);
    auto body = unicode::nfc(p.text);
    if (ids.contains(p.id) || bodies.contains(body)) continue;
    ids.insert(p.id);
    bodies.insert(std::move(body));
    kept.push_back(item);
  }
  return kept;
}

DatasetKey key_from_stem(const std::string& stem) {
  auto sep = stem.find("__");
  if (sep == std::string::npos) throw ConfigError("bundle file stem must look like source__domain: " + stem);
  return {Source::parse(stem.substr(0, sep)), Domain::parse(stem.substr(sep + 2))};
}

std::vector<LabeledPost> load_optional(const fs::path& path) {
  if (!fs::exists(path)) return {};
  return load_labeled_posts(path, FileFormat::JsonLines);
}

}  // namespace

FileFormat format_from_path(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".csv" ? FileFormat::Csv : FileFormat::JsonLines;
}

void IngestConfig::validate() const {
  if (input_paths.empty()) throw ConfigError("at least one input path is required");
  if (!train_fraction.strictly_between_zero_and_one()) {
    throw ConfigError("train fraction must lie strictly between 0 and 1, got " + train_fraction.to_string());
  }
}

std::vector<Post> load_posts(const fs::path& path, FileFormat format) {
  std::vector<Post> posts;
  for (const auto& r : read_records(path, format)) posts.push_back(to_post(r));
  return posts;
}

std::vector<LabeledPost> load_labeled_posts(const fs::path& path, FileFormat format) {
  std::vector<LabeledPost> posts;
  for (const auto& r : read_records(path, format)) posts.push_back({to_post(r), to_label(r)});
  return posts;
}

std::string to_jsonl(std::span<const LabeledPost> posts) {
  std::string out;
  for (const auto& p : posts) {
    auto j = post_json(p.post);
    j["label"] = std::string(to_string(p.label));
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string to_jsonl(std::span<const Post> posts) {
  std::string out;
  for (const auto& p : posts) {
    out += post_json(p).dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<Post> deduplicate(std::span<const Post> posts) {
  return dedup_impl(posts, [](const Post& p) -> const Post& { return p; });
}

std::vector<LabeledPost> deduplicate(std::span<const LabeledPost> posts) {
  return dedup_impl(posts, [](const LabeledPost& p) -> const Post& { return p.post; });
}

SplitResult stratified_split(std::span<const LabeledPost> posts, Fraction train_fraction, std::uint64_t seed) {
  if (posts.empty()) throw PreconditionError("cannot split an empty post list");
  if (!train_fraction.strictly_between_zero_and_one()) {
    throw ConfigError("train fraction must lie strictly between 0 and 1");
  }

  std::vector<std::size_t> order(posts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Xoshiro256 rng(seed);
  rng.shuffle(std::span<std::size_t>(order));

  std::array<std::int64_t, kNumLabels> class_size{};
  for (const auto& p : posts) ++class_size[index_of(p.label)];
  for (Label l : kLabels) {
    if (class_size[index_of(l)] == 0) {
      throw PreconditionError("cannot stratify: class " + std::string(to_string(l)) + " has no members");
    }
  }

  std::array<std::int64_t, kNumLabels> train_quota{};
  for (Label l : kLabels) train_quota[index_of(l)] = train_fraction.scaled_round_half_up(class_size[index_of(l)]);

  SplitResult result;
  std::array<std::int64_t, kNumLabels> taken{};
  for (auto i : order) {
    const auto& p = posts[i];
    auto c = index_of(p.label);
    if (taken[c] < train_quota[c]) {
      ++taken[c];
      result.train.push_back(p);
    } else {
      result.validation.push_back(p);
    }
  }
  return result;
}

SplitBundle combine_bundles(std::span<const SplitBundle> bundles, DatasetKey new_key) {
  SplitBundle combined;
  combined.key = std::move(new_key);
  std::unordered_map<std::string, std::string> owner;  // post id -> bundle key
  for (const auto& b : bundles) {
    const auto key = b.key.to_string();
    for (const auto* part : {&b.train, &b.validation, &b.test}) {
      for (const auto& p : *part) {
        auto [it, inserted] = owner.emplace(p.post.id, key);
        if (!inserted && it->second != key) {
          throw PreconditionError("post id " + p.post.id + " appears in both " + it->second + " and " + key);
        }
      }
    }
    combined.train.insert(combined.train.end(), b.train.begin(), b.train.end());
    combined.validation.insert(combined.validation.end(), b.validation.begin(), b.validation.end());
    combined.test.insert(combined.test.end(), b.test.begin(), b.test.end());
  }
  return combined;
}

std::vector<AnnotationRecord> load_annotations(const fs::path& path) {
  std::vector<AnnotationRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : read_records(path, format_from_path(path))) {
    AnnotationRecord a{required(r, "post_id"), required(r, "annotator_id"), to_label(r)};
    if (!seen.emplace(a.post_id, a.annotator_id).second) {
      throw ParseError("duplicate annotation of post " + a.post_id + " by " + a.annotator_id, r.line);
    }
    records.push_back(std::move(a));
  }
  return records;
}

template <typename P>
std::map<DatasetKey, std::vector<P>> group_by_key(std::span<const P> posts) {
  std::map<DatasetKey, std::vector<P>> groups;
  for (const auto& p : posts) {
    if constexpr (std::is_same_v<P, Post>) groups[p.key()].push_back(p);
    else groups[p.post.key()].push_back(p);
  }
  return groups;
}

template std::map<DatasetKey, std::vector<Post>> group_by_key(std::span<const Post>);
template std::map<DatasetKey, std::vector<LabeledPost>> group_by_key(std::span<const LabeledPost>);

std::vector<SplitBundle> load_bundles(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  constexpr std::string_view kTrainSuffix = ".train.jsonl";
  std::vector<SplitBundle> bundles;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || !name.ends_with(kTrainSuffix)) continue;
    const auto stem = name.substr(0, name.size() - kTrainSuffix.size());
    SplitBundle b;
    b.key = key_from_stem(stem);
    b.train = load_labeled_posts(entry.path(), FileFormat::JsonLines);
    b.validation = load_optional(dir / (stem + ".validation.jsonl"));
    b.test = load_optional(dir / (stem + ".test.jsonl"));
    bundles.push_back(std::move(b));
  }
  std::sort(bundles.begin(), bundles.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  return bundles;
}

void save_bundle(const fs::path& dir, const SplitBundle& bundle) {
  const auto stem = bundle.key.file_stem();
  write_file_atomic(dir / (stem + ".train.jsonl"), to_jsonl(std::span<const LabeledPost>(bundle.train)));
  write_file_atomic(dir / (stem + ".validation.jsonl"), to_jsonl(std::span<const LabeledPost>(bundle.validation)));
  write_file_atomic(dir / (stem + ".test.jsonl"), to_jsonl(std::span<const LabeledPost>(bundle.test)));
}

}  // namespace pvoice
