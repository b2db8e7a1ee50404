#include "pvoice/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <set>
#include <thread>

#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"
#include "pvoice/ingestion.hpp"

namespace fs = std::filesystem;

namespace pvoice {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto end = s.find(',', start);
    if (end == std::string_view::npos) end = s.size();
    if (auto item = trim(s.substr(start, end - start)); !item.empty()) out.push_back(std::move(item));
    start = end + 1;
  }
  return out;
}

const SplitBundle& find_bundle(std::span<const SplitBundle> bundles, const DatasetKey& key) {
  for (const auto& b : bundles)
    if (b.key == key) return b;
  throw ConfigError("no bundle named " + key.to_string());
}

void require_trainable(const SplitBundle& b) {
  if (b.train.empty()) throw PreconditionError("bundle " + b.key.to_string() + " has an empty train partition");
  if (b.test.empty()) throw PreconditionError("bundle " + b.key.to_string() + " has an empty test partition");
}

std::vector<std::string> tags_of(const ExperimentOptions& options) {
  std::vector<std::string> tags;
  for (const auto& m : options.modes) tags.push_back(m.tag());
  return tags;
}

ExperimentRun run_grid(std::span<const SplitBundle> bundles, const ExperimentOptions& options) {
  for (const auto& b : bundles) require_trainable(b);
  ExperimentRun run;
  run.models = train_models(bundles, options);
  run.results = evaluate_models(bundles, run.models, tags_of(options), options.jobs);
  return run;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T v{};
  const auto* end = text.data() + text.size();
  const auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || p != end) throw ConfigError(std::string(key) + ": not a valid number '" + std::string(text) + "'");
  return v;
}

}  // namespace

bool Grouping::contains(const DatasetKey& k) const { return std::find(members.begin(), members.end(), k) != members.end(); }

std::vector<Grouping> standard_groupings(std::span<const SplitBundle> bundles) {
  std::map<Domain, std::vector<DatasetKey>> by_domain;
  std::map<Source, std::vector<DatasetKey>> by_source;
  std::vector<DatasetKey> all;
  for (const auto& b : bundles) {
    by_domain[b.key.domain].push_back(b.key);
    by_source[b.key.source].push_back(b.key);
    all.push_back(b.key);
  }
  std::vector<Grouping> out;
  for (auto& [domain, keys] : by_domain) out.push_back({{Source::combined(), domain}, keys});
  for (auto& [source, keys] : by_source) out.push_back({{source, Domain::combined()}, keys});
  if (!all.empty()) out.push_back({DatasetKey::all(), all});
  for (auto& g : out) std::sort(g.members.begin(), g.members.end());
  return out;
}

std::vector<Grouping> groupings_from_plan(const CombinationPlan& plan) {
  std::vector<Grouping> out;
  std::size_t n = 0;
  for (const auto& merge : plan.merges) {
    ++n;
    Grouping g;
    g.members.assign(merge.begin(), merge.end());
    const auto& first = g.members.front();
    const bool same_domain = std::all_of(g.members.begin(), g.members.end(),
                                         [&](const DatasetKey& k) { return k.domain == first.domain; });
    const bool same_source = std::all_of(g.members.begin(), g.members.end(),
                                         [&](const DatasetKey& k) { return k.source == first.source; });
    if (same_domain) g.key = {Source::combined(), first.domain};
    else if (same_source) g.key = {first.source, Domain::combined()};
    else g.key = {Source::other("merge" + std::to_string(n)), Domain::combined()};
    out.push_back(std::move(g));
  }
  return out;
}

std::string model_file_name(const ModelId& id) { return id.classifier.file_stem() + "." + id.mode + ".model"; }

void ModelRegistry::add(std::shared_ptr<const ClassifierModel> model) {
  ModelId id{model->trained_on(), model->provenance().tag()};
  models_[std::move(id)] = std::move(model);
}

const ClassifierModel* ModelRegistry::find(const ModelId& id) const {
  auto it = models_.find(id);
  return it == models_.end() ? nullptr : it->second.get();
}

void ModelRegistry::merge(const ModelRegistry& other) {
  for (const auto& [id, m] : other.models_) models_[id] = m;
}

ModelRegistry ModelRegistry::load_directory(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("model directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".model") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  ModelRegistry registry;
  for (const auto& f : files) {
    try {
      registry.add(std::make_shared<const ClassifierModel>(load_model(f)));
    } catch (const ModelFormatError& e) {
      throw ModelFormatError(f.string() + ": " + e.what());
    }
  }
  return registry;
}

void ModelRegistry::save_directory(const fs::path& dir) const {
  for (const auto& [id, m] : models_) save_model(*m, dir / model_file_name(id));
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, n);
  std::vector<std::exception_ptr> errors(n);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
            failed = true;
          }
        }
      });
    }
    for (auto& t : workers) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ModelRegistry train_models(std::span<const SplitBundle> bundles, const ExperimentOptions& options) {
  if (options.modes.empty()) throw ConfigError("at least one embeddings mode is required");
  for (const auto& b : bundles)
    if (b.train.empty()) throw PreconditionError("bundle " + b.key.to_string() + " has an empty train partition");
  const auto n_modes = options.modes.size();
  std::vector<std::shared_ptr<const ClassifierModel>> models(bundles.size() * n_modes);
  parallel_for(models.size(), options.jobs, [&](std::size_t job) {
    const auto& b = bundles[job / n_modes];
    const auto& mode = options.modes[job % n_modes];
    models[job] = std::make_shared<const ClassifierModel>(train(b.train, b.validation, options.training, mode, b.key));
  });
  ModelRegistry registry;
  for (auto& m : models) registry.add(std::move(m));
  return registry;
}

std::vector<EvalResult> evaluate_models(std::span<const SplitBundle> bundles, const ModelRegistry& registry,
                                        std::span<const std::string> modes, std::size_t jobs) {
  std::vector<std::pair<const SplitBundle*, const ClassifierModel*>> cells;
  for (const auto& b : bundles) {
    if (b.test.empty()) throw PreconditionError("bundle " + b.key.to_string() + " has an empty test partition");
    for (const auto& mode : modes) {
      const auto* model = registry.find({b.key, mode});
      if (model == nullptr) {
        throw ConfigError("missing model for cell (test " + b.key.to_string() + ", classifier " + b.key.to_string() +
                          ", mode " + mode + ")");
      }
      cells.emplace_back(&b, model);
    }
  }
  std::vector<EvalResult> results(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    results[i] = evaluate(*cells[i].second, cells[i].first->test, cells[i].first->key);
  });
  return results;
}

std::vector<SplitBundle> combined_bundles(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings) {
  std::vector<SplitBundle> combined;
  std::set<DatasetKey> seen;
  for (const auto& g : groupings) {
    if (g.members.empty()) throw ConfigError("grouping " + g.key.to_string() + " has no members");
    if (!seen.insert(g.key).second) throw ConfigError("grouping key " + g.key.to_string() + " used twice");
    std::vector<SplitBundle> parts;
    for (const auto& k : g.members) parts.push_back(find_bundle(bundles, k));
    combined.push_back(combine_bundles(parts, g.key));
  }
  return combined;
}

ExperimentRun experiment_specific(std::span<const SplitBundle> bundles, const ExperimentOptions& options) {
  return run_grid(bundles, options);
}

ExperimentRun experiment_combined(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings,
                                  const ExperimentOptions& options) {
  return run_grid(combined_bundles(bundles, groupings), options);
}

std::vector<EvalResult> experiment_cross(std::span<const SplitBundle> bundles, std::span<const Grouping> groupings,
                                         const ModelRegistry& registry, std::span<const std::string> modes,
                                         std::size_t jobs) {
  struct Cell {
    const SplitBundle* bundle;
    const ClassifierModel* model;
  };
  std::vector<Cell> cells;
  for (const auto& b : bundles) {
    if (b.test.empty()) throw PreconditionError("bundle " + b.key.to_string() + " has an empty test partition");
    std::vector<DatasetKey> classifiers{b.key};
    for (const auto& g : groupings)
      if (g.contains(b.key)) classifiers.push_back(g.key);
    for (const auto& mode : modes) {
      for (const auto& c : classifiers) {
        const auto* model = registry.find({c, mode});
        if (model == nullptr) {
          throw ConfigError("missing model for cell (test " + b.key.to_string() + ", classifier " + c.to_string() +
                            ", mode " + mode + ")");
        }
        cells.push_back({&b, model});
      }
    }
  }
  std::vector<EvalResult> results(cells.size());
  parallel_for(cells.size(), jobs, [&](std::size_t i) {
    results[i] = evaluate(*cells[i].model, cells[i].bundle->test, cells[i].bundle->key);
  });
  return results;
}

std::vector<KeyValue> parse_key_values(std::string_view text) {
  std::vector<KeyValue> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no);
    auto key = trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw ParseError("empty key", line_no);
    out.push_back({std::move(key), trim(std::string_view(line).substr(eq + 1)), line_no});
  }
  return out;
}

bool apply_training_setting(TrainingConfig& c, std::string_view key, std::string_view value) {
  if (key == "epochs") c.epochs = parse_number<std::size_t>(key, value);
  else if (key == "learning_rate") c.learning_rate = parse_number<double>(key, value);
  else if (key == "batch_size") c.batch_size = parse_number<std::size_t>(key, value);
  else if (key == "patience") c.early_stop_patience = parse_number<std::size_t>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "depth") c.encoder_depth = parse_number<std::size_t>(key, value);
  else if (key == "width") c.embedding_width = parse_number<std::size_t>(key, value);
  else if (key == "window") c.window_size = parse_number<std::size_t>(key, value);
  else if (key == "min_frequency") c.min_frequency = parse_number<std::size_t>(key, value);
  else if (key == "pooling") {
    if (value == "attention") c.pooling = Pooling::Attention;
    else if (value == "mean") c.pooling = Pooling::Mean;
    else throw ConfigError("pooling must be attention or mean, got '" + std::string(value) + "'");
  } else {
    return false;
  }
  return true;
}

std::vector<EmbeddingsSpec> ExperimentPlan::embeddings_specs() const {
  std::vector<EmbeddingsSpec> specs;
  for (const auto& m : modes) {
    if (m == "random") {
      specs.push_back(EmbeddingsSpec::random());
    } else if (m == "pretrained") {
      if (embeddings.empty()) throw ConfigError("mode 'pretrained' needs an embeddings file");
      specs.push_back(EmbeddingsSpec::pretrained(embeddings));
    } else {
      throw ConfigError("unknown embeddings mode '" + m + "'");
    }
  }
  return specs;
}

std::vector<SplitBundle> ExperimentPlan::select(std::vector<SplitBundle> available) const {
  if (bundles.empty()) return available;
  std::vector<SplitBundle> out;
  for (const auto& k : bundles) out.push_back(find_bundle(available, k));
  return out;
}

std::vector<Grouping> ExperimentPlan::resolve_groupings(std::span<const SplitBundle> selected) const {
  auto out = standard_grouping ? standard_groupings(selected) : std::vector<Grouping>{};
  for (const auto& g : groupings) {
    for (const auto& m : g.members) find_bundle(selected, m);
    out.push_back(g);
  }
  return out;
}

ExperimentPlan parse_plan(std::string_view text, const fs::path& base_dir) {
  ExperimentPlan plan;
  plan.data_dir = base_dir;
  const auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
  for (const auto& kv : parse_key_values(text)) {
    try {
      if (kv.key == "data") {
        plan.data_dir = resolve(kv.value);
      } else if (kv.key == "bundles") {
        plan.bundles.clear();
        for (const auto& k : split_list(kv.value)) plan.bundles.push_back(DatasetKey::parse(k));
      } else if (kv.key == "grouping") {
        if (kv.value == "standard") plan.standard_grouping = true;
        else if (kv.value == "none") plan.standard_grouping = false;
        else throw ConfigError("grouping must be standard or none");
      } else if (kv.key.starts_with("group.")) {
        Grouping g{DatasetKey::parse(kv.key.substr(6)), {}};
        for (const auto& k : split_list(kv.value)) g.members.push_back(DatasetKey::parse(k));
        if (g.members.empty()) throw ConfigError("grouping has no members");
        plan.groupings.push_back(std::move(g));
      } else if (kv.key == "modes") {
        plan.modes = split_list(kv.value);
        if (plan.modes.empty()) throw ConfigError("at least one mode is required");
      } else if (kv.key == "embeddings") {
        plan.embeddings = resolve(kv.value);
      } else if (kv.key == "headline") {
        plan.headline = parse_headline(kv.value);
      } else if (kv.key == "jobs") {
        plan.jobs = parse_number<std::size_t>(kv.key, kv.value);
      } else if (!apply_training_setting(plan.training, kv.key, kv.value)) {
        throw ConfigError("unknown key '" + kv.key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError("plan line " + std::to_string(kv.line) + ": " + e.what());
    }
  }
  plan.training.validate();
  plan.embeddings_specs();
  return plan;
}

ExperimentPlan load_plan(const fs::path& path) { return parse_plan(read_file(path), path.parent_path()); }

}  // namespace pvoice
