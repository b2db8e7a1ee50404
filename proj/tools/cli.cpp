#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "pvoice/agreement.hpp"
#include "pvoice/classifier.hpp"
#include "pvoice/csv.hpp"
#include "pvoice/errors.hpp"
#include "pvoice/experiments.hpp"
#include "pvoice/file_util.hpp"
#include "pvoice/ingestion.hpp"
#include "pvoice/report.hpp"
#include "pvoice/synthetic.hpp"
#include "pvoice/textprep.hpp"
#include "pvoice/tfidf_similarity.hpp"

namespace fs = std::filesystem;

namespace pvoice::cli {

namespace {

struct Args {
  std::vector<std::string> inputs;
  std::vector<std::string> tests;
  std::string out;
  std::string models;
  std::optional<std::uint64_t> seed;
  std::string train_fraction = "0.8";
  double threshold = kDefaultCombinationThreshold;
  std::size_t k = 20;
  std::vector<std::string> modes;
  std::string embeddings;
  std::string format = "csv";
  std::optional<std::string> headline;
  bool no_timestamp = false;
  bool labeled = false;
  std::string stopwords;
  bool no_stem = false;
  std::size_t min_token_length = 1;
  std::string granularity = "dataset";
  std::optional<std::size_t> epochs, batch_size, patience, depth, width, window, min_frequency;
  std::optional<double> learning_rate;
  std::optional<std::string> pooling;
  std::optional<std::size_t> jobs;
  std::string plan;
  std::vector<std::string> bundles;
  std::optional<std::string> grouping;
  std::string partition = "test";
  std::size_t posts = 60;
  std::size_t test_posts = 30;
  std::size_t annotators = 3;
  double agreement = 0.8;
  std::string config;
};

std::string timestamp_line(const Args& a) {
  if (a.no_timestamp) return {};
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string("# generated ") + buf + "\n";
}

void write_report(const Args& a, const fs::path& path, std::string_view body) {
  write_file_atomic(path, timestamp_line(a) + std::string(body));
}

fs::path need_out(const Args& a) {
  if (a.out.empty()) throw ConfigError("--out is required");
  return a.out;
}

std::uint64_t need_seed(const Args& a) {
  if (!a.seed) throw ConfigError("--seed is required");
  return *a.seed;
}

void need_inputs(const Args& a) {
  if (a.inputs.empty()) throw ConfigError("--input is required");
}

// ---- ingest ---------------------------------------------------------------

template <typename P>
const Post& post_of(const P& p) {
  if constexpr (std::is_same_v<P, Post>) return p;
  else return p.post;
}

template <typename P>
int ingest_posts(const Args& a, std::vector<P> all, std::ostream& out) {
  const auto dir = need_out(a);
  const auto read = all.size();
  const auto kept = deduplicate(std::span<const P>(all));
  const auto groups = group_by_key(std::span<const P>(kept));
  for (const auto& [key, posts] : groups) write_file_atomic(dir / (key.file_stem() + ".jsonl"), to_jsonl(std::span<const P>(posts)));

  std::set<Source> sources;
  std::set<Domain> domains;
  for (const auto& [key, _] : groups) {
    sources.insert(key.source);
    domains.insert(key.domain);
  }
  out << "read " << read << " posts, removed " << read - kept.size() << " duplicates, kept " << kept.size() << "\n";
  std::vector<std::string> header{"domain"};
  for (const auto& s : sources) header.push_back(s.to_string());
  header.push_back("total");
  out << csv::join_row(header) << "\n";
  std::map<Source, std::size_t> column_totals;
  for (const auto& d : domains) {
    std::vector<std::string> row{d.to_string()};
    std::size_t total = 0;
    for (const auto& s : sources) {
      const auto it = groups.find({s, d});
      const auto n = it == groups.end() ? 0 : it->second.size();
      row.push_back(std::to_string(n));
      column_totals[s] += n;
      total += n;
    }
    row.push_back(std::to_string(total));
    out << csv::join_row(row) << "\n";
  }
  std::vector<std::string> last{"total"};
  for (const auto& s : sources) last.push_back(std::to_string(column_totals[s]));
  last.push_back(std::to_string(kept.size()));
  out << csv::join_row(last) << "\n";
  return kOk;
}

int cmd_ingest(const Args& a, std::ostream& out) {
  need_inputs(a);
  if (a.labeled) {
    std::vector<LabeledPost> all;
    for (const auto& p : a.inputs) {
      auto part = load_labeled_posts(p, format_from_path(p));
      all.insert(all.end(), part.begin(), part.end());
    }
    return ingest_posts(a, std::move(all), out);
  }
  std::vector<Post> all;
  for (const auto& p : a.inputs) {
    auto part = load_posts(p, format_from_path(p));
    all.insert(all.end(), part.begin(), part.end());
  }
  return ingest_posts(a, std::move(all), out);
}

// ---- split ----------------------------------------------------------------

std::map<DatasetKey, std::vector<LabeledPost>> load_grouped(const std::vector<std::string>& paths) {
  std::vector<LabeledPost> all;
  for (const auto& p : paths) {
    auto part = load_labeled_posts(p, format_from_path(p));
    all.insert(all.end(), part.begin(), part.end());
  }
  return group_by_key(std::span<const LabeledPost>(all));
}

int cmd_split(const Args& a, std::ostream& out) {
  IngestConfig config;
  for (const auto& p : a.inputs) config.input_paths.emplace_back(p);
  config.seed = need_seed(a);
  config.train_fraction = Fraction::parse(a.train_fraction);
  config.validate();
  const auto dir = need_out(a);

  auto pools = load_grouped(a.inputs);
  auto tests = load_grouped(a.tests);
  for (const auto& [key, _] : tests)
    if (!pools.contains(key)) throw ConfigError("test posts for " + key.to_string() + " have no matching train pool");

  out << "dataset,train,validation,test\n";
  for (auto& [key, posts] : pools) {
    auto split = stratified_split(posts, config.train_fraction, config.seed);
    SplitBundle bundle{key, std::move(split.train), std::move(split.validation), std::move(tests[key])};
    if (const auto problems = validate_bundle(bundle); !problems.empty()) {
      throw PreconditionError("bundle " + key.to_string() + ": " + problems.front());
    }
    save_bundle(dir, bundle);
    out << key.to_string() << "," << bundle.train.size() << "," << bundle.validation.size() << ","
        << bundle.test.size() << "\n";
  }
  return kOk;
}

// ---- similarity -----------------------------------------------------------

int cmd_similarity(const Args& a, std::ostream& out) {
  need_inputs(a);
  const auto dir = need_out(a);
  PrepConfig prep;
  if (!a.stopwords.empty()) prep.stopword_path = a.stopwords;
  prep.stem = !a.no_stem;
  prep.min_token_length = a.min_token_length;
  prep.validate();
  IdfGranularity granularity;
  if (a.granularity == "dataset") granularity = IdfGranularity::Dataset;
  else if (a.granularity == "post") granularity = IdfGranularity::Post;
  else throw ConfigError("--granularity must be dataset or post");
  if (a.k == 0) throw ConfigError("--k must be positive");

  const Preprocessor pre(prep);
  std::map<DatasetKey, std::vector<TermSequence>> docs;
  for (const auto& p : a.inputs)
    for (const auto& post : load_posts(p, format_from_path(p))) docs[post.key()].push_back(pre(post.text));

  const auto vectors = dataset_vectors(docs, granularity);
  const auto matrix = pairwise_matrix(vectors);
  const auto plan = combination_plan(matrix, a.threshold);

  std::ostringstream m, pairs, top, merges;
  write_matrix_csv(m, matrix);
  write_pairs_csv(pairs, matrix);
  write_top_terms_csv(top, vectors, a.k);
  write_plan_csv(merges, plan, matrix);
  write_report(a, dir / "similarity_matrix.csv", m.str());
  write_report(a, dir / "similarity_pairs.csv", pairs.str());
  write_report(a, dir / "top_terms.csv", top.str());
  write_report(a, dir / "combination_plan.csv", merges.str());
  out << m.str();
  return kOk;
}

// ---- iaa ------------------------------------------------------------------

int cmd_iaa(const Args& a, std::ostream& out) {
  if (a.inputs.size() != 1) throw ConfigError("--input must name exactly one annotation file");
  const auto dir = need_out(a);
  const auto records = load_annotations(a.inputs.front());
  auto pairs = score_all_pairs(records);
  if (pairs.empty()) throw PreconditionError("no pair of annotators shares a post");
  const auto report = aggregate(std::move(pairs));
  std::ostringstream csv_out;
  write_agreement_csv(csv_out, report);
  write_report(a, dir / "agreement.csv", csv_out.str());
  out << csv_out.str();
  return kOk;
}

// ---- experiments ----------------------------------------------------------

struct Setup {
  std::vector<SplitBundle> bundles;
  std::vector<Grouping> groupings;
  std::vector<std::string> modes;  // empty: decided by the caller
  std::vector<EmbeddingsSpec> specs;
  TrainingConfig training;
  HeadlineMetric headline = HeadlineMetric::PatientVoice;
  std::size_t jobs = 1;
};

Setup make_setup(const Args& a, bool training) {
  ExperimentPlan plan;
  const bool from_plan = !a.plan.empty();
  bool modes_given = from_plan;
  if (from_plan) {
    plan = load_plan(a.plan);
  } else {
    if (a.inputs.size() != 1) throw ConfigError("--input must name one bundle directory (or use --plan)");
    plan.data_dir = a.inputs.front();
  }
  if (!a.bundles.empty()) {
    plan.bundles.clear();
    for (const auto& b : a.bundles) plan.bundles.push_back(DatasetKey::parse(b));
  }
  if (a.grouping) {
    if (*a.grouping == "standard") plan.standard_grouping = true;
    else if (*a.grouping == "none") plan.standard_grouping = false;
    else throw ConfigError("--grouping must be standard or none");
  }
  if (!a.modes.empty()) {
    plan.modes = a.modes;
    modes_given = true;
  }
  if (!a.embeddings.empty()) plan.embeddings = a.embeddings;
  if (a.headline) plan.headline = parse_headline(*a.headline);
  if (a.jobs) plan.jobs = *a.jobs;

  auto& t = plan.training;
  if (a.seed) t.seed = *a.seed;
  else if (training && !from_plan) throw ConfigError("--seed is required");
  if (a.epochs) t.epochs = *a.epochs;
  if (a.learning_rate) t.learning_rate = *a.learning_rate;
  if (a.batch_size) t.batch_size = *a.batch_size;
  if (a.patience) t.early_stop_patience = *a.patience;
  if (a.depth) t.encoder_depth = *a.depth;
  if (a.width) t.embedding_width = *a.width;
  if (a.window) t.window_size = *a.window;
  if (a.min_frequency) t.min_frequency = *a.min_frequency;
  if (a.pooling && !apply_training_setting(t, "pooling", *a.pooling)) throw ConfigError("bad pooling");
  t.validate();

  Setup s;
  s.bundles = plan.select(load_bundles(plan.data_dir));
  if (s.bundles.empty()) throw PreconditionError("no bundles found in " + plan.data_dir.string());
  s.groupings = plan.resolve_groupings(s.bundles);
  if (modes_given || training) {
    s.modes = plan.modes;
    s.specs = plan.embeddings_specs();
  }
  s.training = t;
  s.headline = plan.headline;
  s.jobs = plan.jobs;
  return s;
}

std::vector<std::string> registry_modes(const ModelRegistry& registry) {
  std::set<std::string> modes;
  for (const auto& [id, _] : registry.models()) modes.insert(id.mode);
  return {modes.begin(), modes.end()};
}

int cmd_train(const Args& a, std::ostream& out) {
  const auto dir = need_out(a);
  const auto s = make_setup(a, true);
  ExperimentOptions options{s.training, s.specs, s.jobs};
  auto registry = train_models(s.bundles, options);
  registry.merge(train_models(combined_bundles(s.bundles, s.groupings), options));
  registry.save_directory(dir);
  out << "classifier,mode,file,checksum\n";
  for (const auto& [id, model] : registry.models()) {
    out << id.classifier.to_string() << "," << id.mode << "," << model_file_name(id) << ","
        << model_checksum(*model) << "\n";
  }
  return kOk;
}

std::vector<SplitBundle> with_partition(std::vector<SplitBundle> bundles, const std::string& partition) {
  if (partition == "test") return bundles;
  if (partition != "train" && partition != "validation") throw ConfigError("--on must be train, validation or test");
  for (auto& b : bundles) b.test = partition == "train" ? b.train : b.validation;
  return bundles;
}

ModelRegistry load_registry(const Args& a) {
  if (a.models.empty()) throw ConfigError("--models is required");
  return ModelRegistry::load_directory(a.models);
}

int cmd_eval(const Args& a, std::ostream& out) {
  const auto dir = need_out(a);
  const auto format = parse_report_format(a.format);
  const auto s = make_setup(a, false);
  const auto registry = load_registry(a);
  const auto modes = s.modes.empty() ? registry_modes(registry) : s.modes;

  const auto specific = with_partition(s.bundles, a.partition);
  const auto results1 = evaluate_models(specific, registry, modes, s.jobs);
  const auto table1 = make_table(results1, s.headline, MarkScope::PerTest);
  const auto doc1 = render_report(table1, format, "Dataset-specific classifiers");
  write_report(a, dir / ("experiment1" + std::string(extension(format))), doc1);
  out << doc1;

  if (!s.groupings.empty()) {
    const auto combined = with_partition(combined_bundles(s.bundles, s.groupings), a.partition);
    const auto results2 = evaluate_models(combined, registry, modes, s.jobs);
    const auto table2 = make_table(results2, s.headline, MarkScope::PerTest);
    const auto doc2 = render_report(table2, format, "Combined-dataset classifiers");
    write_report(a, dir / ("experiment2" + std::string(extension(format))), doc2);
    out << doc2;
  }
  return kOk;
}

int cmd_compare(const Args& a, std::ostream& out) {
  const auto dir = need_out(a);
  const auto format = parse_report_format(a.format);
  const auto s = make_setup(a, false);
  const auto registry = load_registry(a);
  const auto modes = s.modes.empty() ? registry_modes(registry) : s.modes;
  const auto results = experiment_cross(s.bundles, s.groupings, registry, modes, s.jobs);
  const auto table = make_table(results, s.headline, MarkScope::PerTestPerMode);
  const auto doc = render_report(table, format, "Classifiers evaluated on dataset-specific test sets");
  write_report(a, dir / ("experiment3" + std::string(extension(format))), doc);
  out << doc;
  return kOk;
}

// ---- synth ----------------------------------------------------------------

int cmd_synth(const Args& a, std::ostream& out) {
  const auto dir = need_out(a);
  SyntheticSpec spec;
  spec.seed = a.seed.value_or(1);
  spec.posts_per_dataset = a.posts;
  spec.test_per_dataset = a.test_posts;
  const auto fraction = Fraction::parse(a.train_fraction);
  if (!fraction.strictly_between_zero_and_one()) throw ConfigError("--train-fraction must lie strictly in (0, 1)");
  const auto width = a.width.value_or(TrainingConfig{}.embedding_width);

  const auto corpus = generate_synthetic(spec);
  std::vector<LabeledPost> everything;
  for (const auto& d : corpus.datasets) {
    write_file_atomic(dir / "posts" / (d.key.file_stem() + ".jsonl"), to_jsonl(std::span<const LabeledPost>(d.pool)));
    write_file_atomic(dir / "test" / (d.key.file_stem() + ".jsonl"), to_jsonl(std::span<const LabeledPost>(d.test)));
    everything.insert(everything.end(), d.pool.begin(), d.pool.end());
  }
  for (const auto& b : synthetic_bundles(corpus, fraction, spec.seed)) save_bundle(dir / "bundles", b);
  write_file_atomic(dir / "embeddings.txt", synthetic_embeddings(corpus, width, spec.seed));

  std::string annotations = "post_id,annotator_id,label\n";
  for (const auto& r : synthetic_annotations(everything, a.annotators, a.agreement, spec.seed)) {
    annotations += csv::join_row({r.post_id, r.annotator_id, std::string(to_string(r.label))}) + "\n";
  }
  write_file_atomic(dir / "annotations.csv", annotations);

  write_file_atomic(dir / "plan.txt", "data = bundles\ngrouping = standard\nmodes = random, pretrained\n"
                                      "embeddings = embeddings.txt\nwidth = " + std::to_string(width) +
                                      "\nseed = " + std::to_string(spec.seed) + "\n");
  out << "wrote " << corpus.datasets.size() << " datasets (" << spec.posts_per_dataset << " pool + "
      << spec.test_per_dataset << " test posts each) to " << dir.string() << "\n";
  return kOk;
}

// ---- wiring ---------------------------------------------------------------

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--out", a.out, "Output directory");
  sub->add_flag("--no-timestamp", a.no_timestamp, "Omit the timestamp line from report files");
}

void add_training(CLI::App* sub, Args& a) {
  sub->add_option("--seed", a.seed, "Random seed");
  sub->add_option("--epochs", a.epochs, "Maximum training epochs");
  sub->add_option("--learning-rate", a.learning_rate, "SGD learning rate");
  sub->add_option("--batch-size", a.batch_size, "Mini-batch size");
  sub->add_option("--patience", a.patience, "Early-stopping patience in epochs");
  sub->add_option("--depth", a.depth, "Number of encoder layers");
  sub->add_option("--width", a.width, "Embedding width");
  sub->add_option("--window", a.window, "Encoder window radius");
  sub->add_option("--min-frequency", a.min_frequency, "Minimum train frequency for a vocabulary term");
  sub->add_option("--pooling", a.pooling, "attention or mean");
}

void add_experiment(CLI::App* sub, Args& a) {
  sub->add_option("--input", a.inputs, "Bundle directory");
  sub->add_option("--plan", a.plan, "Experiment plan file");
  sub->add_option("--bundle", a.bundles, "Restrict to these dataset keys (source/domain)");
  sub->add_option("--grouping", a.grouping, "standard or none");
  sub->add_option("--mode", a.modes, "Embeddings modes: random, pretrained");
  sub->add_option("--embeddings", a.embeddings, "Pretrained embeddings file");
  sub->add_option("--jobs", a.jobs, "Parallel jobs (0 = all cores)");
}

void add_report(CLI::App* sub, Args& a) {
  sub->add_option("--models", a.models, "Model directory");
  sub->add_option("--format", a.format, "csv or markdown");
  sub->add_option("--headline", a.headline, "patient_voice, macro or weighted");
}

std::vector<std::string> option_names(const CLI::App* sub) {
  std::vector<std::string> names;
  for (const auto* opt : sub->get_options())
    for (const auto& n : opt->get_lnames()) names.push_back(n);
  return names;
}

// Fills options the command line left unset from "key = value" lines.
void apply_config(const CLI::App& app, CLI::App* sub, const std::string& path) {
  std::set<std::string> known;
  for (const auto* s : app.get_subcommands([](const CLI::App*) { return true; }))
    for (auto& n : option_names(s)) known.insert(n);

  for (const auto& kv : parse_key_values(read_file(path))) {
    auto name = kv.key;
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "config") continue;
    auto* opt = sub->get_option_no_throw("--" + name);
    if (opt == nullptr) {
      if (known.contains(name)) continue;
      throw ConfigError(path + " line " + std::to_string(kv.line) + ": unknown key '" + kv.key + "'");
    }
    if (opt->count() > 0) continue;
    if (opt->get_items_expected_max() > 1) {
      std::stringstream items(kv.value);
      for (std::string item; std::getline(items, item, ',');) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) opt->add_result(item);
      }
    } else {
      opt->add_result(kv.value);
    }
    try {
      opt->run_callback();
    } catch (const CLI::Error& e) {
      throw ConfigError(path + " line " + std::to_string(kv.line) + ": " + e.what());
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Dataset similarity, annotator agreement and patient-voice classification toolkit", "pvoice"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", a.config, "key = value file; command-line flags take precedence");

  auto* ingest = app.add_subcommand("ingest", "Deduplicate posts and write one file per dataset");
  ingest->add_option("--input", a.inputs, "Post files (.jsonl or .csv)");
  ingest->add_flag("--labeled", a.labeled, "Require and keep a label on every post");
  add_common(ingest, a);

  auto* split = app.add_subcommand("split", "Stratified train/validation split into bundles");
  split->add_option("--input", a.inputs, "Labeled post files");
  split->add_option("--test", a.tests, "Labeled test post files");
  split->add_option("--seed", a.seed, "Random seed");
  split->add_option("--train-fraction", a.train_fraction, "Train share, e.g. 0.8 or 4/5");
  add_common(split, a);

  auto* similarity = app.add_subcommand("similarity", "TF-IDF similarity matrix, top terms and combination plan");
  similarity->add_option("--input", a.inputs, "Post files");
  similarity->add_option("--threshold", a.threshold, "Combination threshold");
  similarity->add_option("--k", a.k, "Top terms per dataset");
  similarity->add_option("--stopwords", a.stopwords, "Stop word file (default: built-in English list)");
  similarity->add_flag("--no-stem", a.no_stem, "Skip Porter stemming");
  similarity->add_option("--min-token-length", a.min_token_length, "Minimum token length in characters");
  similarity->add_option("--granularity", a.granularity, "dataset or post (IDF document unit)");
  add_common(similarity, a);

  auto* iaa = app.add_subcommand("iaa", "Pairwise inter-annotator agreement");
  iaa->add_option("--input", a.inputs, "Annotation file");
  add_common(iaa, a);

  auto* train_cmd = app.add_subcommand("train", "Train specific and combined classifiers");
  add_experiment(train_cmd, a);
  add_training(train_cmd, a);
  add_common(train_cmd, a);

  auto* eval = app.add_subcommand("eval", "Evaluate classifiers on their own test sets");
  add_experiment(eval, a);
  add_report(eval, a);
  eval->add_option("--on", a.partition, "Partition to score: test, validation or train");
  add_common(eval, a);

  auto* compare = app.add_subcommand("compare", "Evaluate every applicable classifier on each specific test set");
  add_experiment(compare, a);
  add_report(compare, a);
  add_common(compare, a);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic multi-dataset corpus");
  synth->add_option("--seed", a.seed, "Random seed");
  synth->add_option("--posts", a.posts, "Train and validation posts per dataset");
  synth->add_option("--test-posts", a.test_posts, "Test posts per dataset");
  synth->add_option("--train-fraction", a.train_fraction, "Train share of the pool");
  synth->add_option("--width", a.width, "Embedding width");
  synth->add_option("--annotators", a.annotators, "Annotators in the annotation file");
  synth->add_option("--agreement", a.agreement, "Chance an annotator copies the gold label");
  add_common(synth, a);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);

    CLI::App* chosen = app.get_subcommands().front();
    if (!a.config.empty()) apply_config(app, chosen, a.config);

    const auto& name = chosen->get_name();
    if (name == "ingest") return cmd_ingest(a, out);
    if (name == "split") return cmd_split(a, out);
    if (name == "similarity") return cmd_similarity(a, out);
    if (name == "iaa") return cmd_iaa(a, out);
    if (name == "train") return cmd_train(a, out);
    if (name == "eval") return cmd_eval(a, out);
    if (name == "compare") return cmd_compare(a, out);
    return cmd_synth(a, out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInputError;
  } catch (const IoError& e) {
    err << "pvoice: " << e.what() << "\n";
    return kIoFailure;
  } catch (const PreconditionError& e) {
    err << "pvoice: " << e.what() << "\n";
    return kPrecondition;
  } catch (const NumericError& e) {
    err << "pvoice: " << e.what() << "\n";
    return kNumericFailure;
  } catch (const Error& e) {
    err << "pvoice: " << e.what() << "\n";
    return kInputError;
  } catch (const fs::filesystem_error& e) {
    err << "pvoice: " << e.what() << "\n";
    return kIoFailure;
  } catch (const std::exception& e) {
    err << "pvoice: " << e.what() << "\n";
    return kIoFailure;
  }
}

}  // namespace pvoice::cli
