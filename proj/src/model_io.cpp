#include <bit>
#include <cstring>
#include <cstdio>

#include <zlib.h>

#include "pvoice/classifier.hpp"
#include "pvoice/errors.hpp"
#include "pvoice/file_util.hpp"

namespace pvoice {

static_assert(std::endian::native == std::endian::little, "model I/O assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'P', 'V', 'M', 'O', 'D', 'E', 'L', '\0'};
constexpr std::size_t kHeaderSize = sizeof kMagic + sizeof(std::uint32_t) + sizeof(std::uint64_t);

class Writer {
 public:
  template <typename T>
  void put(T v) {
    static_assert(std::is_trivially_copyable_v<T>);
    const auto* p = reinterpret_cast<const char*>(&v);
    bytes_.append(p, sizeof v);
  }
  void put_string(std::string_view s) {
    put<std::uint64_t>(s.size());
    bytes_.append(s);
  }
  void put_matrix(const Eigen::MatrixXd& m) {
    put<std::uint64_t>(static_cast<std::uint64_t>(m.rows()));
    put<std::uint64_t>(static_cast<std::uint64_t>(m.cols()));
    bytes_.append(reinterpret_cast<const char*>(m.data()), static_cast<std::size_t>(m.size()) * sizeof(double));
  }
  std::string take() { return std::move(bytes_); }

 private:
  std::string bytes_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    T v;
    std::memcpy(&v, take(sizeof v).data(), sizeof v);
    return v;
  }
  std::string get_string() { return std::string(take(checked_size(get<std::uint64_t>(), 1))); }
  Eigen::MatrixXd get_matrix() {
    const auto rows = get<std::uint64_t>();
    const auto cols = get<std::uint64_t>();
    if (cols != 0 && rows > (bytes_.size() - pos_) / cols) throw ModelFormatError("corrupt tensor shape");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const auto data = take(checked_size(rows * cols, sizeof(double)));
    std::memcpy(m.data(), data.data(), data.size());
    return m;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::size_t checked_size(std::uint64_t count, std::size_t unit) const {
    if (count > (bytes_.size() - pos_) / unit) throw ModelFormatError("corrupt model payload (length overflow)");
    return static_cast<std::size_t>(count) * unit;
  }
  std::string_view take(std::size_t n) {
    if (n > bytes_.size() - pos_) throw ModelFormatError("corrupt model payload (unexpected end)");
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string payload_of(const ClassifierModel& model) {
  Writer w;
  w.put_string(model.trained_on().to_string());

  const auto& c = model.config();
  w.put<std::uint64_t>(c.epochs);
  w.put<double>(c.learning_rate);
  w.put<std::uint64_t>(c.batch_size);
  w.put<std::uint64_t>(c.early_stop_patience);
  w.put<std::uint64_t>(c.seed);
  w.put<std::uint64_t>(c.encoder_depth);
  w.put<std::uint64_t>(c.embedding_width);
  w.put<std::uint64_t>(c.window_size);
  w.put<std::uint64_t>(c.min_frequency);
  w.put<std::uint8_t>(c.pooling == Pooling::Attention ? 0 : 1);

  w.put<std::uint8_t>(model.provenance().mode == EmbeddingsMode::Random ? 0 : 1);
  w.put_string(model.provenance().path.generic_string());

  const auto& v = model.vocabulary();
  w.put<std::uint64_t>(v.min_frequency());
  w.put<std::uint64_t>(v.corpus_terms().size());
  for (const auto& t : v.corpus_terms()) w.put_string(t);

  const auto& p = model.parameters();
  w.put_matrix(p.embeddings);
  w.put<std::uint64_t>(p.layers.size());
  for (const auto& l : p.layers) {
    w.put_matrix(l.weight);
    w.put_matrix(l.bias);
  }
  w.put_matrix(p.query);
  w.put_matrix(p.head_weight);
  w.put_matrix(p.head_bias);
  return w.take();
}

ClassifierModel model_from_payload(std::string_view payload) {
  Reader r(payload);
  DatasetKey key;
  try {
    key = DatasetKey::parse(r.get_string());
  } catch (const ConfigError& e) {
    throw ModelFormatError(std::string("corrupt dataset key: ") + e.what());
  }

  TrainingConfig c;
  c.epochs = r.get<std::uint64_t>();
  c.learning_rate = r.get<double>();
  c.batch_size = r.get<std::uint64_t>();
  c.early_stop_patience = r.get<std::uint64_t>();
  c.seed = r.get<std::uint64_t>();
  c.encoder_depth = r.get<std::uint64_t>();
  c.embedding_width = r.get<std::uint64_t>();
  c.window_size = r.get<std::uint64_t>();
  c.min_frequency = r.get<std::uint64_t>();
  c.pooling = r.get<std::uint8_t>() == 0 ? Pooling::Attention : Pooling::Mean;

  EmbeddingsSpec provenance;
  provenance.mode = r.get<std::uint8_t>() == 0 ? EmbeddingsMode::Random : EmbeddingsMode::Pretrained;
  provenance.path = r.get_string();

  const auto min_frequency = r.get<std::uint64_t>();
  const auto n_terms = r.get<std::uint64_t>();
  std::vector<std::string> terms;
  for (std::uint64_t i = 0; i < n_terms; ++i) terms.push_back(r.get_string());
  auto vocab = Vocabulary::from_terms(std::move(terms), min_frequency);

  Parameters p;
  p.window = c.window_size;
  p.pooling = c.pooling;
  p.embeddings = r.get_matrix();
  const auto depth = r.get<std::uint64_t>();
  if (depth != c.encoder_depth) throw ModelFormatError("layer count does not match configuration");
  for (std::uint64_t l = 0; l < depth; ++l) {
    ConvLayer layer;
    layer.weight = r.get_matrix();
    layer.bias = r.get_matrix();
    p.layers.push_back(std::move(layer));
  }
  p.query = r.get_matrix();
  p.head_weight = r.get_matrix();
  p.head_bias = r.get_matrix();
  if (!r.done()) throw ModelFormatError("trailing bytes in model payload");

  return ClassifierModel(std::move(vocab), std::move(p), c, std::move(provenance), std::move(key));
}

}  // namespace

std::string serialize_model(const ClassifierModel& model) {
  const auto payload = payload_of(model);
  std::string out(kMagic, sizeof kMagic);
  Writer header;
  header.put<std::uint32_t>(kModelFormatVersion);
  header.put<std::uint64_t>(payload.size());
  out += header.take();
  out += payload;
  Writer trailer;
  trailer.put<std::uint32_t>(crc32_of(payload));
  out += trailer.take();
  return out;
}

ClassifierModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < sizeof kMagic || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw ModelFormatError("not a model file (bad magic)");
  }
  if (bytes.size() < kHeaderSize) throw ChecksumError("model file truncated in header; checksum cannot match");
  Reader header(bytes.substr(sizeof kMagic, kHeaderSize - sizeof kMagic));
  const auto version = header.get<std::uint32_t>();
  if (version != kModelFormatVersion) {
    throw VersionError("unsupported model format version " + std::to_string(version) + " (expected " +
                       std::to_string(kModelFormatVersion) + ")");
  }
  const auto payload_size = header.get<std::uint64_t>();
  const auto available = bytes.size() - kHeaderSize;
  if (available < sizeof(std::uint32_t) || payload_size != available - sizeof(std::uint32_t)) {
    throw ChecksumError("model file size does not match its header (truncated or padded); checksum mismatch");
  }
  const auto payload = bytes.substr(kHeaderSize, static_cast<std::size_t>(payload_size));
  std::uint32_t stored;
  std::memcpy(&stored, bytes.data() + kHeaderSize + payload_size, sizeof stored);
  if (stored != crc32_of(payload)) throw ChecksumError("model checksum mismatch");
  return model_from_payload(payload);
}

void save_model(const ClassifierModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

ClassifierModel load_model(const std::filesystem::path& path) { return deserialize_model(read_file(path)); }

std::string model_checksum(const ClassifierModel& model) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", crc32_of(payload_of(model)));
  return buf;
}

}  // namespace pvoice
