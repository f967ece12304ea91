#include "model_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "errors.hpp"

namespace elmlc {

namespace {

constexpr char kMagic[8] = {'E', 'L', 'M', 'L', 'C', 'M', 'D', 'L'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw DataError("cannot write '" + path + "'");
  }

  void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xff));
  }

  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

  void indices(const std::vector<std::size_t>& idx) {
    u64(idx.size());
    for (std::size_t i : idx) u64(i);
  }

  void matrix(const Matrix& m) {
    u64(m.rows());
    u64(m.cols());
    for (double v : m.values()) f64(v);
  }

  void finish(const std::string& path) {
    out_.flush();
    if (!out_) throw DataError("write to '" + path + "' failed");
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : in_(path, std::ios::binary), path_(path) {
    if (!in_) throw DataError("cannot open '" + path + "'");
  }

  std::uint8_t u8() {
    int c = in_.get();
    if (c == EOF) truncated();
    return static_cast<std::uint8_t>(c);
  }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }

  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::vector<std::size_t> indices() {
    const std::uint64_t count = u64();
    std::vector<std::size_t> idx(count);
    for (auto& i : idx) i = u64();
    return idx;
  }

  Matrix matrix() {
    const std::uint64_t rows = u64();
    const std::uint64_t cols = u64();
    if (rows == 0 || cols == 0 || rows > (1u << 30) || cols > (1u << 30)) {
      throw DataError("'" + path_ + "': implausible matrix shape in model file");
    }
    Matrix m(rows, cols);
    for (double& v : std::span(m.data(), m.size())) v = f64();
    return m;
  }

  [[noreturn]] void truncated() {
    throw DataError("'" + path_ + "' is truncated or not a model file");
  }

 private:
  std::ifstream in_;
  std::string path_;
};

}  // namespace

void save_model(const ElmModel& model, const std::string& path) {
  Writer w(path);
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u32(kVersion);
  w.u64(model.input_count);
  w.u64(model.hidden_count);
  w.u64(model.output_count);
  w.u64(model.seed);
  w.u8(static_cast<std::uint8_t>(model.activation));

  w.u8(model.partition ? 1 : 0);
  if (model.partition) {
    w.u64(model.partition->group_count());
    for (const auto& g : model.partition->input_groups) w.indices(g);
    for (const auto& g : model.partition->hidden_groups) w.indices(g);
  }

  w.u64(model.blocks.size());
  for (const WeightBlock& b : model.blocks) {
    w.indices(b.input_indices);
    w.indices(b.hidden_indices);
    w.matrix(b.weights);
  }

  w.u64(model.biases.size());
  for (double v : model.biases) w.f64(v);

  w.u8(model.beta ? 1 : 0);
  if (model.beta) w.matrix(*model.beta);

  w.finish(path);
}

ElmModel load_model(const std::string& path) {
  Reader r(path);
  char magic[8];
  for (char& c : magic) c = static_cast<char>(r.u8());
  if (std::memcmp(magic, kMagic, 8) != 0) {
    throw DataError("'" + path + "' is not a model file (bad magic)");
  }
  const std::uint32_t version = r.u32();
  if (version != kVersion) {
    throw DataError("'" + path + "': unsupported model file version " +
                    std::to_string(version));
  }

  ElmModel m;
  m.input_count = r.u64();
  m.hidden_count = r.u64();
  m.output_count = r.u64();
  m.seed = r.u64();
  m.activation = static_cast<Activation>(r.u8());

  if (r.u8()) {
    GroupPartition p;
    const std::uint64_t k = r.u64();
    p.input_groups.reserve(k);
    p.hidden_groups.reserve(k);
    for (std::uint64_t g = 0; g < k; ++g) p.input_groups.push_back(r.indices());
    for (std::uint64_t g = 0; g < k; ++g) p.hidden_groups.push_back(r.indices());
    m.partition = std::move(p);
  }

  const std::uint64_t n_blocks = r.u64();
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    WeightBlock block;
    block.input_indices = r.indices();
    block.hidden_indices = r.indices();
    block.weights = r.matrix();
    m.blocks.push_back(std::move(block));
  }

  const std::uint64_t n_biases = r.u64();
  m.biases.resize(n_biases);
  for (double& v : m.biases) v = r.f64();

  if (r.u8()) m.beta = r.matrix();

  // Structural consistency, so a corrupted file cannot produce a model
  // that indexes out of range later.
  auto corrupt = [&](const char* what) {
    throw DataError("'" + path + "': inconsistent model file (" + what + ")");
  };
  if (m.biases.size() != m.hidden_count) corrupt("bias count");
  for (const WeightBlock& b : m.blocks) {
    if (b.weights.rows() != b.input_indices.size() ||
        b.weights.cols() != b.hidden_indices.size()) {
      corrupt("block shape");
    }
    for (std::size_t idx : b.input_indices) {
      if (idx >= m.input_count) corrupt("input index");
    }
    for (std::size_t idx : b.hidden_indices) {
      if (idx >= m.hidden_count) corrupt("hidden index");
    }
  }
  if (m.beta && (m.beta->rows() != m.hidden_count || m.beta->cols() != m.output_count)) {
    corrupt("output weight shape");
  }
  return m;
}

bool models_identical(const ElmModel& a, const ElmModel& b) {
  if (a.input_count != b.input_count || a.hidden_count != b.hidden_count ||
      a.output_count != b.output_count || a.seed != b.seed ||
      a.activation != b.activation) {
    return false;
  }
  if (a.partition.has_value() != b.partition.has_value()) return false;
  if (a.partition && (a.partition->input_groups != b.partition->input_groups ||
                      a.partition->hidden_groups != b.partition->hidden_groups)) {
    return false;
  }
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    if (a.blocks[i].input_indices != b.blocks[i].input_indices ||
        a.blocks[i].hidden_indices != b.blocks[i].hidden_indices ||
        !bit_equal(a.blocks[i].weights, b.blocks[i].weights)) {
      return false;
    }
  }
  if (a.biases.size() != b.biases.size()) return false;
  if (std::memcmp(a.biases.data(), b.biases.data(),
                  a.biases.size() * sizeof(double)) != 0) {
    return false;
  }
  if (a.beta.has_value() != b.beta.has_value()) return false;
  if (a.beta && !bit_equal(*a.beta, *b.beta)) return false;
  return true;
}

}  // namespace elmlc
