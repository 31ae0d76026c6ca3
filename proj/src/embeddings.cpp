#include "livkit/embeddings.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "livkit/error.hpp"
#include "livkit/io.hpp"

namespace livkit::embed {

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (tokens_[i].empty())
      throw ValidationError("vocabulary token " + std::to_string(i + 1) +
                            " is empty");
    auto [it, inserted] = index_.emplace(tokens_[i], i);
    if (!inserted)
      throw ValidationError("duplicate vocabulary token: " + tokens_[i]);
  }
}

std::optional<std::size_t> Vocabulary::index_of(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void EmbeddingTable::validate() const {
  if (vocab.size() == 0)
    throw ValidationError("embedding table must be non-empty");
  if (dim == 0) throw ValidationError("embedding dimension must be positive");
  if (vectors.rows() != vocab.size() || vectors.cols() != dim)
    throw ValidationError("embedding matrix shape does not match vocabulary");
  if (!vectors.all_finite())
    throw ValidationError("embedding table contains non-finite values");
}

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no,
                             const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line_no << ": " << what;
  throw DataError(os.str());
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  errno = 0;
  out = std::strtod(begin, &end);
  return end == begin + field.size() && field.size() > 0 && errno == 0;
}

}  // namespace

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open embedding file: " + path);

  std::string line;
  if (!io::get_line(in, line)) parse_fail(path, 1, "missing header line");

  std::size_t count = 0, dim = 0;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> count >> dim) || (hs >> extra))
      parse_fail(path, 1, "header must be '<count> <dim>'");
  }
  if (count == 0) parse_fail(path, 1, "embedding count must be positive");
  if (dim == 0) parse_fail(path, 1, "embedding dimension must be positive");

  std::vector<std::string> tokens;
  tokens.reserve(count);
  la::DenseMatrix vectors(count, dim);
  std::unordered_map<std::string, std::size_t> seen;
  seen.reserve(count);

  for (std::size_t r = 0; r < count; ++r) {
    std::size_t line_no = r + 2;
    if (!io::get_line(in, line))
      parse_fail(path, line_no, "expected " + std::to_string(count) +
                                    " embedding rows, file ended early");
    std::vector<std::string> fields = io::split_ws(line);
    if (fields.size() != dim + 1)
      parse_fail(path, line_no,
                 "expected token plus " + std::to_string(dim) +
                     " values, found " + std::to_string(fields.size()) +
                     " fields");
    const std::string& tok = fields[0];
    auto [it, inserted] = seen.emplace(tok, r);
    if (!inserted)
      parse_fail(path, line_no,
                 "duplicate token '" + tok + "' (first seen on line " +
                     std::to_string(it->second + 2) + ")");
    tokens.push_back(tok);
    for (std::size_t j = 0; j < dim; ++j) {
      double v;
      if (!parse_double(fields[j + 1], v))
        parse_fail(path, line_no, "non-numeric field '" + fields[j + 1] + "'");
      if (!std::isfinite(v))
        parse_fail(path, line_no, "non-finite value '" + fields[j + 1] + "'");
      vectors(r, j) = v;
    }
  }
  if (io::get_line(in, line) && !line.empty())
    parse_fail(path, count + 2, "trailing content after declared rows");

  EmbeddingTable table{Vocabulary(std::move(tokens)), dim, std::move(vectors)};
  table.validate();
  return table;
}

void save_embeddings(const EmbeddingTable& table, const std::string& path) {
  table.validate();
  for (const std::string& tok : table.vocab.tokens()) {
    for (char c : tok) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
        throw ValidationError(
            "token contains whitespace and cannot be serialized: '" + tok +
            "'");
    }
  }
  io::AtomicWriter out(path);
  char buf[64];
  out.stream() << table.vocab.size() << " " << table.dim << "\n";
  for (std::size_t i = 0; i < table.vocab.size(); ++i) {
    out.stream() << table.vocab.token(i);
    for (std::size_t j = 0; j < table.dim; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.vectors(i, j));
      out.stream() << ' ' << buf;
    }
    out.stream() << '\n';
  }
  out.commit();
}

VocabPartition vocab_partition(const Vocabulary& d_l, const Vocabulary& d_m) {
  VocabPartition p;
  for (const std::string& tok : d_l.tokens()) {
    if (d_m.contains(tok))
      p.overlap.push_back(tok);
    else
      p.l_only.push_back(tok);
  }
  return p;
}

}  // namespace livkit::embed
