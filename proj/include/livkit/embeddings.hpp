#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "livkit/matrix.hpp"

namespace livkit::embed {

// Ordered, duplicate-free token inventory. Tokens are stored byte-exact:
// precomposed and decomposed spellings of the same glyph are different
// tokens on purpose.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& token(std::size_t i) const { return tokens_[i]; }
  std::optional<std::size_t> index_of(const std::string& token) const;
  bool contains(const std::string& token) const {
    return index_.count(token) != 0;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Row i of `vectors` is the embedding of vocab token i.
struct EmbeddingTable {
  Vocabulary vocab;
  std::size_t dim = 0;
  la::DenseMatrix vectors{1, 1};

  void validate() const;  // throws ValidationError on shape/finite breaches
};

// Text format: header "<count> <dim>", then one line per token with dim
// space-separated decimals. Values are written with 17 significant digits
// so a save/load round trip is exact in binary64. LF and CRLF both accepted.
EmbeddingTable load_embeddings(const std::string& path);
void save_embeddings(const EmbeddingTable& table, const std::string& path);

struct VocabPartition {
  std::vector<std::string> overlap;  // d_l intersect d_m, in d_l order
  std::vector<std::string> l_only;   // d_l minus d_m, in d_l order
};

VocabPartition vocab_partition(const Vocabulary& d_l, const Vocabulary& d_m);

}  // namespace livkit::embed
