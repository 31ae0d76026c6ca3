#pragma once

#include <cstdint>
#include <vector>

namespace livkit::sampling {

// Corpus balancing by temperature: with numeric T >= 1 each corpus gets a
// share proportional to n_i^(1/T) of the budget, rounded by the
// largest-remainder method. The "concat" mode sidesteps resampling
// entirely: every corpus keeps its full size and the budget is ignored
// (useful when downsampling the rare pair would be harmful).
struct SamplingSpec {
  std::vector<std::size_t> sizes;  // n_i, all positive
  double temperature = 1.0;        // >= 1 when concat is false
  bool concat = false;
  std::size_t budget = 0;          // N, positive when concat is false

  void validate() const;
};

std::vector<double> temperature_probs(const std::vector<std::size_t>& sizes,
                                      double temperature);

std::vector<std::size_t> temperature_counts(const SamplingSpec& spec);

// Which lines fill a corpus's count: without replacement when count <= n
// (a uniform subset, emitted in corpus order), with replacement otherwise.
// Deterministic for a fixed seed; each corpus derives its own stream from
// (seed, corpus_index).
std::vector<std::size_t> sample_line_indices(std::size_t corpus_size,
                                             std::size_t count,
                                             std::uint64_t seed,
                                             std::size_t corpus_index);

}  // namespace livkit::sampling
