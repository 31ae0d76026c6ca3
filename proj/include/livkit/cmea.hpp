#pragma once

#include <optional>
#include <string>
#include <vector>

#include "livkit/embeddings.hpp"
#include "livkit/matrix.hpp"

// Cross-model word embedding alignment: fit a semi-orthogonal map from one
// model's embedding space into another's on the shared vocabulary, then
// transplant the non-shared vectors through it. The merged table keeps the
// donor model's vocabulary; shared tokens take the recipient model's vectors
// verbatim.

namespace livkit::cmea {

struct AlignmentReport {
  std::size_t overlap_count = 0;
  std::size_t l_only_count = 0;
  // Residual before mapping is only defined when both models share a
  // dimension.
  std::optional<double> residual_before;
  double residual_after = 0.0;
  double orthogonality_defect = 0.0;  // |W^T W - I|_F
  double sigma_min = 0.0;             // smallest singular value of the solve
  bool degenerate = false;            // sigma_min below the rank threshold
};

struct AnchorMatrices {
  la::DenseMatrix a_l;  // D_l x n_overlap, anchor vectors as columns
  la::DenseMatrix a_m;  // D_m x n_overlap, same tokens, same column order
  std::vector<std::string> tokens;
};

// Column j of both matrices holds the same token's vector, ordered by the
// donor vocabulary. Throws when the overlap is empty.
AnchorMatrices build_anchors(const embed::EmbeddingTable& table_l,
                             const embed::EmbeddingTable& table_m,
                             const std::vector<std::string>& exclude = {});

// Semi-orthogonal Procrustes: W = U V^T from the SVD of A_m A_l^T, the
// minimizer of |W A_l - A_m|_F subject to W^T W = I. Requires the target
// dimension to be at least the source dimension. sigma_min_out, when given,
// receives the smallest singular value of A_m A_l^T so callers can surface
// rank deficiency without failing.
la::DenseMatrix procrustes_solve(const la::DenseMatrix& a_l,
                                 const la::DenseMatrix& a_m,
                                 double* sigma_min_out = nullptr);

struct MergeResult {
  embed::EmbeddingTable table;
  AlignmentReport report;
};

// Builds the merged table over the donor vocabulary: shared tokens copy the
// recipient vector, the rest are mapped through w.
MergeResult transform_and_merge(const embed::EmbeddingTable& table_l,
                                const embed::EmbeddingTable& table_m,
                                const la::DenseMatrix& w);

struct AlignOptions {
  std::vector<std::string> exclude;  // tokens kept out of the anchor set
  bool unit_normalize_anchors = false;
};

MergeResult align(const embed::EmbeddingTable& table_l,
                  const embed::EmbeddingTable& table_m,
                  const AlignOptions& options = {});

}  // namespace livkit::cmea
