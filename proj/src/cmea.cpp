#include "livkit/cmea.hpp"

#include <cmath>
#include <sstream>
#include <unordered_set>

#include "livkit/error.hpp"

namespace livkit::cmea {

namespace {

constexpr double kRankEps = 1e-12;

double residual(const la::DenseMatrix& w, const la::DenseMatrix& a_l,
                const la::DenseMatrix& a_m) {
  la::DenseMatrix mapped = la::matmul(w, a_l);
  double sum = 0.0;
  for (std::size_t i = 0; i < mapped.rows(); ++i)
    for (std::size_t j = 0; j < mapped.cols(); ++j) {
      double d = mapped(i, j) - a_m(i, j);
      sum += d * d;
    }
  return std::sqrt(sum);
}

double orthogonality_defect(const la::DenseMatrix& w) {
  la::DenseMatrix gram = la::matmul(la::transpose(w), w);
  double sum = 0.0;
  for (std::size_t i = 0; i < gram.rows(); ++i)
    for (std::size_t j = 0; j < gram.cols(); ++j) {
      double d = gram(i, j) - (i == j ? 1.0 : 0.0);
      sum += d * d;
    }
  return std::sqrt(sum);
}

}  // namespace

AnchorMatrices build_anchors(const embed::EmbeddingTable& table_l,
                             const embed::EmbeddingTable& table_m,
                             const std::vector<std::string>& exclude) {
  table_l.validate();
  table_m.validate();
  std::unordered_set<std::string> excluded(exclude.begin(), exclude.end());

  std::vector<std::string> anchors;
  std::vector<std::size_t> idx_l, idx_m;
  for (std::size_t i = 0; i < table_l.vocab.size(); ++i) {
    const std::string& tok = table_l.vocab.token(i);
    if (excluded.count(tok)) continue;
    auto j = table_m.vocab.index_of(tok);
    if (!j) continue;
    anchors.push_back(tok);
    idx_l.push_back(i);
    idx_m.push_back(*j);
  }
  if (anchors.empty())
    throw ValidationError(
        "no shared tokens between the two vocabularies (after exclusions); "
        "check that both files use the same token inventory");

  const std::size_t n = anchors.size();
  la::DenseMatrix a_l(table_l.dim, n);
  la::DenseMatrix a_m(table_m.dim, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < table_l.dim; ++d)
      a_l(d, c) = table_l.vectors(idx_l[c], d);
    for (std::size_t d = 0; d < table_m.dim; ++d)
      a_m(d, c) = table_m.vectors(idx_m[c], d);
  }
  return AnchorMatrices{std::move(a_l), std::move(a_m), std::move(anchors)};
}

la::DenseMatrix procrustes_solve(const la::DenseMatrix& a_l,
                                 const la::DenseMatrix& a_m,
                                 double* sigma_min_out) {
  if (a_l.cols() != a_m.cols()) {
    std::ostringstream os;
    os << "anchor matrices disagree on column count: " << a_l.cols() << " vs "
       << a_m.cols();
    throw ValidationError(os.str());
  }
  if (a_m.rows() < a_l.rows()) {
    std::ostringstream os;
    os << "target dimension " << a_m.rows() << " is smaller than source "
       << "dimension " << a_l.rows()
       << "; a semi-orthogonal map W with W^T W = I requires the target "
          "space to be at least as large";
    throw ValidationError(os.str());
  }
  la::DenseMatrix cross = la::matmul(a_m, la::transpose(a_l));
  la::SvdResult f = la::svd(cross);
  if (sigma_min_out) *sigma_min_out = f.sigma.empty() ? 0.0 : f.sigma.back();
  return la::matmul(f.u, f.vt);
}

MergeResult transform_and_merge(const embed::EmbeddingTable& table_l,
                                const embed::EmbeddingTable& table_m,
                                const la::DenseMatrix& w) {
  table_l.validate();
  table_m.validate();
  if (w.cols() != table_l.dim || w.rows() != table_m.dim) {
    std::ostringstream os;
    os << "transform is " << w.rows() << "x" << w.cols()
       << " but tables have dimensions " << table_m.dim << " (target) and "
       << table_l.dim << " (source)";
    throw ValidationError(os.str());
  }

  AlignmentReport report;
  la::DenseMatrix merged(table_l.vocab.size(), table_m.dim);
  for (std::size_t i = 0; i < table_l.vocab.size(); ++i) {
    const std::string& tok = table_l.vocab.token(i);
    if (auto j = table_m.vocab.index_of(tok)) {
      ++report.overlap_count;
      for (std::size_t d = 0; d < table_m.dim; ++d)
        merged(i, d) = table_m.vectors(*j, d);
    } else {
      ++report.l_only_count;
      for (std::size_t r = 0; r < w.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < w.cols(); ++c)
          acc += w(r, c) * table_l.vectors(i, c);
        merged(i, r) = acc;
      }
    }
  }

  report.orthogonality_defect = orthogonality_defect(w);
  if (report.overlap_count > 0) {
    AnchorMatrices anchors = build_anchors(table_l, table_m);
    report.residual_after = residual(w, anchors.a_l, anchors.a_m);
    if (table_l.dim == table_m.dim) {
      double sum = 0.0;
      for (std::size_t i = 0; i < anchors.a_l.rows(); ++i)
        for (std::size_t j = 0; j < anchors.a_l.cols(); ++j) {
          double d = anchors.a_l(i, j) - anchors.a_m(i, j);
          sum += d * d;
        }
      report.residual_before = std::sqrt(sum);
    }
  }

  embed::EmbeddingTable out{table_l.vocab, table_m.dim, std::move(merged)};
  out.validate();
  return MergeResult{std::move(out), report};
}

MergeResult align(const embed::EmbeddingTable& table_l,
                  const embed::EmbeddingTable& table_m,
                  const AlignOptions& options) {
  AnchorMatrices anchors = build_anchors(table_l, table_m, options.exclude);
  la::DenseMatrix a_l = std::move(anchors.a_l);
  la::DenseMatrix a_m = std::move(anchors.a_m);
  if (options.unit_normalize_anchors) {
    auto normalize_cols = [](la::DenseMatrix& m) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) norm += m(i, j) * m(i, j);
        norm = std::sqrt(norm);
        if (norm > 0.0)
          for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) /= norm;
      }
    };
    normalize_cols(a_l);
    normalize_cols(a_m);
  }

  double sigma_min = 0.0;
  la::DenseMatrix w = procrustes_solve(a_l, a_m, &sigma_min);
  MergeResult result = transform_and_merge(table_l, table_m, w);
  result.report.sigma_min = sigma_min;
  result.report.degenerate = sigma_min < kRankEps;
  return result;
}

}  // namespace livkit::cmea
