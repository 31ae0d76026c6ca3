#include "livkit/matrix.hpp"

#include <cmath>
#include <sstream>

#include "livkit/error.hpp"

namespace livkit::la {

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c)
    : rows_(r), cols_(c), data_(r * c, 0.0) {
  if (r == 0 || c == 0)
    throw ValidationError("matrix dimensions must be positive");
}

DenseMatrix::DenseMatrix(std::size_t r, std::size_t c,
                         std::vector<double> values)
    : rows_(r), cols_(c), data_(std::move(values)) {
  if (r == 0 || c == 0)
    throw ValidationError("matrix dimensions must be positive");
  if (data_.size() != r * c) {
    std::ostringstream os;
    os << "matrix data length " << data_.size() << " does not match " << r
       << "x" << c;
    throw ValidationError(os.str());
  }
  if (!all_finite())
    throw ValidationError("matrix entries must be finite");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool DenseMatrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    std::ostringstream os;
    os << "matmul dimension mismatch: " << a.rows() << "x" << a.cols()
       << " times " << b.rows() << "x" << b.cols();
    throw ValidationError(os.str());
  }
  DenseMatrix out(a.rows(), b.cols());
  // i-k-j order keeps the inner loop contiguous for both b and out.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

double frobenius_norm(const DenseMatrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kConvergence = 1e-12;

// One-sided Jacobi on the columns of a (m x n, m >= n assumed sensible but
// not required). Orthogonalizes column pairs with right rotations until
// every pair satisfies |a_p . a_q| <= kConvergence * sqrt(|a_p|^2 |a_q|^2).
SvdResult svd_tall(const DenseMatrix& input) {
  const std::size_t m = input.rows(), n = input.cols();
  DenseMatrix a = input;
  DenseMatrix v = DenseMatrix::identity(n);

  auto col_dot = [&](const DenseMatrix& mat, std::size_t p, std::size_t q) {
    double s = 0.0;
    for (std::size_t i = 0; i < mat.rows(); ++i) s += mat(i, p) * mat(i, q);
    return s;
  };

  double worst = 0.0;
  bool converged = false;
  int sweep = 0;
  for (; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    worst = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = col_dot(a, p, p);
        double aqq = col_dot(a, q, q);
        double apq = col_dot(a, p, q);
        double scale = std::sqrt(app * aqq);
        if (scale == 0.0 || std::fabs(apq) <= kConvergence * scale) {
          continue;
        }
        converged = false;
        worst = std::max(worst, std::fabs(apq) / scale);
        double tau = (aqq - app) / (2.0 * apq);
        double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          double x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * y;
          a(i, q) = s * x + c * y;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * y;
          v(i, q) = s * x + c * y;
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "svd failed to converge after " << sweep
       << " sweeps; worst off-diagonal residual " << worst;
    throw ValidationError(os.str());
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(col_dot(a, j, j));

  // Stable descending order by singular value.
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t j = i;
    while (j > 0 && sigma[order[j - 1]] < sigma[order[j]]) {
      std::swap(order[j - 1], order[j]);
      --j;
    }
  }

  DenseMatrix u(m, n);
  DenseMatrix vt(n, n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    std::size_t src = order[jj];
    double s = sigma[src];
    if (s > 0.0) {
      for (std::size_t i = 0; i < m; ++i) u(i, jj) = a(i, src) / s;
    } else {
      // Null column: complete to an orthonormal basis deterministically.
      for (std::size_t cand = 0; cand < m; ++cand) {
        for (std::size_t i = 0; i < m; ++i) u(i, jj) = (i == cand) ? 1.0 : 0.0;
        for (std::size_t j2 = 0; j2 < jj; ++j2) {
          double d = 0.0;
          for (std::size_t i = 0; i < m; ++i) d += u(i, jj) * u(i, j2);
          for (std::size_t i = 0; i < m; ++i) u(i, jj) -= d * u(i, j2);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < m; ++i) nrm += u(i, jj) * u(i, jj);
        nrm = std::sqrt(nrm);
        if (nrm > 0.5) {
          for (std::size_t i = 0; i < m; ++i) u(i, jj) /= nrm;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) vt(jj, i) = v(i, src);
  }
  std::vector<double> sorted(n);
  for (std::size_t jj = 0; jj < n; ++jj) sorted[jj] = sigma[order[jj]];

  return SvdResult{std::move(u), std::move(sorted), std::move(vt)};
}

// Sign convention: largest-magnitude entry of each U column non-negative,
// with the matching V row negated to keep the product intact. First index
// wins ties, so the output is deterministic.
void apply_sign_convention(SvdResult& r) {
  const std::size_t m = r.u.rows(), k = r.u.cols(), n = r.vt.cols();
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double mag = std::fabs(r.u(i, j));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (r.u(arg, j) < 0.0) {
      for (std::size_t i = 0; i < m; ++i) r.u(i, j) = -r.u(i, j);
      for (std::size_t i = 0; i < n; ++i) r.vt(j, i) = -r.vt(j, i);
    }
  }
}

}  // namespace

SvdResult svd(const DenseMatrix& a) {
  if (!a.all_finite())
    throw ValidationError("svd input must have finite entries");
  SvdResult result = [&] {
    if (a.rows() >= a.cols()) return svd_tall(a);
    SvdResult t = svd_tall(transpose(a));
    return SvdResult{transpose(t.vt), std::move(t.sigma), transpose(t.u)};
  }();
  apply_sign_convention(result);
  return result;
}

}  // namespace livkit::la
