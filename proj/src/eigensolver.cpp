#include "csb/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "csb/errors.hpp"

namespace csb {
namespace {

// Symmetric tridiagonal QL (Bowdler, Martin, Reinsch, Wilkinson; EISPACK tql2).
// d holds the diagonal, e the off-diagonal shifted so that e[i] couples i and i+1,
// with e[n-1] = 0. z accumulates the rotations; its columns become eigenvectors.
void tql2(std::vector<double> &d, std::vector<double> &e, Eigen::MatrixXd &z) {
  const int n = static_cast<int>(d.size());
  const double eps = std::numeric_limits<double>::epsilon();
  double f = 0.0;
  double tst1 = 0.0;

  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1)
      ++m;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations)
          throw NumericError("QL iteration did not converge for eigenvalue " + std::to_string(l), l);

        // Wilkinson-style implicit shift.
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0)
          r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i)
          d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);

          // Columns are contiguous in column-major storage.
          double *zi = z.col(i).data();
          double *zi1 = z.col(i + 1).data();
          for (int k = 0; k < n; ++k) {
            const double t = zi1[k];
            zi1[k] = s * zi[k] + c * t;
            zi[k] = c * zi[k] - s * t;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

// Modified Gram-Schmidt (two passes) within clusters of nearly equal eigenvalues.
void reorthogonalize_clusters(const Eigen::VectorXd &values, Eigen::MatrixXd &vectors) {
  const Eigen::Index n = values.size();
  if (n < 2)
    return;
  const double range = values(n - 1) - values(0);
  const double tol = 1e-12 * std::max(range, std::numeric_limits<double>::min());

  Eigen::Index begin = 0;
  while (begin < n) {
    Eigen::Index end = begin + 1;
    while (end < n && values(end) - values(end - 1) < tol)
      ++end;
    for (int pass = 0; pass < 2 && end - begin > 1; ++pass) {
      for (Eigen::Index j = begin; j < end; ++j) {
        for (Eigen::Index i = begin; i < j; ++i)
          vectors.col(j) -= vectors.col(i).dot(vectors.col(j)) * vectors.col(i);
        vectors.col(j).normalize();
      }
    }
    begin = end;
  }
}

void fix_signs(Eigen::MatrixXd &vectors) {
  for (Eigen::Index m = 0; m < vectors.cols(); ++m) {
    auto col = vectors.col(m);
    const double threshold = 1e-10 * col.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < col.size(); ++k) {
      if (std::abs(col(k)) > threshold) {
        if (col(k) < 0)
          col = -col;
        break;
      }
    }
  }
}

} // namespace

EigenDecomposition decompose(const TridiagonalHamiltonian &h) {
  const int n = h.dim();
  if (n < 1)
    throw DomainError("tridiagonal matrix must have at least one row");
  if (static_cast<int>(h.offdiag.size()) != n - 1)
    throw DomainError("off-diagonal length must be one less than the diagonal length");
  for (double x : h.diag)
    if (!std::isfinite(x))
      throw DomainError("non-finite diagonal entry");
  for (double x : h.offdiag)
    if (!std::isfinite(x))
      throw DomainError("non-finite off-diagonal entry");

  std::vector<double> d = h.diag;
  std::vector<double> e(n, 0.0);
  std::copy(h.offdiag.begin(), h.offdiag.end(), e.begin());
  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(n, n);

  tql2(d, e, z);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return d[a] < d[b]; });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int m = 0; m < n; ++m) {
    out.eigenvalues(m) = d[order[m]];
    out.eigenvectors.col(m) = z.col(order[m]);
  }
  reorthogonalize_clusters(out.eigenvalues, out.eigenvectors);
  fix_signs(out.eigenvectors);
  return out;
}

} // namespace csb
