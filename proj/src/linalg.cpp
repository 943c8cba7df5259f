#include "posys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace posys {

RealMatrix to_real(const RatMatrix& m) {
  RealMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

RatMatrix to_rational(const RealMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = rat_from_double(m(i, j));
  return out;
}

}  // namespace posys

namespace posys::linalg {

namespace {

struct Pivot {
  std::size_t row, col;
};

// Reduced row echelon form over the rationals. Columns are visited in the
// given order; the pivot for a column is the first unused row with a nonzero
// entry. Deterministic, hence reproducible kernels and inverses.
std::vector<Pivot> rref(RatMatrix& m, const std::vector<std::size_t>& col_order) {
  std::vector<Pivot> pivots;
  std::vector<bool> row_used(m.rows(), false);
  for (std::size_t col : col_order) {
    std::optional<std::size_t> pivot_row;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (!row_used[i] && m(i, col) != 0) {
        pivot_row = i;
        break;
      }
    }
    if (!pivot_row) continue;
    std::size_t p = *pivot_row;
    row_used[p] = true;
    Rat inv = m(p, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(p, j) /= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == p || m(i, col) == 0) continue;
      Rat f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(p, j);
    }
    pivots.push_back({p, col});
  }
  return pivots;
}

std::vector<std::size_t> left_to_right(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = j;
  return order;
}

std::vector<std::size_t> right_to_left(std::size_t n) {
  std::vector<std::size_t> order(n);
  for (std::size_t j = 0; j < n; ++j) order[j] = n - 1 - j;
  return order;
}

// One-sided Jacobi: returns singular values and accumulates the right factor,
// so that near-null columns of V span the kernel.
void jacobi_svd(RealMatrix a, RealVec& sigma, RealMatrix& v) {
  const std::size_t n = a.cols();
  v = RealMatrix::identity(n);
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0, aqq = 0, apq = 0;
        for (std::size_t i = 0; i < a.rows(); ++i) {
          app += a(i, p) * a(i, p);
          aqq += a(i, q) * a(i, q);
          apq += a(i, p) * a(i, q);
        }
        if (std::abs(apq) <= eps * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        double tau = (aqq - app) / (2 * apq);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t), s = c * t;
        for (std::size_t i = 0; i < a.rows(); ++i) {
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
    if (!rotated) break;
  }
  sigma.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double sum = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) sum += a(i, j) * a(i, j);
    sigma[j] = std::sqrt(sum);
  }
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
  RatMatrix work = m;
  return rref(work, left_to_right(m.cols())).size();
}

std::size_t rank(const RealMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  RealVec sigma;
  RealMatrix v;
  jacobi_svd(m, sigma, v);
  double smax = *std::max_element(sigma.begin(), sigma.end());
  if (smax == 0) return 0;
  std::size_t r = 0;
  for (double s : sigma)
    if (s > m.tol * smax) ++r;
  return r;
}

std::vector<RatVec> kernel_basis(const RatMatrix& m) {
  RatMatrix work = m;
  // Pivots on the rightmost columns leave the leading columns free, which
  // matches the usual normalization of kernel generators in this domain.
  auto pivots = rref(work, right_to_left(m.cols()));
  std::vector<bool> is_pivot_col(m.cols(), false);
  for (const auto& p : pivots) is_pivot_col[p.col] = true;

  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot_col[f]) continue;
    RatVec v(m.cols(), Rat(0));
    v[f] = 1;
    for (const auto& p : pivots) v[p.col] = -work(p.row, f);
    normalize_primitive(v);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RealVec> kernel_basis(const RealMatrix& m) {
  if (m.cols() == 0) return {};
  if (m.rows() == 0) {
    std::vector<RealVec> basis(m.cols(), RealVec(m.cols(), 0.0));
    for (std::size_t j = 0; j < m.cols(); ++j) basis[j][j] = 1.0;
    return basis;
  }
  RealVec sigma;
  RealMatrix v;
  jacobi_svd(m, sigma, v);
  double smax = *std::max_element(sigma.begin(), sigma.end());
  std::vector<RealVec> basis;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (sigma[j] <= m.tol * smax) basis.push_back(v.col(j));
  return basis;
}

RatMatrix gale_dual(const RatMatrix& m) {
  auto basis = kernel_basis(m);
  if (basis.empty()) return RatMatrix(m.cols(), 0);
  return RatMatrix::from_cols(basis);
}

RealMatrix gale_dual(const RealMatrix& m) {
  auto basis = kernel_basis(m);
  if (basis.empty()) return RealMatrix(m.cols(), 0);
  return RealMatrix::from_cols(basis);
}

RatMatrix generalized_inverse(const RatMatrix& m) {
  RatMatrix work = m;
  auto pivots = rref(work, left_to_right(m.cols()));
  std::vector<std::size_t> rows, cols;
  for (const auto& p : pivots) {
    rows.push_back(p.row);
    cols.push_back(p.col);
  }
  RatMatrix sub(pivots.size(), pivots.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = m(rows[i], cols[j]);
  RatMatrix sub_inv = pivots.empty() ? RatMatrix(0, 0) : inverse(sub);
  RatMatrix star(m.cols(), m.rows());
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) star(cols[i], rows[j]) = sub_inv(i, j);
  return star;
}

RealMatrix generalized_inverse(const RealMatrix& m) {
  // Full-pivot elimination picks a well-conditioned invertible submatrix.
  RealMatrix work = m;
  double maxabs = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) maxabs = std::max(maxabs, std::abs(m(i, j)));
  std::vector<std::size_t> rows, cols;
  std::vector<bool> row_used(m.rows(), false), col_used(m.cols(), false);
  while (true) {
    double best = 0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (col_used[j]) continue;
        if (std::abs(work(i, j)) > best) {
          best = std::abs(work(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    if (best <= m.tol * maxabs || best == 0) break;
    row_used[bi] = true;
    col_used[bj] = true;
    rows.push_back(bi);
    cols.push_back(bj);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (row_used[i] || work(i, bj) == 0) continue;
      double f = work(i, bj) / work(bi, bj);
      for (std::size_t j = 0; j < m.cols(); ++j) work(i, j) -= f * work(bi, j);
    }
  }
  const std::size_t r = rows.size();
  RealMatrix star(m.cols(), m.rows());
  if (r == 0) return star;
  // Invert the selected submatrix by Gauss-Jordan with partial pivoting.
  RealMatrix aug(r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug(i, j) = m(rows[i], cols[j]);
    aug(i, r + i) = 1.0;
  }
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < r; ++i)
      if (std::abs(aug(i, k)) > std::abs(aug(p, k))) p = i;
    if (p != k)
      for (std::size_t j = 0; j < 2 * r; ++j) std::swap(aug(k, j), aug(p, j));
    double d = aug(k, k);
    for (std::size_t j = 0; j < 2 * r; ++j) aug(k, j) /= d;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == k || aug(i, k) == 0) continue;
      double f = aug(i, k);
      for (std::size_t j = 0; j < 2 * r; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) star(cols[i], rows[j]) = aug(i, r + j);
  return star;
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && aug(p, k) == 0) ++p;
    if (p == n) throw std::invalid_argument("inverse: singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug(k, j), aug(p, j));
    Rat d = aug(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) aug(k, j) /= d;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || aug(i, k) == 0) continue;
      Rat f = aug(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j) aug(i, j) -= f * aug(k, j);
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

RatMatrix row_space_basis(const RatMatrix& m) {
  RatMatrix work = m;
  auto pivots = rref(work, left_to_right(m.cols()));
  std::vector<std::size_t> rows;
  for (const auto& p : pivots) rows.push_back(p.row);
  std::sort(rows.begin(), rows.end());
  return work.select_rows(rows);
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
  if (a.empty() && b.empty()) return true;
  const std::size_t dim = a.empty() ? b.front().size() : a.front().size();
  auto stack = [&](const std::vector<RatVec>& rows) {
    RatMatrix m(rows.size(), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != dim) throw std::invalid_argument("same_span: dimension mismatch");
      for (std::size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
    }
    return m;
  };
  RatMatrix ma = stack(a), mb = stack(b);
  std::size_t ra = rank(ma), rb = rank(mb);
  if (ra != rb) return false;
  std::vector<RatVec> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return rank(stack(all)) == ra;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const RealVec& a, const RealVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace posys::linalg
