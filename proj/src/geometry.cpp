#include "posys/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "posys/errors.hpp"
#include "posys/linalg.hpp"

namespace posys::geometry {

std::size_t ClassPartition::total() const {
  std::size_t t = 0;
  for (const auto& c : classes) t += c.size();
  return t;
}

std::vector<std::size_t> ClassPartition::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& c : classes) out.push_back(c.size());
  return out;
}

std::vector<std::size_t> ClassPartition::permutation() const {
  std::vector<std::size_t> out;
  for (const auto& c : classes) out.insert(out.end(), c.begin(), c.end());
  return out;
}

bool ClassPartition::covers(std::size_t m) const {
  std::vector<bool> seen(m, false);
  for (const auto& c : classes)
    for (std::size_t j : c) {
      if (j >= m || seen[j]) return false;
      seen[j] = true;
    }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ClassPartition ClassPartition::single(std::size_t m) {
  ClassPartition p;
  p.classes.emplace_back(m);
  std::iota(p.classes[0].begin(), p.classes[0].end(), std::size_t{0});
  return p;
}

ClassPartition ClassPartition::from_sizes(const std::vector<std::size_t>& sizes) {
  ClassPartition p;
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> cls(s);
    std::iota(cls.begin(), cls.end(), next);
    next += s;
    p.classes.push_back(std::move(cls));
  }
  return p;
}

namespace {

// Visits all size-k subsets of {0..m-1}.
template <class F>
void for_each_subset(std::size_t m, std::size_t k, F&& visit) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (k > m) return;
  while (true) {
    visit(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + m - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
  }
}

}  // namespace

std::vector<RatVec> circuits(const RatMatrix& a) {
  const std::size_t m = a.cols();
  if (m > 20) throw DimensionTooLarge("circuits: more than 20 columns");
  const std::size_t r = linalg::rank(a);
  std::vector<RatVec> out;
  for (std::size_t s = 1; s <= std::min(m, r + 1); ++s) {
    for_each_subset(m, s, [&](const std::vector<std::size_t>& subset) {
      RatMatrix sub = a.select_cols(subset);
      auto basis = linalg::kernel_basis(sub);
      if (basis.size() != 1) return;
      const RatVec& v = basis.front();
      for (const Rat& x : v)
        if (x == 0) return;  // support smaller than the subset: found earlier
      RatVec full(m, Rat(0));
      for (std::size_t i = 0; i < subset.size(); ++i) full[subset[i]] = v[i];
      normalize_primitive(full);
      out.push_back(std::move(full));
    });
  }
  return out;
}

ClassPartition finest_partition(const RatMatrix& a) {
  if (linalg::rank(a) != a.rows())
    throw std::invalid_argument("finest_partition: coefficient matrix is rank-deficient");
  const std::size_t m = a.cols();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const RatVec& c : circuits(a)) {
    std::size_t first = m;
    for (std::size_t j = 0; j < m; ++j) {
      if (c[j] == 0) continue;
      if (first == m)
        first = j;
      else
        parent[find(j)] = find(first);
    }
  }
  std::vector<std::vector<std::size_t>> groups(m);
  for (std::size_t j = 0; j < m; ++j) groups[find(j)].push_back(j);
  ClassPartition p;
  for (auto& g : groups)
    if (!g.empty()) p.classes.push_back(std::move(g));
  std::sort(p.classes.begin(), p.classes.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });

  // Product structure sanity: class kernel dimensions must add up.
  std::size_t total = 0;
  for (const auto& cls : p.classes) {
    RatMatrix sub = a.select_cols(cls);
    total += cls.size() - linalg::rank(sub);
  }
  if (total != m - a.rows())
    throw std::logic_error("finest_partition: partition failed the product rank test");
  return p;
}

std::vector<RatVec> extreme_rays_scone(const RatMatrix& a) {
  const std::size_t m = a.cols();
  if (m > 20) throw DimensionTooLarge("extreme_rays_scone: more than 20 columns");
  std::vector<RatVec> rays;
  for (RatVec& c : circuits(a)) {
    int lo = 0, hi = 0;
    for (const Rat& x : c) {
      if (x > 0) hi = 1;
      if (x < 0) lo = 1;
    }
    if (lo && hi) continue;  // mixed signs: not in the nonnegative orthant
    if (lo)
      for (Rat& x : c) x = -x;
    rays.push_back(std::move(c));
  }
  std::vector<bool> covered(m, false);
  for (const RatVec& r : rays)
    for (std::size_t j = 0; j < m; ++j)
      if (r[j] != 0) covered[j] = true;
  if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }))
    throw EmptyInterior("extreme_rays_scone: kernel has no strictly positive vector");
  std::sort(rays.begin(), rays.end());
  return rays;
}

std::vector<RatVec> polytope_vertices(const std::vector<RatVec>& rays, const RatVec& u) {
  for (const Rat& x : u)
    if (x <= 0) throw std::invalid_argument("polytope_vertices: u must be positive");
  std::vector<RatVec> vertices;
  for (const RatVec& r : rays) {
    Rat d = linalg::dot(u, r);
    if (d == 0) throw std::invalid_argument("polytope_vertices: ray is zero");
    RatVec v(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) v[j] = r[j] / d;
    vertices.push_back(std::move(v));
  }
  return vertices;
}

bool SignVector::is_zero() const {
  return std::all_of(s.begin(), s.end(), [](std::int8_t x) { return x == 0; });
}

SignVector SignVector::negated() const {
  SignVector out = *this;
  for (auto& x : out.s) x = static_cast<std::int8_t>(-x);
  return out;
}

bool SignVector::leq(const SignVector& rho) const {
  if (s.size() != rho.s.size()) return false;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] != 0 && s[j] != rho.s[j]) return false;
  return true;
}

SignVector sign_vector(const RatVec& v) {
  SignVector out;
  out.s.reserve(v.size());
  for (const Rat& x : v) out.s.push_back(static_cast<std::int8_t>(sign_of(x)));
  return out;
}

namespace {

// Clears denominators and divides by the content; the sign of every entry is
// preserved (inequality rows must not be flipped).
void scale_primitive_keep_sign(RatVec& v) {
  BigInt lcm_den = 1, gcd_num = 0;
  for (const Rat& x : v) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  RatVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = v[i] * lcm_den;
  for (const Rat& x : scaled) gcd_num = boost::multiprecision::gcd(gcd_num, numerator(x));
  if (gcd_num == 0) return;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scaled[i] / Rat(gcd_num);
}

// Fourier-Motzkin feasibility of a homogeneous system of strict inequalities
// rows[i] . u > 0. Rows must be nonzero on entry.
bool strict_system_feasible(std::vector<RatVec> rows, std::size_t nvars) {
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<RatVec> pos, neg, next;
    for (auto& r : rows) {
      if (r[v] > 0)
        pos.push_back(std::move(r));
      else if (r[v] < 0)
        neg.push_back(std::move(r));
      else
        next.push_back(std::move(r));
    }
    std::set<RatVec> dedup(next.begin(), next.end());
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        RatVec comb(nvars, Rat(0));
        bool zero = true;
        for (std::size_t j = 0; j < nvars; ++j) {
          comb[j] = p[j] * (-n[v]) + n[j] * p[v];
          if (comb[j] != 0) zero = false;
        }
        if (zero) return false;  // derived 0 > 0
        scale_primitive_keep_sign(comb);
        dedup.insert(std::move(comb));
      }
    }
    rows.assign(dedup.begin(), dedup.end());
  }
  return true;
}

}  // namespace

bool subspace_sign_feasible(const std::vector<RatVec>& basis, const std::vector<SignReq>& req) {
  const std::size_t k = basis.size();
  const std::size_t m = req.size();
  for (const auto& b : basis)
    if (b.size() != m) throw std::invalid_argument("subspace_sign_feasible: dimension mismatch");

  // Coordinate j of a subspace point x = sum_i t_i basis[i] is row_j . t.
  auto coord_row = [&](std::size_t j) {
    RatVec r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = basis[i][j];
    return r;
  };

  std::vector<RatVec> eq_rows;
  for (std::size_t j = 0; j < m; ++j)
    if (req[j] == SignReq::Zero) eq_rows.push_back(coord_row(j));

  // Eliminate equalities: restrict to their kernel.
  std::vector<RatVec> null_basis;
  if (eq_rows.empty()) {
    null_basis.resize(k, RatVec(k, Rat(0)));
    for (std::size_t i = 0; i < k; ++i) null_basis[i][i] = 1;
  } else {
    RatMatrix eq(eq_rows.size(), k);
    for (std::size_t i = 0; i < eq_rows.size(); ++i)
      for (std::size_t j = 0; j < k; ++j) eq(i, j) = eq_rows[i][j];
    null_basis = linalg::kernel_basis(eq);
  }
  const std::size_t k2 = null_basis.size();

  std::vector<RatVec> strict;
  for (std::size_t j = 0; j < m; ++j) {
    if (req[j] != SignReq::Pos && req[j] != SignReq::Neg) continue;
    RatVec row = coord_row(j);
    RatVec reduced(k2, Rat(0));
    bool zero = true;
    for (std::size_t i = 0; i < k2; ++i) {
      Rat s = 0;
      for (std::size_t l = 0; l < k; ++l) s += row[l] * null_basis[i][l];
      if (req[j] == SignReq::Neg) s = -s;
      reduced[i] = s;
      if (s != 0) zero = false;
    }
    if (zero) return false;  // forced 0 > 0
    scale_primitive_keep_sign(reduced);
    strict.push_back(std::move(reduced));
  }
  if (strict.empty()) return true;
  if (k2 == 0) return false;
  return strict_system_feasible(std::move(strict), k2);
}

namespace {

void enumerate_signs(const std::vector<RatVec>& basis, std::vector<SignReq>& partial,
                     std::size_t depth, std::set<SignVector>& out) {
  const std::size_t m = partial.size();
  if (depth == m) {
    SignVector sv;
    sv.s.reserve(m);
    for (SignReq r : partial) sv.s.push_back(static_cast<std::int8_t>(r));
    out.insert(std::move(sv));
    return;
  }
  for (SignReq choice : {SignReq::Zero, SignReq::Pos, SignReq::Neg}) {
    partial[depth] = choice;
    if (subspace_sign_feasible(basis, partial)) enumerate_signs(basis, partial, depth + 1, out);
  }
  partial[depth] = SignReq::Any;
}

}  // namespace

std::set<SignVector> sign_vectors(const std::vector<RatVec>& basis, std::size_t ambient_dim) {
  if (ambient_dim > 12) throw DimensionTooLarge("sign_vectors: ambient dimension above 12");
  for (const auto& b : basis)
    if (b.size() != ambient_dim)
      throw std::invalid_argument("sign_vectors: basis vector has wrong length");
  std::set<SignVector> out;
  std::vector<SignReq> partial(ambient_dim, SignReq::Any);
  enumerate_signs(basis, partial, 0, out);
  return out;
}

std::set<SignVector> lower_closure(const std::set<SignVector>& vs) {
  std::set<SignVector> out;
  for (const SignVector& rho : vs) {
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < rho.s.size(); ++j)
      if (rho.s[j] != 0) support.push_back(j);
    const std::size_t n = support.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      SignVector tau;
      tau.s.assign(rho.s.size(), 0);
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t{1} << i)) tau.s[support[i]] = rho.s[support[i]];
      out.insert(std::move(tau));
    }
  }
  return out;
}

SegmentNormalForm segment_normal_form(const RatMatrix& a) {
  const std::size_t m = a.cols();
  auto kb = linalg::kernel_basis(a);
  if (kb.size() != 2)
    throw std::invalid_argument("segment_normal_form: kernel dimension is not two");

  // Full-row-rank matrix with the same kernel as A.
  RatMatrix compl_rows = linalg::row_space_basis(a);

  if (finest_partition(compl_rows).count() > 1)
    throw Decomposable("segment_normal_form: kernel is a direct product");

  auto rays = extreme_rays_scone(compl_rows);  // throws EmptyInterior when needed
  if (rays.size() != 2)
    throw std::logic_error("segment_normal_form: expected exactly two extreme rays");

  RatVec center(m), diff(m), q(m);
  for (std::size_t j = 0; j < m; ++j) {
    center[j] = (rays[0][j] + rays[1][j]) / 2;
    diff[j] = (rays[0][j] - rays[1][j]) / 2;
    if (center[j] <= 0)
      throw EmptyInterior("segment_normal_form: central generator not positive");
    q[j] = diff[j] / center[j];
  }

  SegmentNormalForm nf;
  nf.perm.resize(m);
  std::iota(nf.perm.begin(), nf.perm.end(), std::size_t{0});
  std::stable_sort(nf.perm.begin(), nf.perm.end(),
                   [&](std::size_t x, std::size_t y) { return q[x] > q[y]; });
  nf.scale.resize(m);
  nf.q.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    nf.scale[j] = center[nf.perm[j]];
    nf.q[j] = q[nf.perm[j]];
  }
  if (nf.q.front() != 1 || nf.q.back() != -1)
    throw std::logic_error("segment_normal_form: q is not anchored at +1/-1");

  // Rank test: span{c o 1, c o q} must reproduce the kernel.
  RatVec v1(m), v2(m);
  for (std::size_t j = 0; j < m; ++j) {
    v1[nf.perm[j]] = nf.scale[j];
    v2[nf.perm[j]] = nf.scale[j] * nf.q[j];
  }
  if (!linalg::same_span({v1, v2}, kb))
    throw std::logic_error("segment_normal_form: recombined basis does not span the kernel");
  return nf;
}

namespace {

// u with u.1 = 1 and u.q = 0 in normalized class coordinates, mapped back to
// the original scale. Exists whenever q has entries of both signs.
RatVec segment_u(const std::vector<RatVec>& rays) {
  const std::size_t m = rays[0].size();
  RatVec center(m), q(m);
  for (std::size_t j = 0; j < m; ++j) {
    center[j] = (rays[0][j] + rays[1][j]) / 2;
    q[j] = (rays[0][j] - rays[1][j]) / (2 * center[j]);
  }
  Rat pos = 0, nonpos = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (q[j] > 0)
      pos += q[j];
    else
      nonpos += q[j];
  }
  RatVec u(m);
  Rat kappa = -nonpos / pos;  // weight on the q > 0 side balancing u.q = 0
  Rat total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    u[j] = (q[j] > 0) ? kappa : Rat(1);
    total += u[j];
  }
  for (std::size_t j = 0; j < m; ++j) u[j] = u[j] / total / center[j];
  return u;
}

}  // namespace

CoefficientGeometry coefficient_geometry(const RatMatrix& a, const ClassPartition& partition) {
  CoefficientGeometry geo;
  for (const auto& cls : partition.classes) {
    RatMatrix sub = a.select_cols(cls);
    ClassGeometry cg;
    cg.rays = extreme_rays_scone(sub);  // also guarantees a positive vector
    cg.dim_cone = cls.size() - linalg::rank(sub);
    if (cg.rays.size() == 2) {
      cg.u = segment_u(cg.rays);
    } else {
      cg.u.assign(cls.size(), Rat(1, static_cast<long>(cls.size())));
    }
    cg.vertices = polytope_vertices(cg.rays, cg.u);
    geo.dim_cone += cg.dim_cone;
    geo.classes.push_back(std::move(cg));
  }
  geo.dim_polytope = geo.dim_cone - partition.count();
  return geo;
}

}  // namespace posys::geometry
