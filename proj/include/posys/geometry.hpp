#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "posys/matrix.hpp"

namespace posys::geometry {

/// Partition of the column indices {0..m-1} into classes over which the
/// coefficient kernel factors as a direct product. Classes hold sorted
/// indices and are ordered by their smallest member.
struct ClassPartition {
  std::vector<std::vector<std::size_t>> classes;

  std::size_t count() const { return classes.size(); }
  std::size_t total() const;
  std::vector<std::size_t> sizes() const;
  /// Concatenation of the classes: the column permutation that makes the
  /// blocks contiguous.
  std::vector<std::size_t> permutation() const;
  bool covers(std::size_t m) const;

  static ClassPartition single(std::size_t m);
  static ClassPartition from_sizes(const std::vector<std::size_t>& sizes);
};

/// Support-minimal nonzero kernel vectors of A, scaled to coprime integers
/// with positive leading entry; one representative per +/- pair.
std::vector<RatVec> circuits(const RatMatrix& a);

/// Finest partition with ker A a direct product of coordinate projections:
/// connected components of the circuit supports. Requires full row rank.
ClassPartition finest_partition(const RatMatrix& a);

/// Extreme rays of the s-cone ker A ∩ R^m_>=: the nonnegative circuits,
/// integer-normalized. Throws EmptyInterior when no strictly positive kernel
/// vector exists, DimensionTooLarge for m > 20.
std::vector<RatVec> extreme_rays_scone(const RatMatrix& a);

/// Rays rescaled onto the cross-section {y : u . y = 1}.
std::vector<RatVec> polytope_vertices(const std::vector<RatVec>& rays, const RatVec& u);

struct SignVector {
  std::vector<std::int8_t> s;  // entries -1, 0, +1

  bool operator==(const SignVector&) const = default;
  bool operator<(const SignVector& o) const { return s < o.s; }
  bool is_zero() const;
  SignVector negated() const;
  /// Componentwise partial order generated by 0 < - and 0 < +.
  bool leq(const SignVector& rho) const;
};

SignVector sign_vector(const RatVec& v);

/// Per-coordinate requirement for the exact feasibility test below.
enum class SignReq : std::int8_t { Neg = -1, Zero = 0, Pos = 1, Any = 2 };

/// Is there x in span(basis) with sign(x_j) matching req[j] (Any = free)?
/// Exact: equalities are eliminated, strict inequalities decided by
/// Fourier-Motzkin over the rationals.
bool subspace_sign_feasible(const std::vector<RatVec>& basis, const std::vector<SignReq>& req);

/// All realizable sign vectors of span(basis) in R^ambient_dim.
/// Throws DimensionTooLarge for ambient_dim > 12.
std::set<SignVector> sign_vectors(const std::vector<RatVec>& basis, std::size_t ambient_dim);

std::set<SignVector> lower_closure(const std::set<SignVector>& vs);

/// ker A written as c ∘ im(1, q) with c > 0 and sorted q, q_1 = 1,
/// q_last = -1, after the recorded column reordering. Requires a kernel of
/// dimension two that is not a direct product and meets the open orthant.
struct SegmentNormalForm {
  RatVec scale;                  // c, in sorted column order
  RatVec q;                      // non-increasing, q front = 1, back = -1
  std::vector<std::size_t> perm; // sorted position -> original column
};

SegmentNormalForm segment_normal_form(const RatMatrix& a);

/// Coefficient-side geometry of one class: extreme rays, the normalization
/// vector u, and the polytope vertices on {u . y = 1}. Vectors live in the
/// class's own coordinates.
struct ClassGeometry {
  std::vector<RatVec> rays;
  std::vector<RatVec> vertices;
  RatVec u;
  std::size_t dim_cone = 0;
};

struct CoefficientGeometry {
  std::vector<ClassGeometry> classes;
  std::size_t dim_cone = 0;   // dim C = sum of class kernel dimensions
  std::size_t dim_polytope = 0;  // dim P = dim C - number of classes
};

/// Builds per-class rays, default normalization u, and vertices. The default
/// u makes the central generator of a two-ray class satisfy u . y = 1
/// (u.1 = 1, u.q = 0 in normalized coordinates); other classes use the
/// uniform u = 1/m_i.
CoefficientGeometry coefficient_geometry(const RatMatrix& a, const ClassPartition& partition);

}  // namespace posys::geometry
