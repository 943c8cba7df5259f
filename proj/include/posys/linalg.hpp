#pragma once

#include <vector>

#include "posys/matrix.hpp"

namespace posys::linalg {

std::size_t rank(const RatMatrix& m);
std::size_t rank(const RealMatrix& m);

/// Basis of ker M, each vector scaled to coprime integers (exact backend).
/// Reproducible: the same input yields bit-identical output.
std::vector<RatVec> kernel_basis(const RatMatrix& m);

/// Binary64 backend; singular values below m.tol * sigma_max count as zero.
std::vector<RealVec> kernel_basis(const RealMatrix& m);

/// Matrix G with ker M = im G and independent columns (dim ker M of them).
RatMatrix gale_dual(const RatMatrix& m);
RealMatrix gale_dual(const RealMatrix& m);

/// Any M* with M M* M = M; constructed by inverting a maximal invertible
/// submatrix and padding with zeros.
RatMatrix generalized_inverse(const RatMatrix& m);
RealMatrix generalized_inverse(const RealMatrix& m);

/// Square-matrix inverse; throws std::invalid_argument when singular.
RatMatrix inverse(const RatMatrix& m);

/// Nonzero rows of the reduced row echelon form: a full-row-rank matrix with
/// the same row space (and kernel) as m.
RatMatrix row_space_basis(const RatMatrix& m);

/// True when both sets of vectors span the same subspace (exact).
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b);

Rat dot(const RatVec& a, const RatVec& b);
double dot(const RealVec& a, const RealVec& b);

}  // namespace posys::linalg
