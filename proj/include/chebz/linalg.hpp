#pragma once

#include <Eigen/Dense>
#include <vector>

namespace chebz {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Right singular vector for the smallest singular value. For a wide matrix
// (rows < cols) this is a kernel direction.
Vector smallest_right_singular_vector(const Matrix& a);

// Singular values in decreasing order, padded with zeros up to cols.
Vector singular_values_full(const Matrix& a);

// Numerical rank with threshold rel_tol * largest singular value.
int numerical_rank(const Matrix& a, double rel_tol);

// Orthonormal basis of the numerical kernel (columns).
Matrix kernel_basis(const Matrix& a, double rel_tol);

Vector to_vector(const std::vector<double>& v);
std::vector<double> to_std(const Vector& v);

}  // namespace chebz
