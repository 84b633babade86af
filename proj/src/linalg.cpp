#include "chebz/linalg.hpp"

namespace chebz {

namespace {

Eigen::JacobiSVD<Matrix> full_svd(const Matrix& a) {
  return Eigen::JacobiSVD<Matrix>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

}  // namespace

Vector smallest_right_singular_vector(const Matrix& a) {
  const auto svd = full_svd(a);
  return svd.matrixV().col(a.cols() - 1);
}

Vector singular_values_full(const Matrix& a) {
  Vector s = Vector::Zero(a.cols());
  if (a.rows() == 0) return s;
  const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
  s.head(sv.size()) = sv;
  return s;
}

int numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  const Vector sv = Eigen::JacobiSVD<Matrix>(a).singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++r;
  }
  return r;
}

Matrix kernel_basis(const Matrix& a, double rel_tol) {
  const int r = numerical_rank(a, rel_tol);
  const auto svd = full_svd(a);
  const Eigen::Index k = a.cols() - r;
  return svd.matrixV().rightCols(k);
}

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace chebz
