#include "swkit/linalg.hpp"

#include <cmath>

namespace swkit {

namespace {

double threshold(const Eigen::VectorXd& sv, double rel_tol) {
  const double smax = sv.size() ? sv.maxCoeff() : 0.0;
  return rel_tol * smax;
}

}  // namespace

Mat null_space(const Mat& m, double rel_tol) {
  const int n = static_cast<int>(m.cols());
  if (m.rows() == 0 || n == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double thr = threshold(sv, rel_tol);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

Mat orth(const Mat& m, double rel_tol) {
  if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  const double thr = threshold(sv, rel_tol);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr) ++rank;
  return svd.matrixU().leftCols(rank);
}

int numerical_rank(const Mat& m, double rel_tol) {
  return static_cast<int>(orth(m, rel_tol).cols());
}

Mat orth_complement_within(const Mat& a, const Mat& b, double tol) {
  if (b.cols() == 0) return orth(a, tol);
  const Mat projected = a - b * (b.transpose() * a);
  Eigen::JacobiSVD<Mat> svd(projected, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

Vec Rng::uniform_vec(int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

Mat Rng::uniform_mat(int r, int c, double lo, double hi) {
  Mat m(r, c);
  for (int j = 0; j < c; ++j)
    for (int i = 0; i < r; ++i) m(i, j) = uniform(lo, hi);
  return m;
}

Mat Rng::random_orthogonal(int n) {
  Mat g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = normal();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(n, n);
  const Mat r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

Mat Rng::random_spd(int n, double min_eig) {
  const Mat b = uniform_mat(n, n, -1.0, 1.0);
  return b * b.transpose() + min_eig * Mat::Identity(n, n);
}

}  // namespace swkit
