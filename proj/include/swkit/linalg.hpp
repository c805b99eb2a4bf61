#pragma once

#include "swkit/polynomial.hpp"

#include <random>

namespace swkit {

/// Orthonormal basis of the null space of m. Singular values at or below
/// rel_tol * sigma_max count as zero.
Mat null_space(const Mat& m, double rel_tol);

/// Orthonormal basis of the column span of m, same threshold rule.
Mat orth(const Mat& m, double rel_tol);

int numerical_rank(const Mat& m, double rel_tol);

/// Orthonormal basis of span(a) intersected with the orthogonal complement of
/// span(b). Both inputs must have orthonormal columns; tol is absolute.
Mat orth_complement_within(const Mat& a, const Mat& b, double tol);

/// Deterministic uniform sampling on top of mt19937_64. The standard
/// distributions are implementation-defined, so they are avoided wherever
/// output has to be reproducible byte-for-byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Vec uniform_vec(int n, double lo, double hi);
  Mat uniform_mat(int r, int c, double lo, double hi);
  Mat random_orthogonal(int n);
  Mat random_spd(int n, double min_eig);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swkit
