#pragma once

#include <Eigen/Dense>

#include <vector>

namespace swkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// One monomial coeff * prod_i z_i^exponents[i].
struct Term {
  std::vector<int> exponents;
  double coeff = 0.0;
};

/// Sparse multivariate polynomial with real coefficients. Terms are kept
/// merged and sorted, so two polynomials with the same value compare equal
/// term-by-term.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int num_vars);
  Polynomial(int num_vars, std::vector<Term> terms);

  static Polynomial constant(int num_vars, double c);
  static Polynomial variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  double operator()(const Vec& z) const;
  Vec gradient(const Vec& z) const;
  Mat hessian(const Vec& z) const;
  Polynomial derivative(int index) const;

  /// Re-express in a larger variable set: variable i becomes offset + i.
  Polynomial embed(int new_num_vars, int offset) const;

  /// Keep only the terms whose total degree in variables [first, first+count)
  /// equals `degree`.
  Polynomial select_partial_degree(int first, int count, int degree) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  void normalize();
  void fill_powers(const Vec& z, std::vector<std::vector<double>>& pw) const;

  int num_vars_ = 0;
  std::vector<Term> terms_;
  std::vector<int> max_exp_;
};

/// Dense matrix of polynomials sharing one variable set.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols, int num_vars);
  static PolyMatrix constant(const Mat& value, int num_vars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_vars() const { return num_vars_; }

  Polynomial& operator()(int r, int c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(int r, int c) const { return entries_[r * cols_ + c]; }

  Mat eval(const Vec& z) const;
  PolyMatrix derivative(int index) const;
  PolyMatrix transpose() const;
  PolyMatrix embed(int new_num_vars, int offset) const;
  bool is_constant() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  int num_vars_ = 0;
  std::vector<Polynomial> entries_;
};

/// v^T M v as a polynomial, with v a vector of polynomials.
Polynomial quadratic_form(const PolyMatrix& m, const std::vector<Polynomial>& v);

}  // namespace swkit
