#include "swkit/polynomial.hpp"

#include "swkit/errors.hpp"

#include <algorithm>
#include <numeric>

namespace swkit {

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars), max_exp_(num_vars, 0) {
  if (num_vars < 0) throw InvalidParams("polynomial: negative variable count");
}

Polynomial::Polynomial(int num_vars, std::vector<Term> terms)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  if (num_vars < 0) throw InvalidParams("polynomial: negative variable count");
  for (const auto& t : terms_) {
    if (static_cast<int>(t.exponents.size()) != num_vars_)
      throw DimensionMismatch("polynomial term has " +
                              std::to_string(t.exponents.size()) +
                              " exponents, expected " + std::to_string(num_vars_));
    for (int e : t.exponents)
      if (e < 0) throw InvalidParams("polynomial: negative exponent");
  }
  normalize();
}

Polynomial Polynomial::constant(int num_vars, double c) {
  return Polynomial(num_vars, {Term{std::vector<int>(num_vars, 0), c}});
}

Polynomial Polynomial::variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) throw IndexOutOfRange("polynomial variable index");
  std::vector<int> e(num_vars, 0);
  e[index] = 1;
  return Polynomial(num_vars, {Term{e, 1.0}});
}

void Polynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
  std::vector<Term> merged;
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents)
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) { return t.coeff == 0.0; }),
               merged.end());
  terms_ = std::move(merged);
  max_exp_.assign(num_vars_, 0);
  for (const auto& t : terms_)
    for (int i = 0; i < num_vars_; ++i) max_exp_[i] = std::max(max_exp_[i], t.exponents[i]);
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& t : terms_)
    d = std::max(d, std::accumulate(t.exponents.begin(), t.exponents.end(), 0));
  return d;
}

void Polynomial::fill_powers(const Vec& z, std::vector<std::vector<double>>& pw) const {
  if (z.size() != num_vars_)
    throw DimensionMismatch("polynomial evaluated at point of dimension " +
                            std::to_string(z.size()) + ", expected " +
                            std::to_string(num_vars_));
  pw.resize(num_vars_);
  for (int i = 0; i < num_vars_; ++i) {
    pw[i].assign(max_exp_[i] + 1, 1.0);
    for (int e = 1; e <= max_exp_[i]; ++e) pw[i][e] = pw[i][e - 1] * z[i];
  }
}

double Polynomial::operator()(const Vec& z) const {
  std::vector<std::vector<double>> pw;
  fill_powers(z, pw);
  double s = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (int i = 0; i < num_vars_; ++i)
      if (t.exponents[i]) v *= pw[i][t.exponents[i]];
    s += v;
  }
  return s;
}

Vec Polynomial::gradient(const Vec& z) const {
  std::vector<std::vector<double>> pw;
  fill_powers(z, pw);
  Vec g = Vec::Zero(num_vars_);
  for (const auto& t : terms_) {
    for (int k = 0; k < num_vars_; ++k) {
      const int ek = t.exponents[k];
      if (ek == 0) continue;
      double v = t.coeff * ek;
      for (int i = 0; i < num_vars_; ++i) {
        const int e = (i == k) ? ek - 1 : t.exponents[i];
        if (e) v *= pw[i][e];
      }
      g[k] += v;
    }
  }
  return g;
}

Mat Polynomial::hessian(const Vec& z) const {
  std::vector<std::vector<double>> pw;
  fill_powers(z, pw);
  Mat h = Mat::Zero(num_vars_, num_vars_);
  std::vector<int> e;
  for (const auto& t : terms_) {
    for (int k = 0; k < num_vars_; ++k) {
      if (t.exponents[k] == 0) continue;
      for (int l = k; l < num_vars_; ++l) {
        e = t.exponents;
        double v = t.coeff * e[k];
        e[k] -= 1;
        if (e[l] == 0) continue;
        v *= e[l];
        e[l] -= 1;
        for (int i = 0; i < num_vars_; ++i)
          if (e[i]) v *= pw[i][e[i]];
        h(k, l) += v;
      }
    }
  }
  for (int k = 0; k < num_vars_; ++k)
    for (int l = 0; l < k; ++l) h(k, l) = h(l, k);
  return h;
}

Polynomial Polynomial::derivative(int index) const {
  if (index < 0 || index >= num_vars_) throw IndexOutOfRange("polynomial derivative index");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[index] == 0) continue;
    Term d = t;
    d.coeff *= t.exponents[index];
    d.exponents[index] -= 1;
    out.push_back(std::move(d));
  }
  return Polynomial(num_vars_, std::move(out));
}

Polynomial Polynomial::embed(int new_num_vars, int offset) const {
  if (offset < 0 || offset + num_vars_ > new_num_vars)
    throw DimensionMismatch("polynomial embedding out of range");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term e{std::vector<int>(new_num_vars, 0), t.coeff};
    for (int i = 0; i < num_vars_; ++i) e.exponents[offset + i] = t.exponents[i];
    out.push_back(std::move(e));
  }
  return Polynomial(new_num_vars, std::move(out));
}

Polynomial Polynomial::select_partial_degree(int first, int count, int degree) const {
  if (first < 0 || first + count > num_vars_)
    throw IndexOutOfRange("partial degree variable range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int d = 0;
    for (int i = first; i < first + count; ++i) d += t.exponents[i];
    if (d == degree) out.push_back(t);
  }
  return Polynomial(num_vars_, std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.num_vars_ != num_vars_) throw DimensionMismatch("polynomial sum: variable count");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  return *this += other * -1.0;
}

Polynomial& Polynomial::operator*=(double s) {
  for (auto& t : terms_) t.coeff *= s;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) throw DimensionMismatch("polynomial product: variable count");
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      Term p{s.exponents, s.coeff * t.coeff};
      for (int i = 0; i < a.num_vars_; ++i) p.exponents[i] += t.exponents[i];
      out.push_back(std::move(p));
    }
  return Polynomial(a.num_vars_, std::move(out));
}

PolyMatrix::PolyMatrix(int rows, int cols, int num_vars)
    : rows_(rows), cols_(cols), num_vars_(num_vars),
      entries_(static_cast<size_t>(rows) * cols, Polynomial(num_vars)) {}

PolyMatrix PolyMatrix::constant(const Mat& value, int num_vars) {
  PolyMatrix m(value.rows(), value.cols(), num_vars);
  for (int r = 0; r < value.rows(); ++r)
    for (int c = 0; c < value.cols(); ++c)
      m(r, c) = Polynomial::constant(num_vars, value(r, c));
  return m;
}

Mat PolyMatrix::eval(const Vec& z) const {
  Mat out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c)(z);
  return out;
}

PolyMatrix PolyMatrix::derivative(int index) const {
  PolyMatrix out(rows_, cols_, num_vars_);
  for (size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = entries_[i].derivative(index);
  return out;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix out(cols_, rows_, num_vars_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

PolyMatrix PolyMatrix::embed(int new_num_vars, int offset) const {
  PolyMatrix out(rows_, cols_, new_num_vars);
  for (size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = entries_[i].embed(new_num_vars, offset);
  return out;
}

bool PolyMatrix::is_constant() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Polynomial& p) { return p.degree() == 0; });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_ || a.num_vars_ != b.num_vars_)
    throw DimensionMismatch("polynomial matrix product shape");
  PolyMatrix out(a.rows_, b.cols_, a.num_vars_);
  for (int r = 0; r < a.rows_; ++r)
    for (int c = 0; c < b.cols_; ++c) {
      Polynomial s(a.num_vars_);
      for (int k = 0; k < a.cols_; ++k) s += a(r, k) * b(k, c);
      out(r, c) = std::move(s);
    }
  return out;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.num_vars_ != b.num_vars_)
    throw DimensionMismatch("polynomial matrix sum shape");
  PolyMatrix out = a;
  for (size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
  return out;
}

Polynomial quadratic_form(const PolyMatrix& m, const std::vector<Polynomial>& v) {
  if (m.rows() != static_cast<int>(v.size()) || m.cols() != static_cast<int>(v.size()))
    throw DimensionMismatch("quadratic form shape");
  const int nv = v.empty() ? m.num_vars() : v.front().num_vars();
  Polynomial s(nv);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (m(i, j).is_zero() || v[i].is_zero() || v[j].is_zero()) continue;
      s += m(i, j) * v[i] * v[j];
    }
  return s;
}

}  // namespace swkit
