#include "ybe/diffop.hpp"

#include <stdexcept>
#include <utility>

namespace ybe {

namespace {

// Merge terms sharing a lattice shift; drops nothing else.
std::vector<ShiftTerm> merged(std::vector<ShiftTerm> terms) {
  std::vector<ShiftTerm> out;
  for (auto& t : terms) {
    bool found = false;
    for (auto& o : out) {
      if (o.shift == t.shift) {
        Mero1 f = o.coeff, g = t.coeff;
        o.coeff = [f, g](cd z) { return f(z) + g(z); };
        found = true;
        break;
      }
    }
    if (!found) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

DifferenceOperator::DifferenceOperator(std::vector<ShiftTerm> terms, Var var)
    : terms_(merged(std::move(terms))), var_(var) {}

DifferenceOperator DifferenceOperator::identity() {
  return multiplication([](cd) { return cd(1.0); });
}

DifferenceOperator DifferenceOperator::multiplication(Mero1 f) {
  return DifferenceOperator({{LatticeShift{}, cd(0.0), std::move(f)}});
}

DifferenceOperator DifferenceOperator::shift(LatticeShift s, const ModularParams& mp) {
  return DifferenceOperator({{s, s.value(mp), [](cd) { return cd(1.0); }}});
}

DifferenceOperator DifferenceOperator::term(LatticeShift s, Mero1 coeff,
                                            const ModularParams& mp) {
  return DifferenceOperator({{s, s.value(mp), std::move(coeff)}});
}

DifferenceOperator DifferenceOperator::with_var(Var v) const {
  DifferenceOperator op = *this;
  op.var_ = v;
  return op;
}

cd DifferenceOperator::apply(const Mero1& f, cd z) const {
  double scale;
  return apply(f, z, &scale);
}

cd DifferenceOperator::apply(const Mero1& f, cd z, double* scale) const {
  cd sum = 0.0;
  double mag = 0.0;
  for (const auto& t : terms_) {
    const cd v = t.coeff(z) * f(z + t.shift_value);
    sum += v;
    mag += std::abs(v);
  }
  if (scale) *scale = mag;
  return sum;
}

cd DifferenceOperator::apply2(const Mero2& f, cd z1, cd z2) const {
  cd sum = 0.0;
  if (var_ == Var::z1) {
    for (const auto& t : terms_) sum += t.coeff(z1) * f(z1 + t.shift_value, z2);
  } else {
    for (const auto& t : terms_) sum += t.coeff(z2) * f(z1, z2 + t.shift_value);
  }
  return sum;
}

DifferenceOperator DifferenceOperator::scaled(cd factor) const {
  std::vector<ShiftTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Mero1 c = t.coeff;
    terms.push_back({t.shift, t.shift_value, [c, factor](cd z) { return factor * c(z); }});
  }
  DifferenceOperator op(std::move(terms), var_);
  return op;
}

DifferenceOperator operator+(const DifferenceOperator& x, const DifferenceOperator& y) {
  if (!x.terms_.empty() && !y.terms_.empty() && x.var_ != y.var_)
    throw DomainError("DifferenceOperator: adding operators on different variables");
  std::vector<ShiftTerm> terms = x.terms_;
  terms.insert(terms.end(), y.terms_.begin(), y.terms_.end());
  return DifferenceOperator(std::move(terms), x.terms_.empty() ? y.var_ : x.var_);
}

DifferenceOperator operator-(const DifferenceOperator& x, const DifferenceOperator& y) {
  return x + y.scaled(-1.0);
}

DifferenceOperator compose(const DifferenceOperator& a, const DifferenceOperator& b) {
  if (a.var() != b.var())
    throw DomainError("compose: operators act on different variables");
  std::vector<ShiftTerm> terms;
  terms.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      Mero1 ca = ta.coeff, cb = tb.coeff;
      const cd sa = ta.shift_value;
      terms.push_back({ta.shift + tb.shift, ta.shift_value + tb.shift_value,
                       [ca, cb, sa](cd z) { return ca(z) * cb(z + sa); }});
    }
  }
  return DifferenceOperator(std::move(terms), a.var());
}

DifferenceOperator gaussian_conjugate(const DifferenceOperator& op, cd c) {
  std::vector<ShiftTerm> terms;
  terms.reserve(op.terms().size());
  for (const auto& t : op.terms()) {
    Mero1 coeff = t.coeff;
    const cd s = t.shift_value;
    terms.push_back({t.shift, t.shift_value, [coeff, c, s](cd z) {
                       return coeff(z) * std::exp(-c * kPi * kI * (2.0 * z * s + s * s));
                     }});
  }
  return DifferenceOperator(std::move(terms), op.var());
}

OperatorMatrix::OperatorMatrix(int rows, int cols, Var var)
    : rows_(rows), cols_(cols), var_(var), entries_(rows * cols) {
  for (auto& e : entries_) e = DifferenceOperator({}, var);
}

OperatorMatrix OperatorMatrix::identity(int n) {
  OperatorMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = DifferenceOperator::identity();
  return m;
}

OperatorMatrix OperatorMatrix::with_var(Var v) const {
  OperatorMatrix m(rows_, cols_, v);
  for (int i = 0; i < rows_ * cols_; ++i) m.entries_[i] = entries_[i].with_var(v);
  return m;
}

std::vector<cd> OperatorMatrix::mat_apply(const std::vector<Mero1>& fvec, cd z) const {
  if (static_cast<int>(fvec.size()) != cols_)
    throw DomainError("mat_apply: shape mismatch");
  std::vector<cd> out(rows_, cd(0.0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j).apply(fvec[j], z);
  return out;
}

OperatorMatrix OperatorMatrix::scaled(cd factor) const {
  OperatorMatrix m(rows_, cols_, var_);
  for (int i = 0; i < rows_ * cols_; ++i) m.entries_[i] = entries_[i].scaled(factor);
  return m;
}

OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
    throw DomainError("OperatorMatrix: shape mismatch in addition");
  OperatorMatrix m(x.rows_, x.cols_, x.var_);
  for (int i = 0; i < x.rows_ * x.cols_; ++i) m.entries_[i] = x.entries_[i] + y.entries_[i];
  return m;
}

OperatorMatrix mat_mul(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("mat_mul: shape mismatch");
  if (a.var() != b.var()) throw DomainError("mat_mul: variable tags differ");
  OperatorMatrix m(a.rows(), b.cols(), a.var());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      DifferenceOperator acc({}, a.var());
      for (int k = 0; k < a.cols(); ++k) acc = acc + compose(a.at(i, k), b.at(k, j));
      m.at(i, j) = acc;
    }
  }
  return m;
}

OperatorMatrix mat_mul_numeric(const OperatorMatrix& a, const std::vector<cd>& b, int n) {
  if (a.cols() != n || static_cast<int>(b.size()) != n * n)
    throw DomainError("mat_mul_numeric: shape mismatch");
  OperatorMatrix m(a.rows(), n, a.var());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < n; ++j) {
      DifferenceOperator acc({}, a.var());
      for (int k = 0; k < n; ++k) acc = acc + a.at(i, k).scaled(b[k * n + j]);
      m.at(i, j) = acc;
    }
  return m;
}

OperatorMatrix mat_mul_numeric_left(const std::vector<cd>& a, const OperatorMatrix& b, int n) {
  if (b.rows() != n || static_cast<int>(a.size()) != n * n)
    throw DomainError("mat_mul_numeric_left: shape mismatch");
  OperatorMatrix m(n, b.cols(), b.var());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < b.cols(); ++j) {
      DifferenceOperator acc({}, b.var());
      for (int k = 0; k < n; ++k) acc = acc + b.at(k, j).scaled(a[i * n + k]);
      m.at(i, j) = acc;
    }
  return m;
}

}  // namespace ybe
