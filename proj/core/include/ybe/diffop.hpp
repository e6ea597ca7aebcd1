#pragma once

#include <functional>
#include <vector>

#include "ybe/elliptic.hpp"

// Finite-difference operators with meromorphic coefficients acting on
// functions of one complex variable (or on one slot of a two-variable
// function), plus matrices of such operators.  Shifts are integer
// combinations a*eta + b*(tau/2) + c*(1/2), stored exactly so that terms
// merge without floating point comparison.

namespace ybe {

using Mero1 = std::function<cd(cd)>;
using Mero2 = std::function<cd(cd, cd)>;

// Division with a pole guard for coefficients like 1/theta1(2z).
inline cd safe_div(cd num, cd den) {
  if (std::abs(den) < 1e-10) throw PoleError("coefficient denominator within pole threshold");
  return num / den;
}

struct LatticeShift {
  int a = 0;  // eta steps
  int b = 0;  // tau/2 steps
  int c = 0;  // 1/2 steps

  cd value(const ModularParams& mp) const {
    return double(a) * mp.eta() + double(b) * 0.5 * mp.tau() + 0.5 * double(c);
  }
  friend LatticeShift operator+(LatticeShift l, LatticeShift r) {
    return {l.a + r.a, l.b + r.b, l.c + r.c};
  }
  friend bool operator==(LatticeShift l, LatticeShift r) {
    return l.a == r.a && l.b == r.b && l.c == r.c;
  }
};

struct ShiftTerm {
  LatticeShift shift;
  cd shift_value;  // resolved against the ModularParams used at build time
  Mero1 coeff;
};

// Which variable of a two-variable function the operator acts on.
enum class Var : int { z1 = 0, z2 = 1 };

class DifferenceOperator {
 public:
  DifferenceOperator() = default;
  explicit DifferenceOperator(std::vector<ShiftTerm> terms, Var var = Var::z1);

  static DifferenceOperator identity();
  static DifferenceOperator multiplication(Mero1 f);
  static DifferenceOperator shift(LatticeShift s, const ModularParams& mp);
  // coeff(z) * f(z + shift)
  static DifferenceOperator term(LatticeShift s, Mero1 coeff, const ModularParams& mp);

  const std::vector<ShiftTerm>& terms() const { return terms_; }
  Var var() const { return var_; }
  DifferenceOperator with_var(Var v) const;

  cd apply(const Mero1& f, cd z) const;
  // Scale of the term sum (sum of term magnitudes), for normalizing
  // residuals of near-cancelling applications.
  cd apply(const Mero1& f, cd z, double* scale) const;
  // Acts on the tagged slot of f(z1, z2).
  cd apply2(const Mero2& f, cd z1, cd z2) const;

  DifferenceOperator scaled(cd factor) const;
  friend DifferenceOperator operator+(const DifferenceOperator& x, const DifferenceOperator& y);
  friend DifferenceOperator operator-(const DifferenceOperator& x, const DifferenceOperator& y);

 private:
  std::vector<ShiftTerm> terms_;
  Var var_ = Var::z1;
};

// (compose(a,b) f)(z) = (a (b f))(z); terms (s_i + s_j, z -> a_i(z) b_j(z + s_i)).
DifferenceOperator compose(const DifferenceOperator& a, const DifferenceOperator& b);

// e^{c pi i z^2} op e^{-c pi i z^2} with the Gaussian factors folded into the
// coefficients: each term picks up e^{-c pi i (2 z s + s^2)}.
DifferenceOperator gaussian_conjugate(const DifferenceOperator& op, cd c);

// Rectangular matrix of difference operators sharing a variable tag.
class OperatorMatrix {
 public:
  OperatorMatrix() : rows_(0), cols_(0) {}
  OperatorMatrix(int rows, int cols, Var var = Var::z1);

  static OperatorMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Var var() const { return var_; }
  OperatorMatrix with_var(Var v) const;

  DifferenceOperator& at(int i, int j) { return entries_[i * cols_ + j]; }
  const DifferenceOperator& at(int i, int j) const { return entries_[i * cols_ + j]; }

  // Entrywise application to a function vector: (A f)_i = sum_j A_ij f_j.
  std::vector<cd> mat_apply(const std::vector<Mero1>& fvec, cd z) const;

  OperatorMatrix scaled(cd factor) const;
  friend OperatorMatrix operator+(const OperatorMatrix& x, const OperatorMatrix& y);

 private:
  int rows_, cols_;
  Var var_;
  std::vector<DifferenceOperator> entries_;
};

OperatorMatrix mat_mul(const OperatorMatrix& a, const OperatorMatrix& b);
// Right-multiplication by a numeric matrix (e.g. a Pauli matrix).
OperatorMatrix mat_mul_numeric(const OperatorMatrix& a, const std::vector<cd>& b, int n);
OperatorMatrix mat_mul_numeric_left(const std::vector<cd>& a, const OperatorMatrix& b, int n);

}  // namespace ybe
