#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>

namespace knotfoam {

using BigInt = mpz_class;

// Polynomial in Z[X1, X2]. Zero coefficients are never stored.
class IntPoly2 {
 public:
  using Exponent = std::pair<unsigned, unsigned>;
  using TermMap = std::map<Exponent, BigInt>;

  IntPoly2() = default;
  IntPoly2(long c);  // NOLINT: constants convert implicitly
  explicit IntPoly2(const BigInt& c);

  static IntPoly2 monomial(const BigInt& coeff, unsigned e1, unsigned e2);
  static IntPoly2 x1(unsigned e = 1) { return monomial(1, e, 0); }
  static IntPoly2 x2(unsigned e = 1) { return monomial(1, 0, e); }
  // X1 + X2 and X1*X2.
  static IntPoly2 e1();
  static IntPoly2 e2();
  // Complete homogeneous symmetric polynomial h_n(X1, X2); h_{-1} = 0.
  static IntPoly2 h(int n);

  // Inverse of to_string; also accepts "x1", "*"-less monomials like "3X1^2".
  static IntPoly2 parse(const std::string& text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(unsigned e1, unsigned e2) const;
  unsigned degree_x1() const;

  IntPoly2 operator-() const;
  IntPoly2& operator+=(const IntPoly2& o);
  IntPoly2& operator-=(const IntPoly2& o);
  IntPoly2& operator*=(const IntPoly2& o);
  friend IntPoly2 operator+(IntPoly2 a, const IntPoly2& b) { return a += b; }
  friend IntPoly2 operator-(IntPoly2 a, const IntPoly2& b) { return a -= b; }
  friend IntPoly2 operator*(const IntPoly2& a, const IntPoly2& b);
  bool operator==(const IntPoly2& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntPoly2& o) const { return !(*this == o); }

  IntPoly2 pow(unsigned n) const;
  IntPoly2 swapped() const;
  BigInt evaluate(const BigInt& x1, const BigInt& x2) const;

  // Descending lexicographic order on (e1, e2), e.g. "X1^2*X2 - 3".
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const BigInt& c);
  TermMap terms_;
};

enum class PolyOp { Add, Sub, Mul };
IntPoly2 poly_arith(const IntPoly2& a, const IntPoly2& b, PolyOp op);

// Exact quotient p / (X1 - X2)^k; for k < 0 multiplies by (X1 - X2)^{-k}.
// Throws NonExactDivision when the remainder is nonzero.
IntPoly2 divide_by_difference_power(const IntPoly2& p, int k);

bool is_symmetric(const IntPoly2& p);

// Laurent polynomial in q with integer coefficients.
class LaurentQ {
 public:
  using TermMap = std::map<int, BigInt>;

  LaurentQ() = default;
  LaurentQ(long c);  // NOLINT
  static LaurentQ monomial(const BigInt& coeff, int exponent);
  static LaurentQ q(int exponent = 1) { return monomial(1, exponent); }
  // q + q^-1
  static LaurentQ circle();
  static LaurentQ parse(const std::string& text);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  BigInt coefficient(int e) const;

  LaurentQ operator-() const;
  LaurentQ& operator+=(const LaurentQ& o);
  LaurentQ& operator-=(const LaurentQ& o);
  friend LaurentQ operator+(LaurentQ a, const LaurentQ& b) { return a += b; }
  friend LaurentQ operator-(LaurentQ a, const LaurentQ& b) { return a -= b; }
  friend LaurentQ operator*(const LaurentQ& a, const LaurentQ& b);
  LaurentQ& operator*=(const LaurentQ& o) { return *this = *this * o; }
  bool operator==(const LaurentQ& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentQ& o) const { return !(*this == o); }

  LaurentQ pow(unsigned n) const;
  // Multiply by q^k.
  LaurentQ shifted(int k) const;

  // Descending exponents, e.g. "q^2 + 2 + q^-2".
  std::string to_string() const;

 private:
  void add_term(int e, const BigInt& c);
  TermMap terms_;
};

enum class LaurentOp { Add, Sub, Mul, Pow };
// For Pow, b must be a nonnegative constant.
LaurentQ laurent_arith(const LaurentQ& a, const LaurentQ& b, LaurentOp op);

}  // namespace knotfoam
