#include "knotfoam/polyring.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "knotfoam/errors.hpp"

namespace knotfoam {

namespace {

// One parsed monomial: coefficient and exponents for the named variables.
struct RawTerm {
  BigInt coeff = 1;
  std::vector<long> exps;
};

class TermParser {
 public:
  TermParser(const std::string& text, std::vector<std::string> vars)
      : s_(text), vars_(std::move(vars)) {}

  std::vector<RawTerm> run() {
    std::vector<RawTerm> out;
    skip();
    if (pos_ == s_.size()) return out;
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size()) break;
      int sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        throw ParseError(pos_, "expected '+' or '-'");
      }
      first = false;
      RawTerm t = term();
      t.coeff *= sign;
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  RawTerm term() {
    RawTerm t;
    t.exps.assign(vars_.size(), 0);
    bool any = false;
    while (true) {
      skip();
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        t.coeff *= BigInt(s_.substr(start, pos_ - start));
        any = true;
      } else {
        std::size_t v = match_var();
        if (v == vars_.size()) {
          if (!any) throw ParseError(pos_, "expected a coefficient or variable");
          break;
        }
        long e = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip();
          e = integer();
        }
        t.exps[v] += e;
        any = true;
      }
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        continue;
      }
      if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])))) continue;
      break;
    }
    return t;
  }

  std::size_t match_var() {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const std::string& v = vars_[i];
      if (s_.size() - pos_ < v.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (std::tolower(static_cast<unsigned char>(s_[pos_ + k])) !=
            std::tolower(static_cast<unsigned char>(v[k]))) {
          ok = false;
          break;
        }
      }
      if (ok) {
        pos_ += v.size();
        return i;
      }
    }
    return vars_.size();
  }

  long integer() {
    int sign = 1;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected an exponent");
    return sign * std::stol(s_.substr(start, pos_ - start));
  }

  const std::string& s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

// Appends " + c*m" / " - c*m" with the usual unit-coefficient elisions.
void render_term(std::ostringstream& os, bool first, const BigInt& c, const std::string& mono) {
  BigInt a = abs(c);
  if (first) {
    if (c < 0) os << '-';
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (mono.empty()) {
    os << a.get_str();
  } else if (a == 1) {
    os << mono;
  } else {
    os << a.get_str() << '*' << mono;
  }
}

}  // namespace

// ---------------------------------------------------------------- IntPoly2

IntPoly2::IntPoly2(long c) {
  if (c != 0) terms_[{0, 0}] = c;
}

IntPoly2::IntPoly2(const BigInt& c) {
  if (c != 0) terms_[{0, 0}] = c;
}

IntPoly2 IntPoly2::monomial(const BigInt& coeff, unsigned e1, unsigned e2) {
  IntPoly2 p;
  p.add_term({e1, e2}, coeff);
  return p;
}

IntPoly2 IntPoly2::e1() { return x1() + x2(); }
IntPoly2 IntPoly2::e2() { return monomial(1, 1, 1); }

IntPoly2 IntPoly2::h(int n) {
  IntPoly2 p;
  for (int i = 0; i <= n; ++i) p.add_term({static_cast<unsigned>(i), static_cast<unsigned>(n - i)}, 1);
  return p;
}

IntPoly2 IntPoly2::parse(const std::string& text) {
  IntPoly2 p;
  for (const RawTerm& t : TermParser(text, {"X1", "X2"}).run()) {
    if (t.exps[0] < 0 || t.exps[1] < 0) throw ParseError(0, "negative exponent in polynomial");
    p.add_term({static_cast<unsigned>(t.exps[0]), static_cast<unsigned>(t.exps[1])}, t.coeff);
  }
  return p;
}

void IntPoly2::add_term(const Exponent& e, const BigInt& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

BigInt IntPoly2::coefficient(unsigned e1, unsigned e2) const {
  auto it = terms_.find({e1, e2});
  return it == terms_.end() ? BigInt(0) : it->second;
}

unsigned IntPoly2::degree_x1() const { return terms_.empty() ? 0 : terms_.rbegin()->first.first; }

IntPoly2 IntPoly2::operator-() const {
  IntPoly2 r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

IntPoly2& IntPoly2::operator+=(const IntPoly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPoly2& IntPoly2::operator-=(const IntPoly2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPoly2 operator*(const IntPoly2& a, const IntPoly2& b) {
  IntPoly2 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return r;
}

IntPoly2& IntPoly2::operator*=(const IntPoly2& o) { return *this = *this * o; }

IntPoly2 IntPoly2::pow(unsigned n) const {
  IntPoly2 result(1), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

IntPoly2 IntPoly2::swapped() const {
  IntPoly2 r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(Exponent{e.second, e.first}, c);
  return r;
}

BigInt IntPoly2::evaluate(const BigInt& x1v, const BigInt& x2v) const {
  BigInt sum = 0;
  for (const auto& [e, c] : terms_) {
    BigInt a, b;
    mpz_pow_ui(a.get_mpz_t(), x1v.get_mpz_t(), e.first);
    mpz_pow_ui(b.get_mpz_t(), x2v.get_mpz_t(), e.second);
    sum += c * a * b;
  }
  return sum;
}

std::string IntPoly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string mono;
    auto var = [&](const char* name, unsigned e) {
      if (e == 0) return;
      if (!mono.empty()) mono += '*';
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    };
    var("X1", it->first.first);
    var("X2", it->first.second);
    render_term(os, first, it->second, mono);
    first = false;
  }
  return os.str();
}

IntPoly2 poly_arith(const IntPoly2& a, const IntPoly2& b, PolyOp op) {
  switch (op) {
    case PolyOp::Add: return a + b;
    case PolyOp::Sub: return a - b;
    case PolyOp::Mul: return a * b;
  }
  return {};
}

namespace {

// One step of synthetic division by (X1 - X2), viewing p in (Z[X2])[X1].
IntPoly2 divide_once(const IntPoly2& p) {
  if (p.is_zero()) return p;
  unsigned n = p.degree_x1();
  std::vector<std::map<unsigned, BigInt>> a(n + 1);
  for (const auto& [e, c] : p.terms()) a[e.first][e.second] = c;

  // b_{n-1} = a_n, b_{i-1} = a_i + X2 * b_i, remainder = a_0 + X2 * b_0.
  std::vector<std::map<unsigned, BigInt>> b(n);
  std::map<unsigned, BigInt> carry;  // X2 * b_i from the previous step
  for (unsigned i = n; i >= 1; --i) {
    std::map<unsigned, BigInt> cur = a[i];
    for (const auto& [e, c] : carry) cur[e] += c;
    b[i - 1].clear();
    for (const auto& [e, c] : cur)
      if (c != 0) b[i - 1][e] = c;
    carry.clear();
    for (const auto& [e, c] : b[i - 1]) carry[e + 1] = c;
  }
  std::map<unsigned, BigInt> rem = a[0];
  for (const auto& [e, c] : carry) rem[e] += c;
  for (const auto& [e, c] : rem)
    if (c != 0) fail(ErrorKind::NonExactDivision, "remainder after dividing " + p.to_string() + " by X1 - X2");

  IntPoly2 q;
  for (unsigned i = 0; i < n; ++i)
    for (const auto& [e, c] : b[i]) q += IntPoly2::monomial(c, i, e);
  return q;
}

}  // namespace

IntPoly2 divide_by_difference_power(const IntPoly2& p, int k) {
  IntPoly2 diff = IntPoly2::x1() - IntPoly2::x2();
  if (k < 0) return p * diff.pow(static_cast<unsigned>(-k));
  IntPoly2 q = p;
  for (int i = 0; i < k; ++i) q = divide_once(q);
  return q;
}

bool is_symmetric(const IntPoly2& p) { return p.swapped() == p; }

// ---------------------------------------------------------------- LaurentQ

LaurentQ::LaurentQ(long c) {
  if (c != 0) terms_[0] = c;
}

LaurentQ LaurentQ::monomial(const BigInt& coeff, int exponent) {
  LaurentQ p;
  p.add_term(exponent, coeff);
  return p;
}

LaurentQ LaurentQ::circle() { return q(1) + q(-1); }

LaurentQ LaurentQ::parse(const std::string& text) {
  LaurentQ p;
  for (const RawTerm& t : TermParser(text, {"q"}).run()) p.add_term(static_cast<int>(t.exps[0]), t.coeff);
  return p;
}

void LaurentQ::add_term(int e, const BigInt& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

BigInt LaurentQ::coefficient(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

LaurentQ LaurentQ::operator-() const {
  LaurentQ r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

LaurentQ& LaurentQ::operator+=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentQ& LaurentQ::operator-=(const LaurentQ& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentQ operator*(const LaurentQ& a, const LaurentQ& b) {
  LaurentQ r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentQ LaurentQ::pow(unsigned n) const {
  LaurentQ result(1), base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

LaurentQ LaurentQ::shifted(int k) const {
  LaurentQ r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
  return r;
}

std::string LaurentQ::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::string mono;
    if (it->first == 1) mono = "q";
    else if (it->first != 0) mono = "q^" + std::to_string(it->first);
    render_term(os, first, it->second, mono);
    first = false;
  }
  return os.str();
}

LaurentQ laurent_arith(const LaurentQ& a, const LaurentQ& b, LaurentOp op) {
  switch (op) {
    case LaurentOp::Add: return a + b;
    case LaurentOp::Sub: return a - b;
    case LaurentOp::Mul: return a * b;
    case LaurentOp::Pow: {
      if (b.terms().size() > 1 || (b.terms().size() == 1 && b.terms().begin()->first != 0))
        throw std::invalid_argument("pow exponent must be a constant");
      BigInt n = b.coefficient(0);
      if (n < 0) throw std::invalid_argument("pow exponent must be nonnegative");
      return a.pow(static_cast<unsigned>(n.get_ui()));
    }
  }
  return {};
}

}  // namespace knotfoam
