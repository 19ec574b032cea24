#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kwb/error.hpp"
#include "kwb/matrix.hpp"
#include "kwb/rational.hpp"

namespace kwb {

using VarList = std::vector<std::string>;

/// Exponent vector over the ambient variable list. Default ordering is
/// lexicographic with variable 0 most significant.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}

  static Monomial unit(std::size_t nvars, std::size_t var, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exps_[var] = power;
    return m;
  }

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  unsigned total_degree() const noexcept {
    unsigned d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  bool is_one() const noexcept {
    for (auto e : exps_)
      if (e != 0) return false;
    return true;
  }

  /// True if this monomial divides `other`.
  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m.exps_[i] = a.exps_[i] + b.exps_[i];
    return m;
  }

  /// Quotient; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m.exps_[i] = a.exps_[i] - b.exps_[i];
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      m.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
    return true;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::uint32_t> exps_;
};

/// Sparse multivariate polynomial over Q. Values are immutable once shared;
/// the variable list is held by shared pointer so copies stay cheap.
///
/// Canonical form: no stored coefficient is zero; the zero polynomial has an
/// empty term map.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  Polynomial();
  explicit Polynomial(VarList vars);
  explicit Polynomial(std::shared_ptr<const VarList> vars);

  static Polynomial constant(const Polynomial& ring_of, const Rational& c);
  static Polynomial constant(VarList vars, const Rational& c);
  static Polynomial variable(VarList vars, std::string_view name);
  static Polynomial variable(std::shared_ptr<const VarList> vars, std::size_t index);
  static Polynomial term(std::shared_ptr<const VarList> vars, Monomial m, Rational c);

  const VarList& variables() const noexcept { return *vars_; }
  const std::shared_ptr<const VarList>& ring() const noexcept { return vars_; }
  std::size_t nvars() const noexcept { return vars_->size(); }
  /// Index of `name` in the variable list, or nullopt.
  std::optional<std::size_t> index_of(std::string_view name) const;

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Coefficient of the monomial 1.
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Total degree; -1 for the zero polynomial.
  int total_degree() const noexcept;
  unsigned degree_in(std::size_t var) const noexcept;
  bool involves(std::size_t var) const noexcept;
  bool is_homogeneous() const noexcept;
  bool is_integral() const noexcept;

  /// Lexicographically largest term (variable 0 most significant).
  const std::pair<const Monomial, Rational>& lex_leading_term() const;

  /// Accumulates c*m into the polynomial, keeping canonical form.
  void add_term(const Monomial& m, const Rational& c);

  Rational evaluate(std::span<const Rational> point) const;

  /// Re-expresses the polynomial over `vars` by variable name. Every variable
  /// that actually occurs must be present in `vars`.
  Polynomial with_variables(std::shared_ptr<const VarList> vars) const;
  Polynomial with_variables(VarList vars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

  friend bool operator==(const Polynomial& p, const Polynomial& q);

  /// Rejects operands over different variable lists.
  void check_same_ring(const Polynomial& q, const char* op) const;

 private:
  std::shared_ptr<const VarList> vars_;
  TermMap terms_;
};

bool same_ring(const Polynomial& p, const Polynomial& q);
std::shared_ptr<const VarList> make_ring(VarList vars);

Polynomial pow(const Polynomial& p, unsigned e);
/// Product with every term of total degree above `max_degree` discarded.
Polynomial mul_truncated(const Polynomial& p, const Polynomial& q, unsigned max_degree);
/// Drops all terms of total degree above `max_degree`.
Polynomial truncate(const Polynomial& p, unsigned max_degree);

enum class ArithOp { add, sub, mul };

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op);

/// Simultaneous substitution. `images[i]` replaces variable i of `p`; all
/// images share one ring, which becomes the ring of the result. A degree cap
/// truncates intermediate products.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      std::optional<unsigned> max_degree = std::nullopt);

/// Substitution by name. Every variable occurring in `p` must be bound.
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

/// Substitutes rational values for a subset of variables; the ring is kept.
Polynomial partial_evaluate(const Polynomial& p,
                            const std::map<std::size_t, Rational>& values);

Polynomial partial_derivative(const Polynomial& p, std::size_t var);
Polynomial partial_derivative(const Polynomial& p, std::string_view var);

/// Homogeneous components in strictly increasing degree; empty for p = 0.
std::vector<std::pair<unsigned, Polynomial>> homogeneous_components(const Polynomial& p);

/// Highest-degree homogeneous component. Throws DomainError on p = 0.
Polynomial leading_form(const Polynomial& p);

/// Coefficients of p as a polynomial in `var`; entry k multiplies var^k.
/// Coefficients stay in p's ring and do not involve `var`.
std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var);

/// Integer content 1 and lex-leading coefficient positive. Zero stays zero.
Polynomial normalize(const Polynomial& p);
bool equal_up_to_scalar(const Polynomial& p, const Polynomial& q);

/// Quotient p/q when q divides p exactly, nullopt otherwise.
std::optional<Polynomial> divide_exact(const Polynomial& p, const Polynomial& q);

/// Greatest common divisor over Q, normalized. gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// Product of the distinct irreducible factors of p, normalized.
Polynomial squarefree_part(const Polynomial& p);

/// Pseudo-remainder of a by b with respect to `var`.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var);

/// Exact division for the fraction-free determinant.
Polynomial exact_div(const Polynomial& a, const Polynomial& b);

using PolyMatrix = Matrix<Polynomial>;

/// Determinant of a square polynomial matrix. Cofactor expansion up to 4x4,
/// fraction-free elimination beyond. `ring_of` fixes the ring for n = 0.
Polynomial determinant(const PolyMatrix& m, const Polynomial& ring_of);

/// n-tuple of polynomials over one variable list.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Polynomial> components);

  static PolyMap identity(VarList vars);
  static PolyMap identity(std::shared_ptr<const VarList> vars);

  std::size_t size() const noexcept { return comps_.size(); }
  const Polynomial& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Polynomial>& components() const noexcept { return comps_; }
  const VarList& variables() const { return comps_.front().variables(); }
  const std::shared_ptr<const VarList>& ring() const { return comps_.front().ring(); }
  std::size_t nvars() const { return comps_.front().nvars(); }
  bool is_square() const { return size() == nvars(); }
  int degree() const;
  bool is_integral() const;

  RatVector evaluate(std::span<const Rational> point) const;

  friend bool operator==(const PolyMap&, const PolyMap&) = default;

 private:
  std::vector<Polynomial> comps_;
};

/// (outer o inner)(X) = outer(inner(X)). Requires inner.size() == outer.nvars().
PolyMap compose(const PolyMap& outer, const PolyMap& inner,
                std::optional<unsigned> max_degree = std::nullopt);

/// Image of every component under `linear` (a matrix applied on the left).
PolyMap apply_matrix(const RatMatrix& linear, const PolyMap& f);

/// The linear map X -> M X as a PolyMap over `vars`.
PolyMap linear_map(const RatMatrix& m, std::shared_ptr<const VarList> vars);

}  // namespace kwb
