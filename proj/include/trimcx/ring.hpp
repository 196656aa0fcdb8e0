#pragma once

// Exact sparse multivariate polynomials over QQ or GF(p), standard grading,
// graded reverse lexicographic term order.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace trimcx {

using Scalar = mpq_class;

class Field {
 public:
  enum class Kind { rationals, prime };

  static Field rationals() { return Field(Kind::rationals, 0); }
  static Field prime(std::uint32_t p);
  /// Accepts "QQ" or "gf:<p>".
  static Field parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_prime() const { return kind_ == Kind::prime; }
  std::uint32_t characteristic() const { return p_; }
  std::string to_string() const;

  /// Canonical representative. For GF(p) this is an integer in [0, p).
  Scalar reduce(const Scalar& a) const;
  Scalar from_int(long v) const { return reduce(Scalar(v)); }
  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar pow(Scalar a, std::uint64_t e) const;

  /// Residue of an (already reduced) element in [0, p); only for prime fields.
  std::uint32_t residue(const Scalar& a) const;

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }

 private:
  Field(Kind k, std::uint32_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint32_t p_;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

bool is_prime(std::uint64_t n);

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps);

  std::size_t nvars() const { return exps_.size(); }
  int degree() const { return degree_; }
  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  std::span<const std::uint16_t> exponents() const { return exps_; }

  void set(std::size_t i, std::uint16_t e);
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial quotient(const Monomial& o) const;  // this / o, requires o | this

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const;

 private:
  std::vector<std::uint16_t> exps_;
  int degree_ = 0;
};

/// Negative, zero, positive as a <, ==, > b in grevlex.
int grevlex_compare(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Greater-first ordering, so sorted term lists start with the leading term.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grevlex_compare(a, b) > 0;
  }
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, Field field);

  static RingPtr make(std::vector<std::string> variables, Field field) {
    return std::make_shared<const PolyRing>(std::move(variables), field);
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& variable(std::size_t i) const { return vars_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Field& field() const { return field_; }

  bool operator==(const PolyRing& o) const {
    return field_ == o.field_ && vars_ == o.vars_;
  }

 private:
  std::vector<std::string> vars_;
  Field field_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

class RingMismatch : public std::invalid_argument {
 public:
  RingMismatch() : std::invalid_argument("polynomials belong to different rings") {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(const RingPtr& ring) { return Polynomial(ring); }
  static Polynomial constant(const RingPtr& ring, const Scalar& c);
  static Polynomial variable(const RingPtr& ring, std::size_t i);
  static Polynomial monomial(const RingPtr& ring, Monomial m, const Scalar& c);
  /// Builds from arbitrary (unsorted, possibly repeated or zero) terms.
  static Polynomial from_terms(const RingPtr& ring, std::vector<Term> terms);
  static Polynomial parse(std::string_view text, const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;

  /// d iff every term has total degree d; nullopt for zero or mixed degree.
  std::optional<int> homogeneous_degree() const;
  int max_degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;
  /// Scales so the leading coefficient is one.
  Polynomial monic() const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Scalar evaluate(std::span<const Scalar> point) const;

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;

  RingPtr ring_;
  std::vector<Term> terms_;  // grevlex-descending, nonzero coefficients
};

/// Evaluation at a point; a ring homomorphism R -> k.
Scalar specialize(const Polynomial& a, std::span<const Scalar> point);

/// Enumerates all monomials of the given degree in nvars variables, grevlex-descending.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree);

std::string scalar_to_string(const Field& field, const Scalar& c);

}  // namespace trimcx
