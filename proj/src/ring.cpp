#include "trimcx/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <unordered_map>

namespace trimcx {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!trimcx::is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  return Field(Kind::prime, p);
}

Field Field::parse(std::string_view text) {
  if (text == "QQ" || text == "qq") return rationals();
  if (text.starts_with("gf:")) {
    std::uint32_t p = 0;
    auto body = text.substr(3);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size())
      throw std::invalid_argument("bad field spec '" + std::string(text) + "'");
    return prime(p);
  }
  throw std::invalid_argument("bad field spec '" + std::string(text) + "' (expected QQ or gf:p)");
}

std::string Field::to_string() const {
  return is_prime() ? "gf:" + std::to_string(p_) : "QQ";
}

Scalar Field::reduce(const Scalar& a) const {
  if (!is_prime()) return a;
  mpz_class p(p_);
  mpz_class num = a.get_num() % p;
  if (num < 0) num += p;
  if (a.get_den() == 1) return Scalar(num);
  mpz_class den = a.get_den() % p;
  if (den == 0) throw std::domain_error("denominator vanishes in " + to_string());
  mpz_class dinv;
  mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  mpz_class r = (num * dinv) % p;
  return Scalar(r);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (!is_prime()) return a + b;
  unsigned long s = a.get_num().get_ui() + b.get_num().get_ui();
  if (s >= p_) s -= p_;
  return Scalar(s);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (!is_prime()) return a - b;
  unsigned long x = a.get_num().get_ui(), y = b.get_num().get_ui();
  return Scalar(x >= y ? x - y : x + p_ - y);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (!is_prime()) return a * b;
  std::uint64_t r = std::uint64_t(a.get_num().get_ui()) * b.get_num().get_ui() % p_;
  return Scalar(static_cast<unsigned long>(r));
}

Scalar Field::neg(const Scalar& a) const {
  if (!is_prime()) return -a;
  unsigned long x = a.get_num().get_ui();
  return Scalar(x == 0 ? 0UL : p_ - x);
}

Scalar Field::inv(const Scalar& a) const {
  if (a == 0) throw std::domain_error("division by zero");
  if (!is_prime()) return 1 / a;
  return pow(a, p_ - 2);
}

Scalar Field::pow(Scalar a, std::uint64_t e) const {
  Scalar result = from_int(1);
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t Field::residue(const Scalar& a) const {
  return static_cast<std::uint32_t>(a.get_num().get_ui());
}

// ---------------------------------------------------------------------------

Monomial::Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {
  for (auto e : exps_) degree_ += e;
}

void Monomial::set(std::size_t i, std::uint16_t e) {
  degree_ += int(e) - int(exps_.at(i));
  exps_[i] = e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
  r.degree_ += o.degree_;
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (o.exps_[i] > exps_[i]) throw std::invalid_argument("monomial does not divide");
    r.exps_[i] -= o.exps_[i];
  }
  r.degree_ -= o.degree_;
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ULL;
  }
  return h;
}

int grevlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (std::size_t i = a.nvars(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

// ---------------------------------------------------------------------------

PolyRing::PolyRing(std::vector<std::string> variables, Field field)
    : vars_(std::move(variables)), field_(field) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
      throw std::invalid_argument("bad variable name '" + v + "'");
    for (char c : v)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw std::invalid_argument("bad variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw std::invalid_argument("duplicate variable '" + v + "'");
  }
}

std::optional<std::size_t> PolyRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const RingPtr& ring, const Scalar& c) {
  return monomial(ring, Monomial(ring->nvars()), c);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t i) {
  Monomial m(ring->nvars());
  m.set(i, 1);
  return monomial(ring, std::move(m), Scalar(1));
}

Polynomial Polynomial::monomial(const RingPtr& ring, Monomial m, const Scalar& c) {
  Polynomial p(ring);
  Scalar r = ring->field().reduce(c);
  if (r != 0) p.terms_.push_back({std::move(m), std::move(r)});
  return p;
}

Polynomial Polynomial::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  const Field& f = ring->field();
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.mono, b.mono) > 0;
  });
  Polynomial p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff = f.add(p.terms_.back().coeff, f.reduce(t.coeff));
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back({std::move(t.mono), f.reduce(t.coeff)});
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

Scalar Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.degree() == 0) return terms_.back().coeff;
  return Scalar(0);
}

std::optional<int> Polynomial::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().mono.degree();
  if (terms_.back().mono.degree() != d) return std::nullopt;
  return d;
}

int Polynomial::max_degree() const {
  return terms_.empty() ? -1 : terms_.front().mono.degree();
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw RingMismatch();
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_ring(o);
  const Field& f = ring_->field();
  Polynomial r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = grevlex_compare(terms_[i].mono, o.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = f.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s != 0) r.terms_.push_back({terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
  return r;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  const Field& f = ring_->field();
  for (auto& t : r.terms_) t.coeff = f.neg(t.coeff);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_ring(o);
  if (is_zero() || o.is_zero()) return Polynomial(ring_);
  if (o.terms_.size() == 1) return times_monomial(o.terms_[0].mono, o.terms_[0].coeff);
  if (terms_.size() == 1) return o.times_monomial(terms_[0].mono, terms_[0].coeff);
  const Field& f = ring_->field();
  std::unordered_map<Monomial, Scalar, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto [it, fresh] = acc.try_emplace(a.mono * b.mono, Scalar(0));
      it->second = f.add(it->second, f.mul(a.coeff, b.coeff));
    }
  }
  Polynomial r(ring_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, c});
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& a, const Term& b) {
    return grevlex_compare(a.mono, b.mono) > 0;
  });
  return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
  const Field& f = ring_->field();
  Scalar cr = f.reduce(c);
  if (cr == 0) return Polynomial(ring_);
  Polynomial r(*this);
  for (auto& t : r.terms_) t.coeff = f.mul(t.coeff, cr);
  return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Scalar& c) const {
  const Field& f = ring_->field();
  Scalar cr = f.reduce(c);
  Polynomial r(ring_);
  if (cr == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves grevlex order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, f.mul(t.coeff, cr)});
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(terms_.front().coeff));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

Scalar Polynomial::evaluate(std::span<const Scalar> point) const {
  if (point.size() != ring_->nvars())
    throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                " coordinates, ring has " + std::to_string(ring_->nvars()) + " variables");
  const Field& f = ring_->field();
  std::vector<Scalar> pt(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) pt[i] = f.reduce(point[i]);
  Scalar total(0);
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < pt.size(); ++i)
      if (t.mono[i] > 0) v = f.mul(v, f.pow(pt[i], t.mono[i]));
    total = f.add(total, v);
  }
  return total;
}

Scalar specialize(const Polynomial& a, std::span<const Scalar> point) { return a.evaluate(point); }

std::string scalar_to_string(const Field& field, const Scalar& c) {
  if (!field.is_prime()) return c.get_str();
  // Symmetric representative, so -1 prints as -1 rather than p-1.
  long v = static_cast<long>(c.get_num().get_ui());
  long p = field.characteristic();
  if (v > p / 2) v -= p;
  return std::to_string(v);
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  const Field& f = ring_->field();
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string cs = scalar_to_string(f, t.coeff);
    bool negative = cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (negative)
      out << '-';
    else if (!first)
      out << '+';
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += ring_->variable(i);
      if (t.mono[i] > 1) mono += '^' + std::to_string(t.mono[i]);
    }
    if (mono.empty())
      out << cs;
    else if (cs == "1")
      out << mono;
    else
      out << cs << '*' << mono;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*      ('/' only by nonzero constants)
//   unary  := ('+'|'-') unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | variable | '(' expr ')'

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc *= unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by nonzero constants");
        }
        acc = acc.scaled(ring_->field().inv(d.constant_term()));
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      Polynomial r = Polynomial::constant(ring_, Scalar(1));
      for (unsigned long i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class v(std::string(text_.substr(start, pos_ - start)));
      return Polynomial::constant(ring_, Scalar(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      auto name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + std::string(name) + "'");
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint16_t> e(nvars, 0);
  // Lexicographic enumeration of compositions; sorted afterwards.
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nvars) {
      e[i] = static_cast<std::uint16_t>(left);
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint16_t>(k);
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), GrevlexGreater{});
  return out;
}

}  // namespace trimcx
