#include "extremal/field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace extremal {

namespace detail {

namespace {
__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("rational arithmetic exceeded 64-bit range");
  return static_cast<std::int64_t>(v);
}
}  // namespace

Rat rat_make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) return Rat{0, 1};
  __int128 g = gcd128(n, d);
  return Rat{narrow(n / g), narrow(d / g)};
}

Rat rat_add(Rat x, Rat y) {
  return rat_make(static_cast<__int128>(x.num) * y.den + static_cast<__int128>(y.num) * x.den,
                  static_cast<__int128>(x.den) * y.den);
}

Rat rat_sub(Rat x, Rat y) { return rat_add(x, rat_neg(y)); }

Rat rat_mul(Rat x, Rat y) {
  return rat_make(static_cast<__int128>(x.num) * y.num,
                  static_cast<__int128>(x.den) * y.den);
}

Rat rat_neg(Rat x) { return Rat{-x.num, x.den}; }

Rat rat_inv(Rat x) {
  if (x.num == 0) throw std::domain_error("division by zero");
  return rat_make(x.den, x.num);
}

}  // namespace detail

namespace {

using detail::rat_add;
using detail::rat_inv;
using detail::rat_make;
using detail::rat_mul;
using detail::rat_neg;
using detail::rat_sub;

constexpr std::int64_t kMaxPrime = (INT64_C(1) << 31) - 1;

std::int64_t mod_pos(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1;
  b = mod_pos(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
  a = mod_pos(a, p);
  if (a == 0) throw std::domain_error("division by zero");
  // Extended Euclid.
  std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    std::int64_t s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw std::domain_error("non-invertible residue");
  return mod_pos(s0, p);
}

bool quadratic_irreducible(std::int64_t lin, std::int64_t cst, std::int64_t p) {
  if (p == 2) {
    // No root in GF(2).
    for (std::int64_t x = 0; x < 2; ++x)
      if (mod_pos(x * x + lin * x + cst, 2) == 0) return false;
    return true;
  }
  // Discriminant must be a non-square.
  std::int64_t disc = mod_pos(lin * lin - 4 * cst, p);
  if (disc == 0) return false;
  return mod_pow(disc, (p - 1) / 2, p) != 1;
}

bool is_squarefree(std::int64_t d) {
  std::int64_t a = d < 0 ? -d : d;
  for (std::int64_t q = 2; q * q <= a; ++q) {
    if (a % (q * q) == 0) return false;
    while (a % q == 0) a /= q;
  }
  return true;
}

std::map<std::string, std::unique_ptr<Field>>& registry() {
  static std::map<std::string, std::unique_ptr<Field>> r;
  return r;
}
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const Field& Field::intern(const std::string& key, Kind kind, std::int64_t chr,
                           std::int64_t p, std::int64_t lin, std::int64_t cst,
                           std::int64_t d, const Field* base) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& r = registry();
  auto it = r.find(key);
  if (it == r.end()) {
    auto f = std::unique_ptr<Field>(new Field());
    f->kind_ = kind;
    f->char_ = chr;
    f->p_ = p;
    f->lin_ = lin;
    f->cst_ = cst;
    f->d_ = d;
    f->base_ = base;
    it = r.emplace(key, std::move(f)).first;
  }
  return *it->second;
}

const Field& Field::prime(std::int64_t p) {
  if (!is_prime(p) || p > kMaxPrime)
    throw std::invalid_argument("characteristic must be a prime below 2^31");
  return intern("GF(" + std::to_string(p) + ")", Kind::prime, p, p,
                            0, 0, 0, nullptr);
}

const Field& Field::quadratic_ext(std::int64_t p) {
  if (!is_prime(p) || p > kMaxPrime)
    throw std::invalid_argument("characteristic must be a prime below 2^31");
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      if (quadratic_irreducible(a, b, p)) return quadratic_ext(p, a, b);
  throw std::logic_error("no irreducible quadratic found");  // unreachable
}

const Field& Field::quadratic_ext(std::int64_t p, std::int64_t lin, std::int64_t cst) {
  if (!is_prime(p) || p > kMaxPrime)
    throw std::invalid_argument("characteristic must be a prime below 2^31");
  lin = mod_pos(lin, p);
  cst = mod_pos(cst, p);
  if (!quadratic_irreducible(lin, cst, p))
    throw std::invalid_argument("quadratic polynomial is reducible over GF(p)");
  const Field& base = prime(p);
  std::ostringstream key;
  key << "GF(" << p * p << ";t^2";
  if (lin == 1) key << "+t";
  else if (lin != 0) key << "+" << lin << "*t";
  if (cst != 0) key << "+" << cst;
  key << ")";
  return intern(key.str(), Kind::quadratic_ext, p, p, lin, cst, 0,
                            &base);
}

const Field& Field::rationals() {
  return intern("Q", Kind::rationals, 0, 0, 0, 0, 0, nullptr);
}

const Field& Field::quadratic_rationals(std::int64_t d) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    throw std::invalid_argument("radicand must be squarefree and not 0 or 1");
  const Field& base = rationals();
  return intern("Q(sqrt:" + std::to_string(d) + ")",
                            Kind::quadratic_rationals, 0, 0, 0, 0, d, &base);
}

namespace {

std::int64_t parse_int(std::string_view s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
    throw std::invalid_argument("expected integer in descriptor");
  return std::stoll(std::string(s.substr(start, pos - start)));
}

std::int64_t isqrt64(std::int64_t v) {
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace

const Field& Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text.rfind("Q(sqrt:", 0) == 0 && text.back() == ')') {
    size_t pos = 7;
    std::int64_t d = parse_int(text, pos);
    if (pos + 1 != text.size()) throw std::invalid_argument("malformed field descriptor");
    return quadratic_rationals(d);
  }
  if (text.rfind("GF(", 0) == 0 && text.back() == ')') {
    std::string_view inner = text.substr(3, text.size() - 4);
    size_t semi = inner.find(';');
    size_t pos = 0;
    std::int64_t q = parse_int(inner, pos);
    if (semi == std::string_view::npos) {
      if (pos != inner.size()) throw std::invalid_argument("malformed field descriptor");
      if (is_prime(q)) return prime(q);
      std::int64_t p = isqrt64(q);
      if (p * p == q && is_prime(p)) return quadratic_ext(p);
      throw std::invalid_argument("field order must be p or p^2");
    }
    if (pos != semi) throw std::invalid_argument("malformed field descriptor");
    std::int64_t p = isqrt64(q);
    if (p * p != q || !is_prime(p))
      throw std::invalid_argument("field order with polynomial must be p^2");
    // Polynomial grammar: t^2[+a*t][+b]
    std::string_view poly = inner.substr(semi + 1);
    if (poly.rfind("t^2", 0) != 0) throw std::invalid_argument("polynomial must be monic in t^2");
    size_t ppos = 3;
    std::int64_t lin = 0, cst = 0;
    while (ppos < poly.size()) {
      if (poly[ppos] != '+') throw std::invalid_argument("malformed polynomial");
      ++ppos;
      if (ppos < poly.size() && poly[ppos] == 't') {  // bare t term
        lin = 1;
        ++ppos;
        continue;
      }
      std::int64_t coeff = parse_int(poly, ppos);
      if (ppos < poly.size() && (poly[ppos] == '*' || poly[ppos] == 't')) {
        if (poly[ppos] == '*') ++ppos;
        if (ppos >= poly.size() || poly[ppos] != 't')
          throw std::invalid_argument("malformed polynomial");
        ++ppos;
        lin = coeff;
      } else {
        cst = coeff;
      }
    }
    return quadratic_ext(p, lin, cst);
  }
  throw std::invalid_argument("unrecognized field descriptor: " + std::string(text));
}

std::int64_t Field::order() const {
  switch (kind_) {
    case Kind::prime: return p_;
    case Kind::quadratic_ext: return p_ * p_;
    default: throw std::domain_error("order() of an infinite field");
  }
}

std::string Field::to_string() const {
  switch (kind_) {
    case Kind::prime: return "GF(" + std::to_string(p_) + ")";
    case Kind::quadratic_ext: {
      std::ostringstream s;
      s << "GF(" << p_ * p_ << ";t^2";
      if (lin_ == 1) s << "+t";
      else if (lin_ != 0) s << "+" << lin_ << "*t";
      if (cst_ != 0) s << "+" << cst_;
      s << ")";
      return s.str();
    }
    case Kind::rationals: return "Q";
    case Kind::quadratic_rationals: return "Q(sqrt:" + std::to_string(d_) + ")";
  }
  return {};
}

Scalar Field::from_integer(std::int64_t v) const {
  if (is_finite()) return Scalar(this, Rat{mod_pos(v, p_), 1}, Rat{0, 1});
  return Scalar(this, Rat{v, 1}, Rat{0, 1});
}

Scalar Field::from_coords(Rat a, Rat b) const {
  switch (kind_) {
    case Kind::prime:
      if (b.num != 0) throw std::invalid_argument("prime field element has one coordinate");
      return Scalar(this, Rat{mod_pos(a.num, p_), 1}, Rat{0, 1});
    case Kind::quadratic_ext:
      if (a.den != 1 || b.den != 1)
        throw std::invalid_argument("finite field coordinates must be integral");
      return Scalar(this, Rat{mod_pos(a.num, p_), 1}, Rat{mod_pos(b.num, p_), 1});
    case Kind::rationals:
      if (b.num != 0) throw std::invalid_argument("rational element has one coordinate");
      return Scalar(this, rat_make(a.num, a.den), Rat{0, 1});
    case Kind::quadratic_rationals:
      return Scalar(this, rat_make(a.num, a.den), rat_make(b.num, b.den));
  }
  return {};
}

Scalar Field::element(std::int64_t idx) const {
  switch (kind_) {
    case Kind::prime:
      if (idx < 0 || idx >= p_) throw std::out_of_range("element index");
      return Scalar(this, Rat{idx, 1}, Rat{0, 1});
    case Kind::quadratic_ext:
      if (idx < 0 || idx >= p_ * p_) throw std::out_of_range("element index");
      return Scalar(this, Rat{idx % p_, 1}, Rat{idx / p_, 1});
    default:
      throw std::domain_error("element enumeration needs a finite field");
  }
}

Scalar Field::generator() const {
  if (!has_involution()) throw std::domain_error("field has no adjoined generator");
  return Scalar(this, Rat{0, 1}, Rat{1, 1});
}

// ---------------------------------------------------------------------------
// Scalar arithmetic
// ---------------------------------------------------------------------------

namespace {
void require_same_field(const Scalar& x, const Scalar& y) {
  if (x.field_ptr() == nullptr || x.field_ptr() != y.field_ptr())
    throw std::invalid_argument("scalars belong to different fields");
}
}  // namespace

const Field& Scalar::field() const {
  if (field_ == nullptr) throw std::logic_error("scalar has no field");
  return *field_;
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(*this, o);
  const Field& f = *field_;
  if (f.is_finite()) {
    std::int64_t p = f.characteristic();
    return Scalar(field_, Rat{mod_pos(a_.num + o.a_.num, p), 1},
                  Rat{mod_pos(b_.num + o.b_.num, p), 1});
  }
  return Scalar(field_, rat_add(a_, o.a_), rat_add(b_, o.b_));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  if (field_ == nullptr) throw std::logic_error("scalar has no field");
  const Field& f = *field_;
  if (f.is_finite()) {
    std::int64_t p = f.characteristic();
    return Scalar(field_, Rat{mod_pos(-a_.num, p), 1}, Rat{mod_pos(-b_.num, p), 1});
  }
  return Scalar(field_, rat_neg(a_), rat_neg(b_));
}

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(*this, o);
  const Field& f = *field_;
  switch (f.kind()) {
    case Field::Kind::prime: {
      std::int64_t p = f.characteristic();
      return Scalar(field_, Rat{a_.num * o.a_.num % p, 1}, Rat{0, 1});
    }
    case Field::Kind::quadratic_ext: {
      // (a1+b1 t)(a2+b2 t) with t^2 = -cst - lin*t.
      std::int64_t p = f.characteristic();
      std::int64_t a1 = a_.num, b1 = b_.num, a2 = o.a_.num, b2 = o.b_.num;
      std::int64_t cross = (a1 * b2 + b1 * a2) % p;
      std::int64_t tt = b1 * b2 % p;
      std::int64_t ra = mod_pos(a1 * a2 % p - tt * f.poly_cst() % p, p);
      std::int64_t rb = mod_pos(cross - tt * f.poly_lin() % p, p);
      return Scalar(field_, Rat{ra, 1}, Rat{rb, 1});
    }
    case Field::Kind::rationals:
      return Scalar(field_, rat_mul(a_, o.a_), Rat{0, 1});
    case Field::Kind::quadratic_rationals: {
      // (a1+b1 s)(a2+b2 s) with s^2 = d.
      Rat d{f.radicand(), 1};
      Rat ra = rat_add(rat_mul(a_, o.a_), rat_mul(rat_mul(b_, o.b_), d));
      Rat rb = rat_add(rat_mul(a_, o.b_), rat_mul(b_, o.a_));
      return Scalar(field_, ra, rb);
    }
  }
  return {};
}

Scalar Scalar::inverse() const {
  if (field_ == nullptr) throw std::logic_error("scalar has no field");
  if (is_zero()) throw std::domain_error("division by zero");
  const Field& f = *field_;
  switch (f.kind()) {
    case Field::Kind::prime:
      return Scalar(field_, Rat{mod_inv(a_.num, f.characteristic()), 1}, Rat{0, 1});
    case Field::Kind::quadratic_ext:
    case Field::Kind::quadratic_rationals: {
      // conj / norm, with norm = x * sigma(x) in the base field.
      Scalar conj = sigma();
      Scalar norm = *this * conj;
      if (norm.b_.num != 0) throw std::logic_error("norm not in the base field");
      Scalar ninv = f.kind() == Field::Kind::quadratic_ext
                        ? Scalar(field_, Rat{mod_inv(norm.a_.num, f.characteristic()), 1}, Rat{0, 1})
                        : Scalar(field_, rat_inv(norm.a_), Rat{0, 1});
      return conj * ninv;
    }
    case Field::Kind::rationals:
      return Scalar(field_, rat_inv(a_), Rat{0, 1});
  }
  return {};
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::sigma() const {
  if (field_ == nullptr) throw std::logic_error("scalar has no field");
  const Field& f = *field_;
  switch (f.kind()) {
    case Field::Kind::quadratic_ext: {
      // Frobenius swaps the roots of t^2+lin*t+cst: sigma(t) = -lin - t.
      std::int64_t p = f.characteristic();
      std::int64_t ra = mod_pos(a_.num - b_.num * f.poly_lin() % p, p);
      std::int64_t rb = mod_pos(-b_.num, p);
      return Scalar(field_, Rat{ra, 1}, Rat{rb, 1});
    }
    case Field::Kind::quadratic_rationals:
      return Scalar(field_, a_, rat_neg(b_));
    default:
      throw std::domain_error("sigma requested on a field without involution");
  }
}

Scalar Scalar::pow(std::uint64_t e) const {
  Scalar r = field().one();
  Scalar b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Scalar Scalar::lift_to(const Field& ext) const {
  if (ext.base_field() != field_)
    throw std::invalid_argument("target is not a quadratic extension of this field");
  return ext.from_coords(a_, Rat{0, 1});
}

std::optional<Scalar> Scalar::restrict_to_base() const {
  const Field* base = field().base_field();
  if (base == nullptr || b_.num != 0) return std::nullopt;
  return Scalar(base, a_, Rat{0, 1});
}

namespace {
std::string rat_to_string(Rat r) {
  std::string s = std::to_string(r.num);
  if (r.den != 1) s += "/" + std::to_string(r.den);
  return s;
}
}  // namespace

std::string Scalar::to_string() const {
  if (b_.num == 0) return rat_to_string(a_);
  std::string tpart;
  if (b_.num == 1 && b_.den == 1)
    tpart = "t";
  else
    tpart = rat_to_string(b_) + "*t";
  if (a_.num == 0) return tpart;
  return rat_to_string(a_) + "+" + tpart;
}

Scalar Scalar::parse(const Field& f, std::string_view text) {
  // Grammar: term ('+'|'-') term?  with term = rat | rat '*' 't' | 't'.
  Rat a{0, 1}, b{0, 1};
  size_t pos = 0;
  bool any = false;
  while (pos < text.size()) {
    std::int64_t sign = 1;
    if (text[pos] == '+') {
      ++pos;
    } else if (text[pos] == '-') {
      sign = -1;
      ++pos;
    }
    if (pos >= text.size()) throw std::invalid_argument("malformed scalar: " + std::string(text));
    Rat coeff{1, 1};
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::int64_t num = parse_int(text, pos);
      std::int64_t den = 1;
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_int(text, pos);
      }
      coeff = rat_make(num, den);
      saw_coeff = true;
    }
    coeff = rat_mul(coeff, Rat{sign, 1});
    if (pos < text.size() && (text[pos] == '*' || text[pos] == 't')) {
      if (text[pos] == '*') ++pos;
      if (pos >= text.size() || text[pos] != 't')
        throw std::invalid_argument("malformed scalar: " + std::string(text));
      ++pos;
      b = rat_add(b, coeff);
    } else {
      if (!saw_coeff) throw std::invalid_argument("malformed scalar: " + std::string(text));
      a = rat_add(a, coeff);
    }
    any = true;
  }
  if (!any) throw std::invalid_argument("empty scalar");
  return f.from_coords(a, b);
}

}  // namespace extremal
