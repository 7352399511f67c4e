#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace extremal {

class Field;

/// Reduced fraction with positive denominator. For finite fields the
/// denominator is always 1 and num holds the residue.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;
  friend bool operator==(const Rat&, const Rat&) = default;
  friend auto operator<=>(const Rat&, const Rat&) = default;
};

namespace detail {
// Normalizes n/d (gcd-reduced, d > 0). Throws std::overflow_error if the
// reduced value does not fit in 64 bits and std::domain_error on d == 0.
Rat rat_make(__int128 n, __int128 d);
Rat rat_add(Rat x, Rat y);
Rat rat_sub(Rat x, Rat y);
Rat rat_mul(Rat x, Rat y);
Rat rat_neg(Rat x);
Rat rat_inv(Rat x);
}  // namespace detail

/// Element of an exact field. Stored as a + b*t where t is the adjoined
/// generator of a quadratic kind (t with t^2+lin*t+cst = 0 over GF(p), or
/// sqrt(d) over Q); b is zero for prime fields and Q. Always in canonical
/// form, so equality is coordinate equality.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Field* f, Rat a, Rat b) : field_(f), a_(a), b_(b) {}

  const Field& field() const;
  const Field* field_ptr() const { return field_; }

  bool is_zero() const { return a_.num == 0 && b_.num == 0; }
  bool is_one() const { return a_.num == 1 && a_.den == 1 && b_.num == 0; }
  Rat coord_a() const { return a_; }
  Rat coord_b() const { return b_; }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar inverse() const;
  /// Applies the order-2 involution of the field. Throws if the field has none.
  Scalar sigma() const;
  Scalar pow(std::uint64_t e) const;

  /// Embeds an element of a base field into a quadratic extension of it.
  Scalar lift_to(const Field& ext) const;
  /// The inverse of lift_to: defined when the b-coordinate vanishes and the
  /// a-coordinate is a base-field element.
  std::optional<Scalar> restrict_to_base() const;

  bool operator==(const Scalar& o) const {
    return field_ == o.field_ && a_ == o.a_ && b_ == o.b_;
  }
  /// Lexicographic order on coordinates; used only for canonical keys.
  bool operator<(const Scalar& o) const {
    if (a_ != o.a_) return a_ < o.a_;
    return b_ < o.b_;
  }

  std::string to_string() const;
  static Scalar parse(const Field& f, std::string_view text);

 private:
  const Field* field_ = nullptr;
  Rat a_{};
  Rat b_{};
};

/// An exact field: GF(p), GF(p^2), Q, or Q(sqrt d). Instances are interned
/// and immutable, so fields compare by address and scalars may hold plain
/// pointers. Both quadratic kinds carry the order-2 involution sigma
/// (Frobenius resp. conjugation); its fixed set is the base field.
class Field {
 public:
  enum class Kind { prime, quadratic_ext, rationals, quadratic_rationals };

  static const Field& prime(std::int64_t p);
  /// GF(p^2) with the deterministically chosen irreducible t^2+a*t+b
  /// (first (a,b) in lexicographic scan).
  static const Field& quadratic_ext(std::int64_t p);
  /// GF(p^2) with an explicit irreducible monic quadratic t^2+lin*t+cst.
  static const Field& quadratic_ext(std::int64_t p, std::int64_t lin, std::int64_t cst);
  static const Field& rationals();
  /// Q(sqrt d) for squarefree d not in {0, 1}.
  static const Field& quadratic_rationals(std::int64_t d);
  /// Parses the compact text form: "GF(7)", "GF(9;t^2+1)", "GF(9)",
  /// "Q", "Q(sqrt:-1)".
  static const Field& parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::int64_t characteristic() const { return char_; }
  bool is_finite() const {
    return kind_ == Kind::prime || kind_ == Kind::quadratic_ext;
  }
  /// Number of elements; throws for infinite fields.
  std::int64_t order() const;
  bool has_involution() const {
    return kind_ == Kind::quadratic_ext || kind_ == Kind::quadratic_rationals;
  }
  /// The subfield fixed by sigma (GF(p) under GF(p^2), Q under Q(sqrt d));
  /// nullptr for fields without involution.
  const Field* base_field() const { return base_; }

  std::string to_string() const;

  Scalar zero() const { return Scalar(this, Rat{0, 1}, Rat{0, 1}); }
  Scalar one() const { return from_integer(1); }
  Scalar from_integer(std::int64_t v) const;
  Scalar from_rat(Rat a) const { return from_coords(a, Rat{0, 1}); }
  /// Canonicalizes (a, b) as coordinates of a + b*t.
  Scalar from_coords(Rat a, Rat b) const;
  /// idx-th element of a finite field, 0 <= idx < order(). element(0) == 0.
  Scalar element(std::int64_t idx) const;
  /// The adjoined generator t (quadratic kinds only).
  Scalar generator() const;

  // Quadratic extension data: t^2 + lin*t + cst = 0.
  std::int64_t poly_lin() const { return lin_; }
  std::int64_t poly_cst() const { return cst_; }
  /// Radicand d of Q(sqrt d).
  std::int64_t radicand() const { return d_; }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  friend class Scalar;
  Field() = default;

  static const Field& intern(const std::string& key, Kind kind,
                             std::int64_t chr, std::int64_t p, std::int64_t lin,
                             std::int64_t cst, std::int64_t d, const Field* base);

  Kind kind_ = Kind::prime;
  std::int64_t char_ = 0;
  std::int64_t p_ = 0;    // prime for finite kinds
  std::int64_t lin_ = 0;  // t^2 + lin_*t + cst_
  std::int64_t cst_ = 0;
  std::int64_t d_ = 0;    // radicand
  const Field* base_ = nullptr;
};

inline Scalar operator*(std::int64_t k, const Scalar& s) {
  return s.field().from_integer(k) * s;
}

}  // namespace extremal
