#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace pgequiv {

/// Field element encoded as the base-p digit integer sum(c_i * p^i) of its
/// coordinates over the power basis 1, a, a^2, ... (a a root of the modulus).
/// For prime fields the encoding is the residue itself.
using Elem = std::uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/**
 * GF(q), q = p^m <= 2^16.
 *
 * Multiplication and inversion go through log/antilog tables built once at
 * construction; the object is immutable afterwards and may be shared freely
 * between threads.
 *
 * The modulus is a monic degree-m polynomial over GF(p) encoded like an
 * element, including the leading term: x^2 + x + 1 over GF(2) is 7.
 */
class Field {
 public:
  static constexpr unsigned kMaxOrder = 1u << 16;

  /// Field of order q using the default modulus for that order.
  /// Throws std::invalid_argument if q is not a prime power, or is a
  /// composite order without a shipped default modulus.
  static FieldPtr make(unsigned q);

  /// Field GF(p^m) with an explicit modulus (ignored when m == 1).
  static FieldPtr make(unsigned p, unsigned m, unsigned modulus);

  /// Shipped default modulus for a composite order q, or 0 if none.
  static unsigned default_modulus(unsigned q);

  unsigned p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned q() const { return q_; }
  unsigned modulus() const { return modulus_; }
  bool is_prime() const { return m_ == 1; }

  bool contains(Elem a) const { return a < q_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem neg(Elem a) const;

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Throws std::domain_error for a == 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;

  /// a^(p^i), the i-th power of the Frobenius automorphism, 0 <= i < m.
  Elem frobenius(Elem a, unsigned i) const { return frob_[i % m_][a]; }

  /// Inverse of frobenius(., i).
  Elem frobenius_inverse(Elem a, unsigned i) const {
    return frob_[(m_ - i % m_) % m_][a];
  }

  /// A fixed generator of the multiplicative group.
  Elem primitive() const { return exp_[1]; }

  bool operator==(const Field& o) const {
    return p_ == o.p_ && m_ == o.m_ && (m_ == 1 || modulus_ == o.modulus_);
  }

 private:
  Field(unsigned p, unsigned m, unsigned modulus);

  Elem poly_mul(Elem a, Elem b) const;

  unsigned p_;
  unsigned m_;
  unsigned q_;
  unsigned modulus_;
  std::vector<Elem> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> add_;  // q*q table for small composite fields, else empty
  std::vector<std::vector<Elem>> frob_;
};

bool is_prime(unsigned n);

/// Scales v so that its first nonzero coordinate becomes 1. Returns the
/// normalized vector together with the removed scalar (v = scalar * result).
/// Throws std::domain_error for the zero vector.
std::pair<std::vector<Elem>, Elem> normalize_vector(const Field& f, std::span<const Elem> v);

/// In-place variant; returns the scalar. Throws std::domain_error on zero.
Elem normalize_in_place(const Field& f, std::span<Elem> v);

}  // namespace pgequiv
