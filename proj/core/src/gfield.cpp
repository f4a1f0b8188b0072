#include "pgequiv/gfield.hpp"

#include <stdexcept>
#include <string>

namespace pgequiv {

namespace {

struct DefaultModulus {
  unsigned q;
  unsigned modulus;
};

// Monic irreducible polynomials, encoded with the leading term included.
constexpr DefaultModulus kDefaultModuli[] = {
    {4, 7},      // x^2 + x + 1
    {8, 11},     // x^3 + x + 1
    {9, 14},     // x^2 + x + 2
    {16, 19},    // x^4 + x + 1
    {25, 32},    // x^2 + x + 2
    {27, 34},    // x^3 + 2x + 1
    {32, 37},    // x^5 + x^2 + 1
    {49, 50},    // x^2 + 1
    {64, 67},    // x^6 + x + 1
    {81, 86},    // x^4 + x + 2
    {125, 131},  // x^3 + x + 1
};

std::vector<unsigned> digits(unsigned v, unsigned p, unsigned count) {
  std::vector<unsigned> d(count, 0);
  for (unsigned i = 0; i < count && v; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned v = 0;
  for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
  return v;
}

unsigned ipow(unsigned b, unsigned e) {
  unsigned r = 1;
  while (e--) r *= b;
  return r;
}

// Polynomial over GF(p) as a coefficient vector, lowest degree first.
using Poly = std::vector<unsigned>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::domain_error("no inverse modulo p");
}

// Remainder of a modulo b (b nonzero).
Poly poly_rem(Poly a, const Poly& b, unsigned p) {
  trim(a);
  const unsigned lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const unsigned c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
    trim(a);
  }
  return a;
}

bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned deg = static_cast<unsigned>(f.size()) - 1;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (unsigned d = 1; 2 * d <= deg; ++d) {
    const unsigned count = ipow(p, d);
    for (unsigned low = 0; low < count; ++low) {
      Poly g = digits(low, p, d);
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned Field::default_modulus(unsigned q) {
  for (const auto& d : kDefaultModuli)
    if (d.q == q) return d.modulus;
  return 0;
}

FieldPtr Field::make(unsigned q) {
  if (q < 2 || q > kMaxOrder) throw std::invalid_argument("field order out of range: " + std::to_string(q));
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned m = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++m;
  }
  if (r != 1) throw std::invalid_argument("field order is not a prime power: " + std::to_string(q));
  if (m == 1) return make(p, 1, 0);
  const unsigned modulus = default_modulus(q);
  if (modulus == 0)
    throw std::invalid_argument("no default modulus for q = " + std::to_string(q) + "; give one explicitly");
  return make(p, m, modulus);
}

FieldPtr Field::make(unsigned p, unsigned m, unsigned modulus) {
  return FieldPtr(new Field(p, m, modulus));
}

Field::Field(unsigned p, unsigned m, unsigned modulus) : p_(p), m_(m), q_(0), modulus_(m == 1 ? 0 : modulus) {
  if (!pgequiv::is_prime(p)) throw std::invalid_argument("characteristic is not prime: " + std::to_string(p));
  if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > kMaxOrder) throw std::invalid_argument("field order exceeds 2^16");
  }
  q_ = static_cast<unsigned>(q);

  if (m > 1) {
    if (modulus < q_ || modulus >= q_ * p) throw std::invalid_argument("modulus must have degree m");
    Poly f = digits(modulus, p, m + 1);
    if (f.back() != 1) throw std::invalid_argument("modulus must be monic");
    if (!is_irreducible(f, p)) throw std::invalid_argument("modulus is reducible over GF(p)");
  }

  neg_.resize(q_);
  for (Elem a = 0; a < q_; ++a) {
    auto d = digits(a, p_, m_);
    for (auto& x : d) x = (p_ - x) % p_;
    neg_[a] = undigits(d, p_);
  }
  if (m_ > 1 && p_ != 2 && q_ <= 256) {
    add_.resize(static_cast<std::size_t>(q_) * q_);
    for (Elem a = 0; a < q_; ++a)
      for (Elem b = 0; b < q_; ++b) {
        auto da = digits(a, p_, m_);
        auto db = digits(b, p_, m_);
        for (unsigned i = 0; i < m_; ++i) da[i] = (da[i] + db[i]) % p_;
        add_[a * q_ + b] = undigits(da, p_);
      }
  }

  // Find a primitive element and fill the tables.
  const unsigned order = q_ - 1;
  exp_.assign(2 * static_cast<std::size_t>(order), 0);
  log_.assign(q_, 0);
  std::vector<bool> seen(q_);
  for (Elem g = 1; g < q_; ++g) {
    std::fill(seen.begin(), seen.end(), false);
    Elem x = 1;
    unsigned k = 0;
    for (; k < order; ++k) {
      if (seen[x]) break;
      seen[x] = true;
      exp_[k] = x;
      x = poly_mul(x, g);
    }
    if (k == order && x == 1) break;
    if (g == q_ - 1) throw std::logic_error("no primitive element found");
  }
  for (unsigned k = 0; k < order; ++k) {
    log_[exp_[k]] = k;
    exp_[k + order] = exp_[k];
  }

  frob_.assign(m_, std::vector<Elem>(q_));
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint64_t e = ipow(p_, i);
    for (Elem a = 0; a < q_; ++a) frob_[i][a] = pow(a, e);
  }
}

Elem Field::poly_mul(Elem a, Elem b) const {
  if (m_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
  Poly x = digits(a, p_, m_);
  Poly y = digits(b, p_, m_);
  Poly prod(2 * m_ - 1, 0);
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  Poly r = poly_rem(prod, digits(modulus_, p_, m_ + 1), p_);
  r.resize(m_, 0);
  return undigits(r, p_);
}

Elem Field::add(Elem a, Elem b) const {
  if (m_ == 1) {
    const Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  if (!add_.empty()) return add_[a * q_ + b];
  Elem r = 0;
  Elem scale = 1;
  for (unsigned i = 0; i < m_; ++i) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in GF(" + std::to_string(q_) + ")");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::size_t>(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1))];
}

Elem normalize_in_place(const Field& f, std::span<Elem> v) {
  for (Elem x : v) {
    if (x == 0) continue;
    const Elem s = x;
    if (s != 1) {
      const Elem si = f.inv(s);
      for (Elem& y : v) y = f.mul(y, si);
    }
    return s;
  }
  throw std::domain_error("cannot normalize the zero vector");
}

std::pair<std::vector<Elem>, Elem> normalize_vector(const Field& f, std::span<const Elem> v) {
  std::vector<Elem> out(v.begin(), v.end());
  const Elem s = normalize_in_place(f, out);
  return {std::move(out), s};
}

}  // namespace pgequiv
