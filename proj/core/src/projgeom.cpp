#include "pgequiv/projgeom.hpp"

#include <stdexcept>
#include <string>

#include "pgequiv/errors.hpp"

namespace pgequiv {

std::uint64_t theta(unsigned r, unsigned q) {
  if (q < 2) throw std::invalid_argument("theta: q must be at least 2");
  std::uint64_t sum = 0;
  std::uint64_t pw = 1;
  for (unsigned i = 0; i <= r; ++i) {
    sum += pw;
    if (sum > (std::uint64_t{1} << 62)) throw ResourceError("theta overflows");
    pw *= q;
  }
  return sum;
}

PointTable::PointTable(FieldPtr field, unsigned k) : field_(std::move(field)), k_(k), size_(0) {
  if (k < 1) throw std::invalid_argument("projective space needs k >= 1");
  const unsigned q = field_->q();
  const std::uint64_t count = theta(k - 1, q);
  if (count > kMaxPoints || count * k > kMaxPoints * 8)
    throw ResourceError("PG(" + std::to_string(k - 1) + "," + std::to_string(q) + ") has too many points");
  size_ = static_cast<std::size_t>(count);
  coords_.assign(size_ * k_, 0);
  block_start_.assign(k_, 0);

  std::size_t idx = 0;
  for (unsigned lead = k_; lead-- > 0;) {
    block_start_[lead] = idx;
    const unsigned tail = k_ - 1 - lead;
    std::uint64_t tail_count = 1;
    for (unsigned i = 0; i < tail; ++i) tail_count *= q;
    for (std::uint64_t t = 0; t < tail_count; ++t, ++idx) {
      Elem* v = coords_.data() + idx * k_;
      v[lead] = 1;
      std::uint64_t x = t;
      for (unsigned pos = k_; pos-- > lead + 1;) {
        v[pos] = static_cast<Elem>(x % q);
        x /= q;
      }
    }
  }
}

std::optional<std::size_t> PointTable::index_of(std::span<const Elem> v) const {
  if (v.size() != k_) return std::nullopt;
  unsigned lead = 0;
  while (lead < k_ && v[lead] == 0) ++lead;
  if (lead == k_ || v[lead] != 1) return std::nullopt;
  const std::uint64_t q = field_->q();
  std::uint64_t t = 0;
  for (unsigned pos = lead + 1; pos < k_; ++pos) {
    if (v[pos] >= q) return std::nullopt;
    t = t * q + v[pos];
  }
  return static_cast<std::size_t>(block_start_[lead] + t);
}

std::size_t PointTable::index_of_point(std::span<const Elem> v) const {
  auto [norm, scalar] = normalize_vector(*field_, v);
  (void)scalar;
  auto idx = index_of(norm);
  if (!idx) throw std::invalid_argument("vector does not belong to this projective space");
  return *idx;
}

Matrix simplex_generator(const PointTable& table) {
  Matrix g(table.field_ptr(), table.k(), table.size());
  for (std::size_t j = 0; j < table.size(); ++j) g.set_column(j, table.point(j));
  return g;
}

IncidenceMatrix incidence(const PointTable& table) {
  const std::size_t n = table.size();
  if (n > kMaxIncidencePoints) throw ResourceError("incidence matrix too large: " + std::to_string(n) + " points");
  const Field& f = table.field();
  IncidenceMatrix inc{table.k(), f.q(), BitMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    const auto u = table.point(i);
    for (std::size_t j = i; j < n; ++j) {
      const auto v = table.point(j);
      Elem s = 0;
      for (unsigned t = 0; t < table.k(); ++t) s = f.add(s, f.mul(u[t], v[t]));
      if (s != 0) {
        inc.bits.set(i, j);
        inc.bits.set(j, i);
      }
    }
  }
  return inc;
}

}  // namespace pgequiv
