#include "pgequiv/permutation.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pgequiv {

Permutation::Permutation(std::size_t n) : image_(n) { std::iota(image_.begin(), image_.end(), 0u); }

Permutation::Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> hit(image_.size(), false);
  for (auto x : image_) {
    if (x >= image_.size() || hit[x]) throw std::invalid_argument("not a permutation");
    hit[x] = true;
  }
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation r(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) r.image_[image_[i]] = static_cast<std::uint32_t>(i);
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("composing permutations of different degree");
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.image_[i] = a.image_[b.image_[i]];
  return r;
}

std::string Permutation::cycles() const {
  std::ostringstream os;
  std::vector<bool> done(image_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (done[i] || image_[i] == i) continue;
    any = true;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = image_[j];
    }
    os << ')';
  }
  if (!any) os << "()";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.cycles(); }

}  // namespace pgequiv
