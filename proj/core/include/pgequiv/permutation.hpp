#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace pgequiv {

/// Permutation of {0, ..., n-1} stored as its image list: p(i) == image()[i].
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t n);  // identity
  explicit Permutation(std::vector<std::uint32_t> image);
  Permutation(std::initializer_list<std::uint32_t> image) : Permutation(std::vector<std::uint32_t>(image)) {}

  static Permutation identity(std::size_t n) { return Permutation(n); }

  std::size_t size() const { return image_.size(); }
  std::uint32_t operator()(std::size_t i) const { return image_[i]; }
  std::uint32_t operator[](std::size_t i) const { return image_[i]; }
  const std::vector<std::uint32_t>& image() const { return image_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// Composition "this after other": (a * b)(i) == a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// Cycle notation with 1-based points, "()" for the identity.
  std::string cycles() const;

 private:
  std::vector<std::uint32_t> image_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace pgequiv
