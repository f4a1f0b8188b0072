#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pgequiv/permutation.hpp"

namespace pgequiv {

/// Exact group orders; symmetric groups on a few dozen points overflow 64 bits.
using GroupOrder = boost::multiprecision::cpp_int;

/**
 * Permutation group given by generators, backed by a stabilizer chain
 * computed with the deterministic Schreier-Sims algorithm.
 */
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<std::uint32_t>& base() const { return base_; }

  GroupOrder order() const;
  bool contains(const Permutation& p) const;

  /// Calls `visit` on group elements in a fixed order until it returns false
  /// or `limit` elements were visited. Returns the number visited.
  std::uint64_t for_each_element(const std::function<bool(const Permutation&)>& visit,
                                 std::uint64_t limit = UINT64_MAX) const;

 private:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<std::size_t> gens;            // indices into strong_
    std::vector<std::int32_t> slot;           // point -> index into orbit, or -1
    std::vector<std::uint32_t> orbit;
    std::vector<Permutation> transversal;     // transversal[i](base_point) == orbit[i]
  };

  void rebuild_orbit(Level& level) const;
  // Strips g through levels [from, end). Returns the residue and the level
  // at which it stopped (levels_.size() if it passed all of them).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from) const;
  void add_level_for(const Permutation& g);

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

}  // namespace pgequiv
