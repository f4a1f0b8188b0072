#include "pgequiv/perm_group.hpp"

#include <stdexcept>

namespace pgequiv {

namespace {

std::uint32_t first_moved(const Permutation& g) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g(i) != i) return static_cast<std::uint32_t>(i);
  throw std::logic_error("identity has no moved point");
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.size() != degree_) throw std::invalid_argument("generator degree mismatch");
    if (!g.is_identity()) strong_.push_back(g);
  }
  for (std::size_t s = 0; s < strong_.size(); ++s) {
    bool fixes_base = true;
    for (auto b : base_) fixes_base = fixes_base && strong_[s](b) == b;
    if (fixes_base) add_level_for(strong_[s]);
  }
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (std::size_t s = 0; s < strong_.size(); ++s) {
      bool fixes = true;
      for (std::size_t j = 0; j < l && fixes; ++j) fixes = strong_[s](base_[j]) == base_[j];
      if (fixes) levels_[l].gens.push_back(s);
    }
    rebuild_orbit(levels_[l]);
  }

  // Check every Schreier generator of level i against the chain below it.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    Level& lv = levels_[static_cast<std::size_t>(i)];
    for (std::size_t oi = 0; !restarted && oi < lv.orbit.size(); ++oi) {
      for (std::size_t gi = 0; !restarted && gi < lv.gens.size(); ++gi) {
        const Permutation& s = strong_[lv.gens[gi]];
        const std::uint32_t y = s(lv.orbit[oi]);
        const Permutation& uy = lv.transversal[static_cast<std::size_t>(lv.slot[y])];
        Permutation schreier = uy.inverse() * s * lv.transversal[oi];
        if (schreier.is_identity()) continue;
        auto [h, j] = sift(std::move(schreier), static_cast<std::size_t>(i) + 1);
        if (h.is_identity()) continue;
        strong_.push_back(h);
        const std::size_t idx = strong_.size() - 1;
        if (j == levels_.size()) add_level_for(strong_[idx]);
        for (std::size_t l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(idx);
          rebuild_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
}

void PermGroup::add_level_for(const Permutation& g) {
  Level lv;
  lv.base_point = first_moved(g);
  base_.push_back(lv.base_point);
  levels_.push_back(std::move(lv));
  rebuild_orbit(levels_.back());
}

void PermGroup::rebuild_orbit(Level& level) const {
  level.slot.assign(degree_, -1);
  level.orbit.assign(1, level.base_point);
  level.transversal.assign(1, Permutation::identity(degree_));
  level.slot[level.base_point] = 0;
  for (std::size_t k = 0; k < level.orbit.size(); ++k) {
    for (auto gi : level.gens) {
      const Permutation& s = strong_[gi];
      const std::uint32_t y = s(level.orbit[k]);
      if (level.slot[y] >= 0) continue;
      level.slot[y] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(y);
      level.transversal.push_back(s * level.transversal[k]);
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const Level& lv = levels_[l];
    const std::uint32_t y = g(lv.base_point);
    if (lv.slot[y] < 0) return {std::move(g), l};
    g = lv.transversal[static_cast<std::size_t>(lv.slot[y])].inverse() * g;
  }
  return {std::move(g), levels_.size()};
}

GroupOrder PermGroup::order() const {
  GroupOrder n = 1;
  for (const auto& lv : levels_) n *= lv.orbit.size();
  return n;
}

bool PermGroup::contains(const Permutation& p) const {
  if (p.size() != degree_) return false;
  auto [h, j] = sift(p, 0);
  return j == levels_.size() && h.is_identity();
}

std::uint64_t PermGroup::for_each_element(const std::function<bool(const Permutation&)>& visit,
                                          std::uint64_t limit) const {
  std::uint64_t visited = 0;
  bool stop = false;
  // Every element factors uniquely as u_0 * u_1 * ... with u_l from level l.
  std::function<void(std::size_t, const Permutation&)> rec = [&](std::size_t l, const Permutation& prefix) {
    if (stop) return;
    if (l == levels_.size()) {
      if (visited >= limit) {
        stop = true;
        return;
      }
      ++visited;
      if (!visit(prefix)) stop = true;
      return;
    }
    for (const auto& u : levels_[l].transversal) {
      rec(l + 1, prefix * u);
      if (stop) return;
    }
  };
  rec(0, Permutation::identity(degree_));
  return visited;
}

}  // namespace pgequiv
