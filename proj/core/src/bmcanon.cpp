#include "pgequiv/bmcanon.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>

#include "pgequiv/errors.hpp"

namespace pgequiv {

ColoredBinaryMatrix ColoredBinaryMatrix::uncolored(BitMatrix bits) {
  ColoredBinaryMatrix m;
  m.row_colors.assign(bits.rows(), 0);
  m.col_colors.assign(bits.cols(), 0);
  m.bits = std::move(bits);
  return m;
}

ColoredBinaryMatrix ColoredBinaryMatrix::permute_columns(const Permutation& p) const {
  if (p.size() != cols()) throw std::invalid_argument("permutation degree does not match column count");
  ColoredBinaryMatrix out;
  out.bits = BitMatrix(rows(), cols());
  out.row_colors = row_colors;
  out.col_colors.assign(cols(), 0);
  for (std::size_t j = 0; j < cols(); ++j) out.col_colors[p(j)] = col_colors[j];
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t j = 0; j < cols(); ++j)
      if (bits.get(r, j)) out.bits.set(r, p(j));
  return out;
}

namespace {

constexpr int kNoJump = INT_MAX;

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  return h;
}

// Ordered partition of {0..n-1}; a cell is identified by its start index.
struct Partition {
  std::vector<std::uint32_t> elems;
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> start;  // per index
  std::vector<std::uint32_t> end;    // meaningful at cell starts
  std::size_t cells = 0;

  std::size_t size() const { return elems.size(); }
  bool discrete() const { return cells == elems.size(); }

  static Partition by_color(const std::vector<std::uint32_t>& color) {
    Partition p;
    const std::size_t n = color.size();
    p.elems.resize(n);
    std::iota(p.elems.begin(), p.elems.end(), 0u);
    std::stable_sort(p.elems.begin(), p.elems.end(), [&](auto a, auto b) { return color[a] < color[b]; });
    p.pos.resize(n);
    p.start.resize(n);
    p.end.resize(n);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j < n && color[p.elems[j]] == color[p.elems[i]]) ++j;
      for (std::size_t t = i; t < j; ++t) {
        p.pos[p.elems[t]] = static_cast<std::uint32_t>(t);
        p.start[t] = static_cast<std::uint32_t>(i);
      }
      p.end[i] = static_cast<std::uint32_t>(j);
      ++p.cells;
      i = j;
    }
    return p;
  }
};

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Leaf {
  std::vector<std::uint32_t> path;
  std::vector<std::uint64_t> traces;
  std::vector<std::uint64_t> cert;
  std::vector<std::uint32_t> order;  // position -> column
};

int lex_compare(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

class Canonicalizer {
 public:
  Canonicalizer(const ColoredBinaryMatrix& m, const SearchOptions& opts)
      : m_(m), opts_(opts), rows_(m.rows()), cols_(m.cols()), col_words_((m.rows() + 63) / 64) {
    if (m.row_colors.size() != rows_ || m.col_colors.size() != cols_)
      throw std::invalid_argument("color vector length does not match matrix shape");
    row_color_ = rank_colors(m.row_colors, row_palette_);
    col_color_ = rank_colors(m.col_colors, col_palette_);
    col_bits_.assign(cols_ * col_words_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if (m.bits.get(r, c)) col_bits_[c * col_words_ + r / 64] |= std::uint64_t{1} << (r % 64);
    row_mask_.assign(m.bits.words_per_row(), 0);
    col_mask_.assign(col_words_, 0);
    row_queued_.assign(rows_, 0);
    col_queued_.assign(cols_, 0);
  }

  CanonResult run() {
    Partition rows = Partition::by_color(row_color_);
    Partition cols = Partition::by_color(col_color_);
    std::vector<std::pair<int, std::uint32_t>> seeds;
    for (std::size_t i = 0; i < rows.size(); i = rows.end[i]) seeds.emplace_back(0, static_cast<std::uint32_t>(i));
    for (std::size_t i = 0; i < cols.size(); i = cols.end[i]) seeds.emplace_back(1, static_cast<std::uint32_t>(i));
    const std::uint64_t t0 = refine(rows, cols, seeds);
    std::vector<std::uint32_t> path;
    std::vector<std::uint64_t> traces{t0};
    search(rows, cols, path, traces);
    return result();
  }

 private:
  static std::vector<std::uint32_t> rank_colors(const std::vector<std::int64_t>& colors,
                                                std::vector<std::int64_t>& palette) {
    palette = colors;
    std::sort(palette.begin(), palette.end());
    palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
    std::vector<std::uint32_t> ranked(colors.size());
    for (std::size_t i = 0; i < colors.size(); ++i)
      ranked[i] = static_cast<std::uint32_t>(std::lower_bound(palette.begin(), palette.end(), colors[i]) -
                                             palette.begin());
    return ranked;
  }

  std::size_t row_count_in_mask(std::uint32_t r) const {
    const auto row = m_.bits.row(r);
    std::size_t n = 0;
    for (std::size_t w = 0; w < row.size(); ++w) n += static_cast<std::size_t>(std::popcount(row[w] & row_mask_[w]));
    return n;
  }

  std::size_t col_count_in_mask(std::uint32_t c) const {
    const std::uint64_t* bits = col_bits_.data() + c * col_words_;
    std::size_t n = 0;
    for (std::size_t w = 0; w < col_words_; ++w) n += static_cast<std::size_t>(std::popcount(bits[w] & col_mask_[w]));
    return n;
  }

  // Splits cell [s, e) of p by key; returns the updated trace.
  template <typename KeyFn>
  std::uint64_t split_cell(Partition& p, std::uint32_t s, int side, KeyFn&& key, std::vector<std::uint8_t>& queued,
                           std::vector<std::pair<int, std::uint32_t>>& queue, std::uint64_t trace) {
    const std::uint32_t e = p.end[s];
    keyed_.clear();
    for (std::uint32_t i = s; i < e; ++i) keyed_.emplace_back(key(p.elems[i]), p.elems[i]);
    bool uniform = true;
    for (std::size_t i = 1; i < keyed_.size() && uniform; ++i) uniform = keyed_[i].first == keyed_[0].first;
    if (uniform) return trace;
    std::sort(keyed_.begin(), keyed_.end());
    std::uint32_t frag = s;
    trace = mix(trace, (static_cast<std::uint64_t>(side) << 32) | s);
    for (std::uint32_t i = s; i < e; ++i) {
      const auto& [k, el] = keyed_[i - s];
      p.elems[i] = el;
      p.pos[el] = i;
      if (i > s && k != keyed_[i - s - 1].first) {
        p.end[frag] = i;
        trace = mix(trace, (static_cast<std::uint64_t>(i - frag) << 32) | keyed_[i - s - 1].first);
        frag = i;
        ++p.cells;
      }
      p.start[i] = frag;
    }
    p.end[frag] = e;
    trace = mix(trace, (static_cast<std::uint64_t>(e - frag) << 32) | keyed_.back().first);
    for (std::uint32_t f = s; f < e; f = p.end[f]) {
      if (!queued[f]) {
        queued[f] = 1;
        queue.emplace_back(side, f);
      }
    }
    return trace;
  }

  // Equitable refinement from the given splitter cells (side 0 = rows,
  // side 1 = columns). Stops early once the column partition is discrete.
  std::uint64_t refine(Partition& rows, Partition& cols, const std::vector<std::pair<int, std::uint32_t>>& seeds) {
    std::vector<std::pair<int, std::uint32_t>> queue;
    std::fill(row_queued_.begin(), row_queued_.end(), 0);
    std::fill(col_queued_.begin(), col_queued_.end(), 0);
    for (const auto& sd : seeds) {
      auto& q = sd.first == 0 ? row_queued_ : col_queued_;
      if (!q[sd.second]) {
        q[sd.second] = 1;
        queue.push_back(sd);
      }
    }
    std::uint64_t trace = mix(0, rows.cells * 1315423911ULL + cols.cells);
    for (std::size_t head = 0; head < queue.size() && !cols.discrete(); ++head) {
      const auto [side, s] = queue[head];
      if (side == 1) {
        col_queued_[s] = 0;
        std::fill(row_mask_.begin(), row_mask_.end(), 0);
        for (std::uint32_t i = s; i < cols.end[s]; ++i) {
          const auto c = cols.elems[i];
          row_mask_[c / 64] |= std::uint64_t{1} << (c % 64);
        }
        for (std::uint32_t i = 0; i < rows.size();) {
          const std::uint32_t e = rows.end[i];
          if (e - i > 1)
            trace = split_cell(rows, i, 0, [&](std::uint32_t r) { return row_count_in_mask(r); }, row_queued_, queue,
                               trace);
          i = e;
        }
      } else {
        row_queued_[s] = 0;
        std::fill(col_mask_.begin(), col_mask_.end(), 0);
        for (std::uint32_t i = s; i < rows.end[s]; ++i) {
          const auto r = rows.elems[i];
          col_mask_[r / 64] |= std::uint64_t{1} << (r % 64);
        }
        for (std::uint32_t i = 0; i < cols.size();) {
          const std::uint32_t e = cols.end[i];
          if (e - i > 1)
            trace = split_cell(cols, i, 1, [&](std::uint32_t c) { return col_count_in_mask(c); }, col_queued_, queue,
                               trace);
          i = e;
          if (cols.discrete()) break;
        }
      }
    }
    return mix(trace, rows.cells * 2654435761ULL + cols.cells);
  }

  // Moves column c to the front of its cell as a singleton.
  static std::uint32_t individualize(Partition& cols, std::uint32_t c) {
    const std::uint32_t i = cols.pos[c];
    const std::uint32_t s = cols.start[i];
    const std::uint32_t e = cols.end[s];
    const std::uint32_t other = cols.elems[s];
    std::swap(cols.elems[s], cols.elems[i]);
    cols.pos[c] = s;
    cols.pos[other] = i;
    cols.end[s] = s + 1;
    for (std::uint32_t t = s + 1; t < e; ++t) cols.start[t] = s + 1;
    cols.end[s + 1] = e;
    ++cols.cells;
    return s;
  }

  std::vector<std::uint64_t> certificate(const Partition& cols) const {
    const std::size_t words = (cols_ + 63) / 64;
    std::vector<std::uint64_t> rowbuf(rows_ * words, 0);
    for (std::uint32_t r = 0; r < rows_; ++r) {
      const auto row = m_.bits.row(r);
      for (std::size_t w = 0; w < row.size(); ++w) {
        std::uint64_t x = row[w];
        while (x) {
          const auto c = static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
          x &= x - 1;
          const std::uint32_t p = cols.pos[c];
          rowbuf[r * words + p / 64] |= std::uint64_t{1} << (63 - p % 64);
        }
      }
    }
    std::vector<std::uint32_t> order(rows_);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (row_color_[a] != row_color_[b]) return row_color_[a] < row_color_[b];
      return std::lexicographical_compare(rowbuf.begin() + a * words, rowbuf.begin() + (a + 1) * words,
                                          rowbuf.begin() + b * words, rowbuf.begin() + (b + 1) * words);
    });
    std::vector<std::uint64_t> cert;
    cert.reserve(rows_ * (words + 1));
    for (auto r : order) {
      cert.push_back(row_color_[r]);
      cert.insert(cert.end(), rowbuf.begin() + r * words, rowbuf.begin() + (r + 1) * words);
    }
    return cert;
  }

  static int divergence(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return static_cast<int>(i);
    return static_cast<int>(n);
  }

  void add_generator(const std::vector<std::uint32_t>& from_order, const std::vector<std::uint32_t>& to_order) {
    // Column at position i of one leaf maps to the column at position i of the other.
    std::vector<std::uint32_t> image(cols_);
    for (std::size_t i = 0; i < cols_; ++i) image[from_order[i]] = to_order[i];
    Permutation g(std::move(image));
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }

  int leaf(const Partition& cols, const std::vector<std::uint32_t>& path, const std::vector<std::uint64_t>& traces) {
    auto cert = certificate(cols);
    if (!have_first_) {
      first_ = Leaf{path, traces, std::move(cert), cols.elems};
      best_ = first_;
      have_first_ = true;
      return kNoJump;
    }
    const bool eq_first = traces == first_.traces;
    if (eq_first && cert == first_.cert) {
      add_generator(cols.elems, first_.order);
      return divergence(path, first_.path);
    }
    int cmp = lex_compare(traces, best_.traces);
    if (cmp == 0 && traces.size() != best_.traces.size()) cmp = traces.size() < best_.traces.size() ? -1 : 1;
    if (cmp == 0 && cert == best_.cert) {
      add_generator(cols.elems, best_.order);
      return divergence(path, best_.path);
    }
    if (cmp < 0 || (cmp == 0 && cert < best_.cert)) best_ = Leaf{path, traces, std::move(cert), cols.elems};
    return kNoJump;
  }

  int search(const Partition& rows, const Partition& cols, std::vector<std::uint32_t>& path,
             std::vector<std::uint64_t>& traces) {
    if (++nodes_ > opts_.node_budget)
      throw ResourceError("canonical form search exceeded " + std::to_string(opts_.node_budget) + " nodes");
    if (cols.discrete()) return leaf(cols, path, traces);

    // Target cell: first largest non-singleton column cell.
    std::uint32_t target = 0;
    std::uint32_t target_size = 0;
    for (std::uint32_t i = 0; i < cols.size(); i = cols.end[i]) {
      const std::uint32_t sz = cols.end[i] - i;
      if (sz > 1 && sz > target_size) {
        target = i;
        target_size = sz;
      }
    }
    std::vector<std::uint32_t> children(cols.elems.begin() + target, cols.elems.begin() + target + target_size);
    std::sort(children.begin(), children.end());

    const int level = static_cast<int>(path.size());
    UnionFind orbits(cols_);
    std::size_t applied = 0;
    auto absorb_generators = [&] {
      for (; applied < gens_.size(); ++applied) {
        const auto& g = gens_[applied];
        bool fixes = true;
        for (auto v : path) fixes = fixes && g(v) == v;
        if (!fixes) continue;
        for (std::uint32_t x = 0; x < cols_; ++x) orbits.unite(x, g(x));
      }
    };

    std::vector<std::uint32_t> explored;
    for (auto w : children) {
      absorb_generators();
      const std::uint32_t root = orbits.find(w);
      bool equivalent = false;
      for (auto e : explored) equivalent = equivalent || orbits.find(e) == root;
      if (equivalent) continue;
      explored.push_back(w);

      Partition crow = rows;
      Partition ccol = cols;
      const std::uint32_t cell = individualize(ccol, w);
      const std::uint64_t t = refine(crow, ccol, {{1, cell}, {1, cell + 1}});
      path.push_back(w);
      traces.push_back(t);

      bool viable = true;
      if (have_first_) {
        const bool may_match_first =
            traces.size() <= first_.traces.size() &&
            std::equal(traces.begin(), traces.end(), first_.traces.begin());
        const int cmp = lex_compare(traces, best_.traces);
        viable = may_match_first || cmp <= 0;
      }
      int jump = kNoJump;
      if (viable) jump = search(crow, ccol, path, traces);
      path.pop_back();
      traces.pop_back();
      if (jump < level) return jump;
    }

    if (have_first_ && divergence(path, first_.path) == level && first_.path.size() > path.size()) {
      absorb_generators();
      const std::uint32_t v = first_.path[static_cast<std::size_t>(level)];
      const std::uint32_t root = orbits.find(v);
      std::uint64_t orbit = 0;
      for (std::uint32_t x = 0; x < cols_; ++x) orbit += orbits.find(x) == root;
      order_ *= orbit;
    }
    return kNoJump;
  }

  CanonResult result() const {
    CanonResult res;
    res.nodes = nodes_;
    res.generators = gens_;
    res.group_order = order_;
    res.base = first_.path;
    const std::size_t words = (cols_ + 63) / 64;
    std::vector<std::uint32_t> labeling(cols_);
    for (std::size_t i = 0; i < cols_; ++i) labeling[best_.order[i]] = static_cast<std::uint32_t>(i);
    res.labeling = Permutation(std::move(labeling));

    ColoredBinaryMatrix& c = res.canonical;
    c.bits = BitMatrix(rows_, cols_);
    c.row_colors.resize(rows_);
    c.col_colors.resize(cols_);
    for (std::size_t i = 0; i < cols_; ++i) c.col_colors[i] = col_palette_[col_color_[best_.order[i]]];
    for (std::size_t r = 0; r < rows_; ++r) {
      const std::uint64_t* rec = best_.cert.data() + r * (words + 1);
      c.row_colors[r] = row_palette_[rec[0]];
      for (std::size_t p = 0; p < cols_; ++p)
        if ((rec[1 + p / 64] >> (63 - p % 64)) & 1u) c.bits.set(r, p);
    }
    return res;
  }

  const ColoredBinaryMatrix& m_;
  SearchOptions opts_;
  std::size_t rows_;
  std::size_t cols_;
  std::size_t col_words_;
  std::vector<std::uint32_t> row_color_;
  std::vector<std::uint32_t> col_color_;
  std::vector<std::int64_t> row_palette_;
  std::vector<std::int64_t> col_palette_;
  std::vector<std::uint64_t> col_bits_;
  std::vector<std::uint64_t> row_mask_;
  std::vector<std::uint64_t> col_mask_;
  std::vector<std::uint8_t> row_queued_;
  std::vector<std::uint8_t> col_queued_;
  std::vector<std::pair<std::size_t, std::uint32_t>> keyed_;

  bool have_first_ = false;
  Leaf first_;
  Leaf best_;
  std::vector<Permutation> gens_;
  GroupOrder order_ = 1;
  std::uint64_t nodes_ = 0;
};

std::vector<std::pair<std::int64_t, std::vector<std::uint64_t>>> colored_rows(const ColoredBinaryMatrix& m) {
  std::vector<std::pair<std::int64_t, std::vector<std::uint64_t>>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.bits.row(r);
    rows.emplace_back(m.row_colors[r], std::vector<std::uint64_t>(row.begin(), row.end()));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

CanonResult canonical_form(const ColoredBinaryMatrix& m, const SearchOptions& options) {
  if (m.cols() == 0) {
    CanonResult res;
    res.canonical = m;
    auto rows = colored_rows(m);
    for (std::size_t r = 0; r < rows.size(); ++r) res.canonical.row_colors[r] = rows[r].first;
    return res;
  }
  return Canonicalizer(m, options).run();
}

std::optional<Permutation> isomorphism_from(const CanonResult& a, const CanonResult& b) {
  if (!(a.canonical == b.canonical)) return std::nullopt;
  return b.labeling.inverse() * a.labeling;
}

std::optional<Permutation> is_isomorphic(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b,
                                         const SearchOptions& options) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::nullopt;
  auto sorted = [](std::vector<std::int64_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(a.row_colors) != sorted(b.row_colors) || sorted(a.col_colors) != sorted(b.col_colors))
    return std::nullopt;
  return isomorphism_from(canonical_form(a, options), canonical_form(b, options));
}

bool maps_onto(const ColoredBinaryMatrix& a, const ColoredBinaryMatrix& b, const Permutation& p) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || p.size() != a.cols()) return false;
  const auto pa = a.permute_columns(p);
  return pa.col_colors == b.col_colors && colored_rows(pa) == colored_rows(b);
}

std::string serialize(const ColoredBinaryMatrix& c) {
  std::ostringstream os;
  os << c.rows() << ' ' << c.cols() << "\ncols";
  for (auto x : c.col_colors) os << ' ' << x;
  os << '\n';
  std::string bits(c.cols(), '0');
  for (std::size_t r = 0; r < c.rows(); ++r) {
    for (std::size_t j = 0; j < c.cols(); ++j) bits[j] = c.bits.get(r, j) ? '1' : '0';
    os << c.row_colors[r] << ' ' << bits << '\n';
  }
  return os.str();
}

}  // namespace pgequiv
