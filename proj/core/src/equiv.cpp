#include "pgequiv/equiv.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "pgequiv/errors.hpp"

namespace pgequiv {

Geometry::Geometry(FieldPtr field, unsigned k) : table_(std::move(field), k) {}

const IncidenceMatrix& Geometry::incidence() const {
  std::call_once(once_, [this] { incidence_ = pgequiv::incidence(table_); });
  return incidence_;
}

std::shared_ptr<const Geometry> geometry(const FieldPtr& field, unsigned k) {
  static std::mutex mu;
  static std::map<std::tuple<unsigned, unsigned, unsigned>, std::shared_ptr<const Geometry>> cache;
  const auto key = std::make_tuple(field->q(), field->is_prime() ? 0u : field->modulus(), k);
  std::lock_guard lock(mu);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<Geometry>(field, k);
  return slot;
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::kEquivalent: return "equivalent";
    case VerdictKind::kInequivalent: return "inequivalent";
    case VerdictKind::kEquivalentByCeimpg: return "equivalent (by CEIMPG)";
  }
  return "?";
}

Matrix apply_frobenius(const Matrix& m, unsigned i) {
  const Field& f = m.field();
  if (i % f.m() == 0) return m;
  return m.map([&](Elem x) { return f.frobenius(x, i); });
}

namespace {

Matrix apply_frobenius_inverse(const Matrix& m, unsigned i) {
  const Field& f = m.field();
  if (i % f.m() == 0) return m;
  return m.map([&](Elem x) { return f.frobenius_inverse(x, i); });
}

// False when the codes trivially differ in parameters. Codes over the same
// order but different moduli cannot be compared entrywise.
bool comparable(const GeneratorMatrix& a, const GeneratorMatrix& b) {
  if (a.field().q() != b.field().q()) return false;
  if (!(a.field() == b.field()))
    throw std::invalid_argument("codes use different moduli for GF(" + std::to_string(a.field().q()) + ")");
  return a.k() == b.k() && a.n() == b.n();
}

std::string params_prefix(const GeneratorMatrix& g) {
  return std::to_string(g.field().q()) + " " + std::to_string(g.k()) + " " + std::to_string(g.n()) + "\n";
}

}  // namespace

bool verify_witness(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivalenceWitness& w) {
  if (!(g1.field() == g2.field()) || g1.k() != g2.k() || g1.n() != g2.n()) return false;
  const Field& f = g1.field();
  const std::size_t k = g1.k();
  const std::size_t n = g1.n();
  if (w.sigma.size() != n || w.lambdas.size() != n || w.rho >= f.m()) return false;
  if (w.q.rows() != k || w.q.cols() != k || !(w.q.field() == f)) return false;
  for (auto l : w.lambdas)
    if (l == 0 || l >= f.q()) return false;
  if (rank(w.q) != k) return false;

  const Matrix lhs = w.q * g2.matrix();
  const Permutation inv = w.sigma.inverse();
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t src = inv(s);
    for (std::size_t t = 0; t < k; ++t) {
      const Elem rhs = f.frobenius(f.mul(w.lambdas[s], g1.matrix()(t, src)), w.rho);
      if (lhs(t, s) != rhs) return false;
    }
  }
  return true;
}

EquivalenceWitness invert_witness(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivalenceWitness& w) {
  (void)g2;
  const Field& f = g1.field();
  EquivalenceWitness out;
  out.sigma = w.sigma.inverse();
  out.rho = (f.m() - w.rho % f.m()) % f.m();
  auto qinv = inverse(apply_frobenius_inverse(w.q, w.rho));
  if (!qinv) throw std::invalid_argument("witness matrix is singular");
  out.q = std::move(*qinv);
  out.lambdas.resize(g1.n());
  for (std::size_t j = 0; j < g1.n(); ++j) out.lambdas[j] = f.frobenius(f.inv(w.lambdas[w.sigma(j)]), w.rho);
  return out;
}

// ---------------------------------------------------------------------------

ColoredBinaryMatrix build_ceimpg_matrix(const CharacteristicVector& chi, const IncidenceMatrix& inc) {
  const std::size_t t = inc.bits.rows();
  if (chi.chi.size() != t || chi.k != inc.k || chi.q != inc.q)
    throw std::invalid_argument("characteristic vector and incidence matrix disagree on (k, q)");
  ColoredBinaryMatrix m;
  m.bits = BitMatrix(t + 1, t);
  for (std::size_t i = 0; i < t; ++i) {
    auto src = inc.bits.row(i);
    std::copy(src.begin(), src.end(), m.bits.row(i).begin());
  }
  m.row_colors.assign(t + 1, 0);
  m.row_colors[t] = 1;
  m.col_colors.resize(t);
  for (std::size_t u = 0; u < t; ++u) {
    m.col_colors[u] = chi.chi[u];
    if (chi.chi[u]) m.bits.set(t, u);
  }
  return m;
}

bool ceimpg_needs_lift(unsigned k, unsigned q) { return k == 2 && q >= 5; }

GeneratorMatrix ceimpg_lift(const GeneratorMatrix& g) {
  Matrix m(g.field_ptr(), g.k() + 1, g.n() + 1);
  for (std::size_t r = 0; r < g.k(); ++r)
    for (std::size_t c = 0; c < g.n(); ++c) m(r, c) = g.matrix()(r, c);
  m(g.k(), g.n()) = 1;
  return GeneratorMatrix(std::move(m));
}

namespace {

struct CeimpgData {
  bool lifted = false;
  CanonResult canon;
};

CeimpgData ceimpg_canon(const GeneratorMatrix& g, const EquivOptions& options) {
  CeimpgData d;
  d.lifted = ceimpg_needs_lift(g.k(), g.field().q());
  const GeneratorMatrix& h = d.lifted ? ceimpg_lift(g) : g;
  auto geo = geometry(h.field_ptr(), h.k());
  const auto chi = characteristic_vector(h, geo->points());
  d.canon = canonical_form(build_ceimpg_matrix(chi, geo->incidence()), options.search);
  return d;
}

}  // namespace

std::string ceimpg_key(const GeneratorMatrix& g, const EquivOptions& options) {
  return params_prefix(g) + serialize(ceimpg_canon(g, options).canon.canonical);
}

Verdict ceimpg_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivOptions& options) {
  Verdict v;
  if (!comparable(g1, g2)) return v;
  const auto a = ceimpg_canon(g1, options);
  const auto b = ceimpg_canon(g2, options);
  auto iso = isomorphism_from(a.canon, b.canon);
  if (!iso) return v;
  v.kind = VerdictKind::kEquivalentByCeimpg;
  if (!a.lifted) v.point_map = std::move(iso);
  return v;
}

// ---------------------------------------------------------------------------

namespace {

bool dot_nonzero(const Field& f, std::span<const Elem> u, const Matrix& g, std::size_t col) {
  Elem s = 0;
  for (std::size_t t = 0; t < u.size(); ++t) s = f.add(s, f.mul(u[t], g(t, col)));
  return s != 0;
}

// Rows of `full` that are not all ones (or all rows when !strip).
std::vector<std::size_t> kept_rows(const BitMatrix& full, bool strip) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < full.rows(); ++i)
    if (!strip || full.row_weight(i) != full.cols()) rows.push_back(i);
  return rows;
}

BitMatrix select_rows(const BitMatrix& full, const std::vector<std::size_t>& rows) {
  BitMatrix out(rows.size(), full.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto src = full.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace

ColoredBinaryMatrix build_shortened(const GeneratorMatrix& g, const PointTable& table, bool strip_full_rows) {
  const Field& f = g.field();
  const auto points = column_points(g, table);
  const auto chi = characteristic_vector(g, table);
  BitMatrix full(table.size(), g.n());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto u = table.point(i);
    for (std::size_t j = 0; j < g.n(); ++j)
      if (dot_nonzero(f, u, g.matrix(), j)) full.set(i, j);
  }
  ColoredBinaryMatrix m;
  const auto rows = kept_rows(full, strip_full_rows);
  m.bits = select_rows(full, rows);
  m.row_colors.assign(rows.size(), 0);
  m.col_colors.assign(g.n(), 0);
  if (!chi.is_projective())
    for (std::size_t j = 0; j < g.n(); ++j) m.col_colors[j] = chi.chi[points[j]];
  return m;
}

LiftResult monomial_from_sigma(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const Permutation& sigma,
                               unsigned rho, std::uint64_t span_cap) {
  if (!(g1.field() == g2.field()) || g1.k() != g2.k() || g1.n() != g2.n())
    throw std::invalid_argument("monomial_from_sigma: codes have different parameters");
  const Field& f = g1.field();
  const std::size_t k = g1.k();
  const std::size_t n = g1.n();
  if (sigma.size() != n) throw std::invalid_argument("monomial_from_sigma: permutation degree differs from n");
  if (rho >= f.m()) throw std::invalid_argument("monomial_from_sigma: field automorphism index out of range");

  const auto red = rref(apply_frobenius_inverse(g2.matrix(), rho));
  const Matrix& r = red.reduced;
  const auto& pivots = red.pivots;
  const Matrix& a = g1.matrix();
  const Permutation src = sigma.inverse();
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;

  // Unknowns lambda_0..lambda_{n-1}. Column s of G1 P_sigma D is
  // lambda_s * g1_{src(s)}; non-pivot columns of R are combinations of the
  // pivot ones.
  Matrix sys(g1.field_ptr(), k * (n - k), n);
  std::size_t eq = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (is_pivot[s]) continue;
    for (std::size_t t = 0; t < k; ++t, ++eq) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t js = pivots[i];
        sys(eq, js) = f.add(sys(eq, js), f.mul(r(i, s), a(t, src(js))));
      }
      sys(eq, s) = f.sub(sys(eq, s), a(t, src(s)));
    }
  }

  std::vector<Elem> lambdas;
  if (n == k) {
    lambdas.assign(n, 1);
  } else {
    const auto basis = nullspace_basis(sys);
    if (basis.empty()) return {};
    auto found = all_nonzero_in_span(f, basis, span_cap);
    if (found.status == SpanSearch::kBudgetExceeded) return {LiftStatus::kBudgetExceeded, {}, {}};
    if (found.status == SpanSearch::kNone) return {};
    lambdas = std::move(found.vector);
  }

  Matrix qpp(g1.field_ptr(), k, k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t js = pivots[i];
    for (std::size_t t = 0; t < k; ++t) qpp(t, i) = f.mul(lambdas[js], a(t, src(js)));
  }
  LiftResult out{LiftStatus::kLifted, apply_frobenius(qpp * red.transform, rho), std::move(lambdas)};
  if (!verify_witness(g1, g2, EquivalenceWitness{sigma, out.lambdas, rho, out.q}))
    throw std::logic_error("monomial_from_sigma produced a non-verifying witness");
  return out;
}

// ---------------------------------------------------------------------------

std::string ShortenedCode::key() const { return params_prefix(code) + serialize(canon.canonical); }

ShortenedCode prepare_shortened(const GeneratorMatrix& g, const EquivOptions& options) {
  ShortenedCode sc{g, geometry(g.field_ptr(), g.k()), {}, {}, {}, {}, {}};
  const PointTable& table = sc.geometry->points();
  const Field& f = g.field();
  const auto points = column_points(g, table);
  std::map<std::size_t, std::uint32_t> class_of_point;
  sc.column_class.resize(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) {
    auto [it, fresh] = class_of_point.emplace(points[j], static_cast<std::uint32_t>(sc.class_points.size()));
    if (fresh) {
      sc.class_points.push_back(points[j]);
      sc.class_columns.emplace_back();
    }
    sc.column_class[j] = it->second;
    sc.class_columns[it->second].push_back(static_cast<std::uint32_t>(j));
  }

  const std::size_t classes = sc.class_points.size();
  BitMatrix full(table.size(), classes);
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto u = table.point(i);
    for (std::size_t c = 0; c < classes; ++c)
      if (dot_nonzero(f, u, g.matrix(), sc.class_columns[c].front())) full.set(i, c);
  }
  const auto rows = kept_rows(full, options.strip_full_rows);
  sc.merged.bits = select_rows(full, rows);
  sc.merged.row_colors.assign(rows.size(), 0);
  sc.merged.col_colors.resize(classes);
  for (std::size_t c = 0; c < classes; ++c)
    sc.merged.col_colors[c] = static_cast<std::int64_t>(sc.class_columns[c].size());
  sc.canon = canonical_form(sc.merged, options.search);
  return sc;
}

Permutation expand_merged(const ShortenedCode& a, const ShortenedCode& b, const Permutation& merged_sigma) {
  std::vector<std::uint32_t> image(a.code.n());
  for (std::size_t c = 0; c < a.class_columns.size(); ++c) {
    const auto& from = a.class_columns[c];
    const auto& to = b.class_columns[merged_sigma(c)];
    if (from.size() != to.size()) throw std::logic_error("merged permutation does not preserve multiplicities");
    for (std::size_t t = 0; t < from.size(); ++t) image[from[t]] = to[t];
  }
  return Permutation(std::move(image));
}

namespace {

enum class Attempt { kFound, kNone, kInconclusive };

Attempt try_lift(const ShortenedCode& a, const ShortenedCode& b, const Permutation& merged_sigma,
                 const EquivOptions& options, std::optional<EquivalenceWitness>& out) {
  const Permutation sigma = expand_merged(a, b, merged_sigma);
  bool inconclusive = false;
  for (unsigned rho = 0; rho < a.code.field().m(); ++rho) {
    auto lift = monomial_from_sigma(a.code, b.code, sigma, rho, options.span_cap);
    if (lift.status == LiftStatus::kLifted) {
      out = EquivalenceWitness{sigma, std::move(lift.lambdas), rho, std::move(lift.q)};
      return Attempt::kFound;
    }
    inconclusive = inconclusive || lift.status == LiftStatus::kBudgetExceeded;
  }
  return inconclusive ? Attempt::kInconclusive : Attempt::kNone;
}

// Merged-column map induced by a CEIMPG point map, if it respects classes.
std::optional<Permutation> merged_from_point_map(const ShortenedCode& a, const ShortenedCode& b,
                                                 const Permutation& point_map) {
  std::map<std::size_t, std::uint32_t> class_of_b;
  for (std::size_t c = 0; c < b.class_points.size(); ++c)
    class_of_b.emplace(b.class_points[c], static_cast<std::uint32_t>(c));
  std::vector<std::uint32_t> image(a.class_points.size());
  for (std::size_t c = 0; c < a.class_points.size(); ++c) {
    auto it = class_of_b.find(point_map(a.class_points[c]));
    if (it == class_of_b.end() || b.class_columns[it->second].size() != a.class_columns[c].size())
      return std::nullopt;
    image[c] = it->second;
  }
  return Permutation(std::move(image));
}

}  // namespace

Verdict cesimpg_equiv(const ShortenedCode& a, const ShortenedCode& b, const EquivOptions& options) {
  Verdict v;
  if (!comparable(a.code, b.code)) return v;
  auto iso = isomorphism_from(a.canon, b.canon);
  if (!iso) return v;

  const PermGroup h1(a.merged.cols(), a.canon.generators);
  bool conclusive = h1.order() <= options.coset_cap;
  if (conclusive) {
    std::optional<EquivalenceWitness> witness;
    h1.for_each_element([&](const Permutation& tau) {
      switch (try_lift(a, b, *iso * tau, options, witness)) {
        case Attempt::kFound: return false;
        case Attempt::kInconclusive: conclusive = false; return true;
        case Attempt::kNone: return true;
      }
      return true;
    });
    if (witness) {
      v.kind = VerdictKind::kEquivalent;
      v.witness = std::move(witness);
      return v;
    }
    if (conclusive) return v;
  }

  if (!options.allow_ceimpg_fallback)
    throw ResourceError("automorphism coset too large for CESIMPG (|H1| = " + h1.order().str() + ")");
  v = ceimpg_equiv(a.code, b.code, options);
  v.used_ceimpg_fallback = true;
  if (v.point_map) {
    if (auto merged = merged_from_point_map(a, b, *v.point_map)) {
      std::optional<EquivalenceWitness> witness;
      if (try_lift(a, b, *merged, options, witness) == Attempt::kFound) {
        v.kind = VerdictKind::kEquivalent;
        v.witness = std::move(witness);
      }
    }
  }
  return v;
}

Verdict cesimpg_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, const EquivOptions& options) {
  if (!comparable(g1, g2)) return {};
  std::optional<ShortenedCode> a;
  std::optional<ShortenedCode> b;
  try {
    a = prepare_shortened(g1, options);
    b = prepare_shortened(g2, options);
  } catch (const ResourceError&) {
    if (!options.allow_ceimpg_fallback) throw;
    Verdict v = ceimpg_equiv(g1, g2, options);
    v.used_ceimpg_fallback = true;
    return v;
  }
  return cesimpg_equiv(*a, *b, options);
}

// ---------------------------------------------------------------------------

std::size_t count_components(const GeneratorMatrix& g) {
  const Field& f = g.field();
  const std::size_t k = g.k();
  const std::size_t n = g.n();
  const Matrix& a = g.matrix();
  // Unknowns: Q (row-major, k*k) followed by d_0..d_{n-1}.
  Matrix sys(g.field_ptr(), k * n, k * k + n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t row = j * k + t;
      for (std::size_t s = 0; s < k; ++s) sys(row, t * k + s) = a(s, j);
      sys(row, k * k + j) = f.neg(a(t, j));
    }
  return sys.cols() - rank(sys);
}

AutomorphismReport code_aut_group(const GeneratorMatrix& g, const EquivOptions& options) {
  AutomorphismReport report;
  const ShortenedCode sc = prepare_shortened(g, options);
  const PermGroup h1(sc.merged.cols(), sc.canon.generators);
  GroupOrder duplicates = 1;
  for (const auto& cls : sc.class_columns)
    for (std::size_t i = 2; i <= cls.size(); ++i) duplicates *= i;
  report.h1_order = h1.order() * duplicates;
  report.components = count_components(g);

  if (!g.field().is_prime()) {
    report.composite_field = true;
    return report;
  }

  auto lift = [&](const Permutation& tau) -> std::optional<CodeAutomorphism> {
    auto r = monomial_from_sigma(g, g, tau, 0, options.span_cap);
    if (r.status == LiftStatus::kBudgetExceeded) throw ResourceError("span search budget exceeded");
    if (r.status != LiftStatus::kLifted) return std::nullopt;
    return CodeAutomorphism{std::move(r.q), tau, std::move(r.lambdas)};
  };

  // Permutations within classes of repeated points always lift.
  for (const auto& cls : sc.class_columns) {
    if (cls.size() < 2) continue;
    std::vector<std::uint32_t> swap(g.n());
    std::iota(swap.begin(), swap.end(), 0u);
    std::swap(swap[cls[0]], swap[cls[1]]);
    std::vector<std::uint32_t> cycle(g.n());
    std::iota(cycle.begin(), cycle.end(), 0u);
    for (std::size_t t = 0; t < cls.size(); ++t) cycle[cls[t]] = cls[(t + 1) % cls.size()];
    for (auto* img : {&swap, &cycle}) {
      auto a = lift(Permutation(*img));
      if (!a) throw std::logic_error("permutation of repeated columns failed to lift");
      if (!a->tau.is_identity()) report.generators.push_back(std::move(*a));
    }
    if (cls.size() == 2) report.generators.pop_back();
  }

  bool all_lift = true;
  std::vector<CodeAutomorphism> lifted;
  for (const auto& gen : sc.canon.generators) {
    auto a = lift(expand_merged(sc, sc, gen));
    if (!a) {
      all_lift = false;
      break;
    }
    lifted.push_back(std::move(*a));
  }

  if (all_lift) {
    report.liftable_order = report.h1_order;
    for (auto& a : lifted) report.generators.push_back(std::move(a));
  } else if (h1.order() <= options.coset_cap) {
    // Collect liftable elements, keeping those outside the group generated so far.
    std::vector<Permutation> kept;
    std::uint64_t count = 0;
    h1.for_each_element([&](const Permutation& tau) {
      const Permutation full = expand_merged(sc, sc, tau);
      auto a = lift(full);
      if (!a) return true;
      ++count;
      if (!tau.is_identity() && !PermGroup(sc.merged.cols(), kept).contains(tau)) {
        kept.push_back(tau);
        report.generators.push_back(std::move(*a));
      }
      return true;
    });
    report.liftable_order = GroupOrder(count) * duplicates;
  } else {
    report.partial = true;
    for (auto& a : lifted) report.generators.push_back(std::move(a));
  }

  if (report.liftable_order) {
    GroupOrder scalars = 1;
    for (std::size_t i = 0; i < report.components; ++i) scalars *= g.field().q() - 1;
    report.code_order = scalars * *report.liftable_order;
  }
  return report;
}

}  // namespace pgequiv
