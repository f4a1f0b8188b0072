#include "pgequiv_cli/commands.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pgequiv/codefile.hpp"
#include "pgequiv/random.hpp"

namespace pgequiv::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

namespace {

std::optional<std::uint64_t> env_uint(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const auto x = std::strtoull(v, &end, 10);
  if (*end || x == 0) throw std::invalid_argument(std::string(name) + " must be a positive integer");
  return x;
}

std::string elapsed_text(double seconds) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << seconds;
  return os.str();
}

template <typename Fn>
double timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_vector(std::ostream& out, std::span<const Elem> v) {
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ')';
}

void print_matrix(std::ostream& out, const Matrix& m, const char* indent) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << m(r, c);
    out << '\n';
  }
}

void print_images(std::ostream& out, const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p(i) + 1;
}

void print_elems(std::ostream& out, const std::vector<Elem>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
}

}  // namespace

EquivOptions options_from_env() {
  EquivOptions o;
  if (auto b = env_uint("PGEQUIV_BUDGET")) o.search.node_budget = *b;
  if (auto c = env_uint("PGEQUIV_COSET_CAP")) o.coset_cap = *c;
  return o;
}

FieldPtr make_field(unsigned q, std::optional<unsigned> modulus) {
  if (!modulus) return Field::make(q);
  unsigned p = 2;
  while (p <= q && q % p) ++p;
  unsigned m = 0;
  for (unsigned r = q; r > 1; r /= p) {
    if (r % p) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    ++m;
  }
  return Field::make(p, m, *modulus);
}

void cmd_points(unsigned k, const FieldPtr& field, std::ostream& out) {
  const PointTable table(field, k);
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << i + 1 << ": ";
    print_vector(out, table.point(i));
    out << '\n';
  }
}

void cmd_chi(const std::vector<GeneratorMatrix>& codes, std::ostream& out) {
  for (const auto& g : codes) {
    const auto geo = geometry(g.field_ptr(), g.k());
    const auto chi = characteristic_vector(g, geo->points());
    out << '(';
    for (std::size_t u = 0; u < chi.chi.size(); ++u) out << (u ? "," : "") << chi.chi[u];
    out << ")\n";
  }
}

int cmd_equiv(const GeneratorMatrix& g1, const GeneratorMatrix& g2, Algorithm algo, const EquivOptions& options,
              std::ostream& out) {
  EquivOptions o = options;
  o.allow_ceimpg_fallback = algo == Algorithm::kAuto;
  const Verdict v = algo == Algorithm::kCeimpg ? ceimpg_equiv(g1, g2, o) : cesimpg_equiv(g1, g2, o);

  out << "verdict: " << to_string(v.kind) << '\n';
  out << "algorithm: " << to_string(algo) << (v.used_ceimpg_fallback ? " (CEIMPG fallback)" : "") << '\n';
  if (v.witness) {
    const auto& w = *v.witness;
    out << "witness: Q * G2 = rho(G1 * P_sigma * diag(lambda))\n";
    out << "sigma: " << w.sigma.cycles() << '\n';
    out << "sigma images: ";
    print_images(out, w.sigma);
    out << "\nlambda: ";
    print_elems(out, w.lambdas);
    out << "\nrho: " << w.rho << "\nQ:\n";
    print_matrix(out, w.q, "  ");
    const bool ok = verify_witness(g1, g2, w);
    out << "witness check: " << (ok ? "passed" : "FAILED") << '\n';
    if (!ok) return kExitError;
  } else if (v.point_map) {
    const auto geo = geometry(g1.field_ptr(), g1.k());
    const auto chi = characteristic_vector(g1, geo->points());
    out << "point map (support of code 1):";
    for (std::size_t u = 0; u < chi.chi.size(); ++u)
      if (chi.chi[u]) out << ' ' << u + 1 << "->" << (*v.point_map)(u) + 1;
    out << '\n';
  }
  return v.equivalent() ? kExitEquivalent : kExitInequivalent;
}

ClassReport run_classify(const std::vector<GeneratorMatrix>& codes, const ClassifyOptions& options) {
  ClassReport r;
  r.total = codes.size();
  r.seconds = timed([&] { r.result = classify(codes, options); });
  std::ostringstream lines;
  for (const auto& c : r.result.classes) {
    lines << c.representative + 1 << ':';
    for (auto m : c.members) lines << ' ' << m + 1;
    lines << ' ' << sha256_hex(c.key) << '\n';
  }
  for (const auto& f : r.result.failures) lines << "failed " << f.index + 1 << '\n';
  r.digest = sha256_hex(lines.str());
  return r;
}

void print_report(const ClassReport& report, Algorithm algo, std::ostream& out) {
  out << "# classification (" << to_string(algo) << ")\n";
  std::size_t ordinal = 0;
  for (const auto& c : report.result.classes) {
    out << "class " << ++ordinal << ": representative " << c.representative + 1 << ", size " << c.members.size()
        << ", key " << sha256_hex(c.key).substr(0, 16) << '\n';
    out << "  members:";
    for (auto m : c.members) out << ' ' << m + 1;
    out << '\n';
  }
  for (const auto& f : report.result.failures) out << "failed: code " << f.index + 1 << ": " << f.message << '\n';
  out << "total codes: " << report.total << '\n';
  out << "total classes: " << report.result.classes.size() << '\n';
  out << "failed codes: " << report.result.failures.size() << '\n';
  out << "report digest: " << report.digest << '\n';
  out << "elapsed: " << elapsed_text(report.seconds) << " s\n";
}

std::vector<GeneratorMatrix> random_batch(std::size_t n, unsigned k, const FieldPtr& field, std::size_t count,
                                          std::uint64_t seed, bool projective) {
  Rng rng(seed);
  std::vector<GeneratorMatrix> codes;
  codes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) codes.push_back(random_code(n, k, field, rng, projective));
  return codes;
}

void cmd_gen(std::size_t n, unsigned k, const FieldPtr& field, std::size_t count, std::uint64_t seed,
             bool projective, std::ostream& out) {
  write_codes(out, random_batch(n, k, field, count, seed, projective));
}

void cmd_autgroup(const std::vector<GeneratorMatrix>& codes, const EquivOptions& options, std::ostream& out) {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    const auto& g = codes[i];
    if (codes.size() > 1) out << (i ? "\n" : "") << "# code " << i + 1 << '\n';
    const auto rep = code_aut_group(g, options);
    out << "|H1| = " << rep.h1_order << '\n';
    out << "components: " << rep.components << '\n';
    if (rep.composite_field) {
      out << "order not computed (composite field GF(" << g.field().q() << "))\n";
      continue;
    }
    if (rep.liftable_order) out << "liftable permutations: " << *rep.liftable_order << '\n';
    if (rep.code_order)
      out << "|Aut(C)| = " << *rep.code_order << '\n';
    else
      out << "|Aut(C)|: not determined (H1 too large to enumerate)\n";
    out << "generators: " << rep.generators.size() << '\n';
    for (std::size_t t = 0; t < rep.generators.size(); ++t) {
      const auto& a = rep.generators[t];
      out << "  tau " << t + 1 << ": " << a.tau.cycles() << "\n    lambda: ";
      print_elems(out, a.lambdas);
      out << "\n    Q:\n";
      print_matrix(out, a.q, "      ");
    }
  }
}

BenchRow parse_bench_row(const std::string& text) {
  BenchRow row;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  unsigned long long n = 0, count = 0;
  if (!(in >> row.q >> c1 >> row.k >> c2 >> n >> c3 >> count) || c1 != ':' || c2 != ':' || c3 != ':' ||
      (in >> std::ws, in.peek() != EOF))
    throw std::invalid_argument("bench row must look like q:k:n:count, got '" + text + "'");
  row.n = n;
  row.count = count;
  return row;
}

BenchResult run_bench(const BenchRow& row, std::uint64_t seed, unsigned jobs, const EquivOptions& options) {
  BenchResult r{row, 0, 0, 0, 0, 0};
  const auto codes = random_batch(row.n, row.k, Field::make(row.q), row.count, seed, false);
  ClassifyOptions co;
  co.jobs = jobs;
  co.equiv = options;
  co.algorithm = Algorithm::kCeimpg;
  const auto a = run_classify(codes, co);
  co.algorithm = Algorithm::kAuto;
  const auto b = run_classify(codes, co);
  r.ceimpg_classes = a.result.classes.size();
  r.ceimpg_seconds = a.seconds;
  r.cesimpg_classes = b.result.classes.size();
  r.cesimpg_seconds = b.seconds;
  r.failures = a.result.failures.size() + b.result.failures.size();
  return r;
}

void print_bench(const std::vector<BenchResult>& results, std::ostream& out) {
  out << std::setw(4) << "q" << std::setw(4) << "k" << std::setw(5) << "n" << std::setw(11) << "generated"
      << std::setw(16) << "ceimpg classes" << std::setw(11) << "ceimpg s" << std::setw(17) << "cesimpg classes"
      << std::setw(11) << "cesimpg s" << '\n';
  for (const auto& r : results) {
    out << std::setw(4) << r.row.q << std::setw(4) << r.row.k << std::setw(5) << r.row.n << std::setw(11)
        << r.row.count << std::setw(16) << r.ceimpg_classes << std::setw(11) << elapsed_text(r.ceimpg_seconds)
        << std::setw(17) << r.cesimpg_classes << std::setw(11) << elapsed_text(r.cesimpg_seconds) << '\n';
    if (r.failures) out << "  (" << r.failures << " codes failed)\n";
  }
}

}  // namespace pgequiv::cli
