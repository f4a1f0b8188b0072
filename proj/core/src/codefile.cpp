#include "pgequiv/codefile.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <utility>

namespace pgequiv {

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_uint(std::string_view w, unsigned long long& out) {
  auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), out);
  return ec == std::errc() && ptr == w.data() + w.size();
}

struct Line {
  std::size_t number;
  std::string text;
};

class Reader {
 public:
  Reader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  std::vector<GeneratorMatrix> run() {
    std::vector<GeneratorMatrix> codes;
    Line line{};
    while (next_content(line)) codes.push_back(read_one(line));
    return codes;
  }

 private:
  [[noreturn]] void fail(std::size_t line, const std::string& message) const {
    throw ParseError(source_, line, message);
  }

  // Next line that is neither blank nor a comment.
  bool next_content(Line& out) {
    while (read_line(out))
      if (!is_blank(out.text) && !is_comment(out.text)) return true;
    return false;
  }

  bool read_line(Line& out) {
    if (!std::getline(in_, out.text)) return false;
    out.number = ++line_no_;
    return true;
  }

  static bool is_comment(const std::string& s) {
    const auto p = s.find_first_not_of(" \t");
    return p != std::string::npos && s[p] == '#';
  }
  static bool is_blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

  FieldPtr field_for(std::size_t line, unsigned long long q, std::optional<unsigned long long> modulus) {
    if (q < 2 || q > Field::kMaxOrder) fail(line, "field order " + std::to_string(q) + " out of range");
    const auto key = std::make_pair(q, modulus.value_or(0));
    if (auto it = fields_.find(key); it != fields_.end()) return it->second;
    FieldPtr f;
    try {
      if (!modulus) {
        f = Field::make(static_cast<unsigned>(q));
      } else {
        unsigned p = 2;
        while (q % p) ++p;
        unsigned m = 0;
        for (auto r = q; r > 1; r /= p) {
          if (r % p) fail(line, std::to_string(q) + " is not a prime power");
          ++m;
        }
        f = Field::make(p, m, static_cast<unsigned>(*modulus));
      }
    } catch (const std::invalid_argument& e) {
      fail(line, e.what());
    }
    fields_.emplace(key, f);
    return f;
  }

  GeneratorMatrix read_one(const Line& header) {
    const auto words = split_words(header.text);
    if (words.size() != 3 && words.size() != 4)
      fail(header.number, "expected header \"q k n [modulus]\"");
    unsigned long long v[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < words.size(); ++i)
      if (!parse_uint(words[i], v[i])) fail(header.number, "bad header field '" + std::string(words[i]) + "'");
    const auto k = v[1];
    const auto n = v[2];
    if (k < 1) fail(header.number, "dimension k must be at least 1");
    if (n < 1) fail(header.number, "length n must be at least 1");
    if (k > 4096 || n > (1u << 20)) fail(header.number, "matrix dimensions too large");
    auto field = field_for(header.number, v[0], words.size() == 4 ? std::optional(v[3]) : std::nullopt);

    Matrix m(field, k, n);
    for (std::size_t r = 0; r < k; ++r) {
      Line row{};
      if (!read_line(row)) fail(line_no_, "expected " + std::to_string(k) + " matrix rows");
      if (is_blank(row.text)) fail(row.number, "expected " + std::to_string(k) + " matrix rows");
      if (is_comment(row.text)) {
        --r;
        continue;
      }
      const auto entries = split_words(row.text);
      if (entries.size() != n)
        fail(row.number, "expected " + std::to_string(n) + " entries, found " + std::to_string(entries.size()));
      for (std::size_t c = 0; c < n; ++c) {
        unsigned long long x;
        if (!parse_uint(entries[c], x) || x >= field->q())
          fail(row.number, "entry '" + std::string(entries[c]) + "' is not an element of GF(" +
                               std::to_string(field->q()) + ")");
        m(r, c) = static_cast<Elem>(x);
      }
    }
    try {
      return GeneratorMatrix(std::move(m));
    } catch (const std::domain_error& e) {
      fail(header.number, e.what());
    }
  }

  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
  std::map<std::pair<unsigned long long, unsigned long long>, FieldPtr> fields_;
};

}  // namespace

std::vector<GeneratorMatrix> read_codes(std::istream& in, const std::string& source) {
  return Reader(in, source).run();
}

std::vector<GeneratorMatrix> read_codes_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_codes(in, path);
}

void write_code(std::ostream& out, const GeneratorMatrix& g) {
  const Field& f = g.field();
  out << f.q() << ' ' << g.k() << ' ' << g.n();
  if (!f.is_prime()) out << ' ' << f.modulus();
  out << '\n';
  for (std::size_t r = 0; r < g.k(); ++r) {
    for (std::size_t c = 0; c < g.n(); ++c) out << (c ? " " : "") << g.matrix()(r, c);
    out << '\n';
  }
}

void write_codes(std::ostream& out, const std::vector<GeneratorMatrix>& codes) {
  for (std::size_t i = 0; i < codes.size(); ++i) {
    if (i) out << '\n';
    write_code(out, codes[i]);
  }
}

}  // namespace pgequiv
