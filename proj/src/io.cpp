#include "engel/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "engel/errors.hpp"
#include "engel/format.hpp"

namespace engel::io {

using quotient::AlgebraTable;
using quotient::BasisElement;

void write_table(std::ostream& out, const AlgebraTable& t) {
  const quotient::TableHeader& h = t.header();
  out << "%ENGELALG " << kFormatVersion << '\n';
  out << "p " << h.p << '\n';
  out << "rank " << h.rank << '\n';
  out << "engel " << h.engel_n << '\n';
  out << "cap " << h.class_cap << '\n';
  out << "mdegcap " << (h.multidegree_cap ? std::to_string(*h.multidegree_cap) : "none") << '\n';
  if (h.weight_bound) out << "wbound " << h.weight_bound->to_string() << '\n';
  out << "dim " << t.dim() << '\n';
  for (std::size_t i = 0; i < t.dim(); ++i)
    out << "basis " << i << ' ' << t.basis()[i].degree.to_string() << ' ' << t.basis()[i].word << '\n';
  std::vector<std::uint64_t> keys;
  keys.reserve(t.products().size());
  for (const auto& [k, v] : t.products())
    if (!v.is_zero()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (std::uint64_t k : keys)
    out << "sc " << (k >> 32) << ' ' << (k & 0xffffffffu) << ' ' << format_entries(t.products().at(k)) << '\n';
}

namespace {

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Next line, or nullopt at end of input.
  std::optional<std::string> next() {
    std::string s;
    if (!std::getline(in_, s)) return std::nullopt;
    ++line_;
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
  }
  std::string require(const char* what) {
    auto s = next();
    if (!s) throw ParseError(line_ + 1, std::string("unexpected end of file, expected ") + what);
    return *s;
  }
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep = ' ') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  if (sep == ' ') {
    while (ss >> cur) out.push_back(cur);
  } else {
    while (std::getline(ss, cur, sep)) out.push_back(cur);
  }
  return out;
}

std::uint64_t number(const std::string& s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, std::string("bad ") + what + " '" + s + "'");
  return v;
}

std::string keyed(Reader& r, const char* key) {
  const std::string s = r.require(key);
  auto parts = split(s);
  if (parts.size() != 2 || parts[0] != key)
    throw ParseError(r.line(), std::string("expected '") + key + " <value>'");
  return parts[1];
}

MultiDegree degree_of(const std::string& s, std::size_t rank, std::size_t line) {
  std::vector<unsigned> counts;
  for (const std::string& c : split(s, ',')) counts.push_back(static_cast<unsigned>(number(c, line, "multidegree")));
  if (counts.size() != rank) throw ParseError(line, "multidegree has the wrong number of entries");
  try {
    return MultiDegree::from_counts(counts);
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
}

// Rebuilds the e = [parent, g] links from the nested-paren words.
void link_parents(std::vector<BasisElement>& basis) {
  std::unordered_map<std::string, std::int32_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i].word, static_cast<std::int32_t>(i));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    BasisElement& b = basis[i];
    const std::string& w = b.word;
    b.parent = quotient::kNoParent;
    const std::size_t comma = w.rfind(",g");
    if (w.size() > 1 && w[0] == 'g') {
      b.generator = static_cast<std::uint32_t>(std::stoul(w.substr(1)) - 1);
    } else if (w.size() > 4 && w.front() == '(' && w.back() == ')' && comma != std::string::npos) {
      b.generator = static_cast<std::uint32_t>(std::stoul(w.substr(comma + 2, w.size() - comma - 3)) - 1);
      auto it = index.find(w.substr(1, comma - 1));
      if (it != index.end() && static_cast<std::size_t>(it->second) < i) b.parent = it->second;
    }
  }
}

}  // namespace

AlgebraTable read_table(std::istream& in) {
  Reader r(in);
  const std::string tag = r.require("version tag");
  auto parts = split(tag);
  if (parts.empty() || parts[0] != "%ENGELALG") throw ParseError(r.line(), "missing %ENGELALG tag");
  if (parts.size() != 2 || parts[1] != std::to_string(kFormatVersion))
    throw VersionError("unsupported table format version '" + (parts.size() > 1 ? parts[1] : "") + "'");

  quotient::TableHeader h;
  h.p = static_cast<std::uint32_t>(number(keyed(r, "p"), r.line(), "prime"));
  if (!gf::is_prime(h.p) || h.p >= (1u << 16)) throw ParseError(r.line(), "p must be a prime below 65536");
  h.rank = number(keyed(r, "rank"), r.line(), "rank");
  if (h.rank < 1 || h.rank > MultiDegree::kMaxRank) throw ParseError(r.line(), "unsupported rank");
  h.engel_n = static_cast<unsigned>(number(keyed(r, "engel"), r.line(), "Engel degree"));
  h.class_cap = static_cast<unsigned>(number(keyed(r, "cap"), r.line(), "cap"));
  const std::string mdeg = keyed(r, "mdegcap");
  if (mdeg != "none") h.multidegree_cap = static_cast<unsigned>(number(mdeg, r.line(), "mdegcap"));

  std::string line = r.require("dim");
  parts = split(line);
  if (!parts.empty() && parts[0] == "wbound" && parts.size() == 2) {
    h.weight_bound = degree_of(parts[1], h.rank, r.line());
    line = r.require("dim");
    parts = split(line);
  }
  if (parts.size() != 2 || parts[0] != "dim") throw ParseError(r.line(), "expected 'dim <d>'");
  const std::size_t dim = number(parts[1], r.line(), "dimension");

  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < dim; ++i) {
    parts = split(r.require("basis line"));
    if (parts.size() != 4 || parts[0] != "basis") throw ParseError(r.line(), "expected 'basis <i> <mdeg> <word>'");
    if (number(parts[1], r.line(), "basis index") != i) throw ParseError(r.line(), "basis indices must be 0..dim-1 in order");
    BasisElement b;
    b.degree = degree_of(parts[2], h.rank, r.line());
    if (i > 0 && b.degree < basis.back().degree) throw ParseError(r.line(), "basis not sorted by multidegree");
    b.word = parts[3];
    basis.push_back(std::move(b));
  }
  link_parents(basis);

  const gf::PrimeField field(h.p);
  AlgebraTable::ProductMap products;
  while (auto s = r.next()) {
    if (s->empty()) continue;
    parts = split(*s);
    if (parts.size() < 3 || parts[0] != "sc") throw ParseError(r.line(), "expected 'sc <i> <j> <k>:<c> ...'");
    const std::uint64_t i = number(parts[1], r.line(), "index"), j = number(parts[2], r.line(), "index");
    if (i >= dim || j >= dim) throw ParseError(r.line(), "basis index out of range");
    if (i >= j)
      throw InvariantError("antisymmetry: line " + std::to_string(r.line()) + " stores [e_" + std::to_string(i) +
                           ", e_" + std::to_string(j) + "]; only i < j may be listed");
    std::vector<gf::Entry> entries;
    for (std::size_t t = 3; t < parts.size(); ++t) {
      auto kc = split(parts[t], ':');
      if (kc.size() != 2) throw ParseError(r.line(), "bad term '" + parts[t] + "'");
      const std::uint64_t k = number(kc[0], r.line(), "index"), c = number(kc[1], r.line(), "coefficient");
      if (k >= dim) throw ParseError(r.line(), "basis index out of range");
      if (c >= h.p) throw ParseError(r.line(), "coefficient outside 0..p-1");
      if (!entries.empty() && entries.back().index >= k) throw ParseError(r.line(), "terms must be sorted by index");
      if (c) entries.push_back({static_cast<std::uint32_t>(k), static_cast<gf::Residue>(c)});
    }
    const auto key = AlgebraTable::pair_key(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
    if (products.count(key)) throw ParseError(r.line(), "pair listed twice");
    if (!entries.empty()) products.emplace(key, gf::FpVector::from_sorted(dim, std::move(entries)));
  }
  AlgebraTable table(std::move(h), std::move(basis), std::move(products));
  validate(table);
  return table;
}

void save(const AlgebraTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  write_table(out, table);
  if (!out) throw ConfigError("write failed for " + path.string());
}

AlgebraTable load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  return read_table(in);
}

void validate(const AlgebraTable& t) {
  const std::size_t d = t.dim();
  auto deg = [&](std::size_t i) { return t.basis()[i].degree; };
  auto name = [](std::size_t i) { return "e_" + std::to_string(i); };

  for (const auto& [key, v] : t.products()) {
    auto i = static_cast<std::uint32_t>(key >> 32), j = static_cast<std::uint32_t>(key & 0xffffffffu);
    const MultiDegree target = deg(i) + deg(j);
    for (const gf::Entry& e : v.entries())
      if (deg(e.index) != target)
        throw InvariantError("grading: [" + name(i) + ", " + name(j) + "] has a term " + name(e.index) +
                             " of multidegree " + deg(e.index).to_string() + ", expected " + target.to_string());
  }

  const unsigned top = t.top_degree();
  const gf::PrimeField& F = t.field();
  auto unit = [&](std::size_t i) { return gf::FpVector::unit(d, static_cast<std::uint32_t>(i)); };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      if (deg(i).total() + deg(j).total() + 1 > top) break;
      const gf::FpVector ij = t.basis_bracket(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
      for (std::size_t k = j + 1; k < d; ++k) {
        if (deg(i).total() + deg(j).total() + deg(k).total() > top) break;
        gf::FpVector sum = t.bracket(ij, unit(k));
        sum = gf::add(sum, t.bracket(t.basis_bracket(static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)), unit(i)), F);
        sum = gf::add(sum, t.bracket(t.basis_bracket(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(i)), unit(j)), F);
        if (!sum.is_zero())
          throw InvariantError("Jacobi fails for (" + name(i) + ", " + name(j) + ", " + name(k) + ")");
      }
    }

  const unsigned n = t.header().engel_n;
  if (n == 0) return;
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      if (deg(v).total() + n * deg(u).total() > top) continue;
      gf::FpVector x = unit(v);
      for (unsigned s = 0; s < n && !x.is_zero(); ++s) x = t.bracket(x, unit(u));
      if (!x.is_zero())
        throw InvariantError("Engel identity fails: [" + name(v) + ", " + name(u) + "^" + std::to_string(n) + "] != 0");
    }
}

}  // namespace engel::io
