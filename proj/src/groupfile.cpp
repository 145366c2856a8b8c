#include "fusionlab/groupfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace fusionlab {

namespace {

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_size(std::string_view tok, std::size_t& out) {
  if (tok.empty()) return false;
  std::size_t v = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    v = v * 10 + static_cast<std::size_t>(c - '0');
    if (v > 1'000'000'000) return false;
  }
  out = v;
  return true;
}

}  // namespace

Permutation parse_cycles(std::string_view text, std::size_t degree, std::size_t line_no) {
  Permutation perm(degree);
  for (std::size_t i = 0; i < degree; ++i) perm[i] = static_cast<std::uint16_t>(i);
  std::vector<char> moved(degree, 0);
  std::size_t i = 0;
  auto fail = [&](std::size_t col, const std::string& msg) -> ParseError { return ParseError(line_no, col + 1, msg); };

  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c != '(') throw fail(i, std::string("expected '(' but found '") + c + "'");
    std::size_t open = i++;
    std::vector<std::size_t> cycle;
    bool closed = false;
    while (i < text.size()) {
      char d = text[i];
      if (d == ')') {
        closed = true;
        ++i;
        break;
      }
      if (std::isspace(static_cast<unsigned char>(d)) || d == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(d))) throw fail(i, std::string("unexpected character '") + d + "'");
      std::size_t start = i;
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
        if (v > 100000) throw fail(start, "point out of range");
      }
      if (v < 1 || v > degree) throw fail(start, "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      cycle.push_back(v - 1);
    }
    if (!closed) throw fail(open, "unterminated cycle");
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      auto from = cycle[k];
      if (moved[from]) throw fail(open, "point " + std::to_string(from + 1) + " appears twice");
      moved[from] = 1;
      perm[from] = static_cast<std::uint16_t>(cycle[(k + 1) % cycle.size()]);
    }
  }
  return perm;
}

std::string format_cycles(const Permutation& perm) {
  std::string out;
  std::vector<char> seen(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i] || perm[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = perm[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

GroupPtr parse_group_text(std::string_view text) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      lines.push_back(text.substr(start, end - start));
      start = end + 1;
    }
  }
  std::string name = "G";
  enum class Mode { Header, Perm, Table } mode = Mode::Header;
  std::size_t n = 0;
  std::vector<Permutation> gens;
  std::vector<std::vector<Elem>> rows;
  bool have_group = false;

  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    auto line = trim(strip_comment(lines[ln]));
    if (line.empty()) continue;
    const std::size_t line_no = ln + 1;
    if (mode == Mode::Header) {
      auto toks = split_ws(line);
      if (toks[0] == "group") {
        if (toks.size() < 2) throw ParseError(line_no, 1, "group header needs a name");
        name = std::string(line.substr(line.find(toks[1])));
        have_group = true;
      } else if (toks[0] == "perm" || toks[0] == "table") {
        if (toks.size() != 2 || !parse_size(toks[1], n) || n == 0)
          throw ParseError(line_no, 1, "expected '" + std::string(toks[0]) + " <n>' with n >= 1");
        mode = toks[0] == "perm" ? Mode::Perm : Mode::Table;
      } else {
        throw ParseError(line_no, 1, "expected 'group', 'perm' or 'table'");
      }
    } else if (mode == Mode::Perm) {
      gens.push_back(parse_cycles(line, n, line_no));
    } else {
      auto toks = split_ws(line);
      if (rows.size() >= n) throw ParseError(line_no, 1, "more than " + std::to_string(n) + " table rows");
      if (toks.size() != n)
        throw ParseError(line_no, 1, "row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(n));
      std::vector<Elem> row;
      for (auto t : toks) {
        std::size_t v = 0;
        if (!parse_size(t, v) || v >= n)
          throw ParseError(line_no, static_cast<std::size_t>(t.data() - line.data()) + 1, "bad table entry");
        row.push_back(static_cast<Elem>(v));
      }
      rows.push_back(std::move(row));
    }
  }
  (void)have_group;
  if (mode == Mode::Header) throw ParseError(lines.size(), 1, "missing 'perm' or 'table' section");
  if (mode == Mode::Perm) {
    if (n > limits().perm_points)
      throw Error(ErrorCode::InvalidPermutation, "more than " + std::to_string(limits().perm_points) + " points");
    return FiniteGroup::from_permutations(n, gens, name);
  }
  if (rows.size() != n) throw ParseError(lines.size(), 1, "table has fewer than " + std::to_string(n) + " rows");
  return FiniteGroup::from_table(rows, name);
}

GroupPtr parse_group_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, 0, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group_text(ss.str());
}

std::string write_group_text(const FiniteGroup& G) {
  std::ostringstream out;
  out << "group " << G.name() << "\n";
  if (!G.perm_generators().empty() || G.degree() > 0) {
    out << "perm " << G.degree() << "\n";
    for (const auto& g : G.perm_generators()) out << format_cycles(g) << "\n";
  } else {
    out << "table " << G.order() << "\n";
    for (std::size_t a = 0; a < G.order(); ++a) {
      for (std::size_t b = 0; b < G.order(); ++b) {
        if (b) out << ' ';
        out << G.mul(static_cast<Elem>(a), static_cast<Elem>(b));
      }
      out << "\n";
    }
  }
  return out.str();
}

Elem parse_word(const FiniteGroup& G, std::string_view word) {
  word = trim(word);
  Elem result = 0;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { return ParseError(1, i + 1, msg + " in word '" + std::string(word) + "'"); };
  if (word == "1" || word.empty()) return 0;
  while (i < word.size()) {
    char c = word[i];
    Elem base;
    if (c == '#') {
      ++i;
      std::size_t v = 0, start = i;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) v = v * 10 + (word[i++] - '0');
      if (i == start || v >= G.order()) throw fail("bad element index");
      base = static_cast<Elem>(v);
    } else if (c >= 'a' && c <= 'z') {
      std::size_t g = static_cast<std::size_t>(c - 'a');
      if (g >= G.generator_elements().size()) throw fail(std::string("no generator '") + c + "'");
      base = G.generator_elements()[g];
      ++i;
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }
    long long exp = 1;
    if (i < word.size() && word[i] == '^') {
      ++i;
      bool neg = false;
      if (i < word.size() && word[i] == '-') {
        neg = true;
        ++i;
      }
      std::size_t start = i;
      long long v = 0;
      while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) v = v * 10 + (word[i++] - '0');
      if (i == start) throw fail("missing exponent");
      exp = neg ? -v : v;
    }
    result = G.mul(result, G.power(base, exp));
  }
  return result;
}

Subgroup parse_subgroup_spec(const GroupPtr& G, std::string_view spec) {
  std::vector<Elem> gens;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    auto w = trim(spec.substr(start, end - start));
    if (!w.empty()) gens.push_back(parse_word(*G, w));
    start = end + 1;
  }
  return generate(G, std::span<const Elem>(gens));
}

}  // namespace fusionlab
