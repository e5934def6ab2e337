#include "klac/cover.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace klac {

std::string format_scheme(const CoverScheme& s) {
  std::ostringstream out;
  out << s.k << ' ' << s.a_k.row_count() << ' ' << s.a_k.dim << '\n';
  for (const BitVec& row : s.a_k.rows) out << row.to_string() << '\n';
  for (const auto& [target, witness] : s.witnesses) {
    out << target << ':';
    for (int idx : witness) out << ' ' << idx;
    out << '\n';
  }
  return out.str();
}

namespace {

struct LineReader {
  std::string_view text;
  size_t pos = 0;
  int line = 0;

  // Next significant line (skips blanks and '#' comments); false at end.
  bool next(std::string_view* out) {
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      size_t end = (eol == std::string_view::npos) ? text.size() : eol;
      std::string_view candidate = text.substr(pos, end - pos);
      pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
      ++line;
      if (!candidate.empty() && candidate.back() == '\r') {
        candidate.remove_suffix(1);
      }
      size_t first = candidate.find_first_not_of(" \t");
      if (first == std::string_view::npos) continue;
      if (candidate[first] == '#') continue;
      *out = candidate;
      return true;
    }
    return false;
  }
};

int64_t parse_int(std::string_view line, size_t* i, int line_no,
                  const char* what) {
  while (*i < line.size() && (line[*i] == ' ' || line[*i] == '\t')) ++*i;
  size_t begin = *i;
  while (*i < line.size() && line[*i] >= '0' && line[*i] <= '9') ++*i;
  if (*i == begin || *i - begin > 18) {
    throw ParseError(line_no, static_cast<int>(begin) + 1,
                     std::string("expected ") + what);
  }
  int64_t value = 0;
  for (size_t j = begin; j < *i; ++j) value = value * 10 + (line[j] - '0');
  return value;
}

}  // namespace

CoverScheme parse_scheme(std::string_view text) {
  LineReader reader{text};
  std::string_view line;
  if (!reader.next(&line)) {
    throw ParseError(1, 1, "missing scheme header");
  }
  size_t i = 0;
  int64_t k = parse_int(line, &i, reader.line, "k");
  int64_t t_k = parse_int(line, &i, reader.line, "row count");
  int64_t dim = parse_int(line, &i, reader.line, "dimension");
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  if (i != line.size()) {
    throw ParseError(reader.line, static_cast<int>(i) + 1,
                     "unexpected trailing characters in header");
  }
  if (k < 1 || k > 64) throw ParseError(reader.line, 1, "k out of range");
  if (dim < 1 || dim > 64) {
    throw ParseError(reader.line, 1, "dimension must be in [1, 64]");
  }
  if (t_k < 0 || t_k > 10'000'000) {
    throw ParseError(reader.line, 1, "row count out of range");
  }

  CoverScheme s;
  s.k = static_cast<int>(k);
  s.a_k.dim = static_cast<int>(dim);
  for (int64_t r = 0; r < t_k; ++r) {
    if (!reader.next(&line)) {
      throw ParseError(reader.line + 1, 1,
                       "expected " + std::to_string(t_k) + " rows, found " +
                           std::to_string(r));
    }
    if (static_cast<int64_t>(line.size()) != dim) {
      int col = static_cast<int>(
                    std::min(line.size(), static_cast<size_t>(dim))) + 1;
      throw ParseError(reader.line, col,
                       "row has " + std::to_string(line.size()) +
                           " characters, expected " + std::to_string(dim));
    }
    BitVec v = BitVec::zeros(static_cast<int>(dim));
    for (size_t c = 0; c < line.size(); ++c) {
      if (line[c] == '1') {
        v.bits |= uint64_t{1} << c;
      } else if (line[c] != '0') {
        throw ParseError(reader.line, static_cast<int>(c) + 1,
                         std::string("invalid character '") + line[c] +
                             "' in row (expected 0 or 1)");
      }
    }
    s.a_k.rows.push_back(v);
  }

  while (reader.next(&line)) {
    size_t j = 0;
    int64_t target = parse_int(line, &j, reader.line, "target index");
    if (j >= line.size() || line[j] != ':') {
      throw ParseError(reader.line, static_cast<int>(j) + 1,
                       "expected ':' after target index");
    }
    ++j;
    std::vector<int> witness;
    while (true) {
      while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
      if (j >= line.size()) break;
      int64_t idx = parse_int(line, &j, reader.line, "witness row index");
      if (idx < 1 || idx > t_k) {
        throw ParseError(reader.line, static_cast<int>(j),
                         "witness row index out of range");
      }
      witness.push_back(static_cast<int>(idx));
    }
    if (witness.empty()) {
      throw ParseError(reader.line, static_cast<int>(j) + 1,
                       "witness list is empty");
    }
    if (!s.witnesses.emplace(target, std::move(witness)).second) {
      throw ParseError(reader.line, 1,
                       "duplicate witness line for target " +
                           std::to_string(target));
    }
  }
  return s;
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

CoverScheme read_scheme_file(const std::string& path) {
  return parse_scheme(slurp(path));
}

void write_scheme_file(const std::string& path, const CoverScheme& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << format_scheme(s);
}

std::optional<std::string> validate_structure(const CoverScheme& s) {
  if (s.k < 1) return "k must be >= 1";
  std::unordered_set<uint64_t> seen;
  for (int i = 1; i <= s.a_k.row_count(); ++i) {
    if (s.a_k.row(i).is_zero()) {
      return "a_k row " + std::to_string(i) + " is zero";
    }
    if (!seen.insert(s.a_k.row(i).bits).second) {
      return "a_k row " + std::to_string(i) + " duplicates an earlier row";
    }
  }
  for (const auto& [target, witness] : s.witnesses) {
    std::string where = "witness for target " + std::to_string(target);
    if (witness.empty()) return where + " is empty";
    if (static_cast<int>(witness.size()) > s.k) {
      return where + " has size " + std::to_string(witness.size()) +
             " > k = " + std::to_string(s.k);
    }
    for (size_t i = 0; i < witness.size(); ++i) {
      if (witness[i] < 1 || witness[i] > s.a_k.row_count()) {
        return where + " references row " + std::to_string(witness[i]) +
               " outside a_k";
      }
      if (i > 0 && witness[i] <= witness[i - 1]) {
        return where + " indices are not strictly ascending";
      }
    }
  }
  return std::nullopt;
}

}  // namespace klac
