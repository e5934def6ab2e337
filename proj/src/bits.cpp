#include "klac/bits.hpp"

#include <fstream>
#include <sstream>

namespace klac {

namespace {

constexpr int kMaxLen = 64;

void check_len(int length) {
  if (length < 0 || length > kMaxLen) {
    throw std::invalid_argument("vector length must be in [0, 64], got " +
                                std::to_string(length));
  }
}

}  // namespace

BitVec::BitVec(uint64_t packed, int length) : bits(packed), len(length) {
  check_len(length);
  if (length < kMaxLen && (packed >> length) != 0) {
    throw std::invalid_argument("packed bits exceed vector length");
  }
}

BitVec BitVec::from_string(std::string_view text) {
  check_len(static_cast<int>(text.size()));
  BitVec v = zeros(static_cast<int>(text.size()));
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.bits |= uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw std::invalid_argument("vector text must be 0/1 characters");
    }
  }
  return v;
}

std::string BitVec::to_string() const {
  std::string s(static_cast<size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if ((bits >> i) & 1u) s[static_cast<size_t>(i)] = '1';
  }
  return s;
}

uint64_t BitVec::msb_id() const {
  // Reverse the low `len` bits: coordinate 1 becomes the top digit.
  uint64_t id = 0;
  for (int i = 0; i < len; ++i) {
    id = (id << 1) | ((bits >> i) & 1u);
  }
  return id;
}

BitVec BitVec::from_msb_id(uint64_t id, int length) {
  check_len(length);
  if (length < kMaxLen && (id >> length) != 0) {
    throw std::invalid_argument("id exceeds vector length");
  }
  BitVec v = zeros(length);
  for (int i = 0; i < length; ++i) {
    if ((id >> (length - 1 - i)) & 1u) v.bits |= uint64_t{1} << i;
  }
  return v;
}

BitVec operator^(BitVec a, BitVec b) {
  if (a.len != b.len) {
    throw std::invalid_argument("XOR of vectors of different lengths");
  }
  return BitVec(a.bits ^ b.bits, a.len);
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::string_view> lines) {
  BitMatrix m;
  for (std::string_view line : lines) {
    BitVec v = BitVec::from_string(line);
    if (m.rows.empty()) m.dim = v.len;
    m.append(v);
  }
  return m;
}

void BitMatrix::append(const BitVec& v) {
  if (v.len != dim) {
    throw std::invalid_argument("row length " + std::to_string(v.len) +
                                " does not match matrix dimension " +
                                std::to_string(dim));
  }
  rows.push_back(v);
}

namespace {

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line = 1;

  // Advances to the next significant line; returns false at end of input.
  // Leaves `pos` at the line start and `start`/`length` describing it.
  bool next_line(size_t* start, size_t* length) {
    while (pos < text.size()) {
      size_t eol = text.find('\n', pos);
      size_t len = (eol == std::string_view::npos ? text.size() : eol) - pos;
      size_t begin = pos;
      int at_line = line;
      pos = (eol == std::string_view::npos) ? text.size() : eol + 1;
      ++line;
      // Trim a trailing carriage return.
      if (len > 0 && text[begin + len - 1] == '\r') --len;
      bool blank = true;
      for (size_t i = 0; i < len; ++i) {
        if (text[begin + i] != ' ' && text[begin + i] != '\t') {
          blank = false;
          break;
        }
      }
      if (blank || text[begin] == '#') continue;
      *start = begin;
      *length = len;
      cur_line = at_line;
      return true;
    }
    return false;
  }

  int cur_line = 0;
};

// Parses an unsigned decimal starting at text[*i]; advances *i.
int64_t parse_number(std::string_view text, size_t line_start, size_t len,
                     size_t* i, int line_no, const char* what) {
  size_t begin = *i;
  while (*i < len && text[line_start + *i] >= '0' &&
         text[line_start + *i] <= '9') {
    ++*i;
  }
  if (*i == begin) {
    throw ParseError(line_no, static_cast<int>(begin) + 1,
                     std::string("expected ") + what);
  }
  if (*i - begin > 18) {
    throw ParseError(line_no, static_cast<int>(begin) + 1,
                     std::string(what) + " out of range");
  }
  int64_t value = 0;
  for (size_t j = begin; j < *i; ++j) {
    value = value * 10 + (text[line_start + j] - '0');
  }
  return value;
}

void skip_spaces(std::string_view text, size_t line_start, size_t len,
                 size_t* i) {
  while (*i < len && (text[line_start + *i] == ' ' ||
                      text[line_start + *i] == '\t')) {
    ++*i;
  }
}

BitVec parse_row_line(std::string_view text, size_t start, size_t len,
                      int line_no, int dim) {
  if (static_cast<int>(len) != dim) {
    // Point at the first missing or surplus column.
    int col = static_cast<int>(std::min(len, static_cast<size_t>(dim))) + 1;
    throw ParseError(line_no, col,
                     "row has " + std::to_string(len) + " characters, expected " +
                         std::to_string(dim));
  }
  BitVec v = BitVec::zeros(dim);
  for (size_t i = 0; i < len; ++i) {
    char c = text[start + i];
    if (c == '1') {
      v.bits |= uint64_t{1} << i;
    } else if (c != '0') {
      throw ParseError(line_no, static_cast<int>(i) + 1,
                       std::string("invalid character '") + c +
                           "' in row (expected 0 or 1)");
    }
  }
  return v;
}

}  // namespace

BitMatrix parse_matrix(std::string_view text) {
  Cursor cur{text};
  size_t start = 0, len = 0;
  if (!cur.next_line(&start, &len)) {
    throw ParseError(cur.line, 1, "missing matrix header");
  }
  size_t i = 0;
  skip_spaces(text, start, len, &i);
  int64_t n = parse_number(text, start, len, &i, cur.cur_line, "row count");
  skip_spaces(text, start, len, &i);
  int64_t dim = parse_number(text, start, len, &i, cur.cur_line, "dimension");
  skip_spaces(text, start, len, &i);
  if (i != len) {
    throw ParseError(cur.cur_line, static_cast<int>(i) + 1,
                     "unexpected trailing characters in header");
  }
  if (n < 0 || n > 10'000'000) {
    throw ParseError(cur.cur_line, 1, "row count out of range");
  }
  if (dim < 1 || dim > kMaxLen) {
    throw ParseError(cur.cur_line, 1, "dimension must be in [1, 64]");
  }
  BitMatrix m(static_cast<int>(dim));
  for (int64_t r = 0; r < n; ++r) {
    if (!cur.next_line(&start, &len)) {
      throw ParseError(cur.line, 1,
                       "expected " + std::to_string(n) + " rows, found " +
                           std::to_string(r));
    }
    m.rows.push_back(
        parse_row_line(text, start, len, cur.cur_line, m.dim));
  }
  if (cur.next_line(&start, &len)) {
    throw ParseError(cur.cur_line, 1, "unexpected content after last row");
  }
  return m;
}

std::string format_matrix(const BitMatrix& m) {
  std::ostringstream out;
  out << m.row_count() << ' ' << m.dim << '\n';
  for (const BitVec& v : m.rows) out << v.to_string() << '\n';
  return out.str();
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

BitMatrix read_matrix_file(const std::string& path) {
  return parse_matrix(slurp(path));
}

void write_matrix_file(const std::string& path, const BitMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path);
  }
  out << format_matrix(m);
}

BitMatrix full_space_matrix(int t) {
  if (t < 1 || t > 24) {
    throw std::invalid_argument("full space dimension must be in [1, 24]");
  }
  BitMatrix m(t);
  m.rows.reserve((uint64_t{1} << t) - 1);
  for (uint64_t id = 1; id < (uint64_t{1} << t); ++id) {
    m.rows.push_back(BitVec::from_msb_id(id, t));
  }
  return m;
}

}  // namespace klac
