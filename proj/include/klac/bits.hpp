// Word-packed GF(2) vectors and matrices, plus the text format shared by
// every tool: "<n> <dim>" header, then n lines of '0'/'1' characters.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace klac {

// Thrown by the text parsers; line and column are 1-based positions of the
// first offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// A binary vector of up to 64 coordinates. Coordinate 1 is the leftmost
// character of the text form and the lowest-order bit of the packed word;
// all bits beyond `len` are zero.
struct BitVec {
  uint64_t bits = 0;
  int len = 0;

  BitVec() = default;
  BitVec(uint64_t packed, int length);

  static BitVec zeros(int length) { return BitVec(0, length); }
  static BitVec from_string(std::string_view text);

  // Reads/writes coordinate `coord` (1-based).
  bool get(int coord) const { return (bits >> (coord - 1)) & 1u; }
  void set(int coord, bool value) {
    uint64_t mask = uint64_t{1} << (coord - 1);
    bits = value ? (bits | mask) : (bits & ~mask);
  }

  int weight() const { return __builtin_popcountll(bits); }
  bool is_zero() const { return bits == 0; }
  std::string to_string() const;

  // Integer id obtained by reading the text form as a binary numeral
  // (coordinate 1 most significant). The nonzero vectors of dimension t
  // are exactly the ids 1 .. 2^t - 1.
  uint64_t msb_id() const;
  static BitVec from_msb_id(uint64_t id, int length);

  friend BitVec operator^(BitVec a, BitVec b);
  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.len == b.len && a.bits == b.bits;
  }
  friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }
  friend bool operator<(const BitVec& a, const BitVec& b) {
    if (a.len != b.len) return a.len < b.len;
    return a.msb_id() < b.msb_id();
  }
};

// An ordered list of equal-length rows. Row order is significant and all
// public row indices are 1-based.
struct BitMatrix {
  int dim = 0;
  std::vector<BitVec> rows;

  BitMatrix() = default;
  explicit BitMatrix(int dimension) : dim(dimension) {}

  static BitMatrix from_rows(std::initializer_list<std::string_view> lines);

  int row_count() const { return static_cast<int>(rows.size()); }
  const BitVec& row(int i) const { return rows[static_cast<size_t>(i) - 1]; }
  void append(const BitVec& v);

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.dim == b.dim && a.rows == b.rows;
  }
};

// Text format: first non-comment line "<n> <dim>", then n row lines of
// exactly dim characters from {0,1}. Blank lines and lines starting with
// '#' are ignored throughout.
BitMatrix parse_matrix(std::string_view text);
std::string format_matrix(const BitMatrix& m);
BitMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const BitMatrix& m);

// All 2^t - 1 nonzero vectors of dimension t, ordered by msb_id (row i has
// msb_id i).
BitMatrix full_space_matrix(int t);

}  // namespace klac
