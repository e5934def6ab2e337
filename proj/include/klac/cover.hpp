// CoverScheme: an overcomplete matrix A_k together with, for each target,
// the witness rows (at most k of them) that XOR to the target.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klac/bits.hpp"

namespace klac {

// Targets are keyed by their row index into the source matrix G, or by
// msb_id for schemes covering the full space of nonzero vectors. Witness
// values are ascending 1-based row indices into a_k, sizes in [1, k].
struct CoverScheme {
  int k = 0;
  BitMatrix a_k;
  std::map<int64_t, std::vector<int>> witnesses;
};

// Text format: header "k T_k T", then T_k bit-rows, then one line per
// witnessed target: "<target>: <index> <index> ...".
std::string format_scheme(const CoverScheme& s);
CoverScheme parse_scheme(std::string_view text);  // throws ParseError
CoverScheme read_scheme_file(const std::string& path);
void write_scheme_file(const std::string& path, const CoverScheme& s);

// Structural invariants that do not need the targets: k >= 1, no zero or
// duplicate a_k rows, witness sizes in [1, k], witness indices within range
// and strictly ascending. Returns a description of the first violation, or
// absent when sound.
std::optional<std::string> validate_structure(const CoverScheme& s);

}  // namespace klac
