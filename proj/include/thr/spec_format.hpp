#pragma once

// Text format for rings and monoids, one directive per line:
//
//   # comment
//   name F4
//   generators 1 x
//   orders 2 2                 0 means infinite order
//   table 1 1 1                product of two generators, as an expression
//   table 1 x x
//   table x x 1+x
//   unit 1
//   involution 1 0 ; 0 1       row i is the image of generator i (default identity)
//   monoid.rank 2
//   monoid.generators 1 0 ; 0 1
//   monoid.involution 0 1 ; 1 0
//
// An expression is a sum of terms `name`, `k*name` or `0`, with + and -.
// Unlisted products default to 0 unless the symmetric entry is given.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "thr/involutive_algebra.hpp"

namespace thr {

struct ParsedSpec {
  std::string name;
  std::optional<InvolutiveRing> ring;
  std::optional<AffineMonoid> monoid;
};

/// Throws InputError with the offending line number.
ParsedSpec parse_spec(std::string_view text);
ParsedSpec load_spec(const std::filesystem::path& path);

/// Parses an expression in the generator names of `ring`.
IntVector parse_element(const InvolutiveRing& ring, std::string_view expr);

}  // namespace thr
