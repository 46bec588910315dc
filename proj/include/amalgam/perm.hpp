#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amalgam {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}. Text forms use 1-based cycle notation.
///
/// Products read left to right: (a * b) applies a first, then b, so
/// (x)(a * b) = ((x)a)b as in GAP.
class Permutation {
public:
  Permutation() : images_{0} {}
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(unsigned degree);
  /// Cycles are given with 1-based points.
  static Permutation from_cycles(unsigned degree,
                                 std::vector<std::vector<Point>> const &cycles);

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  Permutation operator*(Permutation const &rhs) const;
  Permutation &operator*=(Permutation const &rhs);
  Permutation pow(long long k) const;
  std::size_t order() const;

  /// Nontrivial cycles, 1-based, each starting at its least point.
  std::vector<std::vector<Point>> cycles() const;
  std::string to_string() const;

  friend bool operator==(Permutation const &, Permutation const &) = default;
  friend std::strong_ordering operator<=>(Permutation const &lhs,
                                          Permutation const &rhs) {
    return lhs.images_ <=> rhs.images_;
  }

private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(Permutation const &p) const noexcept;
};

std::ostream &operator<<(std::ostream &os, Permutation const &perm);

/// Parses "id", "()" or disjoint cycles such as "(1 2)(3 4 5)".
Permutation parse_permutation(std::string_view text, unsigned degree);
/// Comma-separated list; an empty string yields an empty list.
std::vector<Permutation> parse_permutation_list(std::string_view text,
                                                unsigned degree);
std::string format_permutation_list(std::span<const Permutation> perms);

} // namespace amalgam
