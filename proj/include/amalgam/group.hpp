#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "amalgam/perm.hpp"

namespace amalgam {

inline constexpr std::size_t kDefaultOrderBound = 10000;
inline constexpr std::size_t kEnumerationBound = 500;
/// Homomorphisms on sources up to this order are checked on all pairs.
inline constexpr std::size_t kDeskScale = 1000;

/// A permutation group held together with its full (sorted) element list.
/// Copies share the immutable element storage.
class FiniteGroup {
public:
  /// Trivial group of degree 1.
  FiniteGroup();

  unsigned degree() const { return d_->degree; }
  std::span<const Permutation> generators() const { return d_->generators; }
  /// Sorted by the lexicographic order on image sequences.
  std::span<const Permutation> elements() const { return d_->elements; }
  std::size_t order() const { return d_->elements.size(); }

  bool contains(Permutation const &x) const;
  /// Position of x in elements(); throws NotASubgroup when x is absent.
  std::size_t index_of(Permutation const &x) const;
  Permutation identity() const { return Permutation::identity(degree()); }

  bool is_p_group(unsigned p) const;

  /// Trusted constructor: the caller guarantees that `elements` is closed.
  /// A short generating set is picked greedily.
  static FiniteGroup from_closed_set(unsigned degree, std::vector<Permutation> elements);

  friend bool operator==(FiniteGroup const &lhs, FiniteGroup const &rhs);

private:
  struct Data {
    unsigned degree = 1;
    std::vector<Permutation> generators;
    std::vector<Permutation> elements;
  };

  explicit FiniteGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;

  friend FiniteGroup closure(std::span<const Permutation>, unsigned, std::size_t);
};

/// The group generated by `generators`; throws BoundExceeded if it has more
/// than `bound` elements and DegreeMismatch if a generator has another degree.
FiniteGroup closure(std::span<const Permutation> generators, unsigned degree,
                    std::size_t bound = kDefaultOrderBound);

class Subgroup {
public:
  Subgroup() = default;

  static Subgroup generated(FiniteGroup const &parent, std::span<const Permutation> gens);
  static Subgroup whole(FiniteGroup const &parent);
  static Subgroup trivial(FiniteGroup const &parent);
  /// Trusted: `elements` must be a subgroup of `parent`.
  static Subgroup from_closed_set(FiniteGroup const &parent,
                                  std::vector<Permutation> elements);

  FiniteGroup const &parent() const { return parent_; }
  FiniteGroup const &group() const { return group_; }

  std::size_t order() const { return group_.order(); }
  std::size_t index() const { return parent_.order() / group_.order(); }
  bool contains(Permutation const &x) const { return group_.contains(x); }
  std::span<const Permutation> elements() const { return group_.elements(); }
  std::span<const Permutation> generators() const { return group_.generators(); }
  bool is_trivial() const { return group_.order() == 1; }

  /// Same element set; parents are not compared.
  friend bool operator==(Subgroup const &lhs, Subgroup const &rhs)
  {
    return lhs.group_ == rhs.group_;
  }

private:
  Subgroup(FiniteGroup parent, FiniteGroup group)
    : parent_(std::move(parent)), group_(std::move(group))
  {}

  FiniteGroup parent_;
  FiniteGroup group_;
};

/// Canonical order on subgroups: by order, then by sorted element list.
bool canonical_less(Subgroup const &lhs, Subgroup const &rhs);

Subgroup intersect(Subgroup const &lhs, Subgroup const &rhs);
/// Subgroup generated by both; the parent of `lhs` is kept.
Subgroup join(Subgroup const &lhs, Subgroup const &rhs);
/// Elements of `group` satisfying membership in `sub`, as a subgroup of `group`.
Subgroup restrict_to(Subgroup const &sub, FiniteGroup const &group);

bool is_subset(Subgroup const &sub, FiniteGroup const &group);
/// x n x^-1 in N for all x in X, n in N. Throws NotASubgroup if N is not in X.
bool is_normal(Subgroup const &n, FiniteGroup const &x);
Subgroup normal_closure(std::span<const Permutation> seed, FiniteGroup const &x);

std::vector<std::vector<Permutation>> conjugacy_classes(FiniteGroup const &x);

/// All normal subgroups in canonical order; with `p`, only those of p-power
/// index. Throws BoundExceeded if |X| exceeds `bound`.
std::vector<Subgroup> enumerate_normal_subgroups(FiniteGroup const &x,
                                                 std::optional<unsigned> p = std::nullopt,
                                                 std::size_t bound = kEnumerationBound);

/// Distinct cyclic subgroups in canonical order.
std::vector<Subgroup> cyclic_subgroups(FiniteGroup const &x);

class Homomorphism {
public:
  Homomorphism() = default;

  /// Extends generator images along the Cayley graph of `source`. Throws
  /// NotAHomomorphism when the assignment does not extend.
  static Homomorphism from_generator_images(FiniteGroup const &source,
                                            FiniteGroup const &target,
                                            std::span<const Permutation> images);
  /// `images` aligned with source.elements().
  static Homomorphism from_table(FiniteGroup const &source, FiniteGroup const &target,
                                 std::vector<Permutation> images);

  FiniteGroup const &source() const { return source_; }
  FiniteGroup const &target() const { return target_; }

  Permutation const &operator()(Permutation const &x) const;
  Permutation const &image_at(std::size_t index) const { return table_[index]; }

  /// True once multiplicativity was checked on all |source|^2 pairs.
  bool verified() const { return verified_; }
  bool is_injective() const;
  bool is_bijective() const;

  Subgroup image_of(Subgroup const &sub) const;
  Subgroup kernel() const;
  /// Requires a bijection.
  Homomorphism inverse() const;

private:
  void check_multiplicative();

  FiniteGroup source_;
  FiniteGroup target_;
  std::vector<Permutation> table_;
  bool verified_ = false;
};

struct Quotient {
  FiniteGroup image;
  Homomorphism projection;
};

/// X/N realised as the action of X on the right cosets of N.
Quotient quotient(FiniteGroup const &x, Subgroup const &n);

/// Right regular representation of x on its own elements.
FiniteGroup regular_representation(FiniteGroup const &x);

/// Search over generator images; returns an isomorphism if one exists.
std::optional<Homomorphism> find_isomorphism(FiniteGroup const &from, FiniteGroup const &to);

bool is_prime(std::size_t n);
bool is_power_of(std::size_t n, std::size_t p);

} // namespace amalgam
