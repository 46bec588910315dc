#pragma once

#include <optional>
#include <utility>

#include "amalgam/group.hpp"

namespace amalgam {

/// X = Y F with F normal in X and Y n F = 1. Y is the retract, F its
/// normal complement.
class SplitExtension {
public:
  /// Throws NotNormal, NotComplement or NotCovering.
  static SplitExtension verify(FiniteGroup const &whole, Subgroup const &retract,
                               Subgroup const &complement);

  FiniteGroup const &whole() const { return whole_; }
  Subgroup const &retract() const { return retract_; }
  Subgroup const &complement() const { return complement_; }

  /// The unique (y, f) in Y x F with x = y f.
  std::pair<Permutation, Permutation> decompose(Permutation const &x) const;

private:
  SplitExtension(FiniteGroup whole, Subgroup retract, Subgroup complement)
    : whole_(std::move(whole)), retract_(std::move(retract)),
      complement_(std::move(complement))
  {}

  FiniteGroup whole_;
  Subgroup retract_;
  Subgroup complement_;
};

/// NF for a normal subgroup N of the retract, with the three facts that
/// make it useful checked exhaustively.
struct Lift {
  Subgroup lifted;          // NF, as a subgroup of X
  Subgroup meet_retract;    // NF n Y, equal to N
  std::size_t whole_index;  // [X : NF]
  std::size_t retract_index;// [Y : N]
};

Lift lift_normal_subgroup(SplitExtension const &ext, Subgroup const &n);

/// Data behind a normal subgroup L of X with x outside YL.
struct RetractWitness {
  Permutation excluded;          // x
  Permutation retract_part;      // y
  Permutation complement_part;   // f, with x = y f
  std::optional<unsigned> p;
  Subgroup n;                    // normal in X, f not in N
  Subgroup u;                    // N n F
  Subgroup v;                    // N n Y
  Subgroup l;                    // V U
  Subgroup m;                    // V F
};

/// In p-mode N is drawn from the normal subgroups of p-power index; a finite
/// group is residually p-finite exactly when it is a p-group, so for other X
/// this may throw NoSeparatingN. Throws AlreadyInRetract if x lies in Y.
RetractWitness retract_witness(SplitExtension const &ext, Permutation const &x,
                               std::optional<unsigned> p = std::nullopt);

/// Exhaustive test of x in Y L (as a set of products).
bool in_retract_product(SplitExtension const &ext, Subgroup const &l, Permutation const &x);

} // namespace amalgam
