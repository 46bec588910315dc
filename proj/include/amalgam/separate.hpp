#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "amalgam/compat.hpp"

namespace amalgam {

/// Cyclic subgroups of a finite group that its normal subgroups (of p-power
/// index, in p-mode, restricted to p'-isolated subgroups) fail to separate.
struct DeltaFamily {
  FiniteGroup parent;
  std::optional<unsigned> p;
  std::vector<Subgroup> members;
};

DeltaFamily compute_delta(FiniteGroup const &x, std::optional<unsigned> p = std::nullopt);

/// A/R and B/S glued along the images of H and K.
struct FiniteAmalgamQuotient {
  Subgroup r;
  Subgroup s;
  Quotient quotient_a;
  Quotient quotient_b;
  Subgroup image_h;       // in A/R
  Subgroup image_k;       // in B/S
  Homomorphism induced;   // image_h -> image_k, h R -> (h phi) S
};

/// Throws IncompatiblePair when (R, S) is not compatible.
FiniteAmalgamQuotient induced_quotient(AmalgamSpec const &spec, Subgroup const &r,
                                       Subgroup const &s);

/// Actions of A/R and B/S on a common point set that agree on the
/// amalgamated images.
struct MatchedEmbedding {
  unsigned degree;
  std::vector<Permutation> images_a;  // aligned with quotient_a.image.elements()
  std::vector<Permutation> images_b;  // aligned with quotient_b.image.elements()
};

/// degree = multiplicity * lcm(|A/R|, |B/S|). A/R acts by copies of its
/// right regular action. B/S acts by copies of its regular action,
/// transported by a bijection that is equivariant for the amalgamated
/// subgroup: its orbits are paired in canonical order, rotated by
/// multiplicity - 1, and base points are matched.
MatchedEmbedding embed_matched_regular(FiniteAmalgamQuotient const &q, unsigned multiplicity);

struct SearchOptions {
  std::size_t budget = 4;             // largest multiplicity tried
  std::size_t isolation_bound = 4;    // word length for the p'-isolation check
  std::size_t image_order_bound = kDefaultOrderBound;
};

struct SeparabilityWitness {
  GWord target;
  CyclicSubgroupOfG subgroup;
  std::optional<unsigned> p;
  Subgroup r;
  Subgroup s;
  unsigned multiplicity = 1;
  unsigned degree = 1;
  std::vector<Permutation> images_a;  // one per generator of A
  std::vector<Permutation> images_b;  // one per generator of B
  std::optional<IsolationReport> isolation;
};

struct NonSeparabilityCertificate {
  CyclicSubgroupOfG subgroup;
  std::optional<unsigned> p;
  Factor factor;
  GWord conjugator;
  Permutation element;
  Subgroup member;
  std::optional<IsolationReport> isolation;
};

struct MemberShortCircuit {
  long long exponent;
};

struct BudgetExhausted {
  std::size_t candidates;
  std::size_t budget;
};

using SeparationResult =
    std::variant<SeparabilityWitness, NonSeparabilityCertificate, MemberShortCircuit,
                 BudgetExhausted>;

/// One candidate finite image G -> Sym(degree) from a compatible pair.
struct FiniteImage {
  Subgroup r;
  Subgroup s;
  unsigned multiplicity;
  unsigned degree;
  FiniteAmalgamQuotient quotient;
  std::vector<Permutation> table_a;   // by element of A/R
  std::vector<Permutation> table_b;   // by element of B/S

  Permutation evaluate(GWord const &w) const;
};

/// Reusable search state for one amalgam and mode; caches finite images.
/// Not safe for concurrent use.
class Separator {
public:
  Separator(AmalgamSpec spec, std::optional<unsigned> p, SearchOptions options = {});

  SeparationResult separate(GWord const &g, CyclicSubgroupOfG const &c);

  /// Compatible pairs in search order.
  std::vector<std::pair<Subgroup, Subgroup>> const &pairs();
  /// nullptr when the image could not be built within the order bound.
  FiniteImage const *image(std::size_t pair_index, unsigned multiplicity);

  DeltaFamily const &delta(Factor f);

  AmalgamSpec const &spec() const { return spec_; }
  std::optional<unsigned> p() const { return p_; }
  SearchOptions const &options() const { return options_; }

private:
  std::optional<NonSeparabilityCertificate> delta_certificate(CyclicSubgroupOfG const &c);

  AmalgamSpec spec_;
  std::optional<unsigned> p_;
  SearchOptions options_;
  std::optional<std::vector<std::pair<Subgroup, Subgroup>>> pairs_;
  std::map<std::pair<std::size_t, unsigned>, std::optional<FiniteImage>> images_;
  std::optional<DeltaFamily> delta_a_, delta_b_;
};

/// Throws NotPPrimeIsolated in p-mode when a bounded refutation exists.
SeparationResult separate_cyclic(AmalgamSpec const &spec, GWord const &g,
                                 CyclicSubgroupOfG const &c, std::optional<unsigned> p,
                                 SearchOptions const &options = {});

enum class WitnessReason { Ok, Malformed, HomomorphismBroken, AmalgamDisagreement,
                           NotSeparated, NotPGroup };

std::string_view to_string(WitnessReason reason);

struct WitnessCheck {
  WitnessReason reason = WitnessReason::Ok;
  std::string detail;

  bool ok() const { return reason == WitnessReason::Ok; }
};

/// Re-derives everything from the generator images alone.
WitnessCheck verify_witness(AmalgamSpec const &spec, SeparabilityWitness const &w);

} // namespace amalgam
