#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "amalgam/group.hpp"
#include "amalgam/split_ext.hpp"

namespace amalgam {

enum class Factor { A, B };

inline Factor other(Factor f) { return f == Factor::A ? Factor::B : Factor::A; }
inline char tag(Factor f) { return f == Factor::A ? 'A' : 'B'; }

struct Syllable {
  Factor factor;
  Permutation element;

  friend bool operator==(Syllable const &, Syllable const &) = default;
};

/// An element of the amalgam as a product of factor elements. Not reduced.
class GWord {
public:
  GWord() = default;
  explicit GWord(std::vector<Syllable> syllables) : syllables_(std::move(syllables)) {}

  static GWord single(Factor f, Permutation x) { return GWord({Syllable{f, std::move(x)}}); }

  std::span<const Syllable> syllables() const { return syllables_; }
  std::size_t size() const { return syllables_.size(); }
  bool empty() const { return syllables_.empty(); }

  GWord inverse() const;
  GWord pow(long long k) const;
  GWord operator*(GWord const &rhs) const;

  friend bool operator==(GWord const &, GWord const &) = default;

private:
  std::vector<Syllable> syllables_;
};

/// h r_1 ... r_k with h in H (kept as an element of A) and each r_i the
/// least element of its right coset H r_i (or K r_i), tags alternating.
struct NormalForm {
  Permutation amalgam_part;
  std::vector<Syllable> syllables;

  std::size_t length() const { return syllables.size(); }
  bool is_identity() const { return syllables.empty() && amalgam_part.is_identity(); }
  GWord to_word() const;

  friend bool operator==(NormalForm const &, NormalForm const &) = default;
};

/// G = <A * B; H = K, phi>, optionally with retract structures
/// A = H F_A and B = K F_B.
class AmalgamSpec {
public:
  /// Throws ValidationError if phi is not an isomorphism H -> K or a
  /// retract structure does not have H (resp. K) as its retract.
  AmalgamSpec(FiniteGroup a, FiniteGroup b, Subgroup h, Subgroup k, Homomorphism phi,
              std::optional<SplitExtension> ext_a = std::nullopt,
              std::optional<SplitExtension> ext_b = std::nullopt);

  FiniteGroup const &factor(Factor f) const { return f == Factor::A ? d_->a : d_->b; }
  /// H for A, K for B.
  Subgroup const &amalgamated(Factor f) const { return f == Factor::A ? d_->h : d_->k; }
  Homomorphism const &phi() const { return d_->phi; }
  Homomorphism const &phi_inverse() const { return d_->phi_inv; }
  std::optional<SplitExtension> const &retract_structure(Factor f) const
  {
    return f == Factor::A ? d_->ext_a : d_->ext_b;
  }
  bool has_retracts() const { return d_->ext_a && d_->ext_b; }

  /// Moves an amalgamated element between its A and B incarnations.
  Permutation transport(Factor from, Factor to, Permutation const &x) const;
  /// x = h r with r the canonical representative of the right coset of x.
  std::pair<Permutation, Permutation> split_coset(Factor f, Permutation const &x) const;
  /// Nontrivial canonical coset representatives of the amalgamated subgroup.
  std::vector<Permutation> coset_representatives(Factor f) const;

  /// The same group with the factors swapped and phi inverted.
  AmalgamSpec mirrored() const;

private:
  struct Data {
    FiniteGroup a, b;
    Subgroup h, k;
    Homomorphism phi, phi_inv;
    std::optional<SplitExtension> ext_a, ext_b;
    std::vector<std::size_t> rep_a, rep_b;  // element index -> representative index
  };

  explicit AmalgamSpec(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  std::shared_ptr<const Data> d_;
};

NormalForm reduce(AmalgamSpec const &spec, GWord const &w);
bool equal(AmalgamSpec const &spec, GWord const &u, GWord const &v);

/// nullopt means infinite order.
std::optional<std::size_t> element_order(AmalgamSpec const &spec, GWord const &w);

struct CyclicSubgroupOfG {
  GWord generator;
};

/// c * w * c^-1 = core, with core of length <= 1 or cyclically reduced.
struct CyclicReduction {
  NormalForm core;
  GWord conjugator;
};

CyclicReduction cyclically_reduce(AmalgamSpec const &spec, GWord const &w);

struct FactorConjugate {
  Factor factor;
  Permutation element;   // conjugator * generator * conjugator^-1
  Subgroup subgroup;     // <element> in the factor
  GWord conjugator;
};

/// The factor element is normalised to the least member of its conjugacy
/// class in the factor. Elements of the amalgamated subgroup are reported
/// on the A side.
std::optional<FactorConjugate> conjugate_into_factor(AmalgamSpec const &spec,
                                                     CyclicSubgroupOfG const &c);

/// Some k with g = c^k, if any. Exact: for infinite-order c the search
/// range is bounded by normal-form lengths.
std::optional<long long> cyclic_member_exponent(AmalgamSpec const &spec, GWord const &g,
                                                GWord const &c);

/// A (g, q) with g^q in C but g not in C, for q prime, q != p, q | |X|.
std::optional<std::pair<Permutation, unsigned>>
find_isolation_violation(FiniteGroup const &x, Subgroup const &c, unsigned p);

/// Throws NotCyclic when C is not cyclic.
bool is_pprime_isolated_finite(FiniteGroup const &x, Subgroup const &c, unsigned p);

/// Every normal form of length <= max_length, ordered by length, then by
/// syllables, then by amalgamated part.
std::vector<NormalForm> enumerate_normal_forms(AmalgamSpec const &spec, std::size_t max_length);

struct IsolationReport {
  unsigned p;
  std::size_t length_bound;
  std::size_t prime_bound;
  std::size_t checked;
  std::optional<GWord> violating_element;
  unsigned violating_prime = 0;

  /// True means "no violation up to the bound", not a proof.
  bool isolated() const { return !violating_element.has_value(); }
};

IsolationReport is_pprime_isolated_in_G(AmalgamSpec const &spec, CyclicSubgroupOfG const &c,
                                        unsigned p, std::size_t length_bound);

} // namespace amalgam
