#pragma once

#include <optional>
#include <vector>

#include "amalgam/amalgam.hpp"

namespace amalgam {

/// Normal subgroups R of A and S of B with (R n H)phi = S n K.
struct CompatiblePair {
  Subgroup r;
  Subgroup s;
  Subgroup p;            // R n H
  Subgroup q;            // (R n H)phi, inside K
  Subgroup complement;   // F with B = K F, used to build S = Q F
};

/// S = (R n H)phi F_B. Throws MissingRetract or NotNormal.
CompatiblePair build_compatible_pair(AmalgamSpec const &spec, Subgroup const &r);
/// Mirror image: R = (S n K)phi^-1 F_A.
CompatiblePair build_compatible_pair_from_b(AmalgamSpec const &spec, Subgroup const &s);

bool verify_compatible_pair(AmalgamSpec const &spec, Subgroup const &r, Subgroup const &s);

/// One step of the construction, read from the factor the chain was built
/// in: for a chain built from B, r lies in B and s in A.
struct PChainStep {
  Subgroup r;  // R_i
  Subgroup p;  // R_i n H
  Subgroup q;  // P_i phi
  Subgroup s;  // Q_i F, before removal of repeats
};

struct PCompatibleChain {
  unsigned p;
  std::vector<Subgroup> chain_a;   // R = R_0 < ... < R_m = A
  std::vector<Subgroup> chain_b;   // S = S_0 < ... < S_n = B
  std::vector<PChainStep> trace;
};

/// R = R_0 < ... < R_m = A, normal in A with every factor of order p. Each
/// step adjoins a central element of order p of A/R_i; among the candidates
/// the canonically least subgroup is taken.
std::vector<Subgroup> p_series(FiniteGroup const &a, Subgroup const &r, unsigned p);

/// Throws NotPPowerIndex or MissingRetract.
PCompatibleChain build_p_chain(AmalgamSpec const &spec, Subgroup const &r, unsigned p);
/// Chain for S in B, built through the mirrored amalgam and swapped back.
PCompatibleChain build_p_chain_from_b(AmalgamSpec const &spec, Subgroup const &s, unsigned p);

bool verify_p_chain(AmalgamSpec const &spec, PCompatibleChain const &chain);

enum class FamilyKind { Theta, ThetaP, OmegaProjection, OmegaPProjection, Custom };

struct SubgroupFamily {
  FiniteGroup parent;
  std::vector<Subgroup> members;
  FamilyKind kind = FamilyKind::Custom;
  std::optional<unsigned> p;
};

/// All normal subgroups (of p-power index when p is given).
SubgroupFamily theta_family(FiniteGroup const &x, std::optional<unsigned> p = std::nullopt);

/// Intersection over N in the family of Y N equals Y. The empty family has
/// intersection X.
bool verify_separable_by_family(FiniteGroup const &x, Subgroup const &y,
                                SubgroupFamily const &family);

struct CoverageReport {
  Factor side;
  std::optional<unsigned> p;
  std::size_t family_size = 0;
  std::size_t covered = 0;
  std::vector<Subgroup> counterexamples;

  bool full() const { return counterexamples.empty() && covered == family_size; }
};

/// Runs the pair (or p-chain) construction on every member of Theta(A) and
/// Theta(B) (resp. Theta_p) and checks the result.
std::vector<CoverageReport> omega_projection_coverage(AmalgamSpec const &spec,
                                                      std::optional<unsigned> p = std::nullopt);

} // namespace amalgam
