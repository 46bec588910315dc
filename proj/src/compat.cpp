#include "amalgam/compat.hpp"

#include <algorithm>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

SplitExtension const &require_retract(AmalgamSpec const &spec, Factor f)
{
  auto const &ext = spec.retract_structure(f);
  if (!ext)
    throw Error(ErrorCode::MissingRetract, std::string("factor ") + tag(f) +
                " has no retract structure");
  return *ext;
}

/// (X n H)phi as a subgroup of K.
Subgroup image_in_k(AmalgamSpec const &spec, Subgroup const &x)
{
  Subgroup meet = restrict_to(x, spec.amalgamated(Factor::A).group());
  return spec.phi().image_of(meet);
}

CompatiblePair swapped(CompatiblePair const &pair, AmalgamSpec const &mirror)
{
  // pair was built in the mirror: r lives in B, s in A
  Subgroup p = restrict_to(pair.q, mirror.factor(Factor::B));
  Subgroup q = restrict_to(pair.p, mirror.factor(Factor::A));
  return CompatiblePair{pair.s, pair.r, std::move(p), std::move(q), pair.complement};
}

} // namespace

CompatiblePair build_compatible_pair(AmalgamSpec const &spec, Subgroup const &r)
{
  SplitExtension const &ext_b = require_retract(spec, Factor::B);
  FiniteGroup const &a = spec.factor(Factor::A);
  if (!is_normal(r, a))
    throw Error(ErrorCode::NotNormal, "R is not normal in A");

  Subgroup r_in_a = restrict_to(r, a);
  Subgroup p = intersect(r_in_a, spec.amalgamated(Factor::A));
  Subgroup q = image_in_k(spec, r_in_a);
  Subgroup s = lift_normal_subgroup(ext_b, q).lifted;

  if (!verify_compatible_pair(spec, r_in_a, s))
    throw Error(ErrorCode::ValidationError, "constructed pair is not compatible");

  return CompatiblePair{std::move(r_in_a), std::move(s), std::move(p),
                        restrict_to(q, spec.factor(Factor::B)), ext_b.complement()};
}

CompatiblePair build_compatible_pair_from_b(AmalgamSpec const &spec, Subgroup const &s)
{
  AmalgamSpec mirror = spec.mirrored();
  return swapped(build_compatible_pair(mirror, s), mirror);
}

bool verify_compatible_pair(AmalgamSpec const &spec, Subgroup const &r, Subgroup const &s)
{
  FiniteGroup const &a = spec.factor(Factor::A);
  FiniteGroup const &b = spec.factor(Factor::B);
  if (!is_subset(r, a) || !is_subset(s, b) || !is_normal(r, a) || !is_normal(s, b))
    return false;

  Subgroup lhs = image_in_k(spec, r);
  Subgroup rhs = restrict_to(s, spec.amalgamated(Factor::B).group());
  return lhs == rhs;
}

std::vector<Subgroup> p_series(FiniteGroup const &a, Subgroup const &r, unsigned p)
{
  if (!is_prime(p))
    throw Error(ErrorCode::NotPPowerIndex, std::to_string(p) + " is not prime");
  if (!is_normal(r, a))
    throw Error(ErrorCode::NotNormal, "R is not normal");
  if (!is_power_of(a.order() / r.order(), p))
    throw Error(ErrorCode::NotPPowerIndex, "index " + std::to_string(a.order() / r.order()) +
                " is not a power of " + std::to_string(p));

  std::vector<Subgroup> series{restrict_to(r, a)};
  while (series.back().order() < a.order()) {
    Subgroup const &current = series.back();
    std::optional<Subgroup> best;
    for (auto const &x : a.elements()) {
      if (current.contains(x) || !current.contains(x.pow(p)))
        continue;
      // x R_i must be central in A / R_i
      bool central = std::all_of(a.generators().begin(), a.generators().end(),
                                 [&](Permutation const &g) {
                                   return current.contains(x.inverse() * g.inverse() * x * g);
                                 });
      if (!central)
        continue;
      Subgroup candidate = join(current, Subgroup::generated(a, std::span<const Permutation>(&x, 1)));
      if (!best || canonical_less(candidate, *best))
        best = std::move(candidate);
    }
    if (!best)
      throw Error(ErrorCode::ValidationError, "quotient has no central element of order p");
    series.push_back(std::move(*best));
  }
  return series;
}

PCompatibleChain build_p_chain(AmalgamSpec const &spec, Subgroup const &r, unsigned p)
{
  SplitExtension const &ext_b = require_retract(spec, Factor::B);
  FiniteGroup const &a = spec.factor(Factor::A);
  FiniteGroup const &b = spec.factor(Factor::B);

  PCompatibleChain chain{p, {}, {}, {}};
  chain.chain_a = p_series(a, r, p);

  for (auto const &ri : chain.chain_a) {
    Subgroup pi = intersect(ri, spec.amalgamated(Factor::A));
    Subgroup qi = image_in_k(spec, ri);
    Subgroup si = lift_normal_subgroup(ext_b, qi).lifted;
    chain.trace.push_back(PChainStep{ri, std::move(pi), restrict_to(qi, b), si});
    if (std::find(chain.chain_b.begin(), chain.chain_b.end(), si) == chain.chain_b.end())
      chain.chain_b.push_back(std::move(si));
  }

  if (!verify_p_chain(spec, chain))
    throw Error(ErrorCode::ValidationError, "constructed chain fails verification");
  return chain;
}

PCompatibleChain build_p_chain_from_b(AmalgamSpec const &spec, Subgroup const &s, unsigned p)
{
  AmalgamSpec mirror = spec.mirrored();
  PCompatibleChain c = build_p_chain(mirror, s, p);
  std::swap(c.chain_a, c.chain_b);
  return c;
}

namespace {

bool is_p_series(FiniteGroup const &x, std::vector<Subgroup> const &chain, unsigned p)
{
  if (chain.empty() || chain.back().order() != x.order())
    return false;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (!is_subset(chain[i], x) || !is_normal(chain[i], x))
      return false;
    if (i + 1 < chain.size()) {
      if (chain[i + 1].order() != p * chain[i].order() || !is_subset(chain[i], chain[i + 1].group()))
        return false;
    }
  }
  return true;
}

} // namespace

bool verify_p_chain(AmalgamSpec const &spec, PCompatibleChain const &chain)
{
  if (!is_p_series(spec.factor(Factor::A), chain.chain_a, chain.p) ||
      !is_p_series(spec.factor(Factor::B), chain.chain_b, chain.p))
    return false;

  std::vector<Subgroup> from_a;
  for (auto const &ri : chain.chain_a) {
    Subgroup img = image_in_k(spec, ri);
    if (std::find(from_a.begin(), from_a.end(), img) == from_a.end())
      from_a.push_back(std::move(img));
  }
  std::vector<Subgroup> from_b;
  for (auto const &sj : chain.chain_b) {
    Subgroup meet = restrict_to(sj, spec.amalgamated(Factor::B).group());
    if (std::find(from_b.begin(), from_b.end(), meet) == from_b.end())
      from_b.push_back(std::move(meet));
  }

  if (from_a.size() != from_b.size())
    return false;
  return std::all_of(from_a.begin(), from_a.end(), [&](Subgroup const &s) {
    return std::find(from_b.begin(), from_b.end(), s) != from_b.end();
  });
}

SubgroupFamily theta_family(FiniteGroup const &x, std::optional<unsigned> p)
{
  return SubgroupFamily{x, enumerate_normal_subgroups(x, p),
                        p ? FamilyKind::ThetaP : FamilyKind::Theta, p};
}

bool verify_separable_by_family(FiniteGroup const &x, Subgroup const &y,
                                SubgroupFamily const &family)
{
  for (auto const &n : family.members) {
    if (!is_normal(n, x))
      throw Error(ErrorCode::NotNormal, "family member is not normal");
  }

  std::size_t in_all = 0;
  for (auto const &g : x.elements()) {
    bool everywhere = std::all_of(family.members.begin(), family.members.end(),
                                  [&](Subgroup const &n) {
                                    return std::any_of(y.elements().begin(), y.elements().end(),
                                                       [&](Permutation const &z) {
                                                         return n.contains(z.inverse() * g);
                                                       });
                                  });
    if (everywhere) {
      if (!y.contains(g))
        return false;
      ++in_all;
    }
  }
  return in_all == y.order();
}

std::vector<CoverageReport> omega_projection_coverage(AmalgamSpec const &spec,
                                                      std::optional<unsigned> p)
{
  std::vector<CoverageReport> reports;
  for (Factor side : {Factor::A, Factor::B}) {
    CoverageReport report{side, p, 0, 0, {}};
    auto family = enumerate_normal_subgroups(spec.factor(side), p);
    report.family_size = family.size();

    for (auto const &member : family) {
      bool ok = false;
      try {
        if (p) {
          auto chain = side == Factor::A ? build_p_chain(spec, member, *p)
                                         : build_p_chain_from_b(spec, member, *p);
          Subgroup const &base = side == Factor::A ? chain.chain_a.front() : chain.chain_b.front();
          ok = verify_p_chain(spec, chain) && base == member;
        } else {
          auto pair = side == Factor::A ? build_compatible_pair(spec, member)
                                        : build_compatible_pair_from_b(spec, member);
          ok = verify_compatible_pair(spec, pair.r, pair.s) &&
               (side == Factor::A ? pair.r == member : pair.s == member);
        }
      } catch (Error const &) {
        ok = false;
      }
      if (ok)
        ++report.covered;
      else
        report.counterexamples.push_back(member);
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

} // namespace amalgam
