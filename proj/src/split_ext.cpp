#include "amalgam/split_ext.hpp"

#include <algorithm>

#include "amalgam/error.hpp"

namespace amalgam {

SplitExtension SplitExtension::verify(FiniteGroup const &whole, Subgroup const &retract,
                                      Subgroup const &complement)
{
  if (!is_subset(retract, whole) || !is_subset(complement, whole))
    throw Error(ErrorCode::NotASubgroup, "retract and complement must lie in the group");
  if (!is_normal(complement, whole))
    throw Error(ErrorCode::NotNormal, "complement is not normal");
  if (!intersect(retract, complement).is_trivial())
    throw Error(ErrorCode::NotComplement, "retract and complement intersect nontrivially");
  // With trivial intersection |YF| = |Y||F|, so the count decides YF = X.
  if (retract.order() * complement.order() != whole.order())
    throw Error(ErrorCode::NotCovering, "retract times complement has " +
                std::to_string(retract.order() * complement.order()) +
                " elements, group has " + std::to_string(whole.order()));

  return SplitExtension(whole, restrict_to(retract, whole), restrict_to(complement, whole));
}

std::pair<Permutation, Permutation> SplitExtension::decompose(Permutation const &x) const
{
  if (!whole_.contains(x))
    throw Error(ErrorCode::NotASubgroup, x.to_string() + " is not in the group");

  for (auto const &y : retract_.elements()) {
    Permutation f = y.inverse() * x;
    if (complement_.contains(f))
      return {y, f};
  }
  throw Error(ErrorCode::NotCovering, x.to_string() + " has no decomposition");
}

Lift lift_normal_subgroup(SplitExtension const &ext, Subgroup const &n)
{
  FiniteGroup const &y = ext.retract().group();
  if (!is_subset(n, y) || !is_normal(n, y))
    throw Error(ErrorCode::NotNormalInRetract, "N must be a normal subgroup of the retract");

  Subgroup lifted = join(restrict_to(n, ext.whole()), ext.complement());
  Subgroup meet = intersect(lifted, ext.retract());

  if (!is_normal(lifted, ext.whole()))
    throw Error(ErrorCode::NotNormal, "lifted subgroup is not normal");
  if (!(meet == n))
    throw Error(ErrorCode::ValidationError, "NF n Y differs from N");
  if (lifted.index() != ext.retract().order() / n.order())
    throw Error(ErrorCode::ValidationError, "[X:NF] differs from [Y:N]");

  return Lift{lifted, meet, lifted.index(), ext.retract().order() / n.order()};
}

bool in_retract_product(SplitExtension const &ext, Subgroup const &l, Permutation const &x)
{
  return std::any_of(ext.retract().elements().begin(), ext.retract().elements().end(),
                     [&](Permutation const &z) { return l.contains(z.inverse() * x); });
}

RetractWitness retract_witness(SplitExtension const &ext, Permutation const &x,
                               std::optional<unsigned> p)
{
  auto [y, f] = ext.decompose(x);
  if (f.is_identity())
    throw Error(ErrorCode::AlreadyInRetract, x.to_string() + " lies in the retract");

  auto const candidates = enumerate_normal_subgroups(ext.whole(), p);
  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [&](Subgroup const &n) { return !n.contains(f); });
  if (it == candidates.end()) {
    throw Error(ErrorCode::NoSeparatingN,
                "no normal subgroup of " + std::to_string(p.value_or(0)) +
                "-power index excludes " + f.to_string());
  }

  Subgroup const &n = *it;
  Subgroup u = intersect(n, ext.complement());
  Subgroup v = intersect(n, ext.retract());
  Subgroup l = join(v, u);
  Subgroup m = lift_normal_subgroup(ext, restrict_to(v, ext.retract().group())).lifted;

  if (!is_normal(l, ext.whole()))
    throw Error(ErrorCode::ValidationError, "L is not normal");
  if (!(l == intersect(m, n)))
    throw Error(ErrorCode::ValidationError, "L differs from M n N");
  if (in_retract_product(ext, l, x))
    throw Error(ErrorCode::ValidationError, "x lies in YL");
  if (p && !is_power_of(l.index(), *p))
    throw Error(ErrorCode::ValidationError, "[X:L] is not a power of p");

  return RetractWitness{x, y, f, p, n, u, v, l, m};
}

} // namespace amalgam
