#include "amalgam/amalgam.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "amalgam/error.hpp"

namespace amalgam {

GWord GWord::inverse() const
{
  std::vector<Syllable> inv;
  inv.reserve(syllables_.size());
  for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
    inv.push_back(Syllable{it->factor, it->element.inverse()});
  return GWord(std::move(inv));
}

GWord GWord::pow(long long k) const
{
  GWord base = k < 0 ? inverse() : *this;
  GWord result;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i)
    result = result * base;
  return result;
}

GWord GWord::operator*(GWord const &rhs) const
{
  std::vector<Syllable> joined(syllables_);
  joined.insert(joined.end(), rhs.syllables_.begin(), rhs.syllables_.end());
  return GWord(std::move(joined));
}

GWord NormalForm::to_word() const
{
  std::vector<Syllable> out;
  if (!amalgam_part.is_identity())
    out.push_back(Syllable{Factor::A, amalgam_part});
  out.insert(out.end(), syllables.begin(), syllables.end());
  return GWord(std::move(out));
}

namespace {

std::vector<std::size_t> coset_table(FiniteGroup const &x, Subgroup const &h)
{
  std::size_t const unassigned = x.order();
  std::vector<std::size_t> rep(x.order(), unassigned);
  for (std::size_t i = 0; i < x.order(); ++i) {
    if (rep[i] != unassigned)
      continue;
    // elements are visited in increasing order, so i is the least member
    for (auto const &m : h.elements())
      rep[x.index_of(m * x.elements()[i])] = i;
  }
  return rep;
}

} // namespace

AmalgamSpec::AmalgamSpec(FiniteGroup a, FiniteGroup b, Subgroup h, Subgroup k,
                         Homomorphism phi, std::optional<SplitExtension> ext_a,
                         std::optional<SplitExtension> ext_b)
{
  if (!is_subset(h, a) || !is_subset(k, b))
    throw Error(ErrorCode::ValidationError, "amalgamated subgroups must lie in their factors");
  if (!(phi.source() == h.group()) || !(phi.target() == k.group()))
    throw Error(ErrorCode::ValidationError, "phi must map H onto K");
  if (!phi.verified() || !phi.is_bijective())
    throw Error(ErrorCode::ValidationError, "phi is not a verified isomorphism");
  if (ext_a && (!(ext_a->whole() == a) || !(ext_a->retract() == h)))
    throw Error(ErrorCode::ValidationError, "retract structure of A must have H as retract");
  if (ext_b && (!(ext_b->whole() == b) || !(ext_b->retract() == k)))
    throw Error(ErrorCode::ValidationError, "retract structure of B must have K as retract");

  auto d = std::make_shared<Data>();
  d->h = restrict_to(h, a);
  d->k = restrict_to(k, b);
  d->a = std::move(a);
  d->b = std::move(b);
  d->phi_inv = phi.inverse();
  d->phi = std::move(phi);
  d->ext_a = std::move(ext_a);
  d->ext_b = std::move(ext_b);
  d->rep_a = coset_table(d->a, d->h);
  d->rep_b = coset_table(d->b, d->k);
  d_ = std::move(d);
}

Permutation AmalgamSpec::transport(Factor from, Factor to, Permutation const &x) const
{
  if (from == to)
    return x;
  return from == Factor::A ? d_->phi(x) : d_->phi_inv(x);
}

std::pair<Permutation, Permutation> AmalgamSpec::split_coset(Factor f, Permutation const &x) const
{
  FiniteGroup const &g = factor(f);
  auto const &table = f == Factor::A ? d_->rep_a : d_->rep_b;
  Permutation const &r = g.elements()[table[g.index_of(x)]];
  return {x * r.inverse(), r};
}

std::vector<Permutation> AmalgamSpec::coset_representatives(Factor f) const
{
  FiniteGroup const &g = factor(f);
  auto const &table = f == Factor::A ? d_->rep_a : d_->rep_b;
  std::vector<Permutation> reps;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] == i && !g.elements()[i].is_identity())
      reps.push_back(g.elements()[i]);
  }
  return reps;
}

AmalgamSpec AmalgamSpec::mirrored() const
{
  auto d = std::make_shared<Data>(Data{d_->b, d_->a, d_->k, d_->h, d_->phi_inv, d_->phi,
                                       d_->ext_b, d_->ext_a, d_->rep_b, d_->rep_a});
  return AmalgamSpec(std::move(d));
}

NormalForm reduce(AmalgamSpec const &spec, GWord const &w)
{
  Permutation h = spec.factor(Factor::A).identity();
  std::deque<Syllable> tail;

  // Prepend syllables right to left, keeping h * tail in normal form.
  for (auto it = w.syllables().rbegin(); it != w.syllables().rend(); ++it) {
    Factor f = it->factor;
    if (!spec.factor(f).contains(it->element))
      throw Error(ErrorCode::ElementNotInFactor, it->element.to_string() +
                  " is not an element of factor " + tag(f));

    Permutation y = it->element * spec.transport(Factor::A, f, h);
    if (!tail.empty() && tail.front().factor == f) {
      y *= tail.front().element;
      tail.pop_front();
    }

    auto [amalgam, rep] = spec.split_coset(f, y);
    h = spec.transport(f, Factor::A, amalgam);
    if (!rep.is_identity())
      tail.push_front(Syllable{f, std::move(rep)});
  }

  return NormalForm{std::move(h), std::vector<Syllable>(tail.begin(), tail.end())};
}

bool equal(AmalgamSpec const &spec, GWord const &u, GWord const &v)
{
  return reduce(spec, u) == reduce(spec, v);
}

CyclicReduction cyclically_reduce(AmalgamSpec const &spec, GWord const &w)
{
  NormalForm nf = reduce(spec, w);
  GWord conjugator;
  while (nf.length() >= 2 && nf.syllables.front().factor == nf.syllables.back().factor) {
    GWord last({nf.syllables.back()});
    nf = reduce(spec, last * nf.to_word() * last.inverse());
    conjugator = last * conjugator;
  }
  return CyclicReduction{std::move(nf), std::move(conjugator)};
}

namespace {

std::pair<Factor, Permutation> factor_element(AmalgamSpec const &spec, NormalForm const &core)
{
  if (core.length() == 0)
    return {Factor::A, core.amalgam_part};
  Factor f = core.syllables.front().factor;
  return {f, spec.transport(Factor::A, f, core.amalgam_part) * core.syllables.front().element};
}

} // namespace

std::optional<std::size_t> element_order(AmalgamSpec const &spec, GWord const &w)
{
  auto cr = cyclically_reduce(spec, w);
  if (cr.core.length() >= 2)
    return std::nullopt;
  return factor_element(spec, cr.core).second.order();
}

std::optional<FactorConjugate> conjugate_into_factor(AmalgamSpec const &spec,
                                                     CyclicSubgroupOfG const &c)
{
  auto cr = cyclically_reduce(spec, c.generator);
  if (cr.core.length() >= 2)
    return std::nullopt;

  auto [f, e] = factor_element(spec, cr.core);
  FiniteGroup const &x = spec.factor(f);

  Permutation best = e;
  Permutation best_by = x.identity();
  for (auto const &a : x.elements()) {
    Permutation conj = a * e * a.inverse();
    if (conj < best) {
      best = conj;
      best_by = a;
    }
  }

  GWord conjugator = cr.conjugator;
  if (!best_by.is_identity())
    conjugator = GWord::single(f, best_by) * conjugator;

  Subgroup sub = Subgroup::generated(x, std::span<const Permutation>(&best, 1));
  return FactorConjugate{f, best, std::move(sub), std::move(conjugator)};
}

std::optional<long long> cyclic_member_exponent(AmalgamSpec const &spec, GWord const &g,
                                                GWord const &c)
{
  NormalForm target = reduce(spec, g);
  auto order = element_order(spec, c);

  if (order) {
    NormalForm power = reduce(spec, GWord());
    for (std::size_t k = 0; k < *order; ++k) {
      if (power == target)
        return static_cast<long long>(k);
      power = reduce(spec, power.to_word() * c);
    }
    return std::nullopt;
  }

  // c = t u t^-1 with u cyclically reduced of length m >= 2, so c^k has
  // length at least 2|k| - 2 len(c); beyond this range no power can match.
  long long const bound = static_cast<long long>(target.length() + 2 * reduce(spec, c).length() + 2);
  NormalForm up = reduce(spec, GWord());
  NormalForm down = up;
  GWord c_inv = c.inverse();
  for (long long k = 0; k <= bound; ++k) {
    if (up == target)
      return k;
    if (down == target)
      return -k;
    up = reduce(spec, up.to_word() * c);
    down = reduce(spec, down.to_word() * c_inv);
  }
  return std::nullopt;
}

std::optional<std::pair<Permutation, unsigned>>
find_isolation_violation(FiniteGroup const &x, Subgroup const &c, unsigned p)
{
  bool cyclic = std::any_of(c.elements().begin(), c.elements().end(),
                            [&](Permutation const &g) { return g.order() == c.order(); });
  if (!cyclic)
    throw Error(ErrorCode::NotCyclic, "subgroup of order " + std::to_string(c.order()) +
                " is not cyclic");
  if (!is_subset(c, x))
    throw Error(ErrorCode::NotASubgroup, "subgroup is not contained in the group");

  for (unsigned q = 2; q <= x.order(); ++q) {
    if (q == p || !is_prime(q) || x.order() % q != 0)
      continue;
    for (auto const &g : x.elements()) {
      if (c.contains(g.pow(q)) && !c.contains(g))
        return std::make_pair(g, q);
    }
  }
  return std::nullopt;
}

bool is_pprime_isolated_finite(FiniteGroup const &x, Subgroup const &c, unsigned p)
{
  return !find_isolation_violation(x, c, p).has_value();
}

std::vector<NormalForm> enumerate_normal_forms(AmalgamSpec const &spec, std::size_t max_length)
{
  std::vector<Permutation> const reps_a = spec.coset_representatives(Factor::A);
  std::vector<Permutation> const reps_b = spec.coset_representatives(Factor::B);
  auto const amalgam = spec.amalgamated(Factor::A).elements();

  std::vector<NormalForm> out;
  std::vector<Syllable> current;
  std::function<void(std::size_t, Factor)> extend = [&](std::size_t remaining, Factor next) {
    if (remaining == 0) {
      for (auto const &h : amalgam)
        out.push_back(NormalForm{h, current});
      return;
    }
    for (auto const &r : next == Factor::A ? reps_a : reps_b) {
      current.push_back(Syllable{next, r});
      extend(remaining - 1, other(next));
      current.pop_back();
    }
  };

  for (std::size_t len = 0; len <= max_length; ++len) {
    if (len == 0) {
      extend(0, Factor::A);
      continue;
    }
    extend(len, Factor::A);
    extend(len, Factor::B);
  }
  return out;
}

IsolationReport is_pprime_isolated_in_G(AmalgamSpec const &spec, CyclicSubgroupOfG const &c,
                                        unsigned p, std::size_t length_bound)
{
  std::size_t const prime_bound =
      std::max(spec.factor(Factor::A).order(), spec.factor(Factor::B).order());
  IsolationReport report{p, length_bound, prime_bound, 0, std::nullopt, 0};

  std::vector<unsigned> primes;
  for (unsigned q = 2; q <= prime_bound; ++q) {
    if (q != p && is_prime(q))
      primes.push_back(q);
  }

  for (auto const &nf : enumerate_normal_forms(spec, length_bound)) {
    GWord g = nf.to_word();
    bool g_in_c = cyclic_member_exponent(spec, g, c.generator).has_value();
    for (unsigned q : primes) {
      ++report.checked;
      if (g_in_c)
        continue;
      if (cyclic_member_exponent(spec, g.pow(q), c.generator)) {
        report.violating_element = g;
        report.violating_prime = q;
        return report;
      }
    }
  }
  return report;
}

} // namespace amalgam
