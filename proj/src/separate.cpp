#include "amalgam/separate.hpp"

#include <algorithm>
#include <numeric>

#include "amalgam/error.hpp"

namespace amalgam {

DeltaFamily compute_delta(FiniteGroup const &x, std::optional<unsigned> p)
{
  SubgroupFamily family = theta_family(x, p);
  DeltaFamily delta{x, p, {}};
  for (auto const &c : cyclic_subgroups(x)) {
    if (p && !is_pprime_isolated_finite(x, c, *p))
      continue;
    if (!verify_separable_by_family(x, c, family))
      delta.members.push_back(c);
  }
  return delta;
}

FiniteAmalgamQuotient induced_quotient(AmalgamSpec const &spec, Subgroup const &r,
                                       Subgroup const &s)
{
  if (!verify_compatible_pair(spec, r, s))
    throw Error(ErrorCode::IncompatiblePair, "(R, S) is not a compatible pair");

  FiniteGroup const &a = spec.factor(Factor::A);
  FiniteGroup const &b = spec.factor(Factor::B);
  Subgroup r_in_a = restrict_to(r, a);
  Subgroup s_in_b = restrict_to(s, b);
  Quotient qa = quotient(a, r_in_a);
  Quotient qb = quotient(b, s_in_b);
  Subgroup image_h = qa.projection.image_of(spec.amalgamated(Factor::A));
  Subgroup image_k = qb.projection.image_of(spec.amalgamated(Factor::B));

  std::vector<std::optional<Permutation>> table(image_h.order());
  for (auto const &h : spec.amalgamated(Factor::A).elements()) {
    std::size_t i = image_h.group().index_of(qa.projection(h));
    Permutation const &target = qb.projection(spec.phi()(h));
    if (table[i] && *table[i] != target)
      throw Error(ErrorCode::IncompatiblePair, "induced map is not well defined");
    table[i] = target;
  }
  std::vector<Permutation> images;
  for (auto &img : table)
    images.push_back(std::move(*img));
  Homomorphism induced = Homomorphism::from_table(image_h.group(), image_k.group(), std::move(images));
  if (!induced.is_bijective())
    throw Error(ErrorCode::IncompatiblePair, "induced map is not an isomorphism");

  return FiniteAmalgamQuotient{std::move(r_in_a), std::move(s_in_b), std::move(qa), std::move(qb),
                               std::move(image_h), std::move(image_k), std::move(induced)};
}

namespace {

struct RegularCopies {
  FiniteGroup const *group;
  std::size_t copies;

  Point act(Point x, std::size_t element) const
  {
    std::size_t n = group->order();
    std::size_t copy = x / n;
    std::size_t i = x % n;
    return static_cast<Point>(copy * n +
                              group->index_of(group->elements()[i] * group->elements()[element]));
  }
};

/// Orbits of a subgroup on the copies, each listed as base * h for h running
/// through the subgroup's elements; orbits sorted by base point.
std::vector<std::vector<Point>> subgroup_orbits(RegularCopies const &rc, Subgroup const &sub,
                                                std::size_t degree)
{
  std::vector<std::size_t> sub_index;
  for (auto const &h : sub.elements())
    sub_index.push_back(rc.group->index_of(h));

  std::vector<bool> seen(degree, false);
  std::vector<std::vector<Point>> orbits;
  for (Point x = 0; x < degree; ++x) {
    if (seen[x])
      continue;
    std::vector<Point> orbit;
    for (std::size_t h : sub_index) {
      Point y = rc.act(x, h);
      seen[y] = true;
      orbit.push_back(y);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

} // namespace

MatchedEmbedding embed_matched_regular(FiniteAmalgamQuotient const &q, unsigned multiplicity)
{
  FiniteGroup const &qa = q.quotient_a.image;
  FiniteGroup const &qb = q.quotient_b.image;
  std::size_t const degree = multiplicity * std::lcm(qa.order(), qb.order());

  RegularCopies ra{&qa, degree / qa.order()};
  RegularCopies rb{&qb, degree / qb.order()};

  auto orbits_a = subgroup_orbits(ra, q.image_h, degree);
  auto orbits_b = subgroup_orbits(rb, q.image_k, degree);

  // beta(base_a h) = base_b (h theta); orbit j of A meets orbit j + shift of B
  std::vector<Point> beta(degree), beta_inv(degree);
  std::size_t const n_orbits = orbits_a.size();
  std::size_t const shift = (multiplicity - 1) % n_orbits;
  for (std::size_t j = 0; j < n_orbits; ++j) {
    auto const &oa = orbits_a[j];
    auto const &ob = orbits_b[(j + shift) % n_orbits];
    for (std::size_t t = 0; t < q.image_h.order(); ++t) {
      Permutation const &h = q.image_h.elements()[t];
      Point from = ra.act(oa.front(), qa.index_of(h));
      Point to = rb.act(ob.front(), qb.index_of(q.induced(h)));
      beta[from] = to;
      beta_inv[to] = from;
    }
  }

  MatchedEmbedding emb{static_cast<unsigned>(degree), {}, {}};
  for (std::size_t e = 0; e < qa.order(); ++e) {
    std::vector<Point> images(degree);
    for (Point x = 0; x < degree; ++x)
      images[x] = ra.act(x, e);
    emb.images_a.emplace_back(std::move(images));
  }
  for (std::size_t e = 0; e < qb.order(); ++e) {
    std::vector<Point> images(degree);
    for (Point x = 0; x < degree; ++x)
      images[x] = beta_inv[rb.act(beta[x], e)];
    emb.images_b.emplace_back(std::move(images));
  }
  return emb;
}

Permutation FiniteImage::evaluate(GWord const &w) const
{
  Permutation result = Permutation::identity(degree);
  for (auto const &syl : w.syllables()) {
    Quotient const &q = syl.factor == Factor::A ? quotient.quotient_a : quotient.quotient_b;
    auto const &table = syl.factor == Factor::A ? table_a : table_b;
    result *= table[q.image.index_of(q.projection(syl.element))];
  }
  return result;
}

Separator::Separator(AmalgamSpec spec, std::optional<unsigned> p, SearchOptions options)
  : spec_(std::move(spec)), p_(p), options_(options)
{
  if (p_ && !is_prime(*p_))
    throw Error(ErrorCode::ValidationError, std::to_string(*p_) + " is not prime");
}

std::vector<std::pair<Subgroup, Subgroup>> const &Separator::pairs()
{
  if (pairs_)
    return *pairs_;

  FiniteGroup const &b = spec_.factor(Factor::B);
  auto const partners = enumerate_normal_subgroups(b, p_);

  std::vector<std::pair<Subgroup, Subgroup>> out;
  for (auto const &r : enumerate_normal_subgroups(spec_.factor(Factor::A), p_)) {
    Subgroup built = p_ ? build_p_chain(spec_, r, *p_).chain_b.front()
                        : build_compatible_pair(spec_, r).s;
    out.emplace_back(r, built);
    for (auto const &s : partners) {
      if (!(s == built) && verify_compatible_pair(spec_, r, s))
        out.emplace_back(r, s);
    }
  }
  pairs_ = std::move(out);
  return *pairs_;
}

FiniteImage const *Separator::image(std::size_t pair_index, unsigned multiplicity)
{
  auto key = std::make_pair(pair_index, multiplicity);
  if (auto it = images_.find(key); it != images_.end())
    return it->second ? &*it->second : nullptr;

  auto const &[r, s] = pairs().at(pair_index);
  FiniteAmalgamQuotient q = induced_quotient(spec_, r, s);
  MatchedEmbedding emb = embed_matched_regular(q, multiplicity);

  std::optional<FiniteImage> built;
  if (!p_) {
    built = FiniteImage{r, s, multiplicity, emb.degree, std::move(q),
                        std::move(emb.images_a), std::move(emb.images_b)};
  } else {
    // pass to the largest p-group quotient of the image
    std::vector<Permutation> gens;
    for (auto const &g : q.quotient_a.image.generators())
      gens.push_back(emb.images_a[q.quotient_a.image.index_of(g)]);
    for (auto const &g : q.quotient_b.image.generators())
      gens.push_back(emb.images_b[q.quotient_b.image.index_of(g)]);

    try {
      FiniteGroup im = closure(gens, emb.degree, options_.image_order_bound);
      if (im.is_p_group(*p_)) {
        built = FiniteImage{r, s, multiplicity, emb.degree, std::move(q),
                            std::move(emb.images_a), std::move(emb.images_b)};
      } else {
        std::vector<Permutation> coprime;
        for (auto const &x : im.elements()) {
          if (!is_power_of(x.order(), *p_) && !x.is_identity())
            coprime.push_back(x);
        }
        // generated by a union of conjugacy classes, hence normal
        Subgroup residual = normal_closure(coprime, im);
        Quotient top = quotient(im, residual);
        if (!top.image.is_p_group(*p_))
          throw Error(ErrorCode::ValidationError, "p-quotient is not a p-group");

        std::vector<Permutation> ta, tb;
        for (auto const &x : emb.images_a)
          ta.push_back(top.projection(x));
        for (auto const &x : emb.images_b)
          tb.push_back(top.projection(x));
        built = FiniteImage{r, s, multiplicity, top.image.degree(), std::move(q),
                            std::move(ta), std::move(tb)};
      }
    } catch (Error const &e) {
      if (e.code() != ErrorCode::BoundExceeded)
        throw;
    }
  }

  auto [it, inserted] = images_.emplace(key, std::move(built));
  return it->second ? &*it->second : nullptr;
}

DeltaFamily const &Separator::delta(Factor f)
{
  auto &slot = f == Factor::A ? delta_a_ : delta_b_;
  if (!slot)
    slot = compute_delta(spec_.factor(f), p_);
  return *slot;
}

std::optional<NonSeparabilityCertificate> Separator::delta_certificate(CyclicSubgroupOfG const &c)
{
  auto fc = conjugate_into_factor(spec_, c);
  if (!fc)
    return std::nullopt;

  std::vector<FactorConjugate> sides{*fc};
  if (fc->factor == Factor::A && spec_.amalgamated(Factor::A).contains(fc->element)) {
    // the element also lives in K; normalise it inside B as well
    FiniteGroup const &b = spec_.factor(Factor::B);
    Permutation e = spec_.transport(Factor::A, Factor::B, fc->element);
    Permutation best = e, best_by = b.identity();
    for (auto const &x : b.elements()) {
      Permutation conj = x * e * x.inverse();
      if (conj < best) {
        best = conj;
        best_by = x;
      }
    }
    GWord conjugator = fc->conjugator;
    if (!best_by.is_identity())
      conjugator = GWord::single(Factor::B, best_by) * conjugator;
    sides.push_back(FactorConjugate{Factor::B, best,
                                    Subgroup::generated(b, std::span<const Permutation>(&best, 1)),
                                    std::move(conjugator)});
  }

  for (auto const &side : sides) {
    auto const &members = delta(side.factor).members;
    auto it = std::find(members.begin(), members.end(), side.subgroup);
    if (it != members.end())
      return NonSeparabilityCertificate{c, p_, side.factor, side.conjugator, side.element, *it,
                                        std::nullopt};
  }
  return std::nullopt;
}

SeparationResult Separator::separate(GWord const &g, CyclicSubgroupOfG const &c)
{
  reduce(spec_, g);
  reduce(spec_, c.generator);

  if (auto k = cyclic_member_exponent(spec_, g, c.generator))
    return MemberShortCircuit{*k};

  std::optional<IsolationReport> isolation;
  if (p_) {
    isolation = is_pprime_isolated_in_G(spec_, c, *p_, options_.isolation_bound);
    if (!isolation->isolated()) {
      throw Error(ErrorCode::NotPPrimeIsolated,
                  "an element of length <= " + std::to_string(options_.isolation_bound) +
                  " lies outside C while its power " +
                  std::to_string(isolation->violating_prime) + " lies in C");
    }
  }

  if (auto cert = delta_certificate(c)) {
    cert->isolation = isolation;
    return *cert;
  }

  std::size_t tried = 0;
  for (std::size_t i = 0; i < pairs().size(); ++i) {
    for (unsigned m = 1; m <= options_.budget; ++m) {
      FiniteImage const *img = image(i, m);
      ++tried;
      if (!img)
        continue;

      Permutation pg = img->evaluate(g);
      Permutation pc = img->evaluate(c.generator);
      bool inside = false;
      Permutation power = Permutation::identity(img->degree);
      do {
        if (power == pg) {
          inside = true;
          break;
        }
        power *= pc;
      } while (!power.is_identity());
      if (inside)
        continue;

      SeparabilityWitness w{g, c, p_, img->r, img->s, m, img->degree, {}, {}, isolation};
      for (auto const &gen : spec_.factor(Factor::A).generators())
        w.images_a.push_back(img->evaluate(GWord::single(Factor::A, gen)));
      for (auto const &gen : spec_.factor(Factor::B).generators())
        w.images_b.push_back(img->evaluate(GWord::single(Factor::B, gen)));
      return w;
    }
  }
  return BudgetExhausted{tried, options_.budget};
}

SeparationResult separate_cyclic(AmalgamSpec const &spec, GWord const &g,
                                 CyclicSubgroupOfG const &c, std::optional<unsigned> p,
                                 SearchOptions const &options)
{
  Separator sep(spec, p, options);
  return sep.separate(g, c);
}

std::string_view to_string(WitnessReason reason)
{
  switch (reason) {
  case WitnessReason::Ok: return "Ok";
  case WitnessReason::Malformed: return "Malformed";
  case WitnessReason::HomomorphismBroken: return "HomomorphismBroken";
  case WitnessReason::AmalgamDisagreement: return "AmalgamDisagreement";
  case WitnessReason::NotSeparated: return "NotSeparated";
  case WitnessReason::NotPGroup: return "NotPGroup";
  }
  return "Unknown";
}

namespace {

/// Element-indexed images of a map defined on generators, or nullopt when
/// the map is not multiplicative on every pair of elements.
std::optional<std::vector<Permutation>> extend_to_table(FiniteGroup const &source,
                                                        std::vector<Permutation> const &images,
                                                        unsigned degree)
{
  auto gens = source.generators();
  std::vector<std::optional<Permutation>> table(source.order());
  std::size_t start = source.index_of(source.identity());
  table[start] = Permutation::identity(degree);
  std::vector<std::size_t> queue{start};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t i = queue[head];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::size_t k = source.index_of(source.elements()[i] * gens[j]);
      if (!table[k]) {
        table[k] = *table[i] * images[j];
        queue.push_back(k);
      }
    }
  }

  std::vector<Permutation> out;
  for (auto &t : table)
    out.push_back(std::move(*t));

  auto elems = source.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      if (out[source.index_of(elems[i] * elems[j])] != out[i] * out[j])
        return std::nullopt;
    }
  }
  return out;
}

Permutation evaluate_with(AmalgamSpec const &spec, std::vector<Permutation> const &table_a,
                          std::vector<Permutation> const &table_b, GWord const &w,
                          unsigned degree)
{
  Permutation result = Permutation::identity(degree);
  for (auto const &syl : w.syllables()) {
    FiniteGroup const &f = spec.factor(syl.factor);
    result *= (syl.factor == Factor::A ? table_a : table_b)[f.index_of(syl.element)];
  }
  return result;
}

} // namespace

WitnessCheck verify_witness(AmalgamSpec const &spec, SeparabilityWitness const &w)
{
  FiniteGroup const &a = spec.factor(Factor::A);
  FiniteGroup const &b = spec.factor(Factor::B);

  if (w.images_a.size() != a.generators().size() || w.images_b.size() != b.generators().size())
    return {WitnessReason::Malformed, "wrong number of generator images"};
  for (auto const *images : {&w.images_a, &w.images_b}) {
    for (auto const &x : *images) {
      if (x.degree() != w.degree)
        return {WitnessReason::Malformed, "generator image of degree " +
                std::to_string(x.degree()) + ", expected " + std::to_string(w.degree)};
    }
  }
  for (auto const *word : {&w.target, &w.subgroup.generator}) {
    for (auto const &syl : word->syllables()) {
      if (!spec.factor(syl.factor).contains(syl.element))
        return {WitnessReason::Malformed, syl.element.to_string() + " is not in its factor"};
    }
  }

  auto table_a = extend_to_table(a, w.images_a, w.degree);
  if (!table_a)
    return {WitnessReason::HomomorphismBroken, "images of A do not define a homomorphism"};
  auto table_b = extend_to_table(b, w.images_b, w.degree);
  if (!table_b)
    return {WitnessReason::HomomorphismBroken, "images of B do not define a homomorphism"};

  for (auto const &h : spec.amalgamated(Factor::A).elements()) {
    if ((*table_a)[a.index_of(h)] != (*table_b)[b.index_of(spec.phi()(h))])
      return {WitnessReason::AmalgamDisagreement, "images disagree on " + h.to_string()};
  }

  Permutation pg = evaluate_with(spec, *table_a, *table_b, w.target, w.degree);
  Permutation pc = evaluate_with(spec, *table_a, *table_b, w.subgroup.generator, w.degree);
  Permutation power = Permutation::identity(w.degree);
  do {
    if (power == pg)
      return {WitnessReason::NotSeparated, "image of g is a power of the image of c"};
    power *= pc;
  } while (!power.is_identity());

  if (w.p) {
    std::vector<Permutation> gens(w.images_a);
    gens.insert(gens.end(), w.images_b.begin(), w.images_b.end());
    try {
      FiniteGroup im = closure(gens, w.degree);
      if (!im.is_p_group(*w.p))
        return {WitnessReason::NotPGroup, "image has order " + std::to_string(im.order())};
    } catch (Error const &) {
      return {WitnessReason::NotPGroup, "image exceeds the order bound"};
    }
  }
  return {};
}

} // namespace amalgam
