#include "amalgam/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

using PermSet = std::unordered_set<Permutation, PermutationHash>;

std::vector<Permutation> bfs_closure(std::span<const Permutation> generators,
                                     unsigned degree, std::size_t bound)
{
  for (auto const &g : generators) {
    if (g.degree() != degree)
      throw Error(ErrorCode::DegreeMismatch, "generator " + g.to_string() +
                  " has degree " + std::to_string(g.degree()) + ", expected " +
                  std::to_string(degree));
  }

  PermSet seen;
  std::vector<Permutation> queue{Permutation::identity(degree)};
  seen.insert(queue.front());

  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto const &g : generators) {
      Permutation next = queue[head] * g;
      if (seen.insert(next).second) {
        if (seen.size() > bound)
          throw Error(ErrorCode::BoundExceeded,
                      "closure exceeds " + std::to_string(bound) + " elements");
        queue.push_back(std::move(next));
      }
    }
  }

  std::sort(queue.begin(), queue.end());
  return queue;
}

} // namespace

FiniteGroup::FiniteGroup()
  : d_(std::make_shared<Data>(Data{1, {}, {Permutation::identity(1)}}))
{}

bool FiniteGroup::contains(Permutation const &x) const
{
  if (x.degree() != degree())
    return false;
  return std::binary_search(d_->elements.begin(), d_->elements.end(), x);
}

std::size_t FiniteGroup::index_of(Permutation const &x) const
{
  auto it = std::lower_bound(d_->elements.begin(), d_->elements.end(), x);
  if (it == d_->elements.end() || *it != x)
    throw Error(ErrorCode::NotASubgroup, x.to_string() + " is not an element of the group");
  return static_cast<std::size_t>(it - d_->elements.begin());
}

bool FiniteGroup::is_p_group(unsigned p) const
{
  return is_power_of(order(), p);
}

FiniteGroup FiniteGroup::from_closed_set(unsigned degree, std::vector<Permutation> elements)
{
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

  std::vector<Permutation> gens;
  std::vector<Permutation> current{Permutation::identity(degree)};
  for (auto const &x : elements) {
    if (std::binary_search(current.begin(), current.end(), x))
      continue;
    gens.push_back(x);
    current = bfs_closure(gens, degree, elements.size());
    if (current.size() == elements.size())
      break;
  }

  return FiniteGroup(std::make_shared<Data>(Data{degree, std::move(gens), std::move(elements)}));
}

bool operator==(FiniteGroup const &lhs, FiniteGroup const &rhs)
{
  if (lhs.d_ == rhs.d_)
    return true;
  return lhs.degree() == rhs.degree() && lhs.d_->elements == rhs.d_->elements;
}

FiniteGroup closure(std::span<const Permutation> generators, unsigned degree,
                    std::size_t bound)
{
  auto elements = bfs_closure(generators, degree, bound);
  std::vector<Permutation> gens;
  for (auto const &g : generators) {
    if (!g.is_identity() && std::find(gens.begin(), gens.end(), g) == gens.end())
      gens.push_back(g);
  }
  return FiniteGroup(std::make_shared<FiniteGroup::Data>(
      FiniteGroup::Data{degree, std::move(gens), std::move(elements)}));
}

Subgroup Subgroup::generated(FiniteGroup const &parent, std::span<const Permutation> gens)
{
  for (auto const &g : gens) {
    if (!parent.contains(g))
      throw Error(ErrorCode::NotASubgroup, g.to_string() + " does not lie in the parent group");
  }
  return Subgroup(parent, closure(gens, parent.degree(), parent.order()));
}

Subgroup Subgroup::whole(FiniteGroup const &parent)
{
  return Subgroup(parent, parent);
}

Subgroup Subgroup::trivial(FiniteGroup const &parent)
{
  return Subgroup(parent, closure({}, parent.degree()));
}

Subgroup Subgroup::from_closed_set(FiniteGroup const &parent, std::vector<Permutation> elements)
{
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.size() == parent.order())
    return whole(parent);
  return Subgroup(parent, FiniteGroup::from_closed_set(parent.degree(), std::move(elements)));
}

bool canonical_less(Subgroup const &lhs, Subgroup const &rhs)
{
  if (lhs.order() != rhs.order())
    return lhs.order() < rhs.order();
  auto a = lhs.elements();
  auto b = rhs.elements();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Subgroup intersect(Subgroup const &lhs, Subgroup const &rhs)
{
  std::vector<Permutation> common;
  for (auto const &x : lhs.elements()) {
    if (rhs.contains(x))
      common.push_back(x);
  }
  return Subgroup::from_closed_set(lhs.parent(), std::move(common));
}

Subgroup join(Subgroup const &lhs, Subgroup const &rhs)
{
  std::vector<Permutation> gens(lhs.generators().begin(), lhs.generators().end());
  gens.insert(gens.end(), rhs.generators().begin(), rhs.generators().end());
  return Subgroup::generated(lhs.parent(), gens);
}

Subgroup restrict_to(Subgroup const &sub, FiniteGroup const &group)
{
  std::vector<Permutation> common;
  for (auto const &x : group.elements()) {
    if (sub.contains(x))
      common.push_back(x);
  }
  return Subgroup::from_closed_set(group, std::move(common));
}

bool is_subset(Subgroup const &sub, FiniteGroup const &group)
{
  return std::all_of(sub.elements().begin(), sub.elements().end(),
                     [&](Permutation const &x) { return group.contains(x); });
}

bool is_normal(Subgroup const &n, FiniteGroup const &x)
{
  if (!is_subset(n, x))
    throw Error(ErrorCode::NotASubgroup, "subgroup is not contained in the group");

  for (auto const &g : x.generators()) {
    Permutation g_inv = g.inverse();
    for (auto const &m : n.generators()) {
      if (!n.contains(g_inv * m * g))
        return false;
    }
  }
  return true;
}

Subgroup normal_closure(std::span<const Permutation> seed, FiniteGroup const &x)
{
  std::vector<Permutation> gens;
  for (auto const &s : seed) {
    if (!x.contains(s))
      throw Error(ErrorCode::NotASubgroup, s.to_string() + " does not lie in the group");
    if (!s.is_identity())
      gens.push_back(s);
  }

  Subgroup current = Subgroup::generated(x, gens);
  for (bool grown = true; grown;) {
    grown = false;
    for (auto const &g : x.generators()) {
      Permutation g_inv = g.inverse();
      for (auto const &m : std::vector<Permutation>(current.generators().begin(),
                                                     current.generators().end())) {
        Permutation c = g_inv * m * g;
        if (!current.contains(c)) {
          gens.push_back(c);
          current = Subgroup::generated(x, gens);
          grown = true;
        }
      }
    }
  }
  return current;
}

std::vector<std::vector<Permutation>> conjugacy_classes(FiniteGroup const &x)
{
  std::vector<bool> done(x.order(), false);
  std::vector<std::vector<Permutation>> classes;

  for (std::size_t i = 0; i < x.order(); ++i) {
    if (done[i])
      continue;

    std::vector<Permutation> cls{x.elements()[i]};
    done[i] = true;
    for (std::size_t head = 0; head < cls.size(); ++head) {
      for (auto const &g : x.generators()) {
        Permutation c = g.inverse() * cls[head] * g;
        std::size_t j = x.index_of(c);
        if (!done[j]) {
          done[j] = true;
          cls.push_back(std::move(c));
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::vector<Subgroup> enumerate_normal_subgroups(FiniteGroup const &x,
                                                 std::optional<unsigned> p,
                                                 std::size_t bound)
{
  if (x.order() > bound)
    throw Error(ErrorCode::BoundExceeded, "normal subgroup enumeration is limited to order " +
                std::to_string(bound) + ", got " + std::to_string(x.order()));

  // Every normal subgroup is the join of the normal closures of the classes
  // it contains, so closing the class closures under joins finds them all.
  std::vector<Subgroup> class_closures;
  for (auto const &cls : conjugacy_classes(x)) {
    if (cls.front().is_identity())
      continue;
    class_closures.push_back(Subgroup::generated(x, cls));
  }

  std::set<std::vector<Permutation>> seen;
  std::vector<Subgroup> found{Subgroup::trivial(x)};
  seen.insert({x.identity()});

  for (std::size_t head = 0; head < found.size(); ++head) {
    for (auto const &c : class_closures) {
      Subgroup j = join(found[head], c);
      std::vector<Permutation> key(j.elements().begin(), j.elements().end());
      if (seen.insert(std::move(key)).second)
        found.push_back(std::move(j));
    }
  }

  std::vector<Subgroup> result;
  for (auto &n : found) {
    if (!p || is_power_of(n.index(), *p))
      result.push_back(std::move(n));
  }
  std::sort(result.begin(), result.end(), canonical_less);
  return result;
}

std::vector<Subgroup> cyclic_subgroups(FiniteGroup const &x)
{
  std::set<std::vector<Permutation>> seen;
  std::vector<Subgroup> result;
  for (auto const &g : x.elements()) {
    Subgroup c = Subgroup::generated(x, std::span<const Permutation>(&g, 1));
    std::vector<Permutation> key(c.elements().begin(), c.elements().end());
    if (seen.insert(std::move(key)).second)
      result.push_back(std::move(c));
  }
  std::sort(result.begin(), result.end(), canonical_less);
  return result;
}

Homomorphism Homomorphism::from_generator_images(FiniteGroup const &source,
                                                 FiniteGroup const &target,
                                                 std::span<const Permutation> images)
{
  auto gens = source.generators();
  if (images.size() != gens.size())
    throw Error(ErrorCode::NotAHomomorphism, "expected " + std::to_string(gens.size()) +
                " generator images, got " + std::to_string(images.size()));
  for (auto const &img : images) {
    if (!target.contains(img))
      throw Error(ErrorCode::NotAHomomorphism, img.to_string() + " is not in the target group");
  }

  std::vector<std::optional<Permutation>> table(source.order());
  std::vector<std::size_t> queue{source.index_of(source.identity())};
  table[queue.front()] = target.identity();

  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::size_t i = queue[head];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      std::size_t k = source.index_of(source.elements()[i] * gens[j]);
      Permutation image = *table[i] * images[j];
      if (!table[k]) {
        table[k] = std::move(image);
        queue.push_back(k);
      } else if (*table[k] != image) {
        throw Error(ErrorCode::NotAHomomorphism,
                    "generator images violate a relation of the source group");
      }
    }
  }

  Homomorphism h;
  h.source_ = source;
  h.target_ = target;
  h.table_.reserve(table.size());
  for (auto &img : table)
    h.table_.push_back(std::move(*img));
  if (source.order() <= kDeskScale)
    h.check_multiplicative();
  return h;
}

Homomorphism Homomorphism::from_table(FiniteGroup const &source, FiniteGroup const &target,
                                      std::vector<Permutation> images)
{
  if (images.size() != source.order())
    throw Error(ErrorCode::NotAHomomorphism, "table size does not match the source order");
  for (auto const &img : images) {
    if (!target.contains(img))
      throw Error(ErrorCode::NotAHomomorphism, img.to_string() + " is not in the target group");
  }

  Homomorphism h;
  h.source_ = source;
  h.target_ = target;
  h.table_ = std::move(images);
  if (source.order() <= kDeskScale) {
    h.check_multiplicative();
  } else {
    // edges of the Cayley graph suffice
    for (std::size_t i = 0; i < source.order(); ++i) {
      for (auto const &g : source.generators()) {
        std::size_t k = source.index_of(source.elements()[i] * g);
        if (h.table_[k] != h.table_[i] * h(g))
          throw Error(ErrorCode::NotAHomomorphism, "table is not multiplicative");
      }
    }
  }
  return h;
}

void Homomorphism::check_multiplicative()
{
  auto elems = source_.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      std::size_t k = source_.index_of(elems[i] * elems[j]);
      if (table_[k] != table_[i] * table_[j])
        throw Error(ErrorCode::NotAHomomorphism, "map is not multiplicative on (" +
                    elems[i].to_string() + ", " + elems[j].to_string() + ")");
    }
  }
  verified_ = true;
}

Permutation const &Homomorphism::operator()(Permutation const &x) const
{
  return table_[source_.index_of(x)];
}

bool Homomorphism::is_injective() const
{
  return kernel().is_trivial();
}

bool Homomorphism::is_bijective() const
{
  return source_.order() == target_.order() && is_injective();
}

Subgroup Homomorphism::image_of(Subgroup const &sub) const
{
  std::vector<Permutation> images;
  images.reserve(sub.order());
  for (auto const &x : sub.elements())
    images.push_back((*this)(x));
  return Subgroup::from_closed_set(target_, std::move(images));
}

Subgroup Homomorphism::kernel() const
{
  std::vector<Permutation> k;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i].is_identity())
      k.push_back(source_.elements()[i]);
  }
  return Subgroup::from_closed_set(source_, std::move(k));
}

Homomorphism Homomorphism::inverse() const
{
  if (!is_bijective())
    throw Error(ErrorCode::NotAHomomorphism, "only bijections can be inverted");

  std::vector<Permutation> inv(target_.order());
  for (std::size_t i = 0; i < table_.size(); ++i)
    inv[target_.index_of(table_[i])] = source_.elements()[i];
  return from_table(target_, source_, std::move(inv));
}

Quotient quotient(FiniteGroup const &x, Subgroup const &n)
{
  if (!is_normal(n, x))
    throw Error(ErrorCode::NotNormal, "quotient requires a normal subgroup");

  std::size_t const unassigned = x.order();
  std::vector<std::size_t> coset(x.order(), unassigned);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < x.order(); ++i) {
    if (coset[i] != unassigned)
      continue;
    for (auto const &m : n.elements())
      coset[x.index_of(m * x.elements()[i])] = reps.size();
    reps.push_back(i);
  }

  auto const ncosets = static_cast<unsigned>(reps.size());
  auto action = [&](Permutation const &g) {
    std::vector<Point> images(ncosets);
    for (std::size_t c = 0; c < ncosets; ++c)
      images[c] = static_cast<Point>(coset[x.index_of(x.elements()[reps[c]] * g)]);
    return Permutation(std::move(images));
  };

  std::vector<Permutation> gen_images;
  for (auto const &g : x.generators())
    gen_images.push_back(action(g));
  FiniteGroup image = closure(gen_images, ncosets, x.order());

  std::vector<Permutation> table;
  table.reserve(x.order());
  for (auto const &g : x.elements())
    table.push_back(action(g));

  return Quotient{image, Homomorphism::from_table(x, image, std::move(table))};
}

FiniteGroup regular_representation(FiniteGroup const &x)
{
  std::vector<Permutation> gens;
  auto const degree = static_cast<unsigned>(x.order());
  for (auto const &g : x.generators()) {
    std::vector<Point> images(degree);
    for (std::size_t i = 0; i < degree; ++i)
      images[i] = static_cast<Point>(x.index_of(x.elements()[i] * g));
    gens.emplace_back(std::move(images));
  }
  return closure(gens, degree, x.order());
}

std::optional<Homomorphism> find_isomorphism(FiniteGroup const &from, FiniteGroup const &to)
{
  if (from.order() != to.order())
    return std::nullopt;

  auto gens = from.generators();
  std::vector<std::vector<Permutation>> candidates;
  for (auto const &g : gens) {
    std::vector<Permutation> same_order;
    for (auto const &y : to.elements()) {
      if (y.order() == g.order())
        same_order.push_back(y);
    }
    candidates.push_back(std::move(same_order));
  }

  std::vector<Permutation> choice(gens.size());
  std::optional<Homomorphism> found;
  std::function<void(std::size_t)> search = [&](std::size_t depth) {
    if (found)
      return;
    if (depth == gens.size()) {
      try {
        auto h = Homomorphism::from_generator_images(from, to, choice);
        if (h.is_bijective())
          found = std::move(h);
      } catch (Error const &) {
      }
      return;
    }
    for (auto const &y : candidates[depth]) {
      choice[depth] = y;
      search(depth + 1);
    }
  };
  search(0);
  return found;
}

bool is_prime(std::size_t n)
{
  if (n < 2)
    return false;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0)
      return false;
  }
  return true;
}

bool is_power_of(std::size_t n, std::size_t p)
{
  if (n == 0 || p < 2)
    return false;
  while (n % p == 0)
    n /= p;
  return n == 1;
}

} // namespace amalgam
