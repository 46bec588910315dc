#include <doctest.h>

#include <random>

#include "amalgam/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amalgam;
using fx::perm;
using fx::word;

namespace {

std::optional<unsigned> none;

std::set<oracle::Set> as_sets(std::vector<Subgroup> const &subs)
{
  std::set<oracle::Set> out;
  for (auto const &s : subs)
    out.insert(oracle::as_set(s.elements()));
  return out;
}

SeparabilityWitness witness_for(AmalgamSpec const &spec, GWord const &g, GWord const &c,
                                std::optional<unsigned> p = std::nullopt)
{
  auto res = separate_cyclic(spec, g, {c}, p);
  auto const *w = std::get_if<SeparabilityWitness>(&res);
  REQUIRE(w);
  return *w;
}

/// Branch index of the result; witness and budget exhaustion are reported
/// together, since only the Delta branch is claimed to be invariant.
int branch(SeparationResult const &r)
{
  if (std::holds_alternative<NonSeparabilityCertificate>(r))
    return 1;
  if (std::holds_alternative<MemberShortCircuit>(r))
    return 2;
  return 0;
}

} // namespace

TEST_SUITE("separate") {

TEST_CASE("Delta of finite groups matches the oracle")
{
  for (auto const &g : {fx::s3(), fx::s4(), fx::d4_regular(), fx::c6(), fx::hol_c5(),
                        fx::group(2, "(1 2)")}) {
    auto elems = oracle::as_set(g.elements());
    CHECK(compute_delta(g).members.empty());
    for (unsigned p : {2u, 3u, 5u}) {
      auto got = compute_delta(g, p);
      CHECK(as_sets(got.members) ==
            std::set<oracle::Set>(oracle::delta(elems, p).begin(), oracle::delta(elems, p).end()));
    }
  }
  // C3 is 2'-isolated in S3 and the meet of C3 N over {A3, S3} is A3 = C3
  auto s3 = fx::s3();
  CHECK(is_pprime_isolated_finite(s3, fx::sub(s3, "(1 2 3)"), 2));
  CHECK(compute_delta(s3, 2u).members.empty());
  CHECK(compute_delta(fx::group(2, "(1 2)"), 2u).members.empty());
}

TEST_CASE("induced_quotient")
{
  auto g = fx::s4_amalgam();
  auto const &a = g.factor(Factor::A);
  auto a4 = fx::sub(a, "(1 2 3), (1 2)(3 4)");
  auto q = induced_quotient(g, a4, a4);
  CHECK(q.quotient_a.image.order() == 2);
  CHECK(q.quotient_b.image.order() == 2);
  CHECK(q.image_h.order() == 2);
  CHECK(q.image_k.order() == 2);
  CHECK(q.induced.is_bijective());

  auto t = induced_quotient(g, Subgroup::whole(a), Subgroup::whole(g.factor(Factor::B)));
  CHECK(t.quotient_a.image.order() == 1);
  CHECK(t.quotient_b.image.order() == 1);

  try {
    induced_quotient(g, a4, Subgroup::whole(g.factor(Factor::B)));
    FAIL("expected IncompatiblePair");
  } catch (Error const &e) {
    CHECK(e.code() == ErrorCode::IncompatiblePair);
  }
}

TEST_CASE("embed_matched_regular")
{
  auto g = fx::s3_amalgam();
  auto triv_a = Subgroup::trivial(g.factor(Factor::A));
  auto triv_b = Subgroup::trivial(g.factor(Factor::B));
  auto q = induced_quotient(g, triv_a, triv_b);
  for (unsigned m : {1u, 2u}) {
    MatchedEmbedding e = embed_matched_regular(q, m);
    CHECK(e.degree == 6 * m);
    std::set<Permutation> ia(e.images_a.begin(), e.images_a.end());
    std::set<Permutation> ib(e.images_b.begin(), e.images_b.end());
    CHECK(ia.size() == 6);
    CHECK(ib.size() == 6);
  }

  auto whole = induced_quotient(g, Subgroup::whole(g.factor(Factor::A)),
                                Subgroup::whole(g.factor(Factor::B)));
  for (unsigned m : {1u, 3u}) {
    MatchedEmbedding e = embed_matched_regular(whole, m);
    CHECK(e.degree == m);
    for (auto const &x : e.images_a)
      CHECK(x.is_identity());
  }

  // homomorphism and agreement on the amalgamated image, for every pair
  for (auto const &spec : {fx::s3_amalgam(), fx::s4_amalgam(), fx::d4_amalgam()}) {
    for (auto const &r : enumerate_normal_subgroups(spec.factor(Factor::A))) {
      for (auto const &s : enumerate_normal_subgroups(spec.factor(Factor::B))) {
        if (!verify_compatible_pair(spec, r, s))
          continue;
        auto qq = induced_quotient(spec, r, s);
        for (unsigned m : {1u, 2u, 3u}) {
          MatchedEmbedding e = embed_matched_regular(qq, m);
          auto qa = qq.quotient_a.image.elements();
          auto qb = qq.quotient_b.image.elements();
          for (std::size_t i = 0; i < qa.size(); ++i) {
            for (std::size_t j = 0; j < qa.size(); ++j)
              CHECK(e.images_a[qq.quotient_a.image.index_of(qa[i] * qa[j])] ==
                    e.images_a[i] * e.images_a[j]);
          }
          for (std::size_t i = 0; i < qb.size(); ++i) {
            for (std::size_t j = 0; j < qb.size(); ++j)
              CHECK(e.images_b[qq.quotient_b.image.index_of(qb[i] * qb[j])] ==
                    e.images_b[i] * e.images_b[j]);
          }
          for (auto const &h : qq.image_h.elements())
            CHECK(e.images_a[qq.quotient_a.image.index_of(h)] ==
                  e.images_b[qq.quotient_b.image.index_of(qq.induced(h))]);
        }
      }
    }
  }
}

TEST_CASE("separate_cyclic: the three outcomes")
{
  auto g = fx::s3_amalgam();
  GWord target = word(g, "A[(1 2 3)] * B[(1 2 3)]");
  SeparabilityWitness w = witness_for(g, target, GWord{});
  CHECK(verify_witness(g, w).ok());

  auto m = separate_cyclic(g, word(g, "A[(1 2 3)]"), {word(g, "A[(1 3 2)]")}, none);
  REQUIRE(std::holds_alternative<MemberShortCircuit>(m));
  CHECK(std::get<MemberShortCircuit>(m).exponent == 2);

  // <A[(1 2 3)]> is not 2'-isolated in G: B[(1 2 3)] has its cube in it
  try {
    separate_cyclic(g, word(g, "B[(1 2)]"), {word(g, "A[(1 2 3)]")}, 2u);
    FAIL("expected NotPPrimeIsolated");
  } catch (Error const &e) {
    CHECK(e.code() == ErrorCode::NotPPrimeIsolated);
  }

  // no image fits under the order bound, so nothing is found and nothing
  // is claimed
  auto d = fx::d4_amalgam();
  SearchOptions starved;
  starved.budget = 2;
  starved.image_order_bound = 1;
  auto ex = separate_cyclic(d, word(d, "A[(1 2 3 4)(5 6 7 8)] * B[(1 2 3 4)(5 6 7 8)]"),
                            {GWord{}}, 2u, starved);
  REQUIRE(std::holds_alternative<BudgetExhausted>(ex));
  CHECK(std::get<BudgetExhausted>(ex).budget == 2);
  CHECK(std::get<BudgetExhausted>(ex).candidates == 2 * Separator(d, 2u).pairs().size());
}

TEST_CASE("p-mode witnesses are p-groups")
{
  auto d = fx::d4_amalgam();
  GWord target = word(d, "A[(1 2 3 4)(5 6 7 8)] * B[(1 2 3 4)(5 6 7 8)]");
  SeparabilityWitness w = witness_for(d, target, GWord{}, 2u);
  REQUIRE(w.p);
  CHECK(verify_witness(d, w).ok());
  std::vector<Permutation> gens(w.images_a);
  gens.insert(gens.end(), w.images_b.begin(), w.images_b.end());
  CHECK(closure(gens, w.degree).is_p_group(2));
  REQUIRE(w.isolation);
  CHECK(w.isolation->isolated());
}

TEST_CASE("verify_witness negative controls")
{
  auto g = fx::s3_amalgam();
  GWord target = word(g, "A[(1 2 3)] * B[(1 2 3)]");
  SeparabilityWitness w = witness_for(g, target, GWord{});
  REQUIRE(verify_witness(g, w).ok());

  SeparabilityWitness broken = w;
  // (1 2 3) sent to the image of (1 2), which has order 2
  REQUIRE(g.factor(Factor::A).generators()[1].order() == 3);
  REQUIRE(broken.images_a[0].order() == 2);
  broken.images_a[1] = broken.images_a[0];
  CHECK(verify_witness(g, broken).reason == WitnessReason::HomomorphismBroken);

  SeparabilityWitness not_sep = w;
  not_sep.target = not_sep.subgroup.generator;
  CHECK(verify_witness(g, not_sep).reason == WitnessReason::NotSeparated);

  // B's images conjugated by a transposition that moves the image of H
  Permutation h_image = w.images_a[0];
  std::optional<Permutation> t;
  for (Point i = 1; i <= w.degree && !t; ++i) {
    for (Point j = i + 1; j <= w.degree && !t; ++j) {
      Permutation c = Permutation::from_cycles(w.degree, {{i, j}});
      if (c * h_image != h_image * c)
        t = c;
    }
  }
  REQUIRE(t);
  SeparabilityWitness moved = w;
  for (auto &x : moved.images_b)
    x = t->inverse() * x * *t;
  CHECK(verify_witness(g, moved).reason == WitnessReason::AmalgamDisagreement);

  SeparabilityWitness as_p = w;
  as_p.p = 2;
  CHECK(verify_witness(g, as_p).reason == WitnessReason::NotPGroup);

  SeparabilityWitness short_list = w;
  short_list.images_b.pop_back();
  CHECK(verify_witness(g, short_list).reason == WitnessReason::Malformed);
}

TEST_CASE("phi agreement on every witness")
{
  auto g = fx::s4_amalgam();
  Separator sep(g, none);
  for (auto const &nf : enumerate_normal_forms(g, 2)) {
    if (nf.is_identity())
      continue;
    auto res = sep.separate(nf.to_word(), {GWord{}});
    auto const *w = std::get_if<SeparabilityWitness>(&res);
    REQUIRE(w);
    CHECK(verify_witness(g, *w).ok());
  }
}

TEST_CASE("conjugation stability of the branch taken")
{
  std::mt19937 rng(23);
  for (auto const &spec : {fx::s3_amalgam(), fx::d4_amalgam()}) {
    std::vector<GWord> short_words;
    for (auto const &nf : enumerate_normal_forms(spec, 2))
      short_words.push_back(nf.to_word());
    Separator sep(spec, none);
    for (int i = 0; i < 60; ++i) {
      GWord g = short_words[rng() % short_words.size()];
      GWord c = short_words[rng() % short_words.size()];
      GWord t = short_words[rng() % short_words.size()];
      auto before = sep.separate(g, {c});
      auto after = sep.separate(t * g * t.inverse(), {t * c * t.inverse()});
      CHECK(branch(before) == branch(after));
    }
  }
}

TEST_CASE("search is deterministic")
{
  auto g = fx::s3_amalgam();
  GWord target = word(g, "B[(1 3)] * A[(2 3)] * B[(1 2 3)]");
  SeparabilityWitness a = witness_for(g, target, GWord{});
  SeparabilityWitness b = witness_for(g, target, GWord{});
  CHECK(a.images_a == b.images_a);
  CHECK(a.images_b == b.images_b);
  CHECK(a.r == b.r);
  CHECK(a.multiplicity == b.multiplicity);
}

}
