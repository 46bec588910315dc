#include <doctest.h>

#include "amalgam/error.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amalgam;
using fx::perm;

namespace {

std::vector<FiniteGroup> small_groups()
{
  return {FiniteGroup(), fx::s3(), fx::s4(), fx::d4_regular(), fx::c6(), fx::hol_c5(),
          fx::group(4, "(1 2)(3 4), (1 3)(2 4)"), fx::group(4, "(1 2 3), (1 2)(3 4)")};
}

template <class F>
void expect_error(ErrorCode code, F &&f)
{
  try {
    f();
    FAIL("expected " << to_string(code));
  } catch (Error const &e) {
    CHECK(e.code() == code);
  }
}

} // namespace

TEST_SUITE("perm-core") {

TEST_CASE("permutation arithmetic")
{
  Permutation a = perm("(1 2)", 3), b = perm("(1 2 3)", 3);
  CHECK((a * b) == oracle::compose(a, b));
  CHECK((b * a) == oracle::compose(b, a));
  CHECK((a * b).to_string() == "(1 3)");
  CHECK(b.inverse() == perm("(1 3 2)", 3));
  CHECK(b.pow(-1) == b.inverse());
  CHECK(b.pow(4) == b);
  CHECK(b.order() == 3);
  CHECK(perm("(1 2)(3 4 5)", 5).order() == 6);
  CHECK(Permutation::identity(4).to_string() == "id");
  CHECK(perm("()", 2).is_identity());
  CHECK(perm("(3 1 2)", 3) == b);

  expect_error(ErrorCode::DegreeMismatch, [&] { (void)(a * Permutation::identity(4)); });
  expect_error(ErrorCode::InvalidPermutation, [] { Permutation({0, 0, 1}); });
  expect_error(ErrorCode::SyntaxError, [] { parse_permutation("(1 2", 3); });
  expect_error(ErrorCode::SyntaxError, [] { parse_permutation("1 2", 3); });
  expect_error(ErrorCode::InvalidPermutation, [] { parse_permutation("(1 4)", 3); });
  expect_error(ErrorCode::InvalidPermutation, [] { parse_permutation("(1 1)", 3); });
  expect_error(ErrorCode::InvalidPermutation, [] { parse_permutation("(0 1)", 3); });
  expect_error(ErrorCode::InvalidPermutation, [] { parse_permutation("(1 2)(2 3)", 3); });
}

TEST_CASE("permutation text round trip")
{
  auto x = fx::s4();
  for (auto const &g : x.elements())
    CHECK(parse_permutation(g.to_string(), 4) == g);
  auto list = parse_permutation_list("(1 2), (1 2 3),id", 3);
  REQUIRE(list.size() == 3);
  CHECK(format_permutation_list(list) == "(1 2), (1 2 3), id");
  CHECK(parse_permutation_list("  ", 3).empty());
}

TEST_CASE("closure matches the pairwise-product oracle")
{
  CHECK(fx::s3().order() == 6);
  CHECK(closure({}, 3).order() == 1);
  CHECK(fx::group(4, "(1 2 3 4), (1 2)").order() == 24);
  for (auto const &x : small_groups()) {
    auto gens = std::vector<Permutation>(x.generators().begin(), x.generators().end());
    CHECK(oracle::as_set(x.elements()) == oracle::closure(gens, x.degree()));
    CHECK(std::is_sorted(x.elements().begin(), x.elements().end()));
  }
  expect_error(ErrorCode::BoundExceeded,
               [] { closure(parse_permutation_list("(1 2), (1 2 3 4 5 6)", 6), 6, 100); });
  std::vector<Permutation> mixed{perm("(1 2)", 3), perm("(1 2)", 4)};
  expect_error(ErrorCode::DegreeMismatch, [&] { closure(mixed, 3); });
}

TEST_CASE("is_normal")
{
  auto x = fx::s3();
  CHECK(is_normal(fx::sub(x, "(1 2 3)"), x));
  CHECK_FALSE(is_normal(fx::sub(x, "(1 2)"), x));
  CHECK(is_normal(Subgroup::whole(x), x));
  auto y = fx::s4();
  expect_error(ErrorCode::NotASubgroup,
               [&] { is_normal(fx::sub(fx::hol_c5(), "(1 2 3 4 5)"), y); });

  for (auto const &g : small_groups()) {
    auto elems = oracle::as_set(g.elements());
    for (auto const &c : cyclic_subgroups(g))
      CHECK(is_normal(c, g) == oracle::is_normal(oracle::as_set(c.elements()), elems));
  }
}

TEST_CASE("normal closure is the least normal subgroup over the seed")
{
  auto x = fx::s3();
  std::vector<Permutation> seed{perm("(1 2)", 3)};
  CHECK(normal_closure(seed, x).order() == 6);
  seed = {Permutation::identity(3)};
  CHECK(normal_closure(seed, x).is_trivial());
  seed = {perm("(1 2 3)", 3)};
  CHECK(normal_closure(seed, x) == fx::sub(x, "(1 2 3)"));

  for (auto const &g : small_groups()) {
    if (g.order() > 24)
      continue;
    auto normals = oracle::normal_subgroups(oracle::as_set(g.elements()));
    for (auto const &s : g.elements()) {
      std::vector<Permutation> one{s};
      auto got = oracle::as_set(normal_closure(one, g).elements());
      oracle::Set least = oracle::as_set(g.elements());
      for (auto const &n : normals) {
        if (n.count(s) && n.size() < least.size())
          least = n;
      }
      CHECK(got == least);
    }
  }
}

TEST_CASE("quotients")
{
  auto x = fx::s3();
  CHECK(quotient(x, fx::sub(x, "(1 2 3)")).image.order() == 2);
  auto y = fx::s4();
  CHECK(quotient(y, fx::sub(y, "(1 2)(3 4), (1 3)(2 4)")).image.order() == 6);
  CHECK(quotient(y, Subgroup::whole(y)).image.order() == 1);
  expect_error(ErrorCode::NotNormal, [&] { quotient(x, fx::sub(x, "(1 2)")); });

  for (auto const &g : small_groups()) {
    for (auto const &n : enumerate_normal_subgroups(g)) {
      Quotient q = quotient(g, n);
      CHECK(q.image.order() * n.order() == g.order());
      CHECK(q.projection.kernel() == n);
      CHECK(q.projection.verified());
    }
  }
}

TEST_CASE("normal subgroups agree with the union-of-classes oracle")
{
  auto x = fx::s3();
  auto all = enumerate_normal_subgroups(x);
  REQUIRE(all.size() == 3);
  CHECK(all[0].order() == 1);
  CHECK(all[1] == fx::sub(x, "(1 2 3)"));
  CHECK(all[2].order() == 6);
  auto two = enumerate_normal_subgroups(x, 2u);
  REQUIRE(two.size() == 2);
  CHECK(two[0].order() == 3);
  CHECK(two[1].order() == 6);
  CHECK(enumerate_normal_subgroups(FiniteGroup()).size() == 1);

  for (auto const &g : small_groups()) {
    auto expect = oracle::normal_subgroups(oracle::as_set(g.elements()));
    auto got = enumerate_normal_subgroups(g);
    std::set<oracle::Set> got_sets;
    for (auto const &n : got)
      got_sets.insert(oracle::as_set(n.elements()));
    CHECK(got_sets == std::set<oracle::Set>(expect.begin(), expect.end()));
    CHECK(got.size() == expect.size());
    CHECK(std::is_sorted(got.begin(), got.end(), canonical_less));
    for (unsigned p : {2u, 3u, 5u}) {
      std::size_t count = 0;
      for (auto const &n : expect)
        count += oracle::is_power_of(g.order() / n.size(), p);
      CHECK(enumerate_normal_subgroups(g, p).size() == count);
    }
  }
  expect_error(ErrorCode::BoundExceeded,
               [] { enumerate_normal_subgroups(fx::group(6, "(1 2), (1 2 3 4 5 6)")); });
}

TEST_CASE("cyclic subgroups and Lagrange")
{
  for (auto const &g : small_groups()) {
    auto got = cyclic_subgroups(g);
    auto expect = oracle::cyclic_subgroups(oracle::as_set(g.elements()));
    CHECK(got.size() == expect.size());
    for (auto const &c : got) {
      CHECK(g.order() % c.order() == 0);
      CHECK(std::find(expect.begin(), expect.end(), oracle::as_set(c.elements())) !=
            expect.end());
    }
  }
}

TEST_CASE("homomorphisms")
{
  auto x = fx::s3();
  auto c2 = fx::group(2, "(1 2)");
  std::vector<Permutation> sign{perm("(1 2)", 2), Permutation::identity(2)};
  auto h = Homomorphism::from_generator_images(x, c2, sign);
  CHECK(h.verified());
  CHECK(h.kernel() == fx::sub(x, "(1 2 3)"));
  for (auto const &a : x.elements()) {
    for (auto const &b : x.elements())
      CHECK(h(a * b) == h(a) * h(b));
  }
  std::vector<Permutation> bad{Permutation::identity(2), perm("(1 2)", 2)};
  expect_error(ErrorCode::NotAHomomorphism,
               [&] { Homomorphism::from_generator_images(x, c2, bad); });

  auto reg = regular_representation(x);
  CHECK(reg.degree() == 6);
  auto iso = find_isomorphism(x, reg);
  REQUIRE(iso);
  CHECK(iso->is_bijective());
  CHECK_FALSE(find_isomorphism(fx::c6(), x));
}

TEST_CASE("primes")
{
  CHECK(is_prime(2));
  CHECK(is_prime(5));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(9));
  CHECK(is_power_of(8, 2));
  CHECK(is_power_of(1, 3));
  CHECK_FALSE(is_power_of(6, 2));
}

}
