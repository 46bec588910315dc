#pragma once

#include <string>
#include <vector>

#include "amalgam/separate.hpp"
#include "amalgam/spec_file.hpp"

namespace fx {

using namespace amalgam;

inline Permutation perm(std::string const &text, unsigned degree)
{
  return parse_permutation(text, degree);
}

inline FiniteGroup group(unsigned degree, std::string const &gens)
{
  return closure(parse_permutation_list(gens, degree), degree);
}

inline Subgroup sub(FiniteGroup const &x, std::string const &gens)
{
  return Subgroup::generated(x, parse_permutation_list(gens, x.degree()));
}

inline FiniteGroup s3() { return group(3, "(1 2), (1 2 3)"); }
inline FiniteGroup s4() { return group(4, "(1 2), (1 2 3 4)"); }
inline FiniteGroup d4_regular()
{
  return group(8, "(1 2 3 4)(5 6 7 8), (1 5)(2 8)(3 7)(4 6)");
}
inline FiniteGroup c6() { return group(5, "(1 2)(3 4 5)"); }
inline FiniteGroup hol_c5() { return group(5, "(1 2 3 4 5), (2 3 5 4)"); }

struct NamedSplit {
  std::string name;
  SplitExtension ext;
};

/// The split extensions the suites are built from.
inline std::vector<NamedSplit> base_splits()
{
  std::vector<NamedSplit> out;
  auto s4x = s4();
  out.push_back({"S4 = S3 V4", SplitExtension::verify(s4x, sub(s4x, "(1 2), (1 2 3)"),
                                                      sub(s4x, "(1 2)(3 4), (1 3)(2 4)"))});
  auto d4 = d4_regular();
  out.push_back({"D4 = C2 C4", SplitExtension::verify(d4, sub(d4, "(1 5)(2 8)(3 7)(4 6)"),
                                                      sub(d4, "(1 2 3 4)(5 6 7 8)"))});
  auto s3x = s3();
  out.push_back({"S3 = C2 C3", SplitExtension::verify(s3x, sub(s3x, "(1 2)"), sub(s3x, "(1 2 3)"))});
  auto c6x = c6();
  out.push_back({"C6 = C2 C3", SplitExtension::verify(c6x, sub(c6x, "(1 2)"), sub(c6x, "(3 4 5)"))});
  out.push_back({"C6 = C3 C2", SplitExtension::verify(c6x, sub(c6x, "(3 4 5)"), sub(c6x, "(1 2)"))});
  auto hol = hol_c5();
  out.push_back({"Hol(C5) = C4 C5", SplitExtension::verify(hol, sub(hol, "(2 3 5 4)"),
                                                           sub(hol, "(1 2 3 4 5)"))});
  return out;
}

/// G = X *_Y X with phi the identity and both factors split over Y.
inline AmalgamSpec self_amalgam(SplitExtension const &ext)
{
  Subgroup const &y = ext.retract();
  std::vector<Permutation> table(y.elements().begin(), y.elements().end());
  Homomorphism phi = Homomorphism::from_table(y.group(), y.group(), std::move(table));
  return AmalgamSpec(ext.whole(), ext.whole(), y, y, phi, ext, ext);
}

/// S3 *_{<(1 2)>} S3 with phi = id and complements A3.
inline AmalgamSpec s3_amalgam() { return self_amalgam(base_splits()[2].ext); }
/// S4 *_{S3} S4 with phi = id and complements V4.
inline AmalgamSpec s4_amalgam() { return self_amalgam(base_splits()[0].ext); }
inline AmalgamSpec d4_amalgam() { return self_amalgam(base_splits()[1].ext); }

inline GWord word(AmalgamSpec const &spec, std::string const &text)
{
  return parse_word(text, spec.factor(Factor::A).degree(), spec.factor(Factor::B).degree());
}

} // namespace fx
