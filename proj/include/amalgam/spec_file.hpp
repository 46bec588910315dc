#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amalgam/amalgam.hpp"

namespace amalgam {

/// Declarations as written in a spec file. Words are kept reduced to
/// syllables but not to normal form.
struct SpecFile {
  struct GroupDecl {
    std::string name;
    unsigned degree = 1;
    std::vector<Permutation> gens;
    friend bool operator==(GroupDecl const &, GroupDecl const &) = default;
  };
  struct SubgroupDecl {
    std::string name;
    std::string parent;
    std::vector<Permutation> gens;
    friend bool operator==(SubgroupDecl const &, SubgroupDecl const &) = default;
  };
  struct SplitDecl {
    std::string name;
    std::string retract;
    std::string complement;
    std::string parent;
    friend bool operator==(SplitDecl const &, SplitDecl const &) = default;
  };
  struct IsoDecl {
    std::string name;
    std::string source;
    std::string target;
    std::vector<Permutation> images;  // aligned with the source's gens
    friend bool operator==(IsoDecl const &, IsoDecl const &) = default;
  };
  struct WordDecl {
    std::string name;
    GWord value;
    friend bool operator==(WordDecl const &, WordDecl const &) = default;
  };

  std::vector<GroupDecl> groups;
  std::vector<SubgroupDecl> subgroups;
  std::vector<SplitDecl> splits;
  std::vector<IsoDecl> isos;
  std::vector<WordDecl> words;

  friend bool operator==(SpecFile const &, SpecFile const &) = default;
};

/// A parsed and validated spec file with every object built.
struct Spec {
  SpecFile file;
  std::map<std::string, FiniteGroup> groups;
  std::map<std::string, Subgroup> subgroups;
  std::map<std::string, SplitExtension> splits;
  /// Present when the file declares an isomorphism; the first one is used.
  std::optional<AmalgamSpec> amalgam;

  /// Group or subgroup by name, as a group in its own right.
  FiniteGroup const &group(std::string const &name) const;
  Subgroup const &subgroup(std::string const &name) const;
  SplitExtension const &split(std::string const &name) const;
  AmalgamSpec const &require_amalgam() const;
  /// A [word] by name, or else `text` parsed as a word.
  GWord word(std::string const &text) const;
};

/// Throws SyntaxError (with line number) or ValidationError.
Spec parse_spec(std::string_view text);
Spec load_spec(std::filesystem::path const &path);
std::string print_spec(SpecFile const &file);

/// "A[(1 2 3)] * B[(1 2)]^-1 * (A[(1 2)] * B[(2 3)])^2"; "id" or an empty
/// string is the identity.
GWord parse_word(std::string_view text, unsigned degree_a, unsigned degree_b);
GWord parse_word(std::string_view text, AmalgamSpec const &spec);
std::string format_word(GWord const &w);
/// As a word; the amalgamated part is folded into a leading A syllable.
std::string format_normal_form(NormalForm const &nf);

} // namespace amalgam
