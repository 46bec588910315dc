#include "amalgam/spec_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void syntax(std::size_t line, std::string const &what)
{
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

bool valid_name(std::string_view s)
{
  if (s.empty())
    return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.')
      return false;
  }
  return true;
}

/// Splits "a OP b" around the first occurrence of OP.
std::optional<std::pair<std::string_view, std::string_view>> split_once(std::string_view s,
                                                                        std::string_view op)
{
  auto pos = s.find(op);
  if (pos == std::string_view::npos)
    return std::nullopt;
  return std::make_pair(trim(s.substr(0, pos)), trim(s.substr(pos + op.size())));
}

struct Section {
  std::size_t line = 0;
  std::string kind;
  std::string header;
  std::map<std::string, std::pair<std::string, std::size_t>> keys;
};

class Loader {
public:
  Spec spec;

  void finish(Section const &sec)
  {
    try {
      if (sec.kind == "group")
        group(sec);
      else if (sec.kind == "subgroup")
        subgroup(sec);
      else if (sec.kind == "split")
        split(sec);
      else if (sec.kind == "iso")
        iso(sec);
      else if (sec.kind == "word")
        word(sec);
      else
        syntax(sec.line, "unknown section kind '" + sec.kind + "'");
    } catch (Error const &e) {
      if (e.code() == ErrorCode::SyntaxError && std::string_view(e.what()).find("line ") !=
                                                    std::string_view::npos)
        throw;
      ErrorCode code = e.code() == ErrorCode::SyntaxError ? ErrorCode::SyntaxError
                                                          : ErrorCode::ValidationError;
      throw Error(code, "line " + std::to_string(sec.line) + ": " + e.what());
    }
  }

private:
  void declare(std::string const &name, std::size_t line)
  {
    if (!valid_name(name))
      syntax(line, "bad name '" + name + "'");
    if (spec.groups.count(name) || spec.subgroups.count(name) || spec.splits.count(name) ||
        names_.count(name))
      syntax(line, "'" + name + "' is already defined");
    names_.insert({name, line});
  }

  std::string const &value(Section const &sec, std::string const &key, bool required = true)
  {
    static std::string const empty;
    auto it = sec.keys.find(key);
    if (it == sec.keys.end()) {
      if (required)
        syntax(sec.line, "missing key '" + key + "'");
      return empty;
    }
    return it->second.first;
  }

  std::vector<Permutation> perm_list(Section const &sec, std::string const &key, unsigned degree)
  {
    try {
      return parse_permutation_list(value(sec, key), degree);
    } catch (Error const &e) {
      std::size_t line = sec.keys.at(key).second;
      ErrorCode code = e.code() == ErrorCode::SyntaxError ? ErrorCode::SyntaxError
                                                          : ErrorCode::ValidationError;
      throw Error(code, "line " + std::to_string(line) + ": " + e.what());
    }
  }

  void only_keys(Section const &sec, std::initializer_list<std::string_view> allowed)
  {
    for (auto const &[k, v] : sec.keys) {
      bool ok = false;
      for (auto a : allowed)
        ok = ok || k == a;
      if (!ok)
        syntax(v.second, "unexpected key '" + k + "' in [" + sec.kind + "]");
    }
  }

  FiniteGroup const &parent_group(std::string const &name, std::size_t line)
  {
    if (auto it = spec.groups.find(name); it != spec.groups.end())
      return it->second;
    if (auto it = spec.subgroups.find(name); it != spec.subgroups.end())
      return it->second.group();
    syntax(line, "undefined group '" + name + "'");
  }

  Subgroup const &named_subgroup(std::string const &name, std::size_t line)
  {
    auto it = spec.subgroups.find(name);
    if (it == spec.subgroups.end())
      syntax(line, "undefined subgroup '" + name + "'");
    return it->second;
  }

  void group(Section const &sec)
  {
    only_keys(sec, {"degree", "gens"});
    std::string name(trim(sec.header));
    declare(name, sec.line);
    std::string const &deg_text = value(sec, "degree");
    unsigned degree = 0;
    try {
      std::size_t used = 0;
      long long d = std::stoll(deg_text, &used);
      if (used != deg_text.size() || d < 1 || d > 4096)
        throw std::invalid_argument("range");
      degree = static_cast<unsigned>(d);
    } catch (std::exception const &) {
      syntax(sec.keys.at("degree").second, "bad degree '" + deg_text + "'");
    }
    auto gens = perm_list(sec, "gens", degree);
    spec.groups.emplace(name, closure(gens, degree));
    spec.file.groups.push_back({name, degree, std::move(gens)});
  }

  void subgroup(Section const &sec)
  {
    only_keys(sec, {"gens"});
    auto parts = split_once(sec.header, "<");
    if (!parts)
      syntax(sec.line, "expected [subgroup NAME < PARENT]");
    std::string name(parts->first), parent(parts->second);
    FiniteGroup const &x = parent_group(parent, sec.line);
    declare(name, sec.line);
    auto gens = perm_list(sec, "gens", x.degree());
    spec.subgroups.emplace(name, Subgroup::generated(x, gens));
    spec.file.subgroups.push_back({name, parent, std::move(gens)});
  }

  void split(Section const &sec)
  {
    only_keys(sec, {});
    auto eq = split_once(sec.header, "=");
    auto colon = eq ? split_once(eq->second, ":") : std::nullopt;
    auto lt = colon ? split_once(colon->second, "<") : std::nullopt;
    if (!lt)
      syntax(sec.line, "expected [split EXT = RETRACT : COMPLEMENT < PARENT]");
    std::string name(eq->first), retract(colon->first), complement(lt->first),
        parent(lt->second);
    FiniteGroup const &x = parent_group(parent, sec.line);
    Subgroup const &y = named_subgroup(retract, sec.line);
    Subgroup const &f = named_subgroup(complement, sec.line);
    declare(name, sec.line);
    for (auto const *sub : {&y, &f}) {
      if (!is_subset(*sub, x))
        throw Error(ErrorCode::NotASubgroup, "subgroup of [split " + name + "] is not inside " +
                                             parent);
    }
    spec.splits.emplace(name, SplitExtension::verify(x, restrict_to(y, x), restrict_to(f, x)));
    spec.file.splits.push_back({name, retract, complement, parent});
  }

  void iso(Section const &sec)
  {
    only_keys(sec, {"images"});
    auto colon = split_once(sec.header, ":");
    auto arrow = colon ? split_once(colon->second, "->") : std::nullopt;
    if (!arrow)
      syntax(sec.line, "expected [iso NAME : H -> K]");
    std::string name(colon->first), source(arrow->first), target(arrow->second);
    Subgroup const &h = named_subgroup(source, sec.line);
    Subgroup const &k = named_subgroup(target, sec.line);
    declare(name, sec.line);

    auto const &h_decl = find_decl(source);
    auto images = perm_list(sec, "images", k.group().degree());
    if (images.size() != h_decl.gens.size())
      throw Error(ErrorCode::ValidationError,
                  std::to_string(images.size()) + " images for " +
                  std::to_string(h_decl.gens.size()) + " generators of " + source);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (h_decl.gens[i].order() != images[i].order())
        throw Error(ErrorCode::ValidationError,
                    h_decl.gens[i].to_string() + " has order " +
                    std::to_string(h_decl.gens[i].order()) + " but its image " +
                    images[i].to_string() + " has order " + std::to_string(images[i].order()));
    }
    if (!spec.amalgam) {
      // φ is defined on the declared generators of H, which need not be
      // the greedy generators of the closed group
      FiniteGroup src = closure(h_decl.gens, h.group().degree());
      Homomorphism phi = Homomorphism::from_generator_images(src, k.group(), images);
      if (!phi.is_bijective())
        throw Error(ErrorCode::ValidationError, name + " is not a bijection");
      FiniteGroup const &a = h.parent();
      FiniteGroup const &b = k.parent();
      std::optional<SplitExtension> ext_a, ext_b;
      for (auto const &decl : spec.file.splits) {
        SplitExtension const &e = spec.splits.at(decl.name);
        if (!ext_a && e.whole() == a && e.retract() == h)
          ext_a = e;
        if (!ext_b && e.whole() == b && e.retract() == k)
          ext_b = e;
      }
      std::vector<Permutation> table;
      for (auto const &x : h.group().elements())
        table.push_back(phi(x));
      Homomorphism phi_h = Homomorphism::from_table(h.group(), k.group(), std::move(table));
      spec.amalgam.emplace(a, b, h, k, std::move(phi_h), ext_a, ext_b);
    }
    spec.file.isos.push_back({name, source, target, std::move(images)});
  }

  void word(Section const &sec)
  {
    only_keys(sec, {"value"});
    std::string name(trim(sec.header));
    if (!spec.amalgam)
      syntax(sec.line, "[word] before any [iso]");
    declare(name, sec.line);
    if (name == "A" || name == "B" || name == "id")
      syntax(sec.line, "'" + name + "' is reserved in words");
    spec.file.words.push_back({name, spec.word(value(sec, "value"))});
  }

  SpecFile::SubgroupDecl const &find_decl(std::string const &name)
  {
    for (auto const &d : spec.file.subgroups) {
      if (d.name == name)
        return d;
    }
    throw Error(ErrorCode::SyntaxError, "undefined subgroup '" + name + "'");
  }

  std::map<std::string, std::size_t> names_;
};

class WordParser {
public:
  WordParser(std::string_view text, unsigned da, unsigned db,
             std::vector<SpecFile::WordDecl> const *names = nullptr)
    : s_(text), da_(da), db_(db), names_(names)
  {}

  GWord parse()
  {
    GWord w = product();
    skip();
    if (pos_ != s_.size())
      fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

private:
  [[noreturn]] void fail(std::string const &what)
  {
    throw Error(ErrorCode::SyntaxError,
                "word '" + std::string(s_) + "', column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  bool eat(char c)
  {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GWord product()
  {
    skip();
    if (pos_ == s_.size() || s_[pos_] == ')')
      return GWord{};
    GWord w = term();
    while (eat('*'))
      w = w * term();
    return w;
  }

  GWord term()
  {
    GWord base = atom();
    if (!eat('^'))
      return base;
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
      ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    try {
      return base.pow(std::stoll(digits));
    } catch (std::logic_error const &) {
      fail("bad exponent '" + digits + "'");
    }
  }

  GWord atom()
  {
    skip();
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) ||
                               s_[end] == '_' || s_[end] == '.' || s_[end] == '-'))
      ++end;
    std::string_view ident = s_.substr(pos_, end - pos_);
    if (ident == "id") {
      pos_ = end;
      return GWord{};
    }
    if (names_ && !ident.empty() && std::isalpha(static_cast<unsigned char>(ident[0]))) {
      for (auto const &w : *names_) {
        if (w.name == ident) {
          pos_ = end;
          return w.value;
        }
      }
    }
    if (eat('(')) {
      GWord inner = product();
      if (!eat(')'))
        fail("expected ')'");
      return inner;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'A' || s_[pos_] == 'B')) {
      Factor f = s_[pos_] == 'A' ? Factor::A : Factor::B;
      ++pos_;
      if (!eat('['))
        fail("expected '['");
      auto close = s_.find(']', pos_);
      if (close == std::string_view::npos)
        fail("expected ']'");
      Permutation x = parse_permutation(s_.substr(pos_, close - pos_),
                                        f == Factor::A ? da_ : db_);
      pos_ = close + 1;
      return GWord::single(f, std::move(x));
    }
    fail(pos_ == s_.size() ? "unexpected end" : "expected A[...], B[...], '(' or id");
  }

  std::string_view s_;
  unsigned da_, db_;
  std::vector<SpecFile::WordDecl> const *names_;
  std::size_t pos_ = 0;
};

void check_factors(GWord const &w, AmalgamSpec const &spec)
{
  for (auto const &syl : w.syllables()) {
    if (!spec.factor(syl.factor).contains(syl.element))
      throw Error(ErrorCode::ElementNotInFactor, syl.element.to_string() + " is not in " +
                                                 std::string(1, tag(syl.factor)));
  }
}

} // namespace

FiniteGroup const &Spec::group(std::string const &name) const
{
  if (auto it = groups.find(name); it != groups.end())
    return it->second;
  if (auto it = subgroups.find(name); it != subgroups.end())
    return it->second.group();
  throw Error(ErrorCode::SyntaxError, "undefined group '" + name + "'");
}

Subgroup const &Spec::subgroup(std::string const &name) const
{
  if (auto it = subgroups.find(name); it != subgroups.end())
    return it->second;
  throw Error(ErrorCode::SyntaxError, "undefined subgroup '" + name + "'");
}

SplitExtension const &Spec::split(std::string const &name) const
{
  if (auto it = splits.find(name); it != splits.end())
    return it->second;
  throw Error(ErrorCode::SyntaxError, "undefined split extension '" + name + "'");
}

AmalgamSpec const &Spec::require_amalgam() const
{
  if (!amalgam)
    throw Error(ErrorCode::SyntaxError, "the spec declares no [iso]");
  return *amalgam;
}

GWord Spec::word(std::string const &text) const
{
  AmalgamSpec const &spec = require_amalgam();
  GWord w = WordParser(text, spec.factor(Factor::A).degree(), spec.factor(Factor::B).degree(),
                       &file.words)
                .parse();
  check_factors(w, spec);
  return w;
}

Spec parse_spec(std::string_view text)
{
  Loader loader;
  std::optional<Section> current;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        syntax(line_no, "unterminated section header");
      if (current)
        loader.finish(*current);
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      auto space = inner.find_first_of(" \t");
      current = Section{line_no, std::string(inner.substr(0, space)),
                        space == std::string_view::npos ? std::string()
                                                        : std::string(trim(inner.substr(space))),
                        {}};
      continue;
    }

    if (!current)
      syntax(line_no, "key outside of any section");
    auto kv = split_once(line, "=");
    if (!kv || kv->first.empty())
      syntax(line_no, "expected 'key = value'");
    std::string key(kv->first);
    if (current->keys.count(key))
      syntax(line_no, "duplicate key '" + key + "'");
    current->keys.emplace(key, std::make_pair(std::string(kv->second), line_no));
  }
  if (current)
    loader.finish(*current);
  return std::move(loader.spec);
}

Spec load_spec(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::SyntaxError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string print_spec(SpecFile const &file)
{
  std::ostringstream out;
  auto list = [](std::vector<Permutation> const &perms) {
    std::string s = format_permutation_list(perms);
    return s.empty() ? std::string() : " " + s;
  };
  bool first = true;
  auto gap = [&] {
    if (!first)
      out << '\n';
    first = false;
  };
  for (auto const &g : file.groups) {
    gap();
    out << "[group " << g.name << "]\ndegree = " << g.degree << "\ngens =" << list(g.gens)
        << '\n';
  }
  for (auto const &s : file.subgroups) {
    gap();
    out << "[subgroup " << s.name << " < " << s.parent << "]\ngens =" << list(s.gens) << '\n';
  }
  for (auto const &s : file.splits) {
    gap();
    out << "[split " << s.name << " = " << s.retract << " : " << s.complement << " < "
        << s.parent << "]\n";
  }
  for (auto const &i : file.isos) {
    gap();
    out << "[iso " << i.name << " : " << i.source << " -> " << i.target << "]\nimages ="
        << list(i.images) << '\n';
  }
  for (auto const &w : file.words) {
    gap();
    out << "[word " << w.name << "]\nvalue = " << format_word(w.value) << '\n';
  }
  return out.str();
}

GWord parse_word(std::string_view text, unsigned degree_a, unsigned degree_b)
{
  return WordParser(text, degree_a, degree_b).parse();
}

GWord parse_word(std::string_view text, AmalgamSpec const &spec)
{
  GWord w = parse_word(text, spec.factor(Factor::A).degree(), spec.factor(Factor::B).degree());
  check_factors(w, spec);
  return w;
}

std::string format_word(GWord const &w)
{
  if (w.empty())
    return "id";
  std::string out;
  for (auto const &syl : w.syllables()) {
    if (!out.empty())
      out += " * ";
    out += tag(syl.factor);
    out += '[' + syl.element.to_string() + ']';
  }
  return out;
}

std::string format_normal_form(NormalForm const &nf)
{
  std::vector<Syllable> syllables(nf.syllables.begin(), nf.syllables.end());
  if (!nf.amalgam_part.is_identity()) {
    if (syllables.empty())
      syllables.push_back({Factor::A, nf.amalgam_part});
    else if (syllables.front().factor == Factor::A)
      syllables.front().element = nf.amalgam_part * syllables.front().element;
    else
      syllables.insert(syllables.begin(), {Factor::A, nf.amalgam_part});
  }
  return format_word(GWord(std::move(syllables)));
}

} // namespace amalgam
