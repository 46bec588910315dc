#include "amalgam/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "amalgam/error.hpp"

namespace amalgam {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images))
{
  if (images_.empty())
    throw Error(ErrorCode::InvalidPermutation, "degree must be positive");

  std::vector<bool> seen(images_.size(), false);
  for (Point x : images_) {
    if (x >= images_.size() || seen[x])
      throw Error(ErrorCode::InvalidPermutation, "images do not form a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(unsigned degree)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(unsigned degree,
                                     std::vector<std::vector<Point>> const &cycles)
{
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<bool> moved(degree, false);

  for (auto const &cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Point from = cycle[i];
      Point to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > degree || to < 1 || to > degree) {
        throw Error(ErrorCode::InvalidPermutation,
                    "point " + std::to_string(from < 1 || from > degree ? from : to) +
                    " outside 1.." + std::to_string(degree));
      }
      if (moved[from - 1])
        throw Error(ErrorCode::InvalidPermutation, "cycles are not disjoint");
      moved[from - 1] = true;
      images[from - 1] = to - 1;
    }
  }

  return Permutation(std::move(images));
}

bool Permutation::is_identity() const
{
  for (Point x = 0; x < images_.size(); ++x) {
    if (images_[x] != x)
      return false;
  }
  return true;
}

Permutation Permutation::inverse() const
{
  std::vector<Point> inv(images_.size());
  for (Point x = 0; x < images_.size(); ++x)
    inv[images_[x]] = x;

  Permutation result;
  result.images_ = std::move(inv);
  return result;
}

Permutation Permutation::operator*(Permutation const &rhs) const
{
  Permutation result(*this);
  result *= rhs;
  return result;
}

Permutation &Permutation::operator*=(Permutation const &rhs)
{
  if (rhs.degree() != degree())
    throw Error(ErrorCode::DegreeMismatch, "cannot compose permutations of degree " +
                std::to_string(degree()) + " and " + std::to_string(rhs.degree()));

  for (auto &x : images_)
    x = rhs.images_[x];
  return *this;
}

Permutation Permutation::pow(long long k) const
{
  Permutation base = k < 0 ? inverse() : *this;
  unsigned long long e = k < 0 ? -static_cast<unsigned long long>(k)
                               : static_cast<unsigned long long>(k);
  Permutation result = identity(degree());
  while (e) {
    if (e & 1u)
      result *= base;
    base *= Permutation(base);
    e >>= 1u;
  }
  return result;
}

std::size_t Permutation::order() const
{
  std::size_t result = 1;
  for (auto const &cycle : cycles())
    result = std::lcm(result, cycle.size());
  return result;
}

std::vector<std::vector<Point>> Permutation::cycles() const
{
  std::vector<std::vector<Point>> result;
  std::vector<bool> seen(images_.size(), false);

  for (Point start = 0; start < images_.size(); ++start) {
    if (seen[start] || images_[start] == start)
      continue;

    std::vector<Point> cycle;
    for (Point x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x + 1);
    }
    result.push_back(std::move(cycle));
  }
  return result;
}

std::string Permutation::to_string() const
{
  auto cs = cycles();
  if (cs.empty())
    return "id";

  std::ostringstream os;
  for (auto const &cycle : cs) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i)
      os << (i ? " " : "") << cycle[i];
    os << ')';
  }
  return os.str();
}

std::size_t PermutationHash::operator()(Permutation const &p) const noexcept
{
  std::size_t h = p.degree();
  for (Point x : p.images())
    h = h * 1000003u ^ x;
  return h;
}

std::ostream &operator<<(std::ostream &os, Permutation const &perm)
{
  return os << perm.to_string();
}

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_syntax(std::string_view text, std::string const &why)
{
  throw Error(ErrorCode::SyntaxError,
              "malformed permutation '" + std::string(text) + "': " + why);
}

} // namespace

Permutation parse_permutation(std::string_view text, unsigned degree)
{
  std::string_view s = trim(text);
  if (s == "id" || s == "()")
    return Permutation::identity(degree);
  if (s.empty())
    bad_syntax(text, "empty");

  std::vector<std::vector<Point>> cycles;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (s[i] != '(')
      bad_syntax(text, "expected '('");
    ++i;

    std::vector<Point> cycle;
    for (;;) {
      while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ','))
        ++i;
      if (i >= s.size())
        bad_syntax(text, "unterminated cycle");
      if (s[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        bad_syntax(text, "expected a point");
      unsigned long value = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        value = value * 10 + static_cast<unsigned long>(s[i] - '0');
        if (value > 1000000)
          bad_syntax(text, "point out of range");
        ++i;
      }
      cycle.push_back(static_cast<Point>(value));
    }
    if (cycle.size() > 1)
      cycles.push_back(std::move(cycle));
  }

  return Permutation::from_cycles(degree, cycles);
}

std::vector<Permutation> parse_permutation_list(std::string_view text, unsigned degree)
{
  std::vector<Permutation> result;
  std::string_view s = trim(text);
  if (s.empty())
    return result;

  std::size_t depth = 0, start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(')
      ++depth;
    else if (i < s.size() && s[i] == ')')
      depth = depth ? depth - 1 : 0;
    else if (i == s.size() || (s[i] == ',' && depth == 0)) {
      result.push_back(parse_permutation(s.substr(start, i - start), degree));
      start = i + 1;
    }
  }
  return result;
}

std::string format_permutation_list(std::span<const Permutation> perms)
{
  std::string out;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i)
      out += ", ";
    out += perms[i].to_string();
  }
  return out;
}

} // namespace amalgam
