#include "certificate.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "amalgam/error.hpp"

namespace amalgam::cli {

Certificate::Entries &Certificate::section(std::string const &name)
{
  for (auto &[n, e] : sections_) {
    if (n == name)
      return e;
  }
  return sections_.emplace_back(name, Entries{}).second;
}

Certificate::Entries const *Certificate::find(std::string_view name) const
{
  for (auto const &[n, e] : sections_) {
    if (n == name)
      return &e;
  }
  return nullptr;
}

std::optional<std::string> Certificate::value(std::string_view name, std::string_view key) const
{
  if (auto const *e = find(name)) {
    for (auto const &[k, v] : *e) {
      if (k == key)
        return v;
    }
  }
  return std::nullopt;
}

void Certificate::add(std::string const &name, std::string key, std::string value)
{
  section(name).emplace_back(std::move(key), std::move(value));
}

namespace {

void render_section(std::ostringstream &out, std::string const &name,
                    Certificate::Entries const &entries)
{
  out << '[' << name << "]\n";
  for (auto const &[k, v] : entries)
    out << k << " = " << v << '\n';
}

} // namespace

std::string Certificate::render() const
{
  std::ostringstream out;
  out << "# amalgam certificate v1\n";
  for (auto const &[name, entries] : sections_) {
    out << '\n';
    render_section(out, name, entries);
  }
  return out.str();
}

std::string Certificate::render_body() const
{
  std::ostringstream out;
  bool first = true;
  for (auto const &[name, entries] : sections_) {
    if (name == "COMMAND" || name == "INPUTS")
      continue;
    if (!first)
      out << '\n';
    first = false;
    render_section(out, name, entries);
  }
  return out.str();
}

Certificate Certificate::parse(std::string_view text)
{
  Certificate cert;
  Entries *current = nullptr;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::SyntaxError,
                    "certificate line " + std::to_string(line_no) + ": bad header");
      std::string name = line.substr(1, line.size() - 2);
      if (cert.find(name))
        throw Error(ErrorCode::SyntaxError, "certificate line " + std::to_string(line_no) +
                                            ": repeated section " + name);
      current = &cert.section(name);
      continue;
    }
    if (line.size() >= 2 && line.compare(line.size() - 2, 2, " =") == 0)
      line += ' ';
    auto eq = line.find(" = ");
    if (!current || eq == std::string::npos)
      throw Error(ErrorCode::SyntaxError,
                  "certificate line " + std::to_string(line_no) + ": expected 'key = value'");
    current->emplace_back(line.substr(0, eq), line.substr(eq + 3));
  }
  return cert;
}

std::string sha256_hex(std::string_view data)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

} // namespace amalgam::cli
