#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace amalgam::cli {

/// Ordered sections of ordered key/value lines. Rendering is canonical, so
/// two certificates are equal exactly when their text is.
class Certificate {
public:
  using Entries = std::vector<std::pair<std::string, std::string>>;

  Entries &section(std::string const &name);
  Entries const *find(std::string_view name) const;
  /// First value for `key` in section `name`.
  std::optional<std::string> value(std::string_view name, std::string_view key) const;
  void add(std::string const &name, std::string key, std::string value);

  std::vector<std::pair<std::string, Entries>> const &sections() const { return sections_; }

  std::string render() const;
  /// Everything but COMMAND and INPUTS.
  std::string render_body() const;

  /// Throws SyntaxError.
  static Certificate parse(std::string_view text);

private:
  std::vector<std::pair<std::string, Entries>> sections_;
};

std::string sha256_hex(std::string_view data);

} // namespace amalgam::cli
