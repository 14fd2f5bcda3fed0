// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_RULES_HPP_
#define RECIPENET_RULES_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "recipenet/error.hpp"
#include "recipenet/text.hpp"

namespace recipenet {

/// Sectioned plain-text rule file:
///
///     # comment
///     [units]
///     cup
///     cups
///
/// Entries are lowercased and trimmed; inline `#` starts a comment.
class RuleSet {
 public:
  RuleSet() = default;

  static RuleSet parse(std::string_view content, const std::string& source = "rules") {
    RuleSet rs;
    std::string current;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        const auto comment = std::string_view(line).substr(hash + 1);
        const auto t = text::trim(comment);
        if (current.empty() && text::starts_with(t, "version:"))
          rs.version_ = std::string(text::trim(t.substr(8)));
        line.erase(hash);
      }
      const auto t = text::trim(line);
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']' || t.size() < 3)
          throw ParseError(source, lineno, "malformed section header");
        current = std::string(t.substr(1, t.size() - 2));
        rs.sections_[current];
        continue;
      }
      if (current.empty()) throw ParseError(source, lineno, "entry outside of any section");
      std::string entry(t);
      for (char& c : entry)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      rs.sections_[current].push_back(std::move(entry));
    }
    return rs;
  }

  static RuleSet load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open rule file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
  }

  bool has(const std::string& section) const { return sections_.contains(section); }

  /// Entries of a section; throws when the section is absent.
  const std::vector<std::string>& section(const std::string& name) const {
    auto it = sections_.find(name);
    if (it == sections_.end()) throw InvalidArgument("rule file lacks section [" + name + "]");
    return it->second;
  }

  /// Entries of a section, or an empty list.
  std::vector<std::string> section_or_empty(const std::string& name) const {
    auto it = sections_.find(name);
    return it == sections_.end() ? std::vector<std::string>{} : it->second;
  }

  const std::map<std::string, std::vector<std::string>>& sections() const { return sections_; }
  const std::string& version() const { return version_; }

 private:
  std::map<std::string, std::vector<std::string>> sections_;
  std::string version_;
};

}  // namespace recipenet

#endif  // RECIPENET_RULES_HPP_
