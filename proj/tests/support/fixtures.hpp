// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_TESTS_FIXTURES_HPP_
#define RECIPENET_TESTS_FIXTURES_HPP_

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include "recipenet/corpus.hpp"
#include "recipenet/rules.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return RECIPENET_DATA_DIR; }

inline const recipenet::RuleSet& rules() {
  static const recipenet::RuleSet r = recipenet::RuleSet::load(data_dir() / "rules.txt");
  return r;
}

inline recipenet::Recipe recipe(std::string id, std::vector<std::string> lines,
                                std::vector<std::string> directions = {}) {
  recipenet::Recipe r;
  r.id = std::move(id);
  r.title = r.id;
  r.ingredient_lines = std::move(lines);
  r.directions = std::move(directions);
  return r;
}

inline recipenet::Review review(std::string recipe_id, std::string user, int rating,
                                std::string text = {}) {
  recipenet::Review v;
  v.recipe_id = std::move(recipe_id);
  v.user_id = std::move(user);
  v.rating = rating;
  v.text = std::move(text);
  return v;
}

/// Unique scratch directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("recipenet-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fixtures

#endif  // RECIPENET_TESTS_FIXTURES_HPP_
