// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 recipenet contributors

#ifndef RECIPENET_LOG_HPP_
#define RECIPENET_LOG_HPP_

#include <functional>
#include <iostream>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace recipenet::log {

using Sink = std::function<void(const std::string&)>;

namespace detail {
inline std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}
inline Sink& sink() {
  static Sink s = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}
}  // namespace detail

/// Replaces the warning sink; returns the previous one.
inline Sink set_sink(Sink sink) {
  std::lock_guard lock(detail::sink_mutex());
  return std::exchange(detail::sink(), std::move(sink));
}

inline void warn(const std::string& message) {
  std::lock_guard lock(detail::sink_mutex());
  if (detail::sink()) detail::sink()(message);
}

/// Captures warnings for the lifetime of the object (tests, quiet CLI runs).
class ScopedCapture {
 public:
  ScopedCapture()
      : previous_(set_sink([this](const std::string& m) { messages_.push_back(m); })) {}
  ~ScopedCapture() { set_sink(std::move(previous_)); }
  ScopedCapture(const ScopedCapture&) = delete;
  ScopedCapture& operator=(const ScopedCapture&) = delete;

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  std::vector<std::string> messages_;
  Sink previous_;
};

}  // namespace recipenet::log

#endif  // RECIPENET_LOG_HPP_
