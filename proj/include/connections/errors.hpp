#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace connections {

// Bad configuration: unknown keys, invariant violations, unusable word lists.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A round submission that breaks the rules. The engine never repairs these;
// adapters are expected to retry upstream.
class ProtocolViolation : public std::runtime_error {
 public:
  ProtocolViolation(int seat, const std::string& what)
      : std::runtime_error("seat " + std::to_string(seat) + ": " + what), seat_(seat) {}

  int seat() const noexcept { return seat_; }

 private:
  int seat_;
};

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t event_index, const std::string& what)
      : std::runtime_error("event " + std::to_string(event_index) + ": " + what),
        event_index_(event_index) {}

  std::size_t event_index() const noexcept { return event_index_; }

 private:
  std::size_t event_index_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RenderError : public std::runtime_error {
 public:
  RenderError(const std::string& slot, const std::string& what)
      : std::runtime_error(what), slot_(slot) {}

  const std::string& slot() const noexcept { return slot_; }

 private:
  std::string slot_;
};

}  // namespace connections
