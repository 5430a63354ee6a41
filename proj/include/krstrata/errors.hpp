#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace krs {

// Base of everything the engine throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
 public:
  using Error::Error;
};

class FlavorMismatch : public Error {
 public:
  using Error::Error;
};

class WindowExceeded : public Error {
 public:
  using Error::Error;
};

class HypothesisViolation : public Error {
 public:
  HypothesisViolation(const std::string& what, int component, int index)
      : Error(what), component_(component), index_(index) {}
  int component() const { return component_; }  // 0-based position in the tuple
  int index() const { return index_; }          // 1-based coordinate
 private:
  int component_;
  int index_;
};

// An internal cross-check (oracle vs. implementation, closed form vs. brute force) disagreed.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

/// Enumeration bounds. The ambient rank limit can be raised with KRSTRATA_MAX_RANK.
struct Limits {
  int max_rank = 12;

  static Limits from_env() {
    Limits limits;
    if (const char* env = std::getenv("KRSTRATA_MAX_RANK")) {
      char* end = nullptr;
      long value = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && value > 0 && value < 64) {
        limits.max_rank = static_cast<int>(value);
      }
    }
    return limits;
  }
};

inline void check_rank_window(int rank, const Limits& limits) {
  if (rank > limits.max_rank) {
    throw WindowExceeded("ambient rank " + std::to_string(rank) + " exceeds configured maximum " +
                         std::to_string(limits.max_rank));
  }
}

}  // namespace krs
