#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "recmon/errors.hpp"

namespace recmon {

// External actions are indices into an Alphabet; tau is not a member.
using Action = int;
inline constexpr Action kTau = -1;

// Subset of the alphabet as a bitmask. Alphabets are capped at 31 actions,
// which is far beyond desk scale.
using ActionSet = std::uint32_t;

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) {
    if (names.empty()) fail(Errc::input, "alphabet must be non-empty");
    if (names.size() > 31) fail(Errc::input, "alphabet limited to 31 actions");
    for (const auto &n : names) {
      if (n == "tau") fail(Errc::input, "'tau' is reserved and cannot be an alphabet action");
      if (index_of(n) >= 0) fail(Errc::input, "duplicate action '" + n + "' in alphabet");
      names_.push_back(n);
    }
  }

  static Alphabet from_csv(const std::string &csv);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string &name(Action a) const { return names_.at(static_cast<size_t>(a)); }
  const std::vector<std::string> &names() const { return names_; }

  // -1 when unknown.
  int index_of(const std::string &n) const {
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<int>(i);
    return -1;
  }

  Action require(const std::string &n) const {
    int i = index_of(n);
    if (i < 0) fail(Errc::input, "action '" + n + "' not in alphabet");
    return i;
  }

  ActionSet all() const { return (ActionSet{1} << size()) - 1; }
  ActionSet complement(ActionSet s) const { return all() & ~s; }

  std::string set_to_string(ActionSet s) const;

  bool operator==(const Alphabet &o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

inline bool set_contains(ActionSet s, Action a) { return (s >> a) & 1u; }
inline ActionSet set_of(Action a) { return ActionSet{1} << a; }

inline int set_size(ActionSet s) {
  int n = 0;
  for (; s; s &= s - 1) ++n;
  return n;
}

// Iterates the members of an ActionSet in canonical (index) order.
template <typename F>
void for_each_action(ActionSet s, F &&f) {
  for (Action a = 0; s; ++a, s >>= 1)
    if (s & 1u) f(a);
}

}  // namespace recmon
