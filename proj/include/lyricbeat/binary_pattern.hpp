#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace lyricbeat {

enum class PatternKind {
  kStrongBeat,          // SP, one flag per music beat
  kPronunableStrong,    // PSP, one flag per pronunable
  kWordStrong,          // WPSP, one flag per word
  kKeyword,             // KP, one flag per word
  kStress,              // lexical stress, one flag per syllable
  kStressedStrong,      // SSSP, one flag per syllable
};

std::string_view to_string(PatternKind kind);

/// A 0/1 flag sequence tagged with what it describes. The kind is fixed at
/// construction.
class BinaryPattern {
 public:
  explicit BinaryPattern(PatternKind kind) : kind_(kind) {}
  BinaryPattern(PatternKind kind, std::vector<std::uint8_t> flags);
  BinaryPattern(PatternKind kind, std::initializer_list<int> flags);

  PatternKind kind() const noexcept { return kind_; }
  const std::vector<std::uint8_t>& flags() const noexcept { return flags_; }

  std::size_t size() const noexcept { return flags_.size(); }
  bool empty() const noexcept { return flags_.empty(); }
  bool operator[](std::size_t i) const { return flags_[i] != 0; }

  void push_back(bool flag) { flags_.push_back(flag ? 1 : 0); }
  void set(std::size_t i, bool flag) { flags_.at(i) = flag ? 1 : 0; }
  void resize(std::size_t n) { flags_.resize(n, 0); }

  std::size_t popcount() const noexcept;

  /// "1010..." rendering used in reports.
  std::string to_string() const;

  friend bool operator==(const BinaryPattern&, const BinaryPattern&) = default;

 private:
  PatternKind kind_;
  std::vector<std::uint8_t> flags_;
};

}  // namespace lyricbeat
