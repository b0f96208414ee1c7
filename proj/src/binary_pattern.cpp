#include "lyricbeat/binary_pattern.hpp"

#include <algorithm>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

std::string_view to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::kStrongBeat: return "SP";
    case PatternKind::kPronunableStrong: return "PSP";
    case PatternKind::kWordStrong: return "WPSP";
    case PatternKind::kKeyword: return "KP";
    case PatternKind::kStress: return "STRESS";
    case PatternKind::kStressedStrong: return "SSSP";
  }
  return "?";
}

BinaryPattern::BinaryPattern(PatternKind kind, std::vector<std::uint8_t> flags)
    : kind_(kind), flags_(std::move(flags)) {
  for (auto& f : flags_) {
    if (f > 1) throw PreconditionError("binary pattern flags must be 0 or 1");
  }
}

BinaryPattern::BinaryPattern(PatternKind kind, std::initializer_list<int> flags) : kind_(kind) {
  flags_.reserve(flags.size());
  for (int f : flags) {
    if (f != 0 && f != 1) throw PreconditionError("binary pattern flags must be 0 or 1");
    flags_.push_back(static_cast<std::uint8_t>(f));
  }
}

std::size_t BinaryPattern::popcount() const noexcept {
  return static_cast<std::size_t>(std::count(flags_.begin(), flags_.end(), std::uint8_t{1}));
}

std::string BinaryPattern::to_string() const {
  std::string s;
  s.reserve(flags_.size());
  for (auto f : flags_) s += f ? '1' : '0';
  return s;
}

}  // namespace lyricbeat
