#include "lyricbeat/patterning.hpp"

#include <cstdlib>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

BinaryPattern build_psp(const AlignmentIndexMap& located, const BinaryPattern& sp) {
  BinaryPattern psp(PatternKind::kPronunableStrong);
  for (std::size_t i = 0; i < located.size(); ++i) {
    const long beat = located.indices[i];
    if (beat < 0 || static_cast<std::size_t>(beat) >= sp.size())
      throw PreconditionError("pronunable " + std::to_string(i) + " is located on beat " +
                              std::to_string(beat) + " outside a grid of " +
                              std::to_string(sp.size()) + " beats");
    psp.push_back(sp[static_cast<std::size_t>(beat)]);
  }
  return psp;
}

SyllableMatch match_pronunables_to_syllables(std::size_t pronunable_count,
                                             const StressPatternList& patterns,
                                             std::size_t tolerance) {
  SyllableMatch match;
  for (const auto& p : patterns.patterns) match.expected_per_word.push_back(static_cast<int>(p.size()));
  const std::size_t syllables = count_syllables(patterns);
  match.delta = static_cast<long>(pronunable_count) - static_cast<long>(syllables);

  if (static_cast<std::size_t>(std::labs(match.delta)) > tolerance) {
    throw SyllableMismatchError(
        "lyrics have " + std::to_string(syllables) + " syllables but the performance has " +
            std::to_string(pronunable_count) + " pronunables (delta " +
            (match.delta > 0 ? "+" : "") + std::to_string(match.delta) + ")",
        match.delta, match.expected_per_word);
  }

  std::size_t next = 0;
  for (std::size_t w = 0; w < patterns.size() && next < pronunable_count; ++w) {
    const std::size_t want = patterns.patterns[w].size();
    const std::size_t take = std::min(want, pronunable_count - next);
    match.spans.push_back({w, next, take});
    next += take;
  }
  if (next < pronunable_count) {
    if (match.spans.empty()) {
      throw SyllableMismatchError("pronunables present but the lyrics have no words",
                                  match.delta, match.expected_per_word);
    }
    match.spans.back().count += pronunable_count - next;
    match.warnings.push_back(std::to_string(pronunable_count - next) +
                             " extra pronunable(s) attached to the last word");
  }
  match.words_dropped = patterns.size() - match.spans.size();
  if (match.delta < 0) {
    match.warnings.push_back(std::to_string(-match.delta) +
                             " lyric syllable(s) without a pronunable; " +
                             std::to_string(match.words_dropped) + " trailing word(s) dropped");
  }
  return match;
}

void validate_partition(const std::vector<WordSpan>& spans, std::size_t n) {
  std::size_t next = 0;
  for (std::size_t w = 0; w < spans.size(); ++w) {
    const WordSpan& s = spans[w];
    if (s.word_index != w || s.first != next || s.count == 0)
      throw PreconditionError("word spans do not partition the pronunables at word " +
                              std::to_string(w));
    next = s.end();
  }
  if (next != n)
    throw PreconditionError("word spans cover " + std::to_string(next) + " of " +
                            std::to_string(n) + " pronunables");
}

BinaryPattern psp_to_wpsp(const BinaryPattern& psp, const std::vector<WordSpan>& spans) {
  validate_partition(spans, psp.size());
  BinaryPattern wpsp(PatternKind::kWordStrong);
  for (const WordSpan& s : spans) {
    bool any = false;
    for (std::size_t i = s.first; i < s.end(); ++i) any = any || psp[i];
    wpsp.push_back(any);
  }
  return wpsp;
}

BinaryPattern stress_per_pronunable(const BinaryPattern& stress_flat,
                                    std::size_t pronunable_count) {
  BinaryPattern out(PatternKind::kStress, stress_flat.flags());
  out.resize(pronunable_count);
  return out;
}

BinaryPattern build_sssp(const BinaryPattern& psp, const BinaryPattern& stress_flat) {
  if (psp.size() != stress_flat.size())
    throw PreconditionError("stress flags (" + std::to_string(stress_flat.size()) +
                            ") and PSP (" + std::to_string(psp.size()) + ") differ in length");
  BinaryPattern sssp(PatternKind::kStressedStrong);
  for (std::size_t i = 0; i < psp.size(); ++i) sssp.push_back(psp[i] && stress_flat[i]);
  return sssp;
}

}  // namespace lyricbeat
