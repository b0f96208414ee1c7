#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lyricbeat/alignment.hpp"
#include "lyricbeat/binary_pattern.hpp"
#include "lyricbeat/lyrics.hpp"

namespace lyricbeat {

/// Pronunables [first, first + count) sung for one word.
struct WordSpan {
  std::size_t word_index = 0;
  std::size_t first = 0;
  std::size_t count = 0;

  std::size_t end() const noexcept { return first + count; }
  friend bool operator==(const WordSpan&, const WordSpan&) = default;
};

/// PSP[i] = SP[located[i]].
BinaryPattern build_psp(const AlignmentIndexMap& located, const BinaryPattern& sp);

/// Outcome of matching lyric syllables to sung pronunables.
struct SyllableMatch {
  std::vector<WordSpan> spans;
  long delta = 0;  // pronunables minus syllables
  std::vector<int> expected_per_word;
  std::size_t words_dropped = 0;  // trailing words left without a pronunable
  std::vector<std::string> warnings;

  std::size_t word_count() const noexcept { return spans.size(); }
};

/// Assigns pronunables to words in order, one per syllable.
///
/// When the counts differ by at most `tolerance` the tail is adjusted: extra
/// pronunables join the last word, and when pronunables run out the trailing
/// words without any are dropped. A larger difference throws
/// SyllableMismatchError.
SyllableMatch match_pronunables_to_syllables(std::size_t pronunable_count,
                                             const StressPatternList& patterns,
                                             std::size_t tolerance = 0);

/// Throws PreconditionError unless the spans cover [0, n) contiguously, in
/// word order, with no empty span.
void validate_partition(const std::vector<WordSpan>& spans, std::size_t n);

/// WPSP[w] = OR of PSP over span w.
BinaryPattern psp_to_wpsp(const BinaryPattern& psp, const std::vector<WordSpan>& spans);

/// Per-pronunable lexical stress after matching: syllable stress flags,
/// truncated or padded with unstressed entries to the pronunable count.
BinaryPattern stress_per_pronunable(const BinaryPattern& stress_flat, std::size_t pronunable_count);

/// SSSP[i] = stress[i] AND PSP[i].
BinaryPattern build_sssp(const BinaryPattern& psp, const BinaryPattern& stress_flat);

}  // namespace lyricbeat
