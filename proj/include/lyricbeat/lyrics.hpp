#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lyricbeat/binary_pattern.hpp"

namespace lyricbeat {

/// A lyric word after preprocessing.
struct Token {
  std::string text;         // case-folded surface form, e.g. "they're"
  std::string head;         // form used for stress lookup, e.g. "they"
  int extra_syllables = 0;  // unstressed syllables added by a suffix ("didn't")

  friend bool operator==(const Token&, const Token&) = default;
};

/// Case-folds, strips punctuation and splits on everything that is not a
/// letter, digit or word-internal apostrophe. Contraction suffixes ('re 've
/// 'll 'd 's 'm 't) are folded into their head word so they add no syllable;
/// a short list of "n't" forms whose n is syllabic ("didn't", "isn't") adds
/// one unstressed syllable instead.
std::vector<Token> preprocess_lyrics(std::string_view text);

/// Word -> phonemes of its first listed pronunciation. Keys are stored
/// uppercase.
class PronouncingDictionary {
 public:
  /// Plain-text format: "WORD  PH1 PH2 ...". Lines starting with ";;;" are
  /// comments, "WORD(2)" alternates are skipped, a trailing "# ..." comment is
  /// dropped, and entries without any stress-marked vowel are ignored.
  static PronouncingDictionary parse(std::istream& in);
  static PronouncingDictionary load(const std::filesystem::path& path);

  /// Keeps the first pronunciation added for a word.
  void add(std::string_view word, std::vector<std::string> phonemes);

  /// Case-insensitive lookup; nullptr when absent.
  const std::vector<std::string>* find(std::string_view word) const;

  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_map<std::string, std::vector<std::string>>& entries() const {
    return entries_;
  }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

/// Binary stress digits of a pronunciation: one per vowel phoneme, with
/// secondary stress (2) folded into 1.
std::string stress_digits(std::span<const std::string> phonemes);

/// Syllable count from vowel groups after stripping non-syllabic suffixes.
/// Returns 0 for words with no vowel group at all.
int fallback_syllable_count(std::string_view word);

/// Runs of a/e/i/o/u/y (y counts only between consonants or word-final),
/// minus a word-final silent "e" after a consonant (but not consonant+"le").
int count_vowel_groups(std::string_view word);

enum class MonosyllableStress {
  kAlwaysStressed,  // every single-syllable pattern becomes "1"
  kDictionary,      // keep the dictionary digit
};

/// One stress string per token, over {0,1}.
struct StressPatternList {
  std::vector<std::string> tokens;
  std::vector<std::string> patterns;
  std::vector<bool> from_dictionary;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return patterns.size(); }
};

/// Dictionary first variant when the head word is known; otherwise the
/// vowel-group fallback with the first syllable stressed.
StressPatternList stress_patterns(std::span<const Token> tokens, const PronouncingDictionary& dict,
                                  MonosyllableStress monosyllables = MonosyllableStress::kAlwaysStressed);

/// Sets single-syllable patterns of keywords to "1". `kp` is word-indexed.
void stress_monosyllabic_keywords(StressPatternList& patterns, const BinaryPattern& kp);

std::size_t count_syllables(const StressPatternList& patterns);

/// Concatenated per-syllable stress flags.
BinaryPattern flatten_stress(const StressPatternList& patterns);

}  // namespace lyricbeat
