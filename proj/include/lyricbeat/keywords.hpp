#pragma once

#include <filesystem>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <unordered_set>

#include "lyricbeat/binary_pattern.hpp"
#include "lyricbeat/lyrics.hpp"

namespace lyricbeat {

using StopwordSet = std::unordered_set<std::string>;

/// One lowercase word per line; blank lines and '#' comments skipped.
StopwordSet parse_stopwords(std::istream& in);
StopwordSet load_stopwords(const std::filesystem::path& path);

inline constexpr double kDefaultKeywordRatio = 0.5;

/// Produces the word-indexed keyword pattern (KP) of a lyric.
class KeywordExtractor {
 public:
  virtual ~KeywordExtractor() = default;
  virtual BinaryPattern extract(std::span<const Token> tokens) const = 0;
  virtual std::string name() const = 0;
};

/// Ranks non-stopword types by frequency in the lyric (earlier first
/// occurrence wins ties) and marks every occurrence of the top
/// ceil(ratio * type count) types.
class TermFrequencyExtractor final : public KeywordExtractor {
 public:
  TermFrequencyExtractor(StopwordSet stopwords, double ratio = kDefaultKeywordRatio);

  BinaryPattern extract(std::span<const Token> tokens) const override;
  std::string name() const override { return "term-frequency"; }

 private:
  StopwordSet stopwords_;
  double ratio_;
};

BinaryPattern extract_keywords(std::span<const Token> tokens, const StopwordSet& stopwords,
                               double ratio = kDefaultKeywordRatio);

}  // namespace lyricbeat
