#include "lyricbeat/keywords.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_map>
#include <vector>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

StopwordSet parse_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string word = line.substr(first, last - first + 1);
    for (char& c : word)
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    words.insert(std::move(word));
  }
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stopword list " + path.string());
  return parse_stopwords(in);
}

TermFrequencyExtractor::TermFrequencyExtractor(StopwordSet stopwords, double ratio)
    : stopwords_(std::move(stopwords)), ratio_(ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0))
    throw PreconditionError("keyword ratio must be in (0, 1]");
}

BinaryPattern TermFrequencyExtractor::extract(std::span<const Token> tokens) const {
  struct TypeScore {
    std::string type;
    std::size_t count = 0;
    std::size_t first = 0;
  };
  std::vector<TypeScore> scores;
  std::unordered_map<std::string, std::size_t> slot;
  auto is_stopword = [&](const Token& t) {
    return stopwords_.contains(t.text) || stopwords_.contains(t.head);
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (is_stopword(tokens[i])) continue;
    auto [it, inserted] = slot.try_emplace(tokens[i].head, scores.size());
    if (inserted) scores.push_back({tokens[i].head, 0, i});
    ++scores[it->second].count;
  }

  const auto keep = static_cast<std::size_t>(
      std::ceil(ratio_ * static_cast<double>(scores.size()) - 1e-9));
  std::stable_sort(scores.begin(), scores.end(), [](const TypeScore& a, const TypeScore& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.first < b.first;
  });
  std::unordered_map<std::string, bool> selected;
  for (std::size_t i = 0; i < keep && i < scores.size(); ++i) selected[scores[i].type] = true;

  BinaryPattern kp(PatternKind::kKeyword);
  for (const Token& t : tokens) kp.push_back(!is_stopword(t) && selected.contains(t.head));
  return kp;
}

BinaryPattern extract_keywords(std::span<const Token> tokens, const StopwordSet& stopwords,
                               double ratio) {
  return TermFrequencyExtractor(stopwords, ratio).extract(tokens);
}

}  // namespace lyricbeat
