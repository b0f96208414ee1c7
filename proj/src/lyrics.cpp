#include "lyricbeat/lyrics.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <utility>

#include "lyricbeat/error.hpp"

namespace lyricbeat {

namespace {

// Contractions whose "n't" carries its own syllable, mapped to the verb.
constexpr std::array<std::pair<std::string_view, std::string_view>, 13> kSyllabicNegations{{
    {"didn't", "did"},     {"doesn't", "does"}, {"isn't", "is"},       {"wasn't", "was"},
    {"wouldn't", "would"}, {"couldn't", "could"}, {"shouldn't", "should"}, {"hasn't", "has"},
    {"haven't", "have"},   {"hadn't", "had"},   {"mustn't", "must"},   {"needn't", "need"},
    {"mightn't", "might"},
}};

// Contractions whose head is not simply the text before the apostrophe.
constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kIrregularHeads{{
    {"aren't", "are"}, {"weren't", "were"}, {"don't", "do"},
    {"can't", "can"},  {"won't", "won"},    {"shan't", "shall"},
}};

constexpr std::array<std::string_view, 7> kContractionSuffixes{"re", "ve", "ll", "d",
                                                               "s",  "m",  "t"};

bool is_ascii_alnum(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant_letter(char c) {
  return c >= 'a' && c <= 'z' && !is_vowel_letter(c) && c != 'y';
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

// Byte length of a UTF-8 punctuation sequence at `i` that should act as a
// separator, 0 otherwise. Covers U+2000..U+206F (dashes, quotes, ellipsis)
// apart from the apostrophes handled by the caller.
std::size_t punctuation_sequence(std::string_view s, std::size_t i) {
  if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
      (static_cast<unsigned char>(s[i + 1]) == 0x80 ||
       static_cast<unsigned char>(s[i + 1]) == 0x81))
    return 3;
  if (i + 1 < s.size() && static_cast<unsigned char>(s[i]) == 0xC2) return 2;  // ¡ « » ¿ nbsp
  return 0;
}

bool is_apostrophe_at(std::string_view s, std::size_t i, std::size_t* len) {
  if (s[i] == '\'') {
    *len = 1;
    return true;
  }
  if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      (static_cast<unsigned char>(s[i + 2]) == 0x99 ||
       static_cast<unsigned char>(s[i + 2]) == 0x98)) {
    *len = 3;
    return true;
  }
  return false;
}

Token make_token(std::string text) {
  Token token{text, text, 0};
  for (const auto& [word, verb] : kSyllabicNegations) {
    if (text == word) {
      token.head = verb;
      token.extra_syllables = 1;
      return token;
    }
  }
  for (const auto& [word, head] : kIrregularHeads) {
    if (text == word) {
      token.head = head;
      return token;
    }
  }
  const auto apostrophe = text.rfind('\'');
  if (apostrophe != std::string::npos) {
    const std::string_view suffix = std::string_view(text).substr(apostrophe + 1);
    if (std::find(kContractionSuffixes.begin(), kContractionSuffixes.end(), suffix) !=
        kContractionSuffixes.end())
      token.head = text.substr(0, apostrophe);
  }
  return token;
}

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<Token> preprocess_lyrics(std::string_view text) {
  std::vector<Token> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(make_token(std::move(current)));
    current.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    if (is_apostrophe_at(text, i, &len)) {
      // Word-internal apostrophes survive; leading and trailing ones do not.
      const std::size_t next = i + len;
      const bool joins = !current.empty() && next < text.size() &&
                         (is_ascii_alnum(static_cast<unsigned char>(text[next])) ||
                          static_cast<unsigned char>(text[next]) >= 0x80);
      if (joins) current += '\'';
      else flush();
      i = next;
    } else if (is_ascii_alnum(c)) {
      current += fold(c);
      ++i;
    } else if (c >= 0x80) {
      if (std::size_t p = punctuation_sequence(text, i)) {
        flush();
        i += p;
      } else {
        current += static_cast<char>(c);
        ++i;
      }
    } else {
      flush();
      ++i;
    }
  }
  flush();
  return tokens;
}

PronouncingDictionary PronouncingDictionary::parse(std::istream& in) {
  PronouncingDictionary dict;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind(";;;", 0) == 0) continue;
    if (const auto hash = line.find(" #"); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word;
    if (!(fields >> word)) continue;
    if (word.size() > 3 && word.back() == ')' && word.find('(') != std::string::npos) continue;
    std::vector<std::string> phonemes;
    for (std::string ph; fields >> ph;) phonemes.push_back(std::move(ph));
    if (stress_digits(phonemes).empty()) continue;
    dict.add(word, std::move(phonemes));
  }
  return dict;
}

PronouncingDictionary PronouncingDictionary::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pronouncing dictionary " + path.string());
  return parse(in);
}

void PronouncingDictionary::add(std::string_view word, std::vector<std::string> phonemes) {
  entries_.try_emplace(to_upper(word), std::move(phonemes));
}

const std::vector<std::string>* PronouncingDictionary::find(std::string_view word) const {
  auto it = entries_.find(to_upper(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string stress_digits(std::span<const std::string> phonemes) {
  std::string digits;
  for (const auto& ph : phonemes) {
    if (ph.empty()) continue;
    const char d = ph.back();
    if (d == '0') digits += '0';
    else if (d == '1' || d == '2') digits += '1';
  }
  return digits;
}

int count_vowel_groups(std::string_view word) {
  std::string w;
  for (char c : word)
    if (c != '\'') w += fold(static_cast<unsigned char>(c));
  const std::size_t n = w.size();
  auto vocalic = [&](std::size_t i) {
    if (is_vowel_letter(w[i])) return true;
    if (w[i] != 'y' || i == 0) return false;
    if (i + 1 == n) return true;
    return is_consonant_letter(w[i - 1]) && is_consonant_letter(w[i + 1]);
  };

  int groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (vocalic(i) && (i == 0 || !vocalic(i - 1))) ++groups;
  }
  if (groups > 1 && n >= 2 && w[n - 1] == 'e' && is_consonant_letter(w[n - 2])) {
    const bool syllabic_le = w[n - 2] == 'l' && n >= 3 && is_consonant_letter(w[n - 3]);
    if (!syllabic_le) --groups;
  }
  return groups;
}

int fallback_syllable_count(std::string_view word) {
  std::string w;
  for (char c : word)
    if (c != '\'') w += fold(static_cast<unsigned char>(c));
  const std::size_t n = w.size();

  // Each suffix is stripped only when the remaining stem still has a vowel;
  // the suffix then contributes 1 if it is syllabic, 0 otherwise.
  auto with_stem = [&](std::size_t stem_len, int suffix_syllables) -> int {
    const int stem = count_vowel_groups(std::string_view(w).substr(0, stem_len));
    if (stem == 0) return -1;
    return stem + suffix_syllables;
  };
  // "-led"/"-les" after a stop or fricative keep the syllabic l of "-le"
  // ("bubbled", "tickles"), unlike "called", "curled" or "howled".
  auto syllabic_l = [&](std::size_t stem_len) {
    if (stem_len < 2 || w[stem_len - 1] != 'l') return 0;
    const char c = w[stem_len - 2];
    return !is_vowel_letter(c) && c != 'l' && c != 'r' && c != 'w' && c != 'y' ? 1 : 0;
  };

  int result = -1;
  if (n >= 5 && ends_with(w, "ing")) {
    result = with_stem(n - 3, 1);
  } else if (n >= 4 && ends_with(w, "ed")) {
    const char before = w[n - 3];
    if (before == 't' || before == 'd') result = with_stem(n - 2, 1);
    else if (before == 'e') result = with_stem(n - 1, 0);
    else result = with_stem(n - 2, syllabic_l(n - 2));
  } else if (n >= 4 && ends_with(w, "es")) {
    const char before = w[n - 3];
    const bool sibilant = before == 's' || before == 'x' || before == 'z' || before == 'c' ||
                          before == 'g' ||
                          (before == 'h' && (w[n - 4] == 'c' || w[n - 4] == 's'));
    result = with_stem(n - 2, sibilant ? 1 : syllabic_l(n - 2));
  } else if (n >= 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
             !ends_with(w, "is")) {
    result = with_stem(n - 1, 0);
  }
  return result >= 0 ? result : count_vowel_groups(w);
}

StressPatternList stress_patterns(std::span<const Token> tokens, const PronouncingDictionary& dict,
                                  MonosyllableStress monosyllables) {
  StressPatternList out;
  out.tokens.reserve(tokens.size());
  out.patterns.reserve(tokens.size());
  for (const Token& token : tokens) {
    std::string pattern;
    bool known = false;
    if (const auto* phonemes = dict.find(token.head)) {
      pattern = stress_digits(*phonemes);
      known = true;
    } else {
      const int syllables = fallback_syllable_count(token.head);
      if (syllables == 0)
        out.warnings.push_back("no vowel in unknown word '" + token.text +
                               "', treated as one stressed syllable");
      pattern = "1" + std::string(static_cast<std::size_t>(std::max(syllables, 1) - 1), '0');
    }
    pattern.append(static_cast<std::size_t>(token.extra_syllables), '0');
    if (pattern.size() == 1 && monosyllables == MonosyllableStress::kAlwaysStressed)
      pattern = "1";
    out.tokens.push_back(token.text);
    out.patterns.push_back(std::move(pattern));
    out.from_dictionary.push_back(known);
  }
  return out;
}

void stress_monosyllabic_keywords(StressPatternList& patterns, const BinaryPattern& kp) {
  if (kp.size() != patterns.size())
    throw PreconditionError("keyword pattern length does not match token count");
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (kp[i] && patterns.patterns[i].size() == 1) patterns.patterns[i] = "1";
  }
}

std::size_t count_syllables(const StressPatternList& patterns) {
  std::size_t total = 0;
  for (const auto& p : patterns.patterns) total += p.size();
  return total;
}

BinaryPattern flatten_stress(const StressPatternList& patterns) {
  BinaryPattern flat(PatternKind::kStress);
  for (const auto& p : patterns.patterns)
    for (char d : p) flat.push_back(d == '1');
  return flat;
}

}  // namespace lyricbeat
