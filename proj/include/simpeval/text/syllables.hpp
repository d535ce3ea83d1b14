#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace simpeval {

// TeX-style hyphenation patterns (Liang's algorithm). Each pattern is a
// letter string with optional inter-letter digits, e.g. ".ab1c" or "4ter".
// Odd digit maxima mark permissible break points.
class HyphenationPatterns {
 public:
  // Reads whitespace-separated patterns; lines starting with '%' are comments.
  static HyphenationPatterns parse(std::istream& in);

  void add_pattern(std::string_view pattern);
  std::size_t size() const { return patterns_.size(); }

  // Byte offsets (in the UTF-8 input) before which a hyphen may be inserted.
  std::vector<std::size_t> break_points(std::string_view word) const;

 private:
  std::map<std::u32string, std::vector<unsigned char>> patterns_;
  std::size_t max_pattern_length_ = 0;
};

// Pattern tables keyed by lowercase language code. A directory is scanned for
// "<code>.pat" and "hyph-<code>.pat.txt" files; a missing directory is not an
// error.
class HyphenationRegistry {
 public:
  static HyphenationRegistry load_directory(const std::filesystem::path& dir);

  void add(std::string language, HyphenationPatterns patterns);
  const HyphenationPatterns* find(std::string_view language) const;
  std::vector<std::string> languages() const;

 private:
  std::map<std::string, HyphenationPatterns, std::less<>> tables_;
};

struct SyllableCount {
  std::size_t count = 1;
  bool fallback = false;  // set when the language had no table and English rules were used
};

// English heuristic: maximal groups of a/e/i/o/u/y, minus one for a trailing
// silent 'e' unless the word ends in consonant + "le", never below 1.
std::size_t english_syllables(std::string_view word);

SyllableCount count_syllables(std::string_view word, std::string_view language,
                              const HyphenationRegistry* registry = nullptr);

// Binds a language (and optionally a pattern registry) for repeated counting.
// Default-constructed counters use the English heuristic.
class SyllableCounter {
 public:
  SyllableCounter() = default;
  SyllableCounter(std::string language, std::shared_ptr<const HyphenationRegistry> registry)
      : language_(std::move(language)), registry_(std::move(registry)) {}

  SyllableCount count(std::string_view word) const {
    return count_syllables(word, language_, registry_.get());
  }
  const std::string& language() const { return language_; }

 private:
  std::string language_ = "en";
  std::shared_ptr<const HyphenationRegistry> registry_;
};

}  // namespace simpeval
