#include "simpeval/text/syllables.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "utf8.hpp"

namespace simpeval {

namespace {

bool is_english_vowel(char c) {
  switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
      return true;
    default:
      return false;
  }
}

bool is_english_consonant(char c) { return c >= 'a' && c <= 'z' && !is_english_vowel(c); }

std::string normalize_language(std::string_view language) {
  std::string out;
  for (char c : language) {
    if (c == '_') c = '-';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::string primary_subtag(const std::string& language) {
  return language.substr(0, language.find('-'));
}

}  // namespace

HyphenationPatterns HyphenationPatterns::parse(std::istream& in) {
  HyphenationPatterns table;
  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('%');
    if (comment != std::string::npos) line.erase(comment);
    std::istringstream words(line);
    std::string pattern;
    while (words >> pattern) table.add_pattern(pattern);
  }
  return table;
}

void HyphenationPatterns::add_pattern(std::string_view pattern) {
  std::u32string letters;
  std::vector<unsigned char> values(1, 0);
  for (std::size_t i = 0; i < pattern.size();) {
    const auto d = utf8::decode(pattern, i);
    i += d.length;
    if (utf8::is_digit(d.cp)) {
      values.back() = static_cast<unsigned char>(d.cp - '0');
    } else {
      letters.push_back(utf8::to_lower(d.cp));
      values.push_back(0);
    }
  }
  if (letters.empty()) return;
  max_pattern_length_ = std::max(max_pattern_length_, letters.size());
  patterns_[std::move(letters)] = std::move(values);
}

std::vector<std::size_t> HyphenationPatterns::break_points(std::string_view word) const {
  std::u32string padded = U".";
  std::vector<std::size_t> byte_offsets;  // byte offset of each code point
  for (std::size_t i = 0; i < word.size();) {
    const auto d = utf8::decode(word, i);
    byte_offsets.push_back(i);
    padded.push_back(utf8::to_lower(d.cp));
    i += d.length;
  }
  padded.push_back(U'.');
  const std::size_t n = byte_offsets.size();
  if (n < 2) return {};

  // values[g] is the level of the gap before padded[g].
  std::vector<unsigned char> values(padded.size() + 1, 0);
  for (std::size_t start = 0; start < padded.size(); ++start) {
    const std::size_t longest = std::min(max_pattern_length_, padded.size() - start);
    for (std::size_t len = 1; len <= longest; ++len) {
      const auto it = patterns_.find(padded.substr(start, len));
      if (it == patterns_.end()) continue;
      for (std::size_t k = 0; k < it->second.size(); ++k) {
        values[start + k] = std::max(values[start + k], it->second[k]);
      }
    }
  }

  std::vector<std::size_t> breaks;
  for (std::size_t p = 1; p < n; ++p) {
    if (values[p + 1] % 2 == 1) breaks.push_back(byte_offsets[p]);
  }
  return breaks;
}

HyphenationRegistry HyphenationRegistry::load_directory(const std::filesystem::path& dir) {
  HyphenationRegistry registry;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return registry;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    std::string code;
    if (name.size() > 4 && name.ends_with(".pat")) {
      code = name.substr(0, name.size() - 4);
    } else if (name.starts_with("hyph-") && name.ends_with(".pat.txt")) {
      code = name.substr(5, name.size() - 5 - 8);
    } else {
      continue;
    }
    std::ifstream in(entry.path());
    if (!in || code.empty()) continue;
    registry.add(code, HyphenationPatterns::parse(in));
  }
  return registry;
}

void HyphenationRegistry::add(std::string language, HyphenationPatterns patterns) {
  tables_.insert_or_assign(normalize_language(language), std::move(patterns));
}

const HyphenationPatterns* HyphenationRegistry::find(std::string_view language) const {
  const std::string code = normalize_language(language);
  if (auto it = tables_.find(code); it != tables_.end()) return &it->second;
  if (auto it = tables_.find(primary_subtag(code)); it != tables_.end()) return &it->second;
  return nullptr;
}

std::vector<std::string> HyphenationRegistry::languages() const {
  std::vector<std::string> out;
  for (const auto& [code, _] : tables_) out.push_back(code);
  return out;
}

std::size_t english_syllables(std::string_view word) {
  std::string w;
  for (char c : word) w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  std::size_t groups = 0;
  bool in_group = false;
  for (char c : w) {
    const bool vowel = is_english_vowel(c);
    if (vowel && !in_group) ++groups;
    in_group = vowel;
  }
  if (w.ends_with('e')) {
    const bool consonant_le =
        w.size() >= 3 && w.ends_with("le") && is_english_consonant(w[w.size() - 3]);
    if (!consonant_le && groups > 0) --groups;
  }
  return std::max<std::size_t>(groups, 1);
}

SyllableCount count_syllables(std::string_view word, std::string_view language,
                              const HyphenationRegistry* registry) {
  const std::string code = normalize_language(language);
  if (primary_subtag(code) == "en") return {english_syllables(word), false};
  if (registry != nullptr) {
    if (const auto* table = registry->find(code)) {
      return {table->break_points(word).size() + 1, false};
    }
  }
  return {english_syllables(word), true};
}

}  // namespace simpeval
