#include "simpeval/text/analysis.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "simpeval/session.hpp"
#include "utf8.hpp"

namespace simpeval {

namespace {

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "dr.", "mr.", "mrs.", "ms.", "prof.", "st.", "vs.", "e.g.", "i.e.", "etc."};

bool is_terminator(char32_t cp) { return cp == '.' || cp == '?' || cp == '!' || cp == 0x2026; }

bool is_closing(char32_t cp) {
  switch (cp) {
    case '"': case '\'': case ')': case ']': case '}':
    case 0x201D: case 0x2019: case 0x00BB: case 0x203A:
      return true;
    default:
      return false;
  }
}

bool is_opening(char32_t cp) {
  switch (cp) {
    case '"': case '\'': case '(': case '[':
    case 0x201C: case 0x2018: case 0x201E: case 0x00AB: case 0x2039:
      return true;
    default:
      return false;
  }
}

char32_t at(std::string_view s, std::size_t pos) { return utf8::decode(s, pos).cp; }

std::size_t skip_spaces(std::string_view s, std::size_t pos) {
  while (pos < s.size()) {
    const auto d = utf8::decode(s, pos);
    if (!utf8::is_space(d.cp)) break;
    pos += d.length;
  }
  return pos;
}

// `period` is the byte offset of a '.' inside [start, period].
bool ends_with_abbreviation(std::string_view text, std::size_t start, std::size_t period) {
  std::size_t begin = period;
  while (begin > start && !utf8::is_space(static_cast<unsigned char>(text[begin - 1]))) --begin;
  std::string token = utf8::lowercase(text.substr(begin, period - begin + 1));
  while (!token.empty() && is_opening(static_cast<unsigned char>(token.front()))) token.erase(0, 1);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), token) != kAbbreviations.end();
}

std::string_view trim(std::string_view s) {
  std::size_t begin = skip_spaces(s, 0);
  std::size_t end = s.size();
  while (end > begin) {
    // Step back over one code point.
    std::size_t cp_start = end - 1;
    while (cp_start > begin && (static_cast<unsigned char>(s[cp_start]) & 0xC0) == 0x80) --cp_start;
    if (!utf8::is_space(utf8::decode(s, cp_start).cp)) break;
    end = cp_start;
  }
  return s.substr(begin, end - begin);
}

}  // namespace

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  bool has_alnum = false;
  auto flush = [&] {
    if (has_alnum) words.push_back(std::move(current));
    current.clear();
    has_alnum = false;
  };
  for (std::size_t i = 0; i < text.size();) {
    const auto d = utf8::decode(text, i);
    i += d.length;
    if (utf8::is_apostrophe(d.cp)) {
      current.push_back('\'');
    } else if (utf8::is_letter(d.cp) || utf8::is_digit(d.cp)) {
      utf8::append(current, utf8::to_lower(d.cp));
      has_alnum = true;
    } else {
      flush();
    }
  }
  flush();
  return words;
}

std::vector<SentenceRecord> segment(std::string_view text, const SyllableCounter& counter) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t start = skip_spaces(text, 0);
  std::size_t i = start;
  while (i < text.size()) {
    const auto d = utf8::decode(text, i);
    if (!is_terminator(d.cp)) {
      i += d.length;
      continue;
    }
    const std::size_t run_begin = i;
    std::size_t run_length = 0;
    std::size_t j = i;
    while (j < text.size() && is_terminator(at(text, j))) {
      j += utf8::decode(text, j).length;
      ++run_length;
    }
    while (j < text.size() && is_closing(at(text, j))) j += utf8::decode(text, j).length;
    i = j;
    if (j >= text.size() || !utf8::is_space(at(text, j))) continue;

    const std::size_t next = skip_spaces(text, j);
    if (next >= text.size()) break;
    const char32_t cp = at(text, next);
    if (!(utf8::is_upper(cp) || is_opening(cp) || utf8::is_digit(cp))) continue;
    if (run_length == 1 && text[run_begin] == '.' &&
        ends_with_abbreviation(text, start, run_begin)) {
      continue;
    }
    spans.emplace_back(start, j);
    start = next;
    i = next;
  }
  if (start < text.size()) spans.emplace_back(start, text.size());

  std::vector<SentenceRecord> sentences;
  for (const auto& [begin, end] : spans) {
    const std::string_view piece = trim(text.substr(begin, end - begin));
    if (piece.empty()) continue;
    SentenceRecord record;
    record.index = sentences.size();
    record.text = std::string(piece);
    const auto words = split_words(piece);
    record.word_count = words.size();
    for (const auto& word : words) record.syllable_count += counter.count(word).count;
    sentences.push_back(std::move(record));
  }
  for (auto& s : sentences) s.rel_pos = relative_position(s.index, sentences.size());
  return sentences;
}

TokenizedSentence tokenize(const SentenceRecord& sentence) {
  return {sentence, split_words(sentence.text)};
}

std::vector<TokenizedSentence> tokenize_all(std::span<const SentenceRecord> sentences) {
  std::vector<TokenizedSentence> out;
  out.reserve(sentences.size());
  for (const auto& s : sentences) out.push_back(tokenize(s));
  return out;
}

double flesch_kincaid_grade(double words, double sentences, double syllables) {
  return 0.39 * (words / sentences) + 11.8 * (syllables / words) - 15.59;
}

double flesch_reading_ease(double words, double sentences, double syllables) {
  return 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words);
}

ReadabilityReport readability(std::span<const TokenizedSentence> sentences,
                              std::optional<std::size_t> source_word_count) {
  ReadabilityReport report;
  report.sentence_count = sentences.size();
  for (const auto& s : sentences) {
    report.word_count += s.words.size();
    report.syllable_count += s.sentence.syllable_count;
  }
  if (source_word_count) {
    report.compression_ratio =
        *source_word_count == 0
            ? 0.0
            : static_cast<double>(report.word_count) / static_cast<double>(*source_word_count);
  }
  if (report.word_count == 0) {
    report.syllable_count = 0;
    return report;
  }
  const auto words = static_cast<double>(report.word_count);
  const auto count = static_cast<double>(report.sentence_count);
  const auto syllables = static_cast<double>(report.syllable_count);
  report.avg_sentence_length = words / count;
  report.fk_grade = flesch_kincaid_grade(words, count, syllables);
  report.fre = flesch_reading_ease(words, count, syllables);
  return report;
}

std::map<std::string, std::size_t> word_frequency(std::span<const TokenizedSentence> sentences) {
  std::map<std::string, std::size_t> counts;
  for (const auto& s : sentences) {
    for (const auto& w : s.words) ++counts[w];
  }
  return counts;
}

AnalyzedText analyze_text(std::string_view text, const SyllableCounter& counter,
                          std::optional<std::size_t> source_word_count) {
  AnalyzedText out;
  out.sentences = segment(text, counter);
  const auto tokens = tokenize_all(out.sentences);
  out.report = readability(tokens, source_word_count);
  return out;
}

}  // namespace simpeval
