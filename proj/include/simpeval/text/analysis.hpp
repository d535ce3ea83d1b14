#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simpeval/text/syllables.hpp"
#include "simpeval/types.hpp"

namespace simpeval {

struct TokenizedSentence {
  SentenceRecord sentence;
  std::vector<std::string> words;  // lowercase, punctuation stripped
};

// Rule-based sentence splitter. A boundary follows a run of . ? ! or U+2026
// (plus any closing quotes/brackets) when the next non-space character is an
// uppercase letter, an opening quote/bracket or a digit. A single '.' ending
// a known abbreviation ("Dr.", "e.g.", ...) never splits.
// Word and syllable counts are filled using `counter`.
std::vector<SentenceRecord> segment(std::string_view text, const SyllableCounter& counter = {});

// Maximal runs of letters, digits and apostrophes, lowercased. Runs made of
// apostrophes alone are dropped; U+2019 is folded to '\''.
std::vector<std::string> split_words(std::string_view text);

TokenizedSentence tokenize(const SentenceRecord& sentence);
std::vector<TokenizedSentence> tokenize_all(std::span<const SentenceRecord> sentences);

double flesch_kincaid_grade(double words, double sentences, double syllables);
double flesch_reading_ease(double words, double sentences, double syllables);

// Syllable totals come from each sentence's syllable_count. An input without
// a single word yields an all-zero report.
ReadabilityReport readability(std::span<const TokenizedSentence> sentences,
                              std::optional<std::size_t> source_word_count = std::nullopt);

std::map<std::string, std::size_t> word_frequency(std::span<const TokenizedSentence> sentences);

struct AnalyzedText {
  std::vector<SentenceRecord> sentences;
  ReadabilityReport report;
};

// segment -> tokenize -> readability in one pass.
AnalyzedText analyze_text(std::string_view text, const SyllableCounter& counter = {},
                          std::optional<std::size_t> source_word_count = std::nullopt);

}  // namespace simpeval
