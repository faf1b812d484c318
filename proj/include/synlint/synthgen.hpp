#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/repair.hpp"
#include "synlint/verify.hpp"

namespace synlint {

enum class CorruptSide { Src, Tgt, Both };

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t n_synsets = 1000;
  // The first language is lexicalized in every synset; the first two form the bitext.
  std::vector<LanguageId> languages{LanguageId("en"), LanguageId("it")};
  double gap_rate = 0.1;      // per (synset, non-anchor language)
  double synonym_mean = 1.5;  // mean members per synset per lexicalized language
  // Exponent of the power law over senses per word; the chance a member slot coins a
  // new word is 1 - 1/(shape - 1), otherwise an existing word is reused in proportion
  // to how many synsets already hold it.
  double polysemy_shape = 4.0;
  std::size_t n_alignments = 10000;
  double err_reannotate = 0.0;
  double err_misalign = 0.0;
  CorruptSide corrupt_side = CorruptSide::Src;
  // Keeps injected errors pairwise non-interacting: no two errors touch a common synset.
  bool isolated = false;

  // Throws Error(InvalidConfig).
  void validate() const;
};

// Throws Error(InvalidConfig) on unknown fields, wrong types or invalid values.
GenConfig parse_config(std::istream& in);
std::string serialize(const GenConfig& config);

// Throws Error(InvalidConfig).
Lexicon generate_lexicon(const GenConfig& config);

struct Bitext {
  std::vector<AlignmentRecord> records;
  std::vector<Sentence> sentences;  // source-language sentences, one per sent id
};

// Every pair draws both senses from one synset lexicalized in both bitext languages.
// Source and target tokens of a pair share one token index. Throws
// Error(InsufficientLexicalization) when no synset covers both languages.
Bitext generate_bitext(const Lexicon& lex, const GenConfig& config);

enum class InjectedError { Reannotate, Misalign };

struct TruthEntry {
  InjectedError type = InjectedError::Reannotate;
  TokenRef token;
  SynsetId true_synset;
  SynsetId corrupt_synset;
  bool operator==(const TruthEntry&) const = default;
};

using TruthLog = std::vector<TruthEntry>;

struct Corruption {
  std::vector<AlignmentRecord> records;
  TruthLog truth;
};

// At most one error per record: re-annotation to another synset of the same word (the
// word must be polysemous) or re-linking the target to a word of another synset.
Corruption inject_errors(std::vector<AlignmentRecord> records, const Lexicon& lex,
                         const GenConfig& config);

std::string serialize(const TruthEntry& entry);
void write_truth(std::ostream& out, const TruthLog& truth);
ParseResult<TruthEntry> parse_truth_file(std::istream& in, ParseMode mode = ParseMode::Strict);

// For each truth entry, whether its corrupted record takes part in at least one premise
// instance of the enabled checks whose conclusion fails. Pairwise scan over the corpus.
std::vector<bool> detectability_census(const std::vector<AlignmentRecord>& records,
                                       const Lexicon& lex, const TruthLog& truth,
                                       const DetectOptions& options);

struct Score {
  double precision = 1.0;
  double recall = 1.0;
  double accuracy = 1.0;

  std::size_t flagged = 0;      // exceptions
  std::size_t true_flags = 0;   // exceptions whose support holds a corrupted token
  std::size_t injected = 0;
  std::size_t detectable = 0;
  std::size_t detected = 0;     // detectable errors named by some exception

  std::size_t matched = 0;      // suggestions on corrupted tokens
  std::size_t correct = 0;      // ... that restore the true synset
  std::size_t unmatched = 0;    // suggestions on clean tokens
};

// Exceptions and truth entries are matched on (sent, tok). Without a census every
// injected error counts as detectable. Empty denominators score 1.
Score score_detection(const std::vector<ExceptionLine>& exceptions, const TruthLog& truth,
                      const std::vector<bool>* detectable = nullptr);
Score score_correction(const std::vector<CorrectionSuggestion>& suggestions, const TruthLog& truth);

std::string score_json(const Score& score, int indent = 2);

}  // namespace synlint
