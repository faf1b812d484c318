#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "synlint/error.hpp"
#include "synlint/lexicon.hpp"

namespace synlint {

enum class ParseMode { Strict, Lenient };

struct Diagnostic {
  std::size_t line = 0;
  ErrorCode code = ErrorCode::SyntaxError;
  std::string field;
  std::string message;
};

template <class T>
struct ParseResult {
  std::vector<T> records;
  std::vector<Diagnostic> diagnostics;
};

enum class Side { Src, Tgt };

std::string_view to_string(Side side);

struct SenseNumber {
  int value = 0;
  auto operator<=>(const SenseNumber&) const = default;
};

// A token's sense annotation is either a synset id or a version-specific sense number
// awaiting resolution. Zero tags means unannotated; several means multi-sense.
using SenseTag = std::variant<SynsetId, SenseNumber>;

struct AnnotatedToken {
  Lemma word;
  std::vector<SenseTag> tags;
  int tok = 0;

  // Exactly one tag, and it is a synset id.
  bool resolved() const;
  // Precondition: resolved().
  const SynsetId& synset() const;
  Sense sense() const { return {word, synset()}; }

  bool operator==(const AnnotatedToken&) const = default;
};

struct AlignmentRecord {
  std::string sent;
  AnnotatedToken src;
  AnnotatedToken tgt;
  std::size_t line = 0;  // provenance; not serialized

  const AnnotatedToken& side(Side s) const { return s == Side::Src ? src : tgt; }
  AnnotatedToken& side(Side s) { return s == Side::Src ? src : tgt; }

  // Equality ignores provenance.
  bool operator==(const AlignmentRecord& o) const {
    return sent == o.sent && src == o.src && tgt == o.tgt;
  }
};

struct SenseKey {
  Lemma lemma;
  int sense_number = 1;
};

struct SenseIndexEntry {
  Lemma lemma;
  std::vector<SynsetId> senses;  // senses[k - 1] is sense number k

  bool operator==(const SenseIndexEntry&) const = default;
};

// Maps numbered senses of a wordnet version onto synset ids.
class SenseIndex {
 public:
  SenseIndex() = default;
  // Throws Error(SchemaError) when a lemma repeats or lists one synset twice.
  explicit SenseIndex(const std::vector<SenseIndexEntry>& entries);

  // Throws Error(UnresolvedKey) for unknown lemmas or out-of-range numbers.
  const SynsetId& resolve(const SenseKey& key) const;
  const std::map<Lemma, std::vector<SynsetId>>& entries() const noexcept { return senses_; }

 private:
  std::map<Lemma, std::vector<SynsetId>> senses_;
};

inline const SynsetId& resolve_sense_key(const SenseIndex& index, const SenseKey& key) {
  return index.resolve(key);
}

struct Sentence {
  std::string sent;
  LanguageId lang;
  std::vector<std::string> tokens;

  bool operator==(const Sentence&) const = default;
};

// Strict mode throws ParseError at the first bad line; lenient mode skips it and
// records a diagnostic. Blank lines are ignored.
ParseResult<MultiSynset> parse_lexicon_file(std::istream& in, ParseMode mode = ParseMode::Strict);
ParseResult<AlignmentRecord> parse_alignment_file(std::istream& in,
                                                  ParseMode mode = ParseMode::Strict);
ParseResult<SenseIndexEntry> parse_sense_index_file(std::istream& in,
                                                    ParseMode mode = ParseMode::Strict);
ParseResult<Sentence> parse_sentence_file(std::istream& in, ParseMode mode = ParseMode::Strict);

// One canonical line each (sorted keys, sorted member lists), no trailing newline.
std::string serialize(const MultiSynset& synset);
std::string serialize(const AlignmentRecord& record);
std::string serialize(const SenseIndexEntry& entry);
std::string serialize(const Sentence& sentence);

void write_lexicon(std::ostream& out, const std::vector<MultiSynset>& synsets);
void write_lexicon(std::ostream& out, const Lexicon& lex);
void write_alignments(std::ostream& out, const std::vector<AlignmentRecord>& records);
void write_sense_index(std::ostream& out, const std::vector<SenseIndexEntry>& entries);
void write_sentences(std::ostream& out, const std::vector<Sentence>& sentences);

// Replaces resolvable sense numbers with synset ids. Unresolvable numbers stay in
// place (the filter drops them) and each yields a diagnostic.
ParseResult<AlignmentRecord> resolve_alignments(std::vector<AlignmentRecord> records,
                                                const SenseIndex& index);

struct FilterReport {
  std::size_t total = 0;
  std::size_t kept = 0;
  std::size_t dropped_multi_sense = 0;
  std::size_t dropped_missing = 0;
  std::size_t dropped_unresolved = 0;
  std::size_t dropped_pos_mismatch = 0;

  std::size_t dropped() const {
    return dropped_multi_sense + dropped_missing + dropped_unresolved + dropped_pos_mismatch;
  }
};

struct FilterResult {
  std::vector<AlignmentRecord> records;
  FilterReport report;
};

// Drops multi-sense tokens, missing annotations, leftover sense numbers and POS
// mismatches, in that order of precedence; each dropped record counts once.
FilterResult filter_alignments(std::vector<AlignmentRecord> records);

}  // namespace synlint
