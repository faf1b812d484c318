#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"

namespace synlint {

// SrcToTgt takes each record's src token as the source of triples and quads.
enum class Direction { SrcToTgt, TgtToSrc };

std::string_view to_string(Direction direction);  // "st" / "ts"
std::optional<Direction> parse_direction(std::string_view text);
inline Side source_side(Direction d) { return d == Direction::SrcToTgt ? Side::Src : Side::Tgt; }
inline Side target_side(Direction d) { return d == Direction::SrcToTgt ? Side::Tgt : Side::Src; }

// A witnessing token on the source side of an instance.
struct Provenance {
  std::string sent;
  int tok = 0;
  auto operator<=>(const Provenance&) const = default;
};

// Two distinct source senses aligned to one target sense.
struct TripleInstance {
  Sense src_a;  // src_a < src_b
  Sense src_b;
  Sense tgt;
  std::vector<Provenance> support_a;
  std::vector<Provenance> support_b;

  std::vector<Provenance> support() const;
  bool operator==(const TripleInstance&) const = default;
};

struct SensePair {
  Sense src;
  Sense tgt;
  auto operator<=>(const SensePair&) const = default;
};

// Two aligned pairs with distinct source senses and distinct but synonymous targets.
struct QuadInstance {
  SensePair pair_1;  // pair_1 < pair_2
  SensePair pair_2;
  std::vector<Provenance> support_1;
  std::vector<Provenance> support_2;

  std::vector<Provenance> support() const;
  bool operator==(const QuadInstance&) const = default;
};

// Two distinct source words aligned to one target word.
struct WordTriple {
  Lemma e_x;  // e_x < e_y
  Lemma e_y;
  Lemma f_z;
  bool f_polysemous = false;
  bool e_near_synonyms = false;
  std::vector<Provenance> support_x;
  std::vector<Provenance> support_y;

  std::vector<Provenance> support() const;
  bool operator==(const WordTriple&) const = default;
};

struct ConsistencyIssue {
  enum class Kind { Mismatch, Membership };
  Kind kind = Kind::Mismatch;
  // Mismatch: [src, tgt] of the record. Membership: the offending token's sense.
  std::vector<Sense> senses;
  Provenance where;
  bool operator==(const ConsistencyIssue&) const = default;
};

enum class ExceptionKind { Triple, Quad, Word, Consistency };
std::string_view to_string(ExceptionKind kind);
std::string_view to_string(ConsistencyIssue::Kind kind);

struct ExceptionRecord {
  ExceptionKind kind = ExceptionKind::Triple;
  Direction direction = Direction::SrcToTgt;
  std::variant<TripleInstance, QuadInstance, WordTriple, ConsistencyIssue> instance;

  std::vector<Provenance> support() const;
  bool operator==(const ExceptionRecord&) const = default;
};

// The on-disk form of an exception, as read back by the scorer.
struct ExceptionLine {
  struct SenseRef {
    Lemma lemma;
    std::optional<SynsetId> synset;  // absent for word-level exceptions
    bool operator==(const SenseRef&) const = default;
  };
  std::string kind;
  std::string direction;
  std::string issue;  // consistency exceptions only
  std::vector<SenseRef> senses;
  std::vector<Provenance> support;

  bool operator==(const ExceptionLine&) const = default;
};

ExceptionLine to_line(const ExceptionRecord& record);
std::string serialize(const ExceptionLine& line);
void write_exceptions(std::ostream& out, const std::vector<ExceptionRecord>& records);
ParseResult<ExceptionLine> parse_exception_file(std::istream& in,
                                                ParseMode mode = ParseMode::Strict);

// Throws Error(UnresolvedSynset) for the first token whose synset is not in `lex`.
void require_resolved(const std::vector<AlignmentRecord>& records, const Lexicon& lex);
// Splits off records that reference unknown synsets; returns how many were dropped.
std::size_t drop_unresolved(std::vector<AlignmentRecord>& records, const Lexicon& lex);

// Sorted by (src_a, src_b, tgt). Throws Error(UnresolvedSynset).
std::vector<TripleInstance> enumerate_cor1_triples(const std::vector<AlignmentRecord>& records,
                                                   const Lexicon& lex, Direction direction);
// Sorted by (pair_1, pair_2). Identical target senses are left to the triple check.
std::vector<QuadInstance> enumerate_thm1_quads(const std::vector<AlignmentRecord>& records,
                                               const Lexicon& lex, Direction direction);

std::vector<ExceptionRecord> detect_sense_exceptions(const std::vector<TripleInstance>& triples,
                                                     Direction direction);
std::vector<ExceptionRecord> detect_sense_exceptions(const std::vector<QuadInstance>& quads,
                                                     Direction direction);

struct WordCategories {
  std::size_t polysemy_only = 0;
  std::size_t synonymy_only = 0;
  std::size_t both = 0;
  std::size_t neither = 0;  // exceptions
  bool operator==(const WordCategories&) const = default;
};

struct WordCheck {
  std::vector<WordTriple> triples;
  WordCategories categories;
  std::vector<ExceptionRecord> exceptions;
};

// Enumerates distinct word triples (unordered source-word pair) and tallies whether the
// target word is polysemous and/or the source words are near-synonyms.
WordCheck check_word_theorem(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                             Direction direction = Direction::SrcToTgt);

// Flags records whose two synsets differ (MISMATCH) and tokens whose lemma is not in
// their annotated synset (MEMBERSHIP). Unknown synsets count as MEMBERSHIP issues.
// `direction` only labels the records and picks the provenance side for MISMATCH.
std::vector<ExceptionRecord> check_alignment_consistency(
    const std::vector<AlignmentRecord>& records, const Lexicon& lex,
    Direction direction = Direction::SrcToTgt);

struct SubstitutionPair {
  std::string sent;
  int tok = 0;
  Lemma replaced;
  Lemma replacement;
  std::string original;
  std::string modified;
  bool operator==(const SubstitutionPair&) const = default;
};

// Triple exceptions where exactly one source sense's synset also holds the other source
// word yield one sentence pair; the witnessing sentence is drawn with `seed`.
// Throws Error(MissingSentence) when a drawn sentence or token is absent.
std::vector<SubstitutionPair> generate_substitution_candidates(
    const std::vector<ExceptionRecord>& exceptions, const std::vector<Sentence>& sentences,
    const Lexicon& lex, std::uint64_t seed);

std::string serialize(const SubstitutionPair& pair);

struct CheckCounts {
  std::size_t instances = 0;
  std::size_t exceptions = 0;
  bool operator==(const CheckCounts&) const = default;
};

struct DirectionReport {
  std::optional<CheckCounts> triples;
  std::optional<CheckCounts> quads;
  std::optional<CheckCounts> word;
  std::optional<WordCategories> word_categories;
};

struct VerificationReport {
  std::map<Direction, DirectionReport> directions;
  std::optional<CheckCounts> consistency;
  std::size_t mismatch = 0;
  std::size_t membership = 0;

  std::size_t total_exceptions() const;
};

struct DetectOptions {
  bool triples = true;
  bool quads = true;
  bool word = true;
  bool consistency = true;
  std::vector<Direction> directions{Direction::SrcToTgt, Direction::TgtToSrc};
};

struct DetectionResult {
  std::vector<ExceptionRecord> exceptions;
  VerificationReport report;
};

// Consistency runs once (labelled with the first direction); other checks per direction.
DetectionResult run_detection(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                              const DetectOptions& options);

std::string report_json(const VerificationReport& report, int indent = 2);
std::string report_table(const VerificationReport& report);

}  // namespace synlint
