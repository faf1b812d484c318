#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/verify.hpp"

namespace synlint {

struct TokenRef {
  std::string sent;
  Side side = Side::Src;
  int tok = 0;
  auto operator<=>(const TokenRef&) const = default;
};

enum class SuggestionKind { Correct, Add };
std::string_view to_string(SuggestionKind kind);

// CORRECT re-annotates `token` from synset `from` to `to`; the token's word is a member
// of `to`. ADD inserts the token's word (`lemma`) into `to`, then re-annotates.
struct CorrectionSuggestion {
  SuggestionKind kind = SuggestionKind::Correct;
  TokenRef token;
  SynsetId from;
  SynsetId to;
  std::string lemma;
  int support = 1;  // independent exceptions implying this suggestion

  auto operator<=>(const CorrectionSuggestion&) const = default;
};

// A source sense aligned to a target sense, with the source tokens witnessing it.
struct SenseAlignment {
  Sense src;
  Sense tgt;
  Side source_side = Side::Src;
  std::vector<Provenance> tokens;
};

// The error-correction step for one exception: when the source senses are not
// synonymous, every source sense outside the targets' synset P is either corrected to
// (word, P) if its word belongs to P, or its word is proposed for addition to P.
// Emits one suggestion per witnessing token. Throws Error(PremiseViolation) unless the
// two target senses share a synset.
std::vector<CorrectionSuggestion> suggest_corrections(const SenseAlignment& pair_1,
                                                      const SenseAlignment& pair_2,
                                                      const Lexicon& lex);

struct Conflict {
  TokenRef token;
  std::vector<CorrectionSuggestion> competing;
  bool operator==(const Conflict&) const = default;
};

struct RepairReport {
  std::size_t correct = 0;
  std::size_t add = 0;
  std::size_t applied = 0;
  std::vector<Conflict> conflicts;   // tokens with suggestions toward several synsets
  std::vector<Conflict> unresolved;  // conflicts the policy left unapplied

  bool has_unresolved() const { return !unresolved.empty(); }
};

struct RepairRun {
  std::vector<CorrectionSuggestion> suggestions;  // merged by (token, to), sorted
  RepairReport report;
};

// Runs triple and quad enumeration in `direction`, feeds each exception to
// suggest_corrections and merges the results by (token, target synset).
RepairRun run_repair(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                     Direction direction = Direction::SrcToTgt);

enum class ConflictPolicy { Skip, HighestSupport };

struct RepairPolicy {
  int min_support = 1;
  bool allow_add = true;
  ConflictPolicy conflict = ConflictPolicy::Skip;
};

struct RepairOutcome {
  std::vector<AlignmentRecord> records;
  Lexicon lexicon;
  RepairReport report;
};

// Applies suggestions to copies of the corpus and lexicon. Tokens whose eligible
// suggestions disagree are left alone and listed in report.unresolved unless the
// policy picks a unique highest-support suggestion.
RepairOutcome apply_corrections(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                                const std::vector<CorrectionSuggestion>& suggestions,
                                const RepairPolicy& policy = {});

std::string serialize(const CorrectionSuggestion& suggestion);
void write_suggestions(std::ostream& out, const std::vector<CorrectionSuggestion>& suggestions);
ParseResult<CorrectionSuggestion> parse_suggestion_file(std::istream& in,
                                                        ParseMode mode = ParseMode::Strict);

std::string report_json(const RepairReport& report, int indent = 2);

}  // namespace synlint
