#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synlint {

class LanguageId {
 public:
  LanguageId() = default;
  // Lowercases; throws Error(SchemaError) when empty.
  explicit LanguageId(std::string_view code);

  const std::string& str() const noexcept { return code_; }
  bool empty() const noexcept { return code_.empty(); }

  auto operator<=>(const LanguageId&) const = default;

 private:
  std::string code_;
};

class SynsetId {
 public:
  SynsetId() = default;
  explicit SynsetId(std::string id);

  const std::string& str() const noexcept { return id_; }
  bool empty() const noexcept { return id_.empty(); }

  auto operator<=>(const SynsetId&) const = default;

 private:
  std::string id_;
};

enum class PartOfSpeech : char { Noun = 'n', Verb = 'v', Adjective = 'a', Adverb = 'r' };

std::optional<PartOfSpeech> parse_pos(std::string_view tag);
char pos_tag(PartOfSpeech pos);

// A word of one language and part of speech. The form is always stored normalized.
class Lemma {
 public:
  Lemma() = default;
  Lemma(LanguageId lang, std::string_view form, PartOfSpeech pos);

  const LanguageId& lang() const noexcept { return lang_; }
  const std::string& form() const noexcept { return form_; }
  PartOfSpeech pos() const noexcept { return pos_; }

  std::string to_string() const;  // "form#pos@lang"

  auto operator<=>(const Lemma&) const = default;

 private:
  LanguageId lang_;
  std::string form_;
  PartOfSpeech pos_ = PartOfSpeech::Noun;
};

// (lemma, synset): a word sense. Two senses are synonymous iff they share the synset.
struct Sense {
  Lemma lemma;
  SynsetId synset;

  std::string to_string() const;  // "form#pos@lang/synset"

  auto operator<=>(const Sense&) const = default;
};

inline bool senses_synonymous(const Sense& a, const Sense& b) { return a.synset == b.synset; }

struct MultiSynset {
  SynsetId id;
  PartOfSpeech pos = PartOfSpeech::Noun;
  std::map<LanguageId, std::vector<std::string>> members;
  std::set<LanguageId> gaps;

  bool lexicalizes(const LanguageId& lang) const { return members.count(lang) != 0; }
  bool operator==(const MultiSynset&) const = default;
};

// One broken structural property of a synset collection.
struct Violation {
  enum class Property {
    UniqueId,          // synset ids are unique
    MemberGapDisjoint, // a language is never both member and gap
    NonEmpty,          // every listed member set is non-empty; one language lexicalized
    OneSynsetPerSense, // a (lemma, synset) pair occurs once
  };
  Property property;
  SynsetId synset;
  std::string message;
};

std::string_view to_string(Violation::Property property);

// Every structural violation in the raw records, in record order. Member forms are
// compared after normalization.
std::vector<Violation> find_violations(const std::vector<MultiSynset>& records);

enum class WitnessKind { Member, Gap, Uncovered };

struct WitnessEntry {
  SynsetId synset;
  WitnessKind kind;
  std::vector<Lemma> translations;  // non-empty iff kind == Member
};

// Immutable multilingual lexicon with a lemma -> synsets index.
class Lexicon {
 public:
  using Index = std::map<Lemma, std::set<SynsetId>>;
  using LemmaPair = std::pair<Lemma, Lemma>;

  Lexicon() = default;

  // Normalizes member forms, sorts member lists, and builds the index. Throws
  // Error(DuplicateSynsetId | MemberGapConflict | EmptySynset | DuplicateSense).
  static Lexicon build(std::vector<MultiSynset> records);

  std::size_t size() const noexcept { return synsets_.size(); }
  bool empty() const noexcept { return synsets_.empty(); }

  const std::map<SynsetId, MultiSynset>& synsets() const noexcept { return synsets_; }
  const Index& index() const noexcept { return index_; }

  const MultiSynset* find(const SynsetId& id) const;
  // Throws Error(UnresolvedSynset).
  const MultiSynset& at(const SynsetId& id) const;

  std::set<LanguageId> languages() const;
  std::vector<Lemma> lemmas(const LanguageId& lang) const;

  // Ordered by synset id; empty for unknown lemmas.
  const std::set<SynsetId>& synsets_of(const Lemma& lemma) const;
  bool contains(const Lemma& lemma) const { return index_.count(lemma) != 0; }
  bool is_member(const Lemma& lemma, const SynsetId& synset) const;

  // Throw Error(UnknownLemma) for lemmas not in the lexicon.
  bool is_monosemous(const Lemma& lemma) const;
  bool is_polysemous(const Lemma& lemma) const;

  // Both require same language and POS, else Error(LanguageMismatch).
  bool near_synonyms(const Lemma& a, const Lemma& b) const;
  // Additionally throws Error(UnknownLemma) when either lemma is unknown.
  bool absolute_synonyms(const Lemma& a, const Lemma& b) const;

  // Unordered intra-language pairs with identical synset sets, sorted.
  std::vector<LemmaPair> absolute_synonym_pairs(const LanguageId& lang) const;
  // Lemmas of `lang` having at least one absolute synonym.
  std::size_t words_with_absolute_synonym(const LanguageId& lang) const;
  // (e, f) pairs with identical synset sets; throws Error(SameLanguage) when e == f.
  std::vector<LemmaPair> absolute_translation_pairs(const LanguageId& e,
                                                    const LanguageId& f) const;

  // One entry per shared synset of two near-synonyms; throws Error(NotNearSynonyms).
  std::vector<WitnessEntry> shared_translation_witness(const Lemma& a, const Lemma& b,
                                                       const LanguageId& target) const;

  // Monolingual projection; synsets without members in `lang` are dropped.
  Lexicon restrict_to_language(const LanguageId& lang) const;

  // Rebuilds the inverse index from synset membership and compares.
  bool index_consistent() const;

  // Canonical records, sorted by id.
  std::vector<MultiSynset> records() const;

  // Copy with `form` added to synset `id` for `lang` (and `lang` removed from gaps).
  Lexicon with_member(const SynsetId& id, const Lemma& lemma) const;

 private:
  static Index build_index(const std::map<SynsetId, MultiSynset>& synsets);

  std::map<SynsetId, MultiSynset> synsets_;
  Index index_;
};

inline Lexicon build_lexicon(std::vector<MultiSynset> records) {
  return Lexicon::build(std::move(records));
}

}  // namespace synlint
