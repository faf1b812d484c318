#include "synlint/lexicon.hpp"

#include <algorithm>

#include "synlint/error.hpp"
#include "synlint/text.hpp"

namespace synlint {

LanguageId::LanguageId(std::string_view code) : code_(normalize_language(code)) {
  if (code_.empty()) throw Error(ErrorCode::SchemaError, "empty language code");
}

SynsetId::SynsetId(std::string id) : id_(std::move(id)) {
  if (id_.empty()) throw Error(ErrorCode::SchemaError, "empty synset id");
}

std::optional<PartOfSpeech> parse_pos(std::string_view tag) {
  if (tag.size() != 1) return std::nullopt;
  switch (tag[0]) {
    case 'n': return PartOfSpeech::Noun;
    case 'v': return PartOfSpeech::Verb;
    case 'a': return PartOfSpeech::Adjective;
    case 'r': return PartOfSpeech::Adverb;
    default: return std::nullopt;
  }
}

char pos_tag(PartOfSpeech pos) { return static_cast<char>(pos); }

Lemma::Lemma(LanguageId lang, std::string_view form, PartOfSpeech pos)
    : lang_(std::move(lang)), form_(normalize_form(form)), pos_(pos) {
  if (form_.empty()) throw Error(ErrorCode::SchemaError, "empty lemma form");
}

std::string Lemma::to_string() const {
  return form_ + '#' + pos_tag(pos_) + '@' + lang_.str();
}

std::string Sense::to_string() const { return lemma.to_string() + '/' + synset.str(); }

std::string_view to_string(Violation::Property property) {
  switch (property) {
    case Violation::Property::UniqueId: return "unique-synset-id";
    case Violation::Property::MemberGapDisjoint: return "member-gap-disjoint";
    case Violation::Property::NonEmpty: return "non-empty-synset";
    case Violation::Property::OneSynsetPerSense: return "one-synset-per-sense";
  }
  return "unknown";
}

std::vector<Violation> find_violations(const std::vector<MultiSynset>& records) {
  std::vector<Violation> out;
  std::set<SynsetId> seen;
  for (const auto& rec : records) {
    using P = Violation::Property;
    if (!seen.insert(rec.id).second)
      out.push_back({P::UniqueId, rec.id, "duplicate synset id " + rec.id.str()});
    bool lexicalized = false;
    for (const auto& [lang, forms] : rec.members) {
      if (rec.gaps.count(lang))
        out.push_back({P::MemberGapDisjoint, rec.id,
                       "language " + lang.str() + " is both member and gap in " + rec.id.str()});
      if (forms.empty()) {
        out.push_back({P::NonEmpty, rec.id,
                       "empty member list for " + lang.str() + " in " + rec.id.str()});
        continue;
      }
      lexicalized = true;
      std::set<std::string> normalized;
      for (const auto& form : forms) {
        std::string canon = normalize_form(form);
        if (canon.empty()) {
          out.push_back({P::NonEmpty, rec.id, "empty lemma form in " + rec.id.str()});
        } else if (!normalized.insert(canon).second) {
          out.push_back({P::OneSynsetPerSense, rec.id,
                         "sense " + canon + "@" + lang.str() + " listed twice in " +
                             rec.id.str()});
        }
      }
    }
    if (!lexicalized)
      out.push_back({P::NonEmpty, rec.id, "synset " + rec.id.str() + " lexicalizes no language"});
  }
  return out;
}

namespace {

ErrorCode code_for(Violation::Property property) {
  switch (property) {
    case Violation::Property::UniqueId: return ErrorCode::DuplicateSynsetId;
    case Violation::Property::MemberGapDisjoint: return ErrorCode::MemberGapConflict;
    case Violation::Property::NonEmpty: return ErrorCode::EmptySynset;
    case Violation::Property::OneSynsetPerSense: return ErrorCode::DuplicateSense;
  }
  return ErrorCode::SchemaError;
}

const std::set<SynsetId>& empty_synset_set() {
  static const std::set<SynsetId> empty;
  return empty;
}

void require_comparable(const Lemma& a, const Lemma& b) {
  if (a.lang() != b.lang() || a.pos() != b.pos())
    throw Error(ErrorCode::LanguageMismatch,
                "lemmas differ in language or POS: " + a.to_string() + ", " + b.to_string());
}

// Groups the lemmas of one language by their exact synset set.
std::map<std::set<SynsetId>, std::vector<Lemma>> bucket_by_synsets(const Lexicon::Index& index,
                                                                   const LanguageId& lang) {
  std::map<std::set<SynsetId>, std::vector<Lemma>> buckets;
  for (const auto& [lemma, ids] : index)
    if (lemma.lang() == lang) buckets[ids].push_back(lemma);
  return buckets;
}

}  // namespace

Lexicon Lexicon::build(std::vector<MultiSynset> records) {
  auto violations = find_violations(records);
  if (!violations.empty())
    throw Error(code_for(violations.front().property), violations.front().message);

  Lexicon lex;
  for (auto& rec : records) {
    for (auto& [lang, forms] : rec.members) {
      for (auto& form : forms) form = normalize_form(form);
      std::sort(forms.begin(), forms.end());
    }
    SynsetId id = rec.id;
    lex.synsets_.emplace(std::move(id), std::move(rec));
  }
  lex.index_ = build_index(lex.synsets_);
  return lex;
}

Lexicon::Index Lexicon::build_index(const std::map<SynsetId, MultiSynset>& synsets) {
  Index index;
  for (const auto& [id, rec] : synsets)
    for (const auto& [lang, forms] : rec.members)
      for (const auto& form : forms) index[Lemma(lang, form, rec.pos)].insert(id);
  return index;
}

const MultiSynset* Lexicon::find(const SynsetId& id) const {
  auto it = synsets_.find(id);
  return it == synsets_.end() ? nullptr : &it->second;
}

const MultiSynset& Lexicon::at(const SynsetId& id) const {
  if (const auto* rec = find(id)) return *rec;
  throw Error(ErrorCode::UnresolvedSynset, "unknown synset id " + id.str());
}

std::set<LanguageId> Lexicon::languages() const {
  std::set<LanguageId> out;
  for (const auto& [id, rec] : synsets_) {
    for (const auto& [lang, forms] : rec.members) out.insert(lang);
    out.insert(rec.gaps.begin(), rec.gaps.end());
  }
  return out;
}

std::vector<Lemma> Lexicon::lemmas(const LanguageId& lang) const {
  std::vector<Lemma> out;
  for (const auto& [lemma, ids] : index_)
    if (lemma.lang() == lang) out.push_back(lemma);
  return out;
}

const std::set<SynsetId>& Lexicon::synsets_of(const Lemma& lemma) const {
  auto it = index_.find(lemma);
  return it == index_.end() ? empty_synset_set() : it->second;
}

bool Lexicon::is_member(const Lemma& lemma, const SynsetId& synset) const {
  return synsets_of(lemma).count(synset) != 0;
}

bool Lexicon::is_monosemous(const Lemma& lemma) const {
  auto it = index_.find(lemma);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLemma, "unknown lemma " + lemma.to_string());
  return it->second.size() == 1;
}

bool Lexicon::is_polysemous(const Lemma& lemma) const { return !is_monosemous(lemma); }

bool Lexicon::near_synonyms(const Lemma& a, const Lemma& b) const {
  require_comparable(a, b);
  const auto& sa = synsets_of(a);
  const auto& sb = synsets_of(b);
  auto ia = sa.begin();
  auto ib = sb.begin();
  while (ia != sa.end() && ib != sb.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia; else ++ib;
  }
  return false;
}

bool Lexicon::absolute_synonyms(const Lemma& a, const Lemma& b) const {
  require_comparable(a, b);
  if (!contains(a)) throw Error(ErrorCode::UnknownLemma, "unknown lemma " + a.to_string());
  if (!contains(b)) throw Error(ErrorCode::UnknownLemma, "unknown lemma " + b.to_string());
  return synsets_of(a) == synsets_of(b);
}

std::vector<Lexicon::LemmaPair> Lexicon::absolute_synonym_pairs(const LanguageId& lang) const {
  std::vector<LemmaPair> out;
  for (const auto& [key, group] : bucket_by_synsets(index_, lang))
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j) out.emplace_back(group[i], group[j]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Lexicon::words_with_absolute_synonym(const LanguageId& lang) const {
  std::size_t count = 0;
  for (const auto& [key, group] : bucket_by_synsets(index_, lang))
    if (group.size() > 1) count += group.size();
  return count;
}

std::vector<Lexicon::LemmaPair> Lexicon::absolute_translation_pairs(const LanguageId& e,
                                                                   const LanguageId& f) const {
  if (e == f) throw Error(ErrorCode::SameLanguage, "translation pairs need two languages");
  auto left = bucket_by_synsets(index_, e);
  auto right = bucket_by_synsets(index_, f);
  std::vector<LemmaPair> out;
  for (const auto& [key, es] : left) {
    auto it = right.find(key);
    if (it == right.end()) continue;
    for (const auto& a : es)
      for (const auto& b : it->second) out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<WitnessEntry> Lexicon::shared_translation_witness(const Lemma& a, const Lemma& b,
                                                              const LanguageId& target) const {
  if (!near_synonyms(a, b))
    throw Error(ErrorCode::NotNearSynonyms,
                a.to_string() + " and " + b.to_string() + " share no synset");
  const auto& sb = synsets_of(b);
  std::vector<WitnessEntry> out;
  for (const auto& id : synsets_of(a)) {
    if (!sb.count(id)) continue;
    const auto& rec = synsets_.at(id);
    WitnessEntry entry{id, WitnessKind::Uncovered, {}};
    if (auto it = rec.members.find(target); it != rec.members.end()) {
      entry.kind = WitnessKind::Member;
      for (const auto& form : it->second) entry.translations.emplace_back(target, form, rec.pos);
    } else if (rec.gaps.count(target)) {
      entry.kind = WitnessKind::Gap;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Lexicon Lexicon::restrict_to_language(const LanguageId& lang) const {
  Lexicon out;
  for (const auto& [id, rec] : synsets_) {
    auto it = rec.members.find(lang);
    if (it == rec.members.end()) continue;
    MultiSynset mono{id, rec.pos, {{lang, it->second}}, {}};
    out.synsets_.emplace(id, std::move(mono));
  }
  for (const auto& [lemma, ids] : index_)
    if (lemma.lang() == lang) out.index_.emplace(lemma, ids);
  return out;
}

bool Lexicon::index_consistent() const { return build_index(synsets_) == index_; }

std::vector<MultiSynset> Lexicon::records() const {
  std::vector<MultiSynset> out;
  out.reserve(synsets_.size());
  for (const auto& [id, rec] : synsets_) out.push_back(rec);
  return out;
}

Lexicon Lexicon::with_member(const SynsetId& id, const Lemma& lemma) const {
  Lexicon out = *this;
  auto it = out.synsets_.find(id);
  if (it == out.synsets_.end())
    throw Error(ErrorCode::UnresolvedSynset, "unknown synset id " + id.str());
  auto& rec = it->second;
  if (rec.pos != lemma.pos())
    throw Error(ErrorCode::LanguageMismatch,
                "cannot add " + lemma.to_string() + " to synset " + id.str() + " of another POS");
  auto& forms = rec.members[lemma.lang()];
  auto pos = std::lower_bound(forms.begin(), forms.end(), lemma.form());
  if (pos != forms.end() && *pos == lemma.form()) return out;
  forms.insert(pos, lemma.form());
  rec.gaps.erase(lemma.lang());
  out.index_[lemma].insert(id);
  return out;
}

}  // namespace synlint
