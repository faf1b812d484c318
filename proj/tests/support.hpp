#pragma once

// Fixture builders shared by the unit and acceptance suites.

#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/synthgen.hpp"

namespace synlint::testing {

inline PartOfSpeech pos_of(char tag) { return *parse_pos(std::string(1, tag)); }

inline MultiSynset synset(const std::string& id, char pos,
                          std::map<std::string, std::vector<std::string>> members,
                          std::initializer_list<const char*> gaps = {}) {
  MultiSynset rec;
  rec.id = SynsetId(id);
  rec.pos = pos_of(pos);
  for (auto& [lang, forms] : members) rec.members.emplace(LanguageId(lang), std::move(forms));
  for (const char* g : gaps) rec.gaps.insert(LanguageId(g));
  return rec;
}

inline Lemma en(const std::string& form, char pos = 'n') { return Lemma(LanguageId("en"), form, pos_of(pos)); }
inline Lemma it(const std::string& form, char pos = 'n') { return Lemma(LanguageId("it"), form, pos_of(pos)); }

inline Sense sense(const Lemma& lemma, const std::string& synset) { return {lemma, SynsetId(synset)}; }

inline AnnotatedToken token(const Lemma& word, const std::string& synset, int tok) {
  return {word, {SynsetId(synset)}, tok};
}

// en -> it pair annotated with the given synsets; both tokens share index `tok`.
inline AlignmentRecord pair(const std::string& sent, int tok, const std::string& en_form,
                            const std::string& en_synset, const std::string& it_form,
                            const std::string& it_synset, char pos = 'n') {
  AlignmentRecord rec;
  rec.sent = sent;
  rec.src = token(en(en_form, pos), en_synset, tok);
  rec.tgt = token(it(it_form, pos), it_synset, tok);
  return rec;
}

// A small English-Italian lexicon built around the classic examples.
//   T1 {test, trial | prova}    T2 {trial | processo}    T3 {test | esame}
//   P1 {bundle, package | involto}
//   W1 {time | tempo}   W2 {weather | tempo}
//   L1 {liter, litre | litro}
//   G1 {globally | globalmente}
//   H1..H3 {haste, hurry | fretta}
//   R1 {turn, reverse | invertire}   R2 {turn | girare}   R3 {reverse | rovesciare}
//   E1 {essence, gist | essenza}
//   X1 {concept | } gap it        U1 {idea | } (it neither member nor gap)
//   V1 {proof | prova}: prova is in T1 and V1
inline Lexicon toy_lexicon() {
  return Lexicon::build({
      synset("T1", 'n', {{"en", {"test", "trial"}}, {"it", {"prova"}}}),
      synset("T2", 'n', {{"en", {"trial"}}, {"it", {"processo"}}}),
      synset("T3", 'n', {{"en", {"test"}}, {"it", {"esame"}}}),
      synset("V1", 'n', {{"en", {"proof"}}, {"it", {"prova"}}}),
      synset("P1", 'n', {{"en", {"bundle", "package"}}, {"it", {"involto"}}}),
      synset("W1", 'n', {{"en", {"time"}}, {"it", {"tempo"}}}),
      synset("W2", 'n', {{"en", {"weather"}}, {"it", {"tempo"}}}),
      synset("L1", 'n', {{"en", {"liter", "litre"}}, {"it", {"litro"}}}),
      synset("G1", 'r', {{"en", {"globally"}}, {"it", {"globalmente"}}}),
      synset("H1", 'n', {{"en", {"haste", "hurry"}}, {"it", {"fretta"}}}),
      synset("H2", 'n', {{"en", {"haste", "hurry"}}, {"it", {"premura"}}}),
      synset("H3", 'n', {{"en", {"haste", "hurry"}}, {"it", {"precipitazione"}}}),
      synset("R1", 'v', {{"en", {"turn", "reverse"}}, {"it", {"invertire"}}}),
      synset("R2", 'v', {{"en", {"turn"}}, {"it", {"girare"}}}),
      synset("R3", 'v', {{"en", {"reverse"}}, {"it", {"rovesciare"}}}),
      synset("E1", 'n', {{"en", {"essence", "gist"}}, {"it", {"essenza"}}}),
      synset("X1", 'n', {{"en", {"concept"}}}, {"it"}),
      synset("U1", 'n', {{"en", {"idea", "concept"}}}),
  });
}

inline std::string to_jsonl(const std::vector<AlignmentRecord>& records) {
  std::ostringstream out;
  write_alignments(out, records);
  return out.str();
}

struct Corpus {
  Lexicon lex;
  std::vector<AlignmentRecord> records;
  TruthLog truth;
};

// A small dense corpus with plenty of premise instances and injected errors.
inline Corpus noisy_corpus(std::uint64_t seed, std::size_t pairs, double reannotate = 0.05,
                           double misalign = 0.03, std::size_t synsets = 40) {
  GenConfig config;
  config.seed = seed;
  config.n_synsets = synsets;
  config.n_alignments = pairs;
  config.err_reannotate = reannotate;
  config.err_misalign = misalign;
  config.corrupt_side = CorruptSide::Both;
  Corpus corpus{generate_lexicon(config), {}, {}};
  auto bitext = generate_bitext(corpus.lex, config);
  auto corrupted = inject_errors(std::move(bitext.records), corpus.lex, config);
  corpus.records = std::move(corrupted.records);
  corpus.truth = std::move(corrupted.truth);
  return corpus;
}

inline std::vector<AlignmentRecord> swapped(std::vector<AlignmentRecord> records) {
  for (auto& r : records) std::swap(r.src, r.tgt);
  return records;
}

}  // namespace synlint::testing
