#pragma once

// Quadratic reference implementations. They scan raw records and synsets directly and
// share no code with the indexed enumerators they are compared against.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/verify.hpp"

namespace synlint::oracle {

inline const AnnotatedToken& src_of(const AlignmentRecord& r, Direction d) {
  return d == Direction::SrcToTgt ? r.src : r.tgt;
}
inline const AnnotatedToken& tgt_of(const AlignmentRecord& r, Direction d) {
  return d == Direction::SrcToTgt ? r.tgt : r.src;
}
inline Sense sense_of(const AnnotatedToken& t) { return {t.word, std::get<SynsetId>(t.tags.at(0))}; }

// Synsets holding `lemma`, found by scanning every member list.
inline std::set<SynsetId> scan_synsets(const Lexicon& lex, const Lemma& lemma) {
  std::set<SynsetId> out;
  for (const auto& [id, rec] : lex.synsets()) {
    if (rec.pos != lemma.pos()) continue;
    auto it = rec.members.find(lemma.lang());
    if (it == rec.members.end()) continue;
    for (const auto& form : it->second)
      if (form == lemma.form()) out.insert(id);
  }
  return out;
}

inline std::vector<Provenance> witnesses(const std::vector<AlignmentRecord>& records, Direction d,
                                         const Sense& src, const Sense& tgt) {
  std::set<Provenance> out;
  for (const auto& r : records)
    if (sense_of(src_of(r, d)) == src && sense_of(tgt_of(r, d)) == tgt)
      out.insert({r.sent, src_of(r, d).tok});
  return {out.begin(), out.end()};
}

inline std::vector<TripleInstance> triples(const std::vector<AlignmentRecord>& records, Direction d) {
  std::set<std::tuple<Sense, Sense, Sense>> keys;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t j = 0; j < records.size(); ++j) {
      Sense si = sense_of(src_of(records[i], d)), sj = sense_of(src_of(records[j], d));
      Sense ti = sense_of(tgt_of(records[i], d)), tj = sense_of(tgt_of(records[j], d));
      if (ti == tj && si < sj) keys.insert({si, sj, ti});
    }
  std::vector<TripleInstance> out;
  for (const auto& [a, b, t] : keys)
    out.push_back({a, b, t, witnesses(records, d, a, t), witnesses(records, d, b, t)});
  return out;
}

inline std::vector<QuadInstance> quads(const std::vector<AlignmentRecord>& records, Direction d) {
  std::set<std::pair<SensePair, SensePair>> keys;
  for (std::size_t i = 0; i < records.size(); ++i)
    for (std::size_t j = 0; j < records.size(); ++j) {
      SensePair p{sense_of(src_of(records[i], d)), sense_of(tgt_of(records[i], d))};
      SensePair q{sense_of(src_of(records[j], d)), sense_of(tgt_of(records[j], d))};
      if (p < q && p.tgt.synset == q.tgt.synset && p.tgt != q.tgt && p.src != q.src)
        keys.insert({p, q});
    }
  std::vector<QuadInstance> out;
  for (const auto& [p, q] : keys)
    out.push_back({p, q, witnesses(records, d, p.src, p.tgt), witnesses(records, d, q.src, q.tgt)});
  return out;
}

struct WordTripleRef {
  Lemma e_x, e_y, f_z;
  bool f_polysemous = false;
  bool e_near_synonyms = false;
  auto operator<=>(const WordTripleRef&) const = default;
};

inline std::vector<WordTripleRef> word_triples(const std::vector<AlignmentRecord>& records,
                                               const Lexicon& lex, Direction d) {
  std::set<std::tuple<Lemma, Lemma, Lemma>> keys;
  for (const auto& r : records)
    for (const auto& s : records) {
      const Lemma& x = src_of(r, d).word;
      const Lemma& y = src_of(s, d).word;
      if (tgt_of(r, d).word == tgt_of(s, d).word && x < y) keys.insert({x, y, tgt_of(r, d).word});
    }
  std::vector<WordTripleRef> out;
  for (const auto& [x, y, f] : keys) {
    bool near = false;
    if (x.lang() == y.lang() && x.pos() == y.pos()) {
      auto sx = scan_synsets(lex, x), sy = scan_synsets(lex, y);
      for (const auto& id : sx) near = near || sy.count(id);
    }
    out.push_back({x, y, f, scan_synsets(lex, f).size() > 1, near});
  }
  return out;
}

// Unordered pairs of distinct lemmas of `lang` with identical, non-empty synset sets.
inline std::set<std::pair<Lemma, Lemma>> absolute_pairs(const Lexicon& lex, const LanguageId& a,
                                                        const LanguageId& b) {
  std::set<Lemma> words;
  for (const auto& [id, rec] : lex.synsets())
    for (const auto& [lang, forms] : rec.members)
      if (lang == a || lang == b)
        for (const auto& form : forms) words.insert(Lemma(lang, form, rec.pos));
  std::vector<Lemma> list(words.begin(), words.end());
  std::set<std::pair<Lemma, Lemma>> out;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      const Lemma& x = list[i];
      const Lemma& y = list[j];
      bool wanted = a == b ? (x.lang() == a && y.lang() == a) : (x.lang() == a && y.lang() == b);
      bool flipped = a != b && x.lang() == b && y.lang() == a;
      if (!wanted && !flipped) continue;
      if (x.pos() != y.pos()) continue;
      if (scan_synsets(lex, x) != scan_synsets(lex, y)) continue;
      out.insert(flipped ? std::pair{y, x} : std::pair{x, y});
    }
  return out;
}

}  // namespace synlint::oracle
