#include "synlint/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <iterator>
#include <map>
#include <random>
#include <ostream>
#include <set>
#include <sstream>

#include "jsonl.hpp"

namespace synlint {

using detail::FieldError;
using detail::json;

namespace {

// Portable draws on top of mt19937_64; the std distributions are not specified
// bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  // Failures before the first success.
  std::size_t geometric(double p) {
    std::size_t k = 0;
    while (!bernoulli(p) && k < 64) ++k;
    return k;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 engine_;
};

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

constexpr PartOfSpeech kPos[] = {PartOfSpeech::Noun, PartOfSpeech::Verb, PartOfSpeech::Adjective,
                                 PartOfSpeech::Adverb};
constexpr double kPosWeight[] = {0.55, 0.22, 0.16, 0.07};

PartOfSpeech draw_pos(Rng& rng) {
  double u = rng.uniform();
  for (std::size_t i = 0; i < 3; ++i) {
    if (u < kPosWeight[i]) return kPos[i];
    u -= kPosWeight[i];
  }
  return kPos[3];
}

std::string_view to_string(CorruptSide side) {
  switch (side) {
    case CorruptSide::Src: return "src";
    case CorruptSide::Tgt: return "tgt";
    case CorruptSide::Both: return "both";
  }
  return "src";
}

std::string_view to_string(InjectedError type) {
  return type == InjectedError::Reannotate ? "reannotate" : "misalign";
}

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorCode::InvalidConfig, message);
}

}  // namespace

void GenConfig::validate() const {
  auto probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) invalid(std::string(name) + " must lie in [0, 1]");
  };
  probability(gap_rate, "gap_rate");
  probability(err_reannotate, "err_reannotate");
  probability(err_misalign, "err_misalign");
  if (err_reannotate + err_misalign > 1.0) invalid("err_reannotate + err_misalign exceeds 1");
  if (n_synsets < 1) invalid("n_synsets must be >= 1");
  if (languages.size() < 2) invalid("at least two languages are required");
  if (std::set<LanguageId>(languages.begin(), languages.end()).size() != languages.size())
    invalid("languages must be distinct");
  if (!(synonym_mean >= 1.0 && synonym_mean <= 64.0)) invalid("synonym_mean must lie in [1, 64]");
  if (!(polysemy_shape > 2.0)) invalid("polysemy_shape must exceed 2");
}

GenConfig parse_config(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  GenConfig config;
  try {
    json j = json::parse(text);
    if (!j.is_object()) invalid("config must be a JSON object");
    detail::reject_unknown_keys(
        j, {"seed", "n_synsets", "languages", "gap_rate", "synonym_mean", "polysemy_shape",
            "n_alignments", "err_reannotate", "err_misalign", "corrupt_side", "isolated"});
    auto count = [&](const char* key, auto& field) {
      if (!j.contains(key)) return;
      if (!j[key].is_number_unsigned()) invalid(std::string(key) + " must be a non-negative integer");
      field = j[key].get<std::remove_reference_t<decltype(field)>>();
    };
    auto real = [&](const char* key, double& field) {
      if (!j.contains(key)) return;
      if (!j[key].is_number()) invalid(std::string(key) + " must be a number");
      field = j[key].get<double>();
    };
    count("seed", config.seed);
    count("n_synsets", config.n_synsets);
    count("n_alignments", config.n_alignments);
    real("gap_rate", config.gap_rate);
    real("synonym_mean", config.synonym_mean);
    real("polysemy_shape", config.polysemy_shape);
    real("err_reannotate", config.err_reannotate);
    real("err_misalign", config.err_misalign);
    if (j.contains("languages")) {
      if (!j["languages"].is_array()) invalid("languages must be an array");
      config.languages.clear();
      for (const auto& code : j["languages"]) {
        if (!code.is_string()) invalid("languages must be strings");
        config.languages.emplace_back(code.get<std::string>());
      }
    }
    if (j.contains("corrupt_side")) {
      if (!j["corrupt_side"].is_string()) invalid("corrupt_side must be a string");
      auto side = j["corrupt_side"].get<std::string>();
      if (side == "src") config.corrupt_side = CorruptSide::Src;
      else if (side == "tgt") config.corrupt_side = CorruptSide::Tgt;
      else if (side == "both") config.corrupt_side = CorruptSide::Both;
      else invalid("corrupt_side must be src, tgt or both");
    }
    if (j.contains("isolated")) {
      if (!j["isolated"].is_boolean()) invalid("isolated must be a boolean");
      config.isolated = j["isolated"].get<bool>();
    }
  } catch (const json::exception& e) {
    invalid(std::string("config: ") + e.what());
  } catch (const FieldError& e) {
    invalid("config: " + e.message);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    invalid(std::string("config: ") + e.what());
  }
  config.validate();
  return config;
}

std::string serialize(const GenConfig& c) {
  json langs = json::array();
  for (const auto& l : c.languages) langs.push_back(l.str());
  return json{{"seed", c.seed},
              {"n_synsets", c.n_synsets},
              {"languages", langs},
              {"gap_rate", c.gap_rate},
              {"synonym_mean", c.synonym_mean},
              {"polysemy_shape", c.polysemy_shape},
              {"n_alignments", c.n_alignments},
              {"err_reannotate", c.err_reannotate},
              {"err_misalign", c.err_misalign},
              {"corrupt_side", std::string(to_string(c.corrupt_side))},
              {"isolated", c.isolated}}
      .dump(2);
}

Lexicon generate_lexicon(const GenConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const double coin_new = 1.0 - 1.0 / (config.polysemy_shape - 1.0);
  const double member_p = 1.0 / config.synonym_mean;

  // Per (language, POS): an urn holding each word once per synset that contains it, so a
  // uniform draw from the urn is preferential attachment.
  std::map<std::pair<LanguageId, PartOfSpeech>, std::vector<std::string>> urns;
  std::map<LanguageId, std::size_t> coined;

  std::vector<MultiSynset> records;
  records.reserve(config.n_synsets);
  for (std::size_t i = 0; i < config.n_synsets; ++i) {
    MultiSynset rec;
    rec.id = SynsetId(numbered("S", i, 6));
    rec.pos = draw_pos(rng);
    for (std::size_t l = 0; l < config.languages.size(); ++l) {
      const LanguageId& lang = config.languages[l];
      if (l > 0 && rng.bernoulli(config.gap_rate)) {
        rec.gaps.insert(lang);
        continue;
      }
      auto& urn = urns[{lang, rec.pos}];
      const std::size_t n_members = 1 + rng.geometric(member_p);
      std::vector<std::string> forms;
      for (std::size_t m = 0; m < n_members; ++m) {
        std::string form;
        if (!urn.empty() && !rng.bernoulli(coin_new)) form = rng.pick(urn);
        if (form.empty() || std::find(forms.begin(), forms.end(), form) != forms.end())
          form = numbered("w", coined[lang]++, 5) + "_" + lang.str();
        forms.push_back(form);
      }
      urn.insert(urn.end(), forms.begin(), forms.end());
      rec.members.emplace(lang, std::move(forms));
    }
    records.push_back(std::move(rec));
  }
  return Lexicon::build(std::move(records));
}

Bitext generate_bitext(const Lexicon& lex, const GenConfig& config) {
  config.validate();
  const LanguageId& src_lang = config.languages[0];
  const LanguageId& tgt_lang = config.languages[1];
  std::vector<const MultiSynset*> usable;
  for (const auto& [id, rec] : lex.synsets())
    if (rec.lexicalizes(src_lang) && rec.lexicalizes(tgt_lang)) usable.push_back(&rec);
  if (usable.empty())
    throw Error(ErrorCode::InsufficientLexicalization,
                "no synset is lexicalized in both " + src_lang.str() + " and " + tgt_lang.str());

  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  Bitext out;
  out.records.reserve(config.n_alignments);
  std::size_t remaining = 0;
  for (std::size_t i = 0; i < config.n_alignments; ++i) {
    if (remaining == 0) {
      remaining = 1 + rng.below(5);
      out.sentences.push_back({numbered("s", out.sentences.size(), 6), src_lang, {}});
    }
    --remaining;
    Sentence& sentence = out.sentences.back();
    const MultiSynset& rec = *rng.pick(usable);
    const int tok = static_cast<int>(sentence.tokens.size());
    const std::string& src_form = rng.pick(rec.members.at(src_lang));
    const std::string& tgt_form = rng.pick(rec.members.at(tgt_lang));
    AlignmentRecord pair;
    pair.sent = sentence.sent;
    pair.src = {Lemma(src_lang, src_form, rec.pos), {rec.id}, tok};
    pair.tgt = {Lemma(tgt_lang, tgt_form, rec.pos), {rec.id}, tok};
    pair.line = i + 1;
    sentence.tokens.push_back(src_form);
    out.records.push_back(std::move(pair));
  }
  return out;
}

Corruption inject_errors(std::vector<AlignmentRecord> records, const Lexicon& lex,
                         const GenConfig& config) {
  config.validate();
  Rng rng(config.seed ^ 0xd1b54a32d192ed03ULL);
  Corruption out;
  std::set<SynsetId> touched;

  // Candidate misalignment targets: synsets lexicalized in the target language, by POS.
  std::map<std::pair<LanguageId, PartOfSpeech>, std::vector<const MultiSynset*>> by_lang_pos;
  for (const auto& [id, rec] : lex.synsets())
    for (const auto& [lang, forms] : rec.members) by_lang_pos[{lang, rec.pos}].push_back(&rec);

  auto free_synset = [&](const SynsetId& id) { return !config.isolated || !touched.count(id); };

  for (auto& rec : records) {
    const double u = rng.uniform();
    if (u < config.err_reannotate) {
      Side side = config.corrupt_side == CorruptSide::Tgt ? Side::Tgt : Side::Src;
      if (config.corrupt_side == CorruptSide::Both && rng.bernoulli(0.5)) side = Side::Tgt;
      AnnotatedToken& token = rec.side(side);
      const SynsetId current = token.synset();
      const SynsetId other = rec.side(side == Side::Src ? Side::Tgt : Side::Src).synset();
      if (!free_synset(current) || !free_synset(other)) continue;
      std::vector<SynsetId> choices;
      for (const auto& id : lex.synsets_of(token.word))
        if (id != current && id != other && free_synset(id)) choices.push_back(id);
      if (choices.empty()) continue;
      const SynsetId corrupt = rng.pick(choices);
      token.tags = {corrupt};
      touched.insert({current, other, corrupt});
      out.truth.push_back({InjectedError::Reannotate, {rec.sent, side, token.tok}, current, corrupt});
    } else if (u < config.err_reannotate + config.err_misalign) {
      const SynsetId current = rec.tgt.synset();
      const SynsetId src_synset = rec.src.synset();
      if (!free_synset(current) || !free_synset(src_synset)) continue;
      const auto& pool = by_lang_pos[{rec.tgt.word.lang(), rec.tgt.word.pos()}];
      const MultiSynset* chosen = nullptr;
      for (int attempt = 0; attempt < 64 && !chosen; ++attempt) {
        const MultiSynset* cand = rng.pick(pool);
        if (cand->id != current && cand->id != src_synset && free_synset(cand->id)) chosen = cand;
      }
      if (!chosen) continue;
      const std::string& form = rng.pick(chosen->members.at(rec.tgt.word.lang()));
      rec.tgt.word = Lemma(rec.tgt.word.lang(), form, chosen->pos);
      rec.tgt.tags = {chosen->id};
      touched.insert({current, src_synset, chosen->id});
      out.truth.push_back({InjectedError::Misalign, {rec.sent, Side::Tgt, rec.tgt.tok}, current, chosen->id});
    }
  }
  out.records = std::move(records);
  return out;
}

std::string serialize(const TruthEntry& e) {
  return detail::dump(json{{"corrupt", e.corrupt_synset.str()},
                           {"sent", e.token.sent},
                           {"side", std::string(to_string(e.token.side))},
                           {"tok", e.token.tok},
                           {"true", e.true_synset.str()},
                           {"type", std::string(to_string(e.type))}});
}

void write_truth(std::ostream& out, const TruthLog& truth) {
  for (const auto& e : truth) out << serialize(e) << '\n';
}

ParseResult<TruthEntry> parse_truth_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<TruthEntry>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"type", "sent", "side", "tok", "true", "corrupt"});
    TruthEntry e;
    std::string type = detail::get_string(j, "type");
    if (type == "reannotate") e.type = InjectedError::Reannotate;
    else if (type == "misalign") e.type = InjectedError::Misalign;
    else throw FieldError{"type", "type must be reannotate or misalign"};
    e.token.sent = detail::get_string(j, "sent");
    std::string side = detail::get_string(j, "side");
    if (side == "src") e.token.side = Side::Src;
    else if (side == "tgt") e.token.side = Side::Tgt;
    else throw FieldError{"side", "side must be src or tgt"};
    e.token.tok = static_cast<int>(detail::get_int(j, "tok"));
    e.true_synset = SynsetId(detail::get_string(j, "true"));
    e.corrupt_synset = SynsetId(detail::get_string(j, "corrupt"));
    return e;
  });
}

std::vector<bool> detectability_census(const std::vector<AlignmentRecord>& records,
                                       const Lexicon& lex, const TruthLog& truth,
                                       const DetectOptions& options) {
  auto counterexample = [&](const AlignmentRecord& r, const AlignmentRecord& o, Direction d) {
    const auto& rs = r.side(source_side(d));
    const auto& rt = r.side(target_side(d));
    const auto& os = o.side(source_side(d));
    const auto& ot = o.side(target_side(d));
    const bool sources_distinct = rs.sense() != os.sense();
    const bool sources_split = rs.synset() != os.synset();
    if (options.triples && rt.sense() == ot.sense() && sources_distinct && sources_split) return true;
    if (options.quads && rt.sense() != ot.sense() && rt.synset() == ot.synset() && sources_distinct &&
        sources_split)
      return true;
    if (options.word && rt.word == ot.word && rs.word != os.word) {
      const bool poly = lex.synsets_of(rt.word).size() >= 2;
      bool near = false;
      if (rs.word.lang() == os.word.lang() && rs.word.pos() == os.word.pos())
        for (const auto& id : lex.synsets_of(rs.word)) near = near || lex.synsets_of(os.word).count(id);
      if (!poly && !near) return true;
    }
    return false;
  };

  std::vector<bool> out;
  out.reserve(truth.size());
  for (const auto& entry : truth) {
    bool detectable = false;
    for (std::size_t i = 0; i < records.size() && !detectable; ++i) {
      const auto& r = records[i];
      if (r.sent != entry.token.sent || r.side(entry.token.side).tok != entry.token.tok) continue;
      if (options.consistency &&
          (r.src.synset() != r.tgt.synset() || !lex.is_member(r.src.word, r.src.synset()) ||
           !lex.is_member(r.tgt.word, r.tgt.synset())))
        detectable = true;
      for (Direction d : options.directions)
        for (std::size_t j = 0; j < records.size() && !detectable; ++j)
          if (j != i && counterexample(r, records[j], d)) detectable = true;
    }
    out.push_back(detectable);
  }
  return out;
}

Score score_detection(const std::vector<ExceptionLine>& exceptions, const TruthLog& truth,
                      const std::vector<bool>* detectable) {
  std::set<Provenance> corrupted;
  for (const auto& e : truth) corrupted.insert({e.token.sent, e.token.tok});

  Score score;
  std::set<Provenance> named;
  for (const auto& exc : exceptions) {
    bool hit = false;
    for (const auto& p : exc.support) {
      named.insert(p);
      hit = hit || corrupted.count(p);
    }
    ++score.flagged;
    if (hit) ++score.true_flags;
  }
  score.injected = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (detectable && !(*detectable)[i]) continue;
    ++score.detectable;
    if (named.count({truth[i].token.sent, truth[i].token.tok})) ++score.detected;
  }
  if (score.flagged) score.precision = static_cast<double>(score.true_flags) / score.flagged;
  if (score.detectable) score.recall = static_cast<double>(score.detected) / score.detectable;
  return score;
}

Score score_correction(const std::vector<CorrectionSuggestion>& suggestions, const TruthLog& truth) {
  std::map<TokenRef, const TruthEntry*> by_token;
  for (const auto& e : truth) by_token.emplace(e.token, &e);
  Score score;
  score.injected = truth.size();
  for (const auto& s : suggestions) {
    auto it = by_token.find(s.token);
    if (it == by_token.end()) {
      ++score.unmatched;
      continue;
    }
    ++score.matched;
    if (s.kind == SuggestionKind::Correct && s.to == it->second->true_synset) ++score.correct;
  }
  if (score.matched) score.accuracy = static_cast<double>(score.correct) / score.matched;
  return score;
}

std::string score_json(const Score& s, int indent) {
  return json{{"precision", s.precision}, {"recall", s.recall},     {"accuracy", s.accuracy},
              {"flagged", s.flagged},     {"true_flags", s.true_flags}, {"injected", s.injected},
              {"detectable", s.detectable}, {"detected", s.detected}, {"matched", s.matched},
              {"correct", s.correct},     {"unmatched", s.unmatched}}
      .dump(indent);
}

}  // namespace synlint
