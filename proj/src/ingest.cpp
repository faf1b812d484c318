#include "synlint/ingest.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "jsonl.hpp"
#include "synlint/text.hpp"

namespace synlint {

using detail::FieldError;
using detail::json;

std::string_view to_string(Side side) { return side == Side::Src ? "src" : "tgt"; }

bool AnnotatedToken::resolved() const {
  return tags.size() == 1 && std::holds_alternative<SynsetId>(tags.front());
}

const SynsetId& AnnotatedToken::synset() const {
  if (!resolved())
    throw Error(ErrorCode::UnresolvedSynset, "token " + word.to_string() + " has no single synset");
  return std::get<SynsetId>(tags.front());
}

SenseIndex::SenseIndex(const std::vector<SenseIndexEntry>& entries) {
  for (const auto& entry : entries) {
    std::set<SynsetId> distinct(entry.senses.begin(), entry.senses.end());
    if (distinct.size() != entry.senses.size())
      throw Error(ErrorCode::SchemaError,
                  "sense index lists a synset twice for " + entry.lemma.to_string());
    if (!senses_.emplace(entry.lemma, entry.senses).second)
      throw Error(ErrorCode::SchemaError, "sense index repeats " + entry.lemma.to_string());
  }
}

const SynsetId& SenseIndex::resolve(const SenseKey& key) const {
  auto it = senses_.find(key.lemma);
  if (it == senses_.end() || key.sense_number < 1 ||
      static_cast<std::size_t>(key.sense_number) > it->second.size())
    throw Error(ErrorCode::UnresolvedKey, "no sense " + std::to_string(key.sense_number) +
                                              " for " + key.lemma.to_string());
  return it->second[static_cast<std::size_t>(key.sense_number) - 1];
}

namespace {

PartOfSpeech read_pos(const json& obj) {
  std::string tag = detail::get_string(obj, "pos");
  auto pos = parse_pos(tag);
  if (!pos) throw FieldError{"pos", "unknown part of speech \"" + tag + "\""};
  return *pos;
}

LanguageId read_lang(const std::string& code, const std::string& field) {
  std::string canon = normalize_language(code);
  if (canon.empty()) throw FieldError{field, "empty language code"};
  return LanguageId(canon);
}

Lemma read_lemma(const json& obj, const LanguageId& lang, PartOfSpeech pos) {
  std::string form = detail::get_string(obj, "lemma");
  if (normalize_form(form).empty()) throw FieldError{"lemma", "empty lemma"};
  return Lemma(lang, form, pos);
}

SenseTag read_tag(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>().empty()) throw FieldError{"synset", "empty synset id"};
    return SynsetId(v.get<std::string>());
  }
  if (v.is_object()) {
    detail::reject_unknown_keys(v, {"sense_no"});
    long long n = detail::nested("synset", [&] { return detail::get_int(v, "sense_no"); });
    if (n < 1 || n > 1'000'000) throw FieldError{"synset.sense_no", "sense number must be >= 1"};
    return SenseNumber{static_cast<int>(n)};
  }
  throw FieldError{"synset", "synset must be a string, {\"sense_no\": int}, a list of those, or null"};
}

AnnotatedToken read_token(const json& obj) {
  detail::reject_unknown_keys(obj, {"lang", "lemma", "pos", "synset", "tok"});
  AnnotatedToken token;
  LanguageId lang = read_lang(detail::get_string(obj, "lang"), "lang");
  token.word = read_lemma(obj, lang, read_pos(obj));
  long long tok = detail::get_int(obj, "tok");
  if (tok < 0 || tok > 100'000'000) throw FieldError{"tok", "token index must be >= 0"};
  token.tok = static_cast<int>(tok);
  if (auto it = obj.find("synset"); it != obj.end() && !it->is_null()) {
    if (it->is_array()) {
      for (const auto& v : *it) token.tags.push_back(read_tag(v));
    } else {
      token.tags.push_back(read_tag(*it));
    }
  }
  return token;
}

json tag_json(const SenseTag& tag) {
  if (const auto* id = std::get_if<SynsetId>(&tag)) return id->str();
  return json{{"sense_no", std::get<SenseNumber>(tag).value}};
}

json token_json(const AnnotatedToken& token) {
  json synset;
  if (token.tags.size() == 1) {
    synset = tag_json(token.tags.front());
  } else if (token.tags.size() > 1) {
    synset = json::array();
    for (const auto& tag : token.tags) synset.push_back(tag_json(tag));
  }
  return json{{"lang", token.word.lang().str()},
              {"lemma", token.word.form()},
              {"pos", std::string(1, pos_tag(token.word.pos()))},
              {"synset", synset},
              {"tok", token.tok}};
}

template <class T>
void write_all(std::ostream& out, const std::vector<T>& items) {
  for (const auto& item : items) out << serialize(item) << '\n';
}

}  // namespace

ParseResult<MultiSynset> parse_lexicon_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<MultiSynset>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"id", "pos", "members", "gaps"});
    MultiSynset rec;
    std::string id = detail::get_string(j, "id");
    if (id.empty()) throw FieldError{"id", "empty synset id"};
    rec.id = SynsetId(id);
    rec.pos = read_pos(j);
    for (const auto& [code, forms] : detail::get_object(j, "members").items()) {
      std::string field = "members." + code;
      LanguageId lang = read_lang(code, field);
      if (rec.members.count(lang)) throw FieldError{field, "language listed twice"};
      if (!forms.is_array()) throw FieldError{field, "member list must be an array"};
      auto& list = rec.members[lang];
      for (const auto& form : forms) {
        if (!form.is_string()) throw FieldError{field, "member forms must be strings"};
        std::string canon = normalize_form(form.get<std::string>());
        if (canon.empty()) throw FieldError{field, "empty member form"};
        list.push_back(std::move(canon));
      }
    }
    if (j.contains("gaps")) {
      for (const auto& code : detail::get_array(j, "gaps")) {
        if (!code.is_string()) throw FieldError{"gaps", "gap languages must be strings"};
        rec.gaps.insert(read_lang(code.get<std::string>(), "gaps"));
      }
    }
    return rec;
  });
}

ParseResult<AlignmentRecord> parse_alignment_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<AlignmentRecord>(in, mode, [](const json& j, std::size_t line) {
    detail::reject_unknown_keys(j, {"sent", "src", "tgt"});
    AlignmentRecord rec;
    rec.sent = detail::get_string(j, "sent");
    const json& src = detail::get_object(j, "src");
    const json& tgt = detail::get_object(j, "tgt");
    rec.src = detail::nested("src", [&] { return read_token(src); });
    rec.tgt = detail::nested("tgt", [&] { return read_token(tgt); });
    if (rec.src.word.lang() == rec.tgt.word.lang())
      throw FieldError{"tgt.lang", "source and target share language " + rec.src.word.lang().str()};
    rec.line = line;
    return rec;
  });
}

ParseResult<SenseIndexEntry> parse_sense_index_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<SenseIndexEntry>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"lang", "lemma", "pos", "senses"});
    SenseIndexEntry entry;
    LanguageId lang = read_lang(detail::get_string(j, "lang"), "lang");
    entry.lemma = read_lemma(j, lang, read_pos(j));
    std::set<std::string> seen;
    for (const auto& id : detail::get_array(j, "senses")) {
      if (!id.is_string() || id.get<std::string>().empty())
        throw FieldError{"senses", "sense entries must be non-empty synset ids"};
      if (!seen.insert(id.get<std::string>()).second)
        throw FieldError{"senses", "synset listed twice"};
      entry.senses.emplace_back(id.get<std::string>());
    }
    return entry;
  });
}

ParseResult<Sentence> parse_sentence_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<Sentence>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"sent", "lang", "tokens"});
    Sentence s;
    s.sent = detail::get_string(j, "sent");
    s.lang = read_lang(detail::get_string(j, "lang"), "lang");
    for (const auto& t : detail::get_array(j, "tokens")) {
      if (!t.is_string()) throw FieldError{"tokens", "tokens must be strings"};
      s.tokens.push_back(t.get<std::string>());
    }
    return s;
  });
}

std::string serialize(const MultiSynset& synset) {
  json members = json::object();
  for (const auto& [lang, forms] : synset.members) {
    std::vector<std::string> sorted;
    for (const auto& form : forms) sorted.push_back(normalize_form(form));
    std::sort(sorted.begin(), sorted.end());
    members[lang.str()] = sorted;
  }
  json gaps = json::array();
  for (const auto& lang : synset.gaps) gaps.push_back(lang.str());
  return detail::dump(json{{"gaps", gaps},
                           {"id", synset.id.str()},
                           {"members", members},
                           {"pos", std::string(1, pos_tag(synset.pos))}});
}

std::string serialize(const AlignmentRecord& record) {
  return detail::dump(
      json{{"sent", record.sent}, {"src", token_json(record.src)}, {"tgt", token_json(record.tgt)}});
}

std::string serialize(const SenseIndexEntry& entry) {
  json senses = json::array();
  for (const auto& id : entry.senses) senses.push_back(id.str());
  return detail::dump(json{{"lang", entry.lemma.lang().str()},
                           {"lemma", entry.lemma.form()},
                           {"pos", std::string(1, pos_tag(entry.lemma.pos()))},
                           {"senses", senses}});
}

std::string serialize(const Sentence& sentence) {
  return detail::dump(
      json{{"lang", sentence.lang.str()}, {"sent", sentence.sent}, {"tokens", sentence.tokens}});
}

void write_lexicon(std::ostream& out, const std::vector<MultiSynset>& synsets) {
  write_all(out, synsets);
}

void write_lexicon(std::ostream& out, const Lexicon& lex) { write_all(out, lex.records()); }

void write_alignments(std::ostream& out, const std::vector<AlignmentRecord>& records) {
  write_all(out, records);
}

void write_sense_index(std::ostream& out, const std::vector<SenseIndexEntry>& entries) {
  write_all(out, entries);
}

void write_sentences(std::ostream& out, const std::vector<Sentence>& sentences) {
  write_all(out, sentences);
}

ParseResult<AlignmentRecord> resolve_alignments(std::vector<AlignmentRecord> records,
                                                const SenseIndex& index) {
  ParseResult<AlignmentRecord> result;
  for (auto& rec : records) {
    for (Side side : {Side::Src, Side::Tgt}) {
      auto& token = rec.side(side);
      for (auto& tag : token.tags) {
        const auto* number = std::get_if<SenseNumber>(&tag);
        if (!number) continue;
        try {
          tag = index.resolve({token.word, number->value});
        } catch (const Error& e) {
          result.diagnostics.push_back(
              {rec.line, ErrorCode::UnresolvedKey, std::string(to_string(side)) + ".synset", e.what()});
        }
      }
    }
    result.records.push_back(std::move(rec));
  }
  return result;
}

FilterResult filter_alignments(std::vector<AlignmentRecord> records) {
  FilterResult result;
  result.report.total = records.size();
  for (auto& rec : records) {
    auto any = [&](auto pred) { return pred(rec.src) || pred(rec.tgt); };
    if (any([](const AnnotatedToken& t) { return t.tags.size() > 1; })) {
      ++result.report.dropped_multi_sense;
    } else if (any([](const AnnotatedToken& t) { return t.tags.empty(); })) {
      ++result.report.dropped_missing;
    } else if (any([](const AnnotatedToken& t) { return !t.resolved(); })) {
      ++result.report.dropped_unresolved;
    } else if (rec.src.word.pos() != rec.tgt.word.pos()) {
      ++result.report.dropped_pos_mismatch;
    } else {
      result.records.push_back(std::move(rec));
    }
  }
  result.report.kept = result.records.size();
  return result;
}

}  // namespace synlint
