#include "synlint/verify.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "jsonl.hpp"

namespace synlint {

using detail::FieldError;
using detail::json;

std::string_view to_string(Direction direction) {
  return direction == Direction::SrcToTgt ? "st" : "ts";
}

std::optional<Direction> parse_direction(std::string_view text) {
  if (text == "st") return Direction::SrcToTgt;
  if (text == "ts") return Direction::TgtToSrc;
  return std::nullopt;
}

std::string_view to_string(ExceptionKind kind) {
  switch (kind) {
    case ExceptionKind::Triple: return "TRIPLE";
    case ExceptionKind::Quad: return "QUAD";
    case ExceptionKind::Word: return "WORD";
    case ExceptionKind::Consistency: return "CONSISTENCY";
  }
  return "UNKNOWN";
}

std::string_view to_string(ConsistencyIssue::Kind kind) {
  return kind == ConsistencyIssue::Kind::Mismatch ? "MISMATCH" : "MEMBERSHIP";
}

namespace {

std::vector<Provenance> merged(const std::vector<Provenance>& a, const std::vector<Provenance>& b) {
  std::vector<Provenance> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void sort_unique(std::vector<Provenance>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <class Map>
void finalize_support(Map& groups) {
  for (auto& [key, inner] : groups)
    for (auto& [k, support] : inner) sort_unique(support);
}

Provenance provenance_of(const AlignmentRecord& rec, Direction d) {
  return {rec.sent, rec.side(source_side(d)).tok};
}

}  // namespace

std::vector<Provenance> TripleInstance::support() const { return merged(support_a, support_b); }
std::vector<Provenance> QuadInstance::support() const { return merged(support_1, support_2); }
std::vector<Provenance> WordTriple::support() const { return merged(support_x, support_y); }

std::vector<Provenance> ExceptionRecord::support() const {
  return std::visit(
      [](const auto& inst) -> std::vector<Provenance> {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, ConsistencyIssue>) {
          return {inst.where};
        } else {
          return inst.support();
        }
      },
      instance);
}

void require_resolved(const std::vector<AlignmentRecord>& records, const Lexicon& lex) {
  for (const auto& rec : records)
    for (Side side : {Side::Src, Side::Tgt}) {
      const auto& token = rec.side(side);
      if (!lex.find(token.synset()))
        throw Error(ErrorCode::UnresolvedSynset,
                    "line " + std::to_string(rec.line) + ": synset " + token.synset().str() +
                        " is not in the lexicon");
    }
}

std::size_t drop_unresolved(std::vector<AlignmentRecord>& records, const Lexicon& lex) {
  auto known = [&](const AlignmentRecord& rec) {
    return rec.src.resolved() && rec.tgt.resolved() && lex.find(rec.src.synset()) &&
           lex.find(rec.tgt.synset());
  };
  auto it = std::stable_partition(records.begin(), records.end(), known);
  std::size_t dropped = static_cast<std::size_t>(records.end() - it);
  records.erase(it, records.end());
  return dropped;
}

std::vector<TripleInstance> enumerate_cor1_triples(const std::vector<AlignmentRecord>& records,
                                                   const Lexicon& lex, Direction direction) {
  require_resolved(records, lex);
  // target sense -> source sense -> witnesses
  std::map<Sense, std::map<Sense, std::vector<Provenance>>> groups;
  for (const auto& rec : records) {
    Sense source = rec.side(source_side(direction)).sense();
    Sense target = rec.side(target_side(direction)).sense();
    groups[std::move(target)][std::move(source)].push_back(provenance_of(rec, direction));
  }
  finalize_support(groups);

  std::vector<TripleInstance> out;
  for (const auto& [target, sources] : groups) {
    for (auto a = sources.begin(); a != sources.end(); ++a)
      for (auto b = std::next(a); b != sources.end(); ++b)
        out.push_back({a->first, b->first, target, a->second, b->second});
  }
  std::sort(out.begin(), out.end(), [](const TripleInstance& x, const TripleInstance& y) {
    return std::tie(x.src_a, x.src_b, x.tgt) < std::tie(y.src_a, y.src_b, y.tgt);
  });
  return out;
}

std::vector<QuadInstance> enumerate_thm1_quads(const std::vector<AlignmentRecord>& records,
                                               const Lexicon& lex, Direction direction) {
  require_resolved(records, lex);
  // target synset -> aligned sense pair -> witnesses
  std::map<SynsetId, std::map<SensePair, std::vector<Provenance>>> groups;
  for (const auto& rec : records) {
    SensePair pair{rec.side(source_side(direction)).sense(),
                   rec.side(target_side(direction)).sense()};
    SynsetId synset = pair.tgt.synset;
    groups[std::move(synset)][std::move(pair)].push_back(provenance_of(rec, direction));
  }
  finalize_support(groups);

  std::vector<QuadInstance> out;
  for (const auto& [synset, pairs] : groups) {
    for (auto p = pairs.begin(); p != pairs.end(); ++p)
      for (auto q = std::next(p); q != pairs.end(); ++q) {
        if (p->first.tgt == q->first.tgt || p->first.src == q->first.src) continue;
        out.push_back({p->first, q->first, p->second, q->second});
      }
  }
  std::sort(out.begin(), out.end(), [](const QuadInstance& x, const QuadInstance& y) {
    return std::tie(x.pair_1, x.pair_2) < std::tie(y.pair_1, y.pair_2);
  });
  return out;
}

std::vector<ExceptionRecord> detect_sense_exceptions(const std::vector<TripleInstance>& triples,
                                                     Direction direction) {
  std::vector<ExceptionRecord> out;
  for (const auto& t : triples)
    if (!senses_synonymous(t.src_a, t.src_b)) out.push_back({ExceptionKind::Triple, direction, t});
  return out;
}

std::vector<ExceptionRecord> detect_sense_exceptions(const std::vector<QuadInstance>& quads,
                                                     Direction direction) {
  std::vector<ExceptionRecord> out;
  for (const auto& q : quads)
    if (!senses_synonymous(q.pair_1.src, q.pair_2.src))
      out.push_back({ExceptionKind::Quad, direction, q});
  return out;
}

WordCheck check_word_theorem(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                             Direction direction) {
  // target word -> source word -> witnesses
  std::map<Lemma, std::map<Lemma, std::vector<Provenance>>> groups;
  for (const auto& rec : records)
    groups[rec.side(target_side(direction)).word][rec.side(source_side(direction)).word]
        .push_back(provenance_of(rec, direction));
  finalize_support(groups);

  WordCheck check;
  for (const auto& [target, sources] : groups) {
    const bool polysemous = lex.synsets_of(target).size() >= 2;
    for (auto a = sources.begin(); a != sources.end(); ++a)
      for (auto b = std::next(a); b != sources.end(); ++b) {
        const Lemma& ex = a->first;
        const Lemma& ey = b->first;
        // Near-synonymy is a same-language, same-POS relation; the source-language
        // projection of the lexicon has the same index for these lemmas.
        const bool near = ex.lang() == ey.lang() && ex.pos() == ey.pos() && lex.near_synonyms(ex, ey);
        WordTriple triple{ex, ey, target, polysemous, near, a->second, b->second};
        if (polysemous && near) ++check.categories.both;
        else if (polysemous) ++check.categories.polysemy_only;
        else if (near) ++check.categories.synonymy_only;
        else {
          ++check.categories.neither;
          check.exceptions.push_back({ExceptionKind::Word, direction, triple});
        }
        check.triples.push_back(std::move(triple));
      }
  }
  return check;
}

std::vector<ExceptionRecord> check_alignment_consistency(
    const std::vector<AlignmentRecord>& records, const Lexicon& lex, Direction direction) {
  std::vector<ExceptionRecord> out;
  for (const auto& rec : records) {
    Sense src = rec.src.sense();
    Sense tgt = rec.tgt.sense();
    Provenance where = provenance_of(rec, direction);
    if (src.synset != tgt.synset)
      out.push_back({ExceptionKind::Consistency, direction,
                     ConsistencyIssue{ConsistencyIssue::Kind::Mismatch, {src, tgt}, where}});
    for (Side side : {Side::Src, Side::Tgt}) {
      Sense sense = rec.side(side).sense();
      if (!lex.is_member(sense.lemma, sense.synset))
        out.push_back({ExceptionKind::Consistency, direction,
                       ConsistencyIssue{ConsistencyIssue::Kind::Membership, {sense},
                                        Provenance{rec.sent, rec.side(side).tok}}});
    }
  }
  return out;
}

// ---- substitution candidates ----

namespace {

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

bool ascii_ieq_prefix(const std::string& text, const std::string& prefix) {
  if (prefix.size() > text.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(text[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  return true;
}

// Carries an inflectional suffix and leading capital from the surface token over to
// the replacement lemma: ("turned", "turn", "reverse") -> "reversed".
std::string inflect_like(const std::string& surface, const std::string& lemma,
                         std::string replacement) {
  // Recover the suffix as it attaches to a bare stem: reverse+d and revers+ing both
  // yield the stem suffixes "ed" and "ing".
  std::optional<std::string> suffix;
  if (ascii_ieq_prefix(surface, lemma)) {
    suffix = surface.substr(lemma.size());
    if (lemma.back() == 'e' && !suffix->empty() && (suffix->front() == 'd' || suffix->front() == 'r'))
      suffix->insert(0, "e");
  } else if (lemma.size() > 1 && lemma.back() == 'e' &&
             ascii_ieq_prefix(surface, lemma.substr(0, lemma.size() - 1))) {
    std::string rest = surface.substr(lemma.size() - 1);
    if (!rest.empty() && (rest.front() == 'i' || rest.front() == 'e')) suffix = rest;
  }
  if (suffix && !suffix->empty()) {
    if (!replacement.empty() && replacement.back() == 'e' &&
        (suffix->front() == 'e' || suffix->front() == 'i'))
      replacement.pop_back();
    replacement += *suffix;
  }
  if (!surface.empty() && std::isupper(static_cast<unsigned char>(surface.front())) &&
      !replacement.empty())
    replacement.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement.front())));
  return replacement;
}

}  // namespace

std::vector<SubstitutionPair> generate_substitution_candidates(
    const std::vector<ExceptionRecord>& exceptions, const std::vector<Sentence>& sentences,
    const Lexicon& lex, std::uint64_t seed) {
  std::map<std::string, const Sentence*> by_id;
  for (const auto& s : sentences) by_id.emplace(s.sent, &s);

  std::mt19937_64 rng(seed);
  std::vector<SubstitutionPair> out;
  for (const auto& exc : exceptions) {
    const auto* triple = std::get_if<TripleInstance>(&exc.instance);
    if (!triple) continue;
    const bool a_holds_b = lex.is_member(triple->src_b.lemma, triple->src_a.synset);
    const bool b_holds_a = lex.is_member(triple->src_a.lemma, triple->src_b.synset);
    if (a_holds_b == b_holds_a) continue;

    const Sense& first = a_holds_b ? triple->src_a : triple->src_b;
    const Sense& second = a_holds_b ? triple->src_b : triple->src_a;
    const auto& support = a_holds_b ? triple->support_a : triple->support_b;
    if (support.empty()) continue;
    const Provenance& where = support[static_cast<std::size_t>(rng() % support.size())];

    auto it = by_id.find(where.sent);
    if (it == by_id.end())
      throw Error(ErrorCode::MissingSentence, "no sentence " + where.sent);
    const auto& tokens = it->second->tokens;
    if (where.tok < 0 || static_cast<std::size_t>(where.tok) >= tokens.size())
      throw Error(ErrorCode::MissingSentence,
                  "sentence " + where.sent + " has no token " + std::to_string(where.tok));

    std::vector<std::string> modified = tokens;
    auto& slot = modified[static_cast<std::size_t>(where.tok)];
    slot = inflect_like(slot, first.lemma.form(), second.lemma.form());
    out.push_back({where.sent, where.tok, first.lemma, second.lemma, join(tokens), join(modified)});
  }
  return out;
}

std::string serialize(const SubstitutionPair& pair) {
  return detail::dump(json{{"modified", pair.modified},
                           {"original", pair.original},
                           {"replaced", pair.replaced.form()},
                           {"replacement", pair.replacement.form()},
                           {"sent", pair.sent},
                           {"tok", pair.tok}});
}

// ---- exception file ----

namespace {

json sense_json(const Lemma& lemma, const std::optional<SynsetId>& synset) {
  json j{{"lang", lemma.lang().str()},
         {"lemma", lemma.form()},
         {"pos", std::string(1, pos_tag(lemma.pos()))}};
  if (synset) j["synset"] = synset->str();
  return j;
}

}  // namespace

ExceptionLine to_line(const ExceptionRecord& record) {
  ExceptionLine line;
  line.kind = std::string(to_string(record.kind));
  line.direction = std::string(to_string(record.direction));
  line.support = record.support();
  auto add = [&](const Sense& s) { line.senses.push_back({s.lemma, s.synset}); };
  std::visit(
      [&](const auto& inst) {
        using T = std::decay_t<decltype(inst)>;
        if constexpr (std::is_same_v<T, TripleInstance>) {
          add(inst.src_a), add(inst.src_b), add(inst.tgt);
        } else if constexpr (std::is_same_v<T, QuadInstance>) {
          add(inst.pair_1.src), add(inst.pair_1.tgt), add(inst.pair_2.src), add(inst.pair_2.tgt);
        } else if constexpr (std::is_same_v<T, WordTriple>) {
          for (const Lemma* l : {&inst.e_x, &inst.e_y, &inst.f_z})
            line.senses.push_back({*l, std::nullopt});
        } else {
          line.issue = std::string(to_string(inst.kind));
          for (const auto& s : inst.senses) add(s);
        }
      },
      record.instance);
  return line;
}

std::string serialize(const ExceptionLine& line) {
  json senses = json::array();
  for (const auto& s : line.senses) senses.push_back(sense_json(s.lemma, s.synset));
  json support = json::array();
  for (const auto& p : line.support) support.push_back(json{{"sent", p.sent}, {"tok", p.tok}});
  json j{{"direction", line.direction}, {"kind", line.kind}, {"senses", senses}, {"support", support}};
  if (!line.issue.empty()) j["issue"] = line.issue;
  return detail::dump(j);
}

void write_exceptions(std::ostream& out, const std::vector<ExceptionRecord>& records) {
  for (const auto& rec : records) out << serialize(to_line(rec)) << '\n';
}

ParseResult<ExceptionLine> parse_exception_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<ExceptionLine>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"kind", "direction", "issue", "senses", "support"});
    ExceptionLine line;
    line.kind = detail::get_string(j, "kind");
    if (line.kind != "TRIPLE" && line.kind != "QUAD" && line.kind != "WORD" &&
        line.kind != "CONSISTENCY")
      throw FieldError{"kind", "unknown exception kind \"" + line.kind + "\""};
    line.direction = detail::get_string(j, "direction");
    if (!parse_direction(line.direction))
      throw FieldError{"direction", "direction must be st or ts"};
    if (j.contains("issue")) {
      line.issue = detail::get_string(j, "issue");
      if (line.issue != "MISMATCH" && line.issue != "MEMBERSHIP")
        throw FieldError{"issue", "unknown consistency issue \"" + line.issue + "\""};
    }
    for (const auto& s : detail::get_array(j, "senses")) {
      if (!s.is_object()) throw FieldError{"senses", "senses must be objects"};
      detail::nested("senses", [&] {
        detail::reject_unknown_keys(s, {"lang", "lemma", "pos", "synset"});
        auto pos = parse_pos(detail::get_string(s, "pos"));
        if (!pos) throw FieldError{"pos", "unknown part of speech"};
        LanguageId lang(detail::get_string(s, "lang"));
        ExceptionLine::SenseRef ref{Lemma(lang, detail::get_string(s, "lemma"), *pos), std::nullopt};
        if (s.contains("synset")) ref.synset = SynsetId(detail::get_string(s, "synset"));
        line.senses.push_back(std::move(ref));
        return 0;
      });
    }
    for (const auto& p : detail::get_array(j, "support")) {
      if (!p.is_object()) throw FieldError{"support", "support entries must be objects"};
      detail::nested("support", [&] {
        detail::reject_unknown_keys(p, {"sent", "tok"});
        line.support.push_back({detail::get_string(p, "sent"), static_cast<int>(detail::get_int(p, "tok"))});
        return 0;
      });
    }
    return line;
  });
}

// ---- orchestration and reporting ----

std::size_t VerificationReport::total_exceptions() const {
  std::size_t total = consistency ? consistency->exceptions : 0;
  for (const auto& [d, r] : directions)
    for (const auto* c : {&r.triples, &r.quads, &r.word})
      if (*c) total += (*c)->exceptions;
  return total;
}

DetectionResult run_detection(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                              const DetectOptions& options) {
  DetectionResult result;
  auto append = [&](std::vector<ExceptionRecord> more) {
    result.exceptions.insert(result.exceptions.end(), std::make_move_iterator(more.begin()),
                             std::make_move_iterator(more.end()));
  };
  for (Direction d : options.directions) {
    DirectionReport& rep = result.report.directions[d];
    if (options.triples) {
      auto triples = enumerate_cor1_triples(records, lex, d);
      auto exc = detect_sense_exceptions(triples, d);
      rep.triples = CheckCounts{triples.size(), exc.size()};
      append(std::move(exc));
    }
    if (options.quads) {
      auto quads = enumerate_thm1_quads(records, lex, d);
      auto exc = detect_sense_exceptions(quads, d);
      rep.quads = CheckCounts{quads.size(), exc.size()};
      append(std::move(exc));
    }
    if (options.word) {
      auto check = check_word_theorem(records, lex, d);
      rep.word = CheckCounts{check.triples.size(), check.exceptions.size()};
      rep.word_categories = check.categories;
      append(std::move(check.exceptions));
    }
  }
  if (options.consistency) {
    Direction label = options.directions.empty() ? Direction::SrcToTgt : options.directions.front();
    auto exc = check_alignment_consistency(records, lex, label);
    for (const auto& e : exc) {
      const auto& issue = std::get<ConsistencyIssue>(e.instance);
      if (issue.kind == ConsistencyIssue::Kind::Mismatch) ++result.report.mismatch;
      else ++result.report.membership;
    }
    result.report.consistency = CheckCounts{records.size(), exc.size()};
    append(std::move(exc));
  }
  return result;
}

namespace {

json counts_json(const CheckCounts& c) {
  return json{{"instances", c.instances}, {"exceptions", c.exceptions}};
}

}  // namespace

std::string report_json(const VerificationReport& report, int indent) {
  json directions = json::object();
  for (const auto& [d, r] : report.directions) {
    json entry = json::object();
    if (r.triples) entry["triples"] = counts_json(*r.triples);
    if (r.quads) entry["quads"] = counts_json(*r.quads);
    if (r.word) {
      json w = counts_json(*r.word);
      w["polysemy_only"] = r.word_categories->polysemy_only;
      w["synonymy_only"] = r.word_categories->synonymy_only;
      w["both"] = r.word_categories->both;
      w["neither"] = r.word_categories->neither;
      entry["word"] = w;
    }
    directions[std::string(to_string(d))] = entry;
  }
  json j{{"directions", directions}, {"total_exceptions", report.total_exceptions()}};
  if (report.consistency) {
    json c = counts_json(*report.consistency);
    c["mismatch"] = report.mismatch;
    c["membership"] = report.membership;
    j["consistency"] = c;
  }
  return j.dump(indent);
}

std::string report_table(const VerificationReport& report) {
  std::ostringstream out;
  auto row = [&](const std::string& label, const CheckCounts& c) {
    out << label;
    for (std::size_t i = label.size(); i < 22; ++i) out << ' ';
    out << c.instances << " instances, " << c.exceptions << " exceptions\n";
  };
  for (const auto& [d, r] : report.directions) {
    std::string dir(to_string(d));
    if (r.triples) row("triples " + dir, *r.triples);
    if (r.quads) row("quads " + dir, *r.quads);
    if (r.word) {
      row("word " + dir, *r.word);
      const auto& w = *r.word_categories;
      out << "  polysemy-only " << w.polysemy_only << ", synonymy-only " << w.synonymy_only
          << ", both " << w.both << ", neither " << w.neither << '\n';
    }
  }
  if (report.consistency) {
    row("consistency", *report.consistency);
    out << "  mismatch " << report.mismatch << ", membership " << report.membership << '\n';
  }
  return out.str();
}

}  // namespace synlint
