#include "synlint/repair.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>

#include "jsonl.hpp"
#include "synlint/text.hpp"

namespace synlint {

using detail::FieldError;
using detail::json;

std::string_view to_string(SuggestionKind kind) {
  return kind == SuggestionKind::Correct ? "CORRECT" : "ADD";
}

namespace {

void suggest_for(const SenseAlignment& pair, const SynsetId& target, const Lexicon& lex,
                 std::vector<CorrectionSuggestion>& out) {
  if (pair.src.synset == target) return;
  const SuggestionKind kind =
      lex.is_member(pair.src.lemma, target) ? SuggestionKind::Correct : SuggestionKind::Add;
  for (const auto& where : pair.tokens)
    out.push_back({kind, TokenRef{where.sent, pair.source_side, where.tok}, pair.src.synset, target,
                   pair.src.lemma.form(), 1});
}

}  // namespace

std::vector<CorrectionSuggestion> suggest_corrections(const SenseAlignment& pair_1,
                                                      const SenseAlignment& pair_2,
                                                      const Lexicon& lex) {
  if (!senses_synonymous(pair_1.tgt, pair_2.tgt))
    throw Error(ErrorCode::PremiseViolation, "target senses " + pair_1.tgt.to_string() + " and " +
                                                 pair_2.tgt.to_string() + " are not synonymous");
  std::vector<CorrectionSuggestion> out;
  if (senses_synonymous(pair_1.src, pair_2.src)) return out;
  const SynsetId& target = pair_1.tgt.synset;
  suggest_for(pair_1, target, lex, out);
  suggest_for(pair_2, target, lex, out);
  return out;
}

RepairRun run_repair(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                     Direction direction) {
  const Side side = source_side(direction);
  std::vector<std::pair<SenseAlignment, SenseAlignment>> premises;
  for (const auto& exc : detect_sense_exceptions(enumerate_cor1_triples(records, lex, direction), direction)) {
    const auto& t = std::get<TripleInstance>(exc.instance);
    premises.push_back({{t.src_a, t.tgt, side, t.support_a}, {t.src_b, t.tgt, side, t.support_b}});
  }
  for (const auto& exc : detect_sense_exceptions(enumerate_thm1_quads(records, lex, direction), direction)) {
    const auto& q = std::get<QuadInstance>(exc.instance);
    premises.push_back({{q.pair_1.src, q.pair_1.tgt, side, q.support_1},
                        {q.pair_2.src, q.pair_2.tgt, side, q.support_2}});
  }

  // (token, to) -> merged suggestion; support counts exceptions, not tokens
  std::map<std::pair<TokenRef, SynsetId>, CorrectionSuggestion> merged;
  for (const auto& [p1, p2] : premises) {
    std::set<std::pair<TokenRef, SynsetId>> seen;
    for (auto& s : suggest_corrections(p1, p2, lex)) {
      auto key = std::make_pair(s.token, s.to);
      if (!seen.insert(key).second) continue;
      auto [it, fresh] = merged.emplace(key, s);
      if (!fresh) ++it->second.support;
    }
  }

  RepairRun run;
  for (auto& [key, s] : merged) run.suggestions.push_back(std::move(s));
  std::map<TokenRef, std::vector<CorrectionSuggestion>> by_token;
  for (const auto& s : run.suggestions) {
    (s.kind == SuggestionKind::Correct ? run.report.correct : run.report.add)++;
    by_token[s.token].push_back(s);
  }
  for (auto& [token, list] : by_token)
    if (list.size() > 1) run.report.conflicts.push_back({token, std::move(list)});
  return run;
}

RepairOutcome apply_corrections(const std::vector<AlignmentRecord>& records, const Lexicon& lex,
                                const std::vector<CorrectionSuggestion>& suggestions,
                                const RepairPolicy& policy) {
  RepairOutcome outcome{records, lex, {}};
  auto& report = outcome.report;

  std::map<TokenRef, std::vector<std::size_t>> token_records;
  for (std::size_t i = 0; i < outcome.records.size(); ++i)
    for (Side side : {Side::Src, Side::Tgt}) {
      const auto& rec = outcome.records[i];
      token_records[TokenRef{rec.sent, side, rec.side(side).tok}].push_back(i);
    }

  std::map<TokenRef, std::vector<CorrectionSuggestion>> by_token;
  for (const auto& s : suggestions) {
    (s.kind == SuggestionKind::Correct ? report.correct : report.add)++;
    if (s.support < policy.min_support) continue;
    if (s.kind == SuggestionKind::Add && !policy.allow_add) continue;
    by_token[s.token].push_back(s);
  }

  for (auto& [token, list] : by_token) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::set<SynsetId> targets;
    for (const auto& s : list) targets.insert(s.to);

    const CorrectionSuggestion* chosen = &list.front();
    if (targets.size() > 1) {
      report.conflicts.push_back({token, list});
      chosen = nullptr;
      if (policy.conflict == ConflictPolicy::HighestSupport) {
        auto best = std::max_element(list.begin(), list.end(), [](const auto& a, const auto& b) {
          return a.support < b.support;
        });
        auto ties = std::count_if(list.begin(), list.end(),
                                  [&](const auto& s) { return s.support == best->support; });
        if (ties == 1) chosen = &*best;
      }
      if (!chosen) {
        report.unresolved.push_back({token, list});
        continue;
      }
    }

    auto hit = token_records.find(token);
    if (hit == token_records.end()) continue;
    if (chosen->kind == SuggestionKind::Add) {
      const auto& word = outcome.records[hit->second.front()].side(token.side).word;
      outcome.lexicon = outcome.lexicon.with_member(chosen->to, word);
    }
    for (std::size_t i : hit->second) outcome.records[i].side(token.side).tags = {chosen->to};
    ++report.applied;
  }
  return outcome;
}

std::string serialize(const CorrectionSuggestion& s) {
  return detail::dump(json{{"from", s.from.str()},
                           {"kind", std::string(to_string(s.kind))},
                           {"lemma", s.lemma},
                           {"sent", s.token.sent},
                           {"side", std::string(to_string(s.token.side))},
                           {"support", s.support},
                           {"to", s.to.str()},
                           {"tok", s.token.tok}});
}

void write_suggestions(std::ostream& out, const std::vector<CorrectionSuggestion>& suggestions) {
  for (const auto& s : suggestions) out << serialize(s) << '\n';
}

ParseResult<CorrectionSuggestion> parse_suggestion_file(std::istream& in, ParseMode mode) {
  return detail::read_lines<CorrectionSuggestion>(in, mode, [](const json& j, std::size_t) {
    detail::reject_unknown_keys(j, {"kind", "sent", "side", "tok", "from", "to", "lemma", "support"});
    CorrectionSuggestion s;
    std::string kind = detail::get_string(j, "kind");
    if (kind == "CORRECT") s.kind = SuggestionKind::Correct;
    else if (kind == "ADD") s.kind = SuggestionKind::Add;
    else throw FieldError{"kind", "kind must be CORRECT or ADD"};
    s.token.sent = detail::get_string(j, "sent");
    std::string side = detail::get_string(j, "side");
    if (side == "src") s.token.side = Side::Src;
    else if (side == "tgt") s.token.side = Side::Tgt;
    else throw FieldError{"side", "side must be src or tgt"};
    s.token.tok = static_cast<int>(detail::get_int(j, "tok"));
    s.from = SynsetId(detail::get_string(j, "from"));
    s.to = SynsetId(detail::get_string(j, "to"));
    s.lemma = normalize_form(detail::get_string(j, "lemma"));
    if (s.lemma.empty()) throw FieldError{"lemma", "empty lemma"};
    long long support = detail::get_int(j, "support");
    if (support < 1) throw FieldError{"support", "support must be >= 1"};
    s.support = static_cast<int>(support);
    return s;
  });
}

namespace {

json suggestion_json(const CorrectionSuggestion& s) { return json::parse(serialize(s)); }

json conflicts_json(const std::vector<Conflict>& conflicts) {
  json out = json::array();
  for (const auto& c : conflicts) {
    json competing = json::array();
    for (const auto& s : c.competing) competing.push_back(suggestion_json(s));
    out.push_back(json{{"sent", c.token.sent},
                       {"side", std::string(to_string(c.token.side))},
                       {"tok", c.token.tok},
                       {"competing", competing}});
  }
  return out;
}

}  // namespace

std::string report_json(const RepairReport& report, int indent) {
  return json{{"correct", report.correct},
              {"add", report.add},
              {"applied", report.applied},
              {"conflicts", conflicts_json(report.conflicts)},
              {"unresolved", conflicts_json(report.unresolved)}}
      .dump(indent);
}

}  // namespace synlint
