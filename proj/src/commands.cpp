#include "synlint/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/repair.hpp"
#include "synlint/synthgen.hpp"
#include "synlint/verify.hpp"

namespace synlint::cli {

namespace {

using json = nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return in;
}

// Writes through a temporary buffer so a failed command leaves no partial file.
template <class F>
void write_file(const std::string& path, F&& body) {
  std::ostringstream buffer;
  body(buffer);
  if (path == "-") {
    std::cout << buffer.str();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  out << buffer.str();
}

ParseMode mode_of(bool lenient) { return lenient ? ParseMode::Lenient : ParseMode::Strict; }

void report_diagnostics(const std::vector<Diagnostic>& diags, const std::string& file,
                        std::ostream& err) {
  for (const auto& d : diags)
    err << file << ":" << d.line << ": " << to_string(d.code)
        << (d.field.empty() ? "" : " [" + d.field + "]") << ": " << d.message << '\n';
}

Lexicon load_lexicon(const std::string& path, bool lenient, std::ostream& err) {
  auto in = open_in(path);
  auto parsed = parse_lexicon_file(in, mode_of(lenient));
  report_diagnostics(parsed.diagnostics, path, err);
  return Lexicon::build(std::move(parsed.records));
}

struct LoadedCorpus {
  std::vector<AlignmentRecord> all;   // as parsed, sense numbers resolved where possible
  std::vector<AlignmentRecord> kept;  // filtered and resolved against the lexicon
  FilterReport filter;
  std::size_t unknown_synset = 0;
};

LoadedCorpus load_corpus(const std::string& path, const std::string& sense_index,
                         const Lexicon& lex, bool lenient, std::ostream& err) {
  LoadedCorpus corpus;
  auto in = open_in(path);
  auto parsed = parse_alignment_file(in, mode_of(lenient));
  report_diagnostics(parsed.diagnostics, path, err);
  corpus.all = std::move(parsed.records);
  if (!sense_index.empty()) {
    auto idx_in = open_in(sense_index);
    auto entries = parse_sense_index_file(idx_in, mode_of(lenient));
    report_diagnostics(entries.diagnostics, sense_index, err);
    auto resolved = resolve_alignments(std::move(corpus.all), SenseIndex(entries.records));
    report_diagnostics(resolved.diagnostics, path, err);
    corpus.all = std::move(resolved.records);
  }
  auto filtered = filter_alignments(corpus.all);
  corpus.filter = filtered.report;
  corpus.kept = std::move(filtered.records);
  if (lenient) {
    corpus.unknown_synset = drop_unresolved(corpus.kept, lex);
  } else {
    require_resolved(corpus.kept, lex);
  }
  return corpus;
}

json filter_json(const FilterReport& r, std::size_t unknown_synset) {
  return json{{"total", r.total},
              {"kept", r.kept - unknown_synset},
              {"dropped_multi_sense", r.dropped_multi_sense},
              {"dropped_missing", r.dropped_missing},
              {"dropped_unresolved", r.dropped_unresolved},
              {"dropped_pos_mismatch", r.dropped_pos_mismatch},
              {"dropped_unknown_synset", unknown_synset}};
}

std::optional<std::vector<Direction>> directions_of(const std::string& text) {
  if (text == "st") return std::vector<Direction>{Direction::SrcToTgt};
  if (text == "ts") return std::vector<Direction>{Direction::TgtToSrc};
  if (text == "both") return std::vector<Direction>{Direction::SrcToTgt, Direction::TgtToSrc};
  return std::nullopt;
}

DetectOptions detect_options(const std::string& mode, const std::string& direction) {
  auto dirs = directions_of(direction);
  if (!dirs) throw Error(ErrorCode::SchemaError, "unknown direction " + direction);
  DetectOptions opt;
  opt.directions = *dirs;
  if (mode != "all") {
    opt.triples = mode == "triples";
    opt.quads = mode == "quads";
    opt.word = mode == "word";
    opt.consistency = mode == "consistency";
    if (!(opt.triples || opt.quads || opt.word || opt.consistency))
      throw Error(ErrorCode::SchemaError, "unknown mode " + mode);
  }
  return opt;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_in(args.lexicon);
    auto parsed = parse_lexicon_file(in, mode_of(args.lenient));
    report_diagnostics(parsed.diagnostics, args.lexicon, err);

    auto violations = find_violations(parsed.records);
    std::map<Violation::Property, std::vector<const Violation*>> by_property;
    for (const auto& v : violations) by_property[v.property].push_back(&v);

    bool ok = true;
    auto line = [&](std::string_view name, bool pass, std::size_t count = 0) {
      out << name << ": " << (pass ? "PASS" : "FAIL");
      if (!pass && count) out << " (" << count << ")";
      out << '\n';
      ok = ok && pass;
    };
    for (auto property : {Violation::Property::UniqueId, Violation::Property::MemberGapDisjoint,
                          Violation::Property::NonEmpty, Violation::Property::OneSynsetPerSense}) {
      const auto& list = by_property[property];
      line(to_string(property), list.empty(), list.size());
      for (const auto* v : list) out << "  " << v->message << '\n';
    }
    if (violations.empty()) {
      Lexicon lex = Lexicon::build(std::move(parsed.records));
      line("index-inverse", lex.index_consistent());
      // Set-valued index entries make these hold by construction; checked all the same.
      std::map<Lemma, std::size_t> memberships;
      for (const auto& [id, rec] : lex.synsets())
        for (const auto& [lang, forms] : rec.members)
          for (const auto& form : forms) ++memberships[Lemma(lang, form, rec.pos)];
      bool partition = true, distinct = memberships.size() == lex.index().size();
      for (const auto& [lemma, ids] : lex.index()) {
        partition = partition && !ids.empty() && (lex.is_monosemous(lemma) != (ids.size() >= 2));
        distinct = distinct && memberships[lemma] == ids.size();
      }
      line("monosemy-polysemy-partition", partition);
      line("distinct-synset-per-sense", distinct);
      out << "synsets: " << lex.size() << ", lemmas: " << lex.index().size() << '\n';
    }
    return ok ? kClean : kFindings;
  });
}

int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DetectOptions opt = detect_options(args.mode, args.direction);
    Lexicon lex = load_lexicon(args.lexicon, args.lenient, err);
    LoadedCorpus corpus = load_corpus(args.alignments, args.sense_index, lex, args.lenient, err);
    DetectionResult result = run_detection(corpus.kept, lex, opt);

    if (!args.out.empty())
      write_file(args.out, [&](std::ostream& o) { write_exceptions(o, result.exceptions); });
    json report = json::parse(report_json(result.report));
    report["filter"] = filter_json(corpus.filter, corpus.unknown_synset);
    if (!args.report.empty()) {
      write_file(args.report, [&](std::ostream& o) { o << report.dump(2) << '\n'; });
    }
    if (args.table) out << report_table(result.report);
    else if (args.report.empty()) out << report.dump(2) << '\n';
    return result.exceptions.empty() ? kClean : kFindings;
  });
}

int cmd_repair(const RepairArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto direction = parse_direction(args.direction);
    if (!direction) throw Error(ErrorCode::SchemaError, "direction must be st or ts");
    RepairPolicy policy;
    policy.min_support = args.min_support;
    policy.allow_add = !args.no_add;
    if (args.conflict == "skip") policy.conflict = ConflictPolicy::Skip;
    else if (args.conflict == "highest") policy.conflict = ConflictPolicy::HighestSupport;
    else throw Error(ErrorCode::SchemaError, "conflict policy must be skip or highest");
    if (args.apply && (args.out_alignments.empty() || args.out_lexicon.empty()))
      throw Error(ErrorCode::SchemaError, "--apply needs --out-alignments and --out-lexicon");

    Lexicon lex = load_lexicon(args.lexicon, args.lenient, err);
    LoadedCorpus corpus = load_corpus(args.alignments, args.sense_index, lex, args.lenient, err);
    RepairRun run = run_repair(corpus.kept, lex, *direction);
    RepairOutcome outcome = apply_corrections(corpus.all, lex, run.suggestions, policy);

    if (!args.out_suggestions.empty())
      write_file(args.out_suggestions, [&](std::ostream& o) { write_suggestions(o, run.suggestions); });
    RepairReport report = outcome.report;
    if (args.apply) {
      write_file(args.out_alignments, [&](std::ostream& o) { write_alignments(o, outcome.records); });
      write_file(args.out_lexicon, [&](std::ostream& o) { write_lexicon(o, outcome.lexicon); });
    } else {
      report.applied = 0;
    }
    json j = json::parse(report_json(report));
    j["suggestions"] = run.suggestions.size();
    j["applied_to_files"] = args.apply;
    out << j.dump(2) << '\n';
    return report.has_unresolved() ? kFindings : kClean;
  });
}

int cmd_stats(const StatsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Lexicon lex = load_lexicon(args.lexicon, args.lenient, err);
    const auto known = lex.languages();
    auto require_known = [&](const std::string& code) {
      LanguageId lang(code);
      if (!known.count(lang)) throw Error(ErrorCode::SchemaError, "unknown language " + code);
      return lang;
    };

    std::vector<LanguageId> langs;
    std::vector<std::pair<LanguageId, LanguageId>> pairs;
    if (!args.pair.empty()) {
      auto comma = args.pair.find(',');
      if (comma == std::string::npos) throw Error(ErrorCode::SchemaError, "--pair expects E,F");
      pairs.emplace_back(require_known(args.pair.substr(0, comma)),
                         require_known(args.pair.substr(comma + 1)));
    }
    if (!args.lang.empty()) langs.push_back(require_known(args.lang));
    if (args.pair.empty() && args.lang.empty()) {
      langs.assign(known.begin(), known.end());
      for (auto a = known.begin(); a != known.end(); ++a)
        for (auto b = std::next(a); b != known.end(); ++b) pairs.emplace_back(*a, *b);
    }

    json languages = json::object();
    for (const auto& lang : langs) {
      std::map<std::size_t, std::size_t> histogram;
      std::size_t mono = 0, poly = 0;
      for (const auto& lemma : lex.lemmas(lang)) {
        const std::size_t n = lex.synsets_of(lemma).size();
        ++histogram[n];
        (n == 1 ? mono : poly)++;
      }
      json hist = json::array();
      for (auto [senses, words] : histogram) hist.push_back(json{{"senses", senses}, {"words", words}});
      languages[lang.str()] = json{{"lemmas", mono + poly},
                                   {"monosemous", mono},
                                   {"polysemous", poly},
                                   {"senses_histogram", hist},
                                   {"absolute_synonym_pairs", lex.absolute_synonym_pairs(lang).size()},
                                   {"words_with_absolute_synonym", lex.words_with_absolute_synonym(lang)}};
    }
    json pair_stats = json::object();
    for (const auto& [e, f] : pairs)
      pair_stats[e.str() + "," + f.str()] =
          json{{"absolute_translation_pairs", lex.absolute_translation_pairs(e, f).size()}};

    out << json{{"synsets", lex.size()}, {"languages", languages}, {"pairs", pair_stats}}.dump(2)
        << '\n';
    return kClean;
  });
}

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    auto in = open_in(args.config);
    GenConfig config = parse_config(in);
    Lexicon lex = generate_lexicon(config);
    Bitext bitext = generate_bitext(lex, config);
    Corruption corrupted = inject_errors(bitext.records, lex, config);

    write_file(args.out_lexicon, [&](std::ostream& o) { write_lexicon(o, lex); });
    write_file(args.out_alignments, [&](std::ostream& o) { write_alignments(o, corrupted.records); });
    write_file(args.out_truth, [&](std::ostream& o) { write_truth(o, corrupted.truth); });
    if (!args.out_sentences.empty())
      write_file(args.out_sentences, [&](std::ostream& o) { write_sentences(o, bitext.sentences); });
    out << json{{"synsets", lex.size()},
                {"alignments", corrupted.records.size()},
                {"injected", corrupted.truth.size()}}
               .dump(2)
        << '\n';
    return kClean;
  });
}

int cmd_score(const ScoreArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.exceptions.empty() && args.suggestions.empty())
      throw Error(ErrorCode::SchemaError, "score needs --exceptions and/or --suggestions");
    auto truth_in = open_in(args.truth);
    TruthLog truth = parse_truth_file(truth_in).records;

    json report = json::object();
    if (!args.exceptions.empty()) {
      auto in = open_in(args.exceptions);
      auto exceptions = parse_exception_file(in).records;
      std::optional<std::vector<bool>> census;
      if (!args.lexicon.empty() && !args.alignments.empty()) {
        Lexicon lex = load_lexicon(args.lexicon, false, err);
        LoadedCorpus corpus = load_corpus(args.alignments, "", lex, false, err);
        census = detectability_census(corpus.kept, lex, truth, detect_options(args.mode, args.direction));
      }
      report["detection"] = json::parse(score_json(score_detection(exceptions, truth, census ? &*census : nullptr)));
    }
    if (!args.suggestions.empty()) {
      auto in = open_in(args.suggestions);
      report["correction"] = json::parse(score_json(score_correction(parse_suggestion_file(in).records, truth)));
    }
    out << report.dump(2) << '\n';
    return kClean;
  });
}

int cmd_substitute(const SubstituteArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    Lexicon lex = load_lexicon(args.lexicon, false, err);
    LoadedCorpus corpus = load_corpus(args.alignments, "", lex, false, err);
    auto sent_in = open_in(args.sentences);
    auto sentences = parse_sentence_file(sent_in).records;
    auto exceptions = detect_sense_exceptions(
        enumerate_cor1_triples(corpus.kept, lex, Direction::SrcToTgt), Direction::SrcToTgt);
    auto pairs = generate_substitution_candidates(exceptions, sentences, lex, args.seed);
    auto emit = [&](std::ostream& o) {
      for (const auto& p : pairs) o << serialize(p) << '\n';
    };
    if (args.out.empty()) emit(out);
    else write_file(args.out, emit);
    return kClean;
  });
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistency checks and repair for multi-wordnets and sense-annotated bitexts"};
  app.require_subcommand(1);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check the structural properties of a lexicon file");
  v->add_option("--lexicon", validate.lexicon, "Lexicon file")->required();
  v->add_flag("--strict", "Abort on the first malformed line (default)");
  v->add_flag("--lenient", validate.lenient, "Skip malformed lines");

  DetectArgs detect;
  auto* d = app.add_subcommand("detect", "Enumerate premise instances and flag exceptions");
  d->add_option("--lexicon", detect.lexicon)->required();
  d->add_option("--alignments", detect.alignments)->required();
  d->add_option("--sense-index", detect.sense_index, "Resolve {\"sense_no\": n} annotations");
  d->add_option("--mode", detect.mode)->check(CLI::IsMember({"triples", "quads", "word", "consistency", "all"}));
  d->add_option("--direction", detect.direction)->check(CLI::IsMember({"st", "ts", "both"}));
  d->add_option("--out", detect.out, "Exception records");
  d->add_option("--report", detect.report, "Write the JSON report here instead of stdout");
  d->add_flag("--table", detect.table, "Print a human-readable table");
  d->add_flag("--strict", "Unresolved synset ids are input errors (default)");
  d->add_flag("--lenient", detect.lenient, "Skip malformed lines and unknown synsets");

  RepairArgs repair;
  auto* r = app.add_subcommand("repair", "Suggest and optionally apply sense corrections");
  r->add_option("--lexicon", repair.lexicon)->required();
  r->add_option("--alignments", repair.alignments)->required();
  r->add_option("--sense-index", repair.sense_index);
  r->add_option("--direction", repair.direction)->check(CLI::IsMember({"st", "ts"}));
  r->add_option("--min-support", repair.min_support)->check(CLI::PositiveNumber);
  r->add_flag("--apply", repair.apply);
  r->add_flag("--no-add", repair.no_add, "Never apply ADD suggestions");
  r->add_option("--conflict", repair.conflict)->check(CLI::IsMember({"skip", "highest"}));
  r->add_option("--out-alignments", repair.out_alignments);
  r->add_option("--out-lexicon", repair.out_lexicon);
  r->add_option("--out-suggestions", repair.out_suggestions);
  r->add_flag("--strict", "Unresolved synset ids are input errors (default)");
  r->add_flag("--lenient", repair.lenient);

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Polysemy histogram and absolute-synonym counts");
  s->add_option("--lexicon", stats.lexicon)->required();
  auto* lang_opt = s->add_option("--lang", stats.lang);
  s->add_option("--pair", stats.pair, "E,F")->excludes(lang_opt);

  SynthArgs synth;
  auto* g = app.add_subcommand("synth", "Generate a lexicon, bitext and truth log");
  g->add_option("--config", synth.config)->required();
  g->add_option("--out-lexicon", synth.out_lexicon)->required();
  g->add_option("--out-alignments", synth.out_alignments)->required();
  g->add_option("--out-truth", synth.out_truth)->required();
  g->add_option("--out-sentences", synth.out_sentences);

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Score exceptions and suggestions against a truth log");
  sc->add_option("--exceptions", score.exceptions);
  sc->add_option("--suggestions", score.suggestions);
  sc->add_option("--truth", score.truth)->required();
  sc->add_option("--lexicon", score.lexicon, "With --alignments: recall over detectable errors");
  sc->add_option("--alignments", score.alignments);
  sc->add_option("--mode", score.mode)->check(CLI::IsMember({"triples", "quads", "word", "consistency", "all"}));
  sc->add_option("--direction", score.direction)->check(CLI::IsMember({"st", "ts", "both"}));

  SubstituteArgs subst;
  auto* sb = app.add_subcommand("substitute", "Sentence pairs for a substitution test of triple exceptions");
  sb->add_option("--lexicon", subst.lexicon)->required();
  sb->add_option("--alignments", subst.alignments)->required();
  sb->add_option("--sentences", subst.sentences)->required();
  sb->add_option("--seed", subst.seed);
  sb->add_option("--out", subst.out);

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kClean;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kInputError;
  }

  if (v->parsed()) return cmd_validate(validate, out, err);
  if (d->parsed()) return cmd_detect(detect, out, err);
  if (r->parsed()) return cmd_repair(repair, out, err);
  if (s->parsed()) return cmd_stats(stats, out, err);
  if (g->parsed()) return cmd_synth(synth, out, err);
  if (sc->parsed()) return cmd_score(score, out, err);
  return cmd_substitute(subst, out, err);
}

}  // namespace synlint::cli
