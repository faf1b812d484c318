#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "synlint/commands.hpp"
#include "synlint/ingest.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/repair.hpp"
#include "synlint/synthgen.hpp"
#include "synlint/verify.hpp"

namespace py = pybind11;
using namespace synlint;

namespace {

// Alignment records held on the C++ side; Python sees only counts and JSON lines.
struct Corpus {
  std::vector<AlignmentRecord> records;
};

PartOfSpeech pos_arg(const std::string& tag) {
  auto pos = parse_pos(tag);
  if (!pos) throw Error(ErrorCode::SchemaError, "unknown part of speech " + tag);
  return *pos;
}

Lemma lemma_arg(const std::string& lang, const std::string& form, const std::string& pos) {
  return Lemma(LanguageId(lang), form, pos_arg(pos));
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
  return in;
}

std::vector<std::pair<std::string, std::string>> forms(const std::vector<Lexicon::LemmaPair>& pairs) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : pairs) out.emplace_back(a.form(), b.form());
  return out;
}

template <class T, class F>
std::vector<std::string> lines(const std::vector<T>& items, F&& to_line) {
  std::vector<std::string> out;
  for (const auto& item : items) out.push_back(to_line(item));
  return out;
}

}  // namespace

PYBIND11_MODULE(_synlint, m) {
  m.doc() = "Consistency checks and repair for multi-wordnets and sense-annotated bitexts";

  py::register_exception<Error>(m, "SynlintError");

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("from_file", [](const std::string& path) {
        auto in = open(path);
        return Lexicon::build(parse_lexicon_file(in).records);
      })
      .def_static("from_jsonl", [](const std::string& text) {
        std::istringstream in(text);
        return Lexicon::build(parse_lexicon_file(in).records);
      })
      .def("__len__", &Lexicon::size)
      .def("languages", [](const Lexicon& lex) {
        std::vector<std::string> out;
        for (const auto& l : lex.languages()) out.push_back(l.str());
        return out;
      })
      .def("synsets_of", [](const Lexicon& lex, const std::string& lang, const std::string& form,
                            const std::string& pos) {
        std::vector<std::string> out;
        for (const auto& id : lex.synsets_of(lemma_arg(lang, form, pos))) out.push_back(id.str());
        return out;
      }, py::arg("lang"), py::arg("form"), py::arg("pos") = "n")
      .def("is_monosemous", [](const Lexicon& lex, const std::string& lang, const std::string& form,
                               const std::string& pos) {
        return lex.is_monosemous(lemma_arg(lang, form, pos));
      }, py::arg("lang"), py::arg("form"), py::arg("pos") = "n")
      .def("near_synonyms", [](const Lexicon& lex, const std::string& lang, const std::string& a,
                               const std::string& b, const std::string& pos) {
        return lex.near_synonyms(lemma_arg(lang, a, pos), lemma_arg(lang, b, pos));
      }, py::arg("lang"), py::arg("a"), py::arg("b"), py::arg("pos") = "n")
      .def("absolute_synonyms", [](const Lexicon& lex, const std::string& lang, const std::string& a,
                                   const std::string& b, const std::string& pos) {
        return lex.absolute_synonyms(lemma_arg(lang, a, pos), lemma_arg(lang, b, pos));
      }, py::arg("lang"), py::arg("a"), py::arg("b"), py::arg("pos") = "n")
      .def("absolute_synonym_pairs", [](const Lexicon& lex, const std::string& lang) {
        return forms(lex.absolute_synonym_pairs(LanguageId(lang)));
      })
      .def("absolute_translation_pairs", [](const Lexicon& lex, const std::string& e, const std::string& f) {
        return forms(lex.absolute_translation_pairs(LanguageId(e), LanguageId(f)));
      })
      .def("restrict_to_language", [](const Lexicon& lex, const std::string& lang) {
        return lex.restrict_to_language(LanguageId(lang));
      })
      .def("to_jsonl", [](const Lexicon& lex) {
        std::ostringstream out;
        write_lexicon(out, lex);
        return out.str();
      });

  py::class_<Corpus>(m, "Corpus")
      .def_static("from_file", [](const std::string& path) {
        auto in = open(path);
        return Corpus{filter_alignments(parse_alignment_file(in).records).records};
      })
      .def_static("from_jsonl", [](const std::string& text) {
        std::istringstream in(text);
        return Corpus{filter_alignments(parse_alignment_file(in).records).records};
      })
      .def("__len__", [](const Corpus& c) { return c.records.size(); })
      .def("to_jsonl", [](const Corpus& c) {
        std::ostringstream out;
        write_alignments(out, c.records);
        return out.str();
      });

  m.def("detect", [](const Corpus& corpus, const Lexicon& lex, bool triples, bool quads, bool word,
                     bool consistency, const std::vector<std::string>& directions) {
    DetectOptions opt{triples, quads, word, consistency, {}};
    for (const auto& d : directions) {
      auto dir = parse_direction(d);
      if (!dir) throw Error(ErrorCode::SchemaError, "direction must be st or ts");
      opt.directions.push_back(*dir);
    }
    auto result = run_detection(corpus.records, lex, opt);
    return std::make_pair(report_json(result.report, -1),
                          lines(result.exceptions, [](const auto& e) { return serialize(to_line(e)); }));
  }, py::arg("corpus"), py::arg("lexicon"), py::arg("triples") = true, py::arg("quads") = true,
     py::arg("word") = true, py::arg("consistency") = true,
     py::arg("directions") = std::vector<std::string>{"st", "ts"});

  m.def("repair", [](const Corpus& corpus, const Lexicon& lex, const std::string& direction) {
    auto dir = parse_direction(direction);
    if (!dir) throw Error(ErrorCode::SchemaError, "direction must be st or ts");
    auto run = run_repair(corpus.records, lex, *dir);
    return std::make_pair(report_json(run.report, -1),
                          lines(run.suggestions, [](const auto& s) { return serialize(s); }));
  }, py::arg("corpus"), py::arg("lexicon"), py::arg("direction") = "st");

  m.def("synthesize", [](const std::string& config_json) {
    std::istringstream in(config_json);
    GenConfig config = parse_config(in);
    Lexicon lex = generate_lexicon(config);
    auto bitext = generate_bitext(lex, config);
    auto corrupted = inject_errors(bitext.records, lex, config);
    return py::make_tuple(lex, Corpus{corrupted.records},
                          lines(corrupted.truth, [](const auto& t) { return serialize(t); }));
  }, py::arg("config_json") = "{}");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> argv{"synlint"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    int code = cli::run(argv, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
