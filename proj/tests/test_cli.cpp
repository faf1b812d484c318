#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "support.hpp"
#include "synlint/commands.hpp"

using namespace synlint;
using namespace synlint::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "synlint");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::path(SYNLINT_TEST_SCRATCH) / "cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
  auto path = scratch(name);
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

std::string read(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string lexicon_file(const std::string& name, const Lexicon& lex) {
  std::ostringstream out;
  write_lexicon(out, lex);
  return write(name, out.str());
}

// Writes a generated corpus; returns {lexicon, alignments, truth, sentences} paths.
std::vector<std::string> synth(const std::string& tag, const std::string& config_json) {
  std::string config = write(tag + ".config.json", config_json);
  std::vector<std::string> paths = {scratch(tag + ".lex.jsonl").string(), scratch(tag + ".al.jsonl").string(),
                                    scratch(tag + ".truth.jsonl").string(), scratch(tag + ".sent.jsonl").string()};
  auto r = run({"synth", "--config", config, "--out-lexicon", paths[0], "--out-alignments", paths[1],
                "--out-truth", paths[2], "--out-sentences", paths[3]});
  REQUIRE(r.code == 0);
  return paths;
}

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"detect", "--lexicon", "x"}).code == 2);
  CHECK(run({"validate", "--lexicon", scratch("missing.jsonl").string()}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("cli validate") {
  auto ok = run({"validate", "--lexicon", lexicon_file("toy.jsonl", toy_lexicon())});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("one-synset-per-sense: PASS") != std::string::npos);
  CHECK(ok.out.find("index-inverse: PASS") != std::string::npos);

  auto conflict = run({"validate", "--lexicon",
                       write("gap.jsonl", "{\"id\":\"S1\",\"pos\":\"n\",\"members\":{\"en\":[\"a\"]},\"gaps\":[\"en\"]}\n")});
  CHECK(conflict.code == 1);
  CHECK(conflict.out.find("member-gap-disjoint: FAIL") != std::string::npos);

  auto dup = run({"validate", "--lexicon",
                  write("dup.jsonl", "{\"id\":\"S1\",\"pos\":\"n\",\"members\":{\"en\":[\"a\",\"A\"]}}\n")});
  CHECK(dup.code == 1);
  CHECK(dup.out.find("one-synset-per-sense: FAIL") != std::string::npos);

  auto broken = run({"validate", "--lexicon", write("broken.jsonl", "{\"id\":\"S1\"}\n")});
  CHECK(broken.code == 2);
  CHECK(broken.err.find("line 1") != std::string::npos);
  CHECK(run({"validate", "--lenient", "--lexicon", write("broken2.jsonl", "{\"id\":\"S1\"}\n")}).code == 0);
}

TEST_CASE("cli detect: clean, corrupted and word mode") {
  auto clean = synth("clean", R"({"seed": 3, "n_synsets": 200, "n_alignments": 2000})");
  auto r = run({"detect", "--lexicon", clean[0], "--alignments", clean[1], "--out", scratch("clean.exc").string()});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["total_exceptions"] == 0);
  CHECK(read(scratch("clean.exc").string()).empty());

  auto noisy = synth("noisy", R"({"seed": 3, "n_synsets": 60, "n_alignments": 600, "err_reannotate": 0.03, "err_misalign": 0.02})");
  r = run({"detect", "--lexicon", noisy[0], "--alignments", noisy[1]});
  CHECK(r.code == 1);
  json report = json::parse(r.out);

  std::ifstream lex_in(noisy[0]), al_in(noisy[1]);
  Lexicon lex = Lexicon::build(parse_lexicon_file(lex_in).records);
  auto records = parse_alignment_file(al_in).records;
  for (auto [d, name] : {std::pair{Direction::SrcToTgt, "st"}, std::pair{Direction::TgtToSrc, "ts"}}) {
    auto triples = oracle::triples(records, d);
    std::size_t triple_exc = 0;
    for (const auto& t : triples) triple_exc += t.src_a.synset != t.src_b.synset;
    CHECK(report["directions"][name]["triples"]["instances"] == triples.size());
    CHECK(report["directions"][name]["triples"]["exceptions"] == triple_exc);
    auto quads = oracle::quads(records, d);
    std::size_t quad_exc = 0;
    for (const auto& q : quads) quad_exc += q.pair_1.src.synset != q.pair_2.src.synset;
    CHECK(report["directions"][name]["quads"]["instances"] == quads.size());
    CHECK(report["directions"][name]["quads"]["exceptions"] == quad_exc);
  }

  r = run({"detect", "--lexicon", noisy[0], "--alignments", noisy[1], "--mode", "word", "--direction", "st"});
  json word = json::parse(r.out)["directions"]["st"]["word"];
  for (const char* key : {"polysemy_only", "synonymy_only", "both", "neither"}) CHECK(word.contains(key));
  CHECK_FALSE(json::parse(r.out)["directions"].contains("ts"));

  auto unknown = write("unknown.jsonl",
                       "{\"sent\":\"x\",\"src\":{\"lang\":\"en\",\"lemma\":\"a\",\"pos\":\"n\",\"synset\":\"NOPE\",\"tok\":0},"
                       "\"tgt\":{\"lang\":\"it\",\"lemma\":\"b\",\"pos\":\"n\",\"synset\":\"NOPE\",\"tok\":0}}\n");
  CHECK(run({"detect", "--lexicon", noisy[0], "--alignments", unknown}).code == 2);
  CHECK(run({"detect", "--lenient", "--lexicon", noisy[0], "--alignments", unknown}).code == 0);
}

TEST_CASE("cli repair") {
  auto clean = synth("rclean", R"({"seed": 5, "n_synsets": 100, "n_alignments": 1000})");
  auto out_al = scratch("rclean.out.al").string();
  auto out_lex = scratch("rclean.out.lex").string();
  auto out_sug = scratch("rclean.out.sug").string();
  auto r = run({"repair", "--lexicon", clean[0], "--alignments", clean[1], "--apply", "--out-alignments", out_al,
                "--out-lexicon", out_lex, "--out-suggestions", out_sug});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["suggestions"] == 0);
  CHECK(read(out_al) == read(clean[1]));
  CHECK(read(out_lex) == read(clean[0]));
  CHECK(read(out_sug).empty());

  // one isolated re-annotation
  Lexicon lex = toy_lexicon();
  std::vector<AlignmentRecord> records = {pair("s1", 0, "test", "T3", "prova", "T1"),
                                          pair("s2", 0, "trial", "T1", "prova", "T1"),
                                          pair("s3", 0, "trial", "T2", "processo", "T2")};
  auto lex_path = lexicon_file("toy_r.jsonl", lex);
  auto al_path = write("one.jsonl", to_jsonl(records));
  r = run({"repair", "--lexicon", lex_path, "--alignments", al_path, "--apply", "--out-alignments", out_al,
           "--out-lexicon", out_lex, "--out-suggestions", out_sug});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["suggestions"] == 1);
  CHECK(run({"detect", "--lexicon", out_lex, "--alignments", out_al}).code == 0);

  // without --apply nothing but suggestions is written
  auto untouched = scratch("untouched.al").string();
  fs::remove(untouched);
  r = run({"repair", "--lexicon", lex_path, "--alignments", al_path, "--out-suggestions", out_sug});
  CHECK(r.code == 0);
  CHECK_FALSE(fs::exists(untouched));
  CHECK(json::parse(r.out)["applied"] == 0);

  AlignmentRecord b = pair("s1", 0, "test", "T3", "processo", "T2");
  b.tgt.tok = 1;
  std::vector<AlignmentRecord> conflicted = {pair("s1", 0, "test", "T3", "prova", "T1"), b,
                                             pair("s2", 0, "trial", "T1", "prova", "T1"),
                                             pair("s3", 0, "trial", "T2", "processo", "T2")};
  r = run({"repair", "--lexicon", lex_path, "--alignments", write("conflict.jsonl", to_jsonl(conflicted))});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["unresolved"].size() == 1);
}

TEST_CASE("cli stats") {
  Lexicon one = Lexicon::build({synset("L1", 'n', {{"en", {"liter", "litre"}}, {"it", {"litro"}}}),
                                synset("M1", 'n', {{"en", {"meter"}}, {"it", {"metro"}}})});
  auto r = run({"stats", "--lexicon", lexicon_file("liter.jsonl", one)});
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["languages"]["en"]["absolute_synonym_pairs"] == 1);
  CHECK(j["languages"]["it"]["absolute_synonym_pairs"] == 0);
  CHECK(j["pairs"]["en,it"]["absolute_translation_pairs"] == 3);

  r = run({"stats", "--lexicon", write("empty.jsonl", "")});
  CHECK(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["synsets"] == 0);
  CHECK(j["languages"].empty());

  CHECK(run({"stats", "--lexicon", lexicon_file("liter2.jsonl", one), "--lang", "de"}).code == 2);
  r = run({"stats", "--lexicon", lexicon_file("liter3.jsonl", one), "--pair", "en,it"});
  CHECK(json::parse(r.out)["pairs"]["en,it"]["absolute_translation_pairs"] == 3);
}

TEST_CASE("cli synth and score") {
  const char* config = R"({"seed": 11, "n_synsets": 150, "n_alignments": 1500, "err_reannotate": 0.02, "err_misalign": 0.01})";
  auto a = synth("det_a", config);
  auto b = synth("det_b", config);
  for (int i = 0; i < 4; ++i) CHECK(read(a[i]) == read(b[i]));
  CHECK(run({"synth", "--config", write("bad.json", R"({"gap_rate": 2})"), "--out-lexicon", scratch("x").string(),
             "--out-alignments", scratch("y").string(), "--out-truth", scratch("z").string()})
            .code == 2);

  auto exc = scratch("det_a.exc").string();
  auto sug = scratch("det_a.sug").string();
  CHECK(run({"detect", "--lexicon", a[0], "--alignments", a[1], "--out", exc}).code == 1);
  CHECK(run({"repair", "--lexicon", a[0], "--alignments", a[1], "--out-suggestions", sug}).code <= 1);
  auto r = run({"score", "--exceptions", exc, "--suggestions", sug, "--truth", a[2], "--lexicon", a[0],
                "--alignments", a[1]});
  REQUIRE(r.code == 0);
  json score = json::parse(r.out);
  CHECK(score["detection"]["recall"] == 1.0);
  CHECK(score["detection"]["precision"] == 1.0);

  auto clean = synth("sclean", R"({"seed": 2, "n_synsets": 100, "n_alignments": 500})");
  auto clean_exc = scratch("sclean.exc").string();
  CHECK(run({"detect", "--lexicon", clean[0], "--alignments", clean[1], "--out", clean_exc}).code == 0);
  score = json::parse(run({"score", "--exceptions", clean_exc, "--truth", clean[2]}).out);
  CHECK(score["detection"]["precision"] == 1.0);
  CHECK(score["detection"]["recall"] == 1.0);
}

TEST_CASE("cli substitute") {
  Lexicon lex = toy_lexicon();
  std::vector<AlignmentRecord> records = {pair("m1", 2, "turn", "R1", "rovesciare", "R3", 'v'),
                                          pair("m2", 0, "reverse", "R3", "rovesciare", "R3", 'v')};
  auto sentences = write("m.sent.jsonl", "{\"lang\":\"en\",\"sent\":\"m1\",\"tokens\":[\"Their\",\"world\",\"turned\",\"black\"]}\n");
  auto r = run({"substitute", "--lexicon", lexicon_file("toy_s.jsonl", lex), "--alignments",
                write("m.al.jsonl", to_jsonl(records)), "--sentences", sentences, "--seed", "3"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["modified"] == "Their world reversed black");
}
