#include <doctest.h>

#include <random>
#include <set>

#include "oracle.hpp"
#include "support.hpp"
#include "synlint/error.hpp"
#include "synlint/lexicon.hpp"
#include "synlint/synthgen.hpp"

using namespace synlint;
using namespace synlint::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("build: empty and duplicate ids") {
  CHECK(Lexicon::build({}).size() == 0);
  CHECK(code_of([] {
          Lexicon::build({synset("S1", 'n', {{"en", {"a"}}}), synset("S1", 'n', {{"en", {"b"}}})});
        }) == ErrorCode::DuplicateSynsetId);
  CHECK(code_of([] { Lexicon::build({synset("S1", 'n', {{"en", {"a"}}}, {"en"})}); }) ==
        ErrorCode::MemberGapConflict);
  CHECK(code_of([] { Lexicon::build({synset("S1", 'n', {{"en", {}}})}); }) == ErrorCode::EmptySynset);
  CHECK(code_of([] { Lexicon::build({synset("S1", 'n', {}, {"it"})}); }) == ErrorCode::EmptySynset);
  CHECK(code_of([] { Lexicon::build({synset("S1", 'n', {{"en", {"a", "A"}}})}); }) ==
        ErrorCode::DuplicateSense);
}

TEST_CASE("build: index is the inverse of membership") {
  Lexicon lex = Lexicon::build({
      synset("S1", 'n', {{"en", {"dog", "hound"}}, {"it", {"cane"}}}),
      synset("S2", 'n', {{"en", {"dog"}}, {"it", {"cagnaccio"}}}),
      synset("S3", 'v', {{"en", {"dog"}}, {"it", {"pedinare"}}}),
  });
  CHECK(lex.index_consistent());
  for (const auto& [lemma, ids] : lex.index()) CHECK(ids == oracle::scan_synsets(lex, lemma));
  CHECK(lex.synsets_of(en("dog")) == std::set<SynsetId>{SynsetId("S1"), SynsetId("S2")});
  CHECK(lex.synsets_of(en("dog", 'v')) == std::set<SynsetId>{SynsetId("S3")});
}

TEST_CASE("forms are compared after normalization") {
  Lexicon lex = Lexicon::build({synset("S1", 'n', {{"en", {"  New   York "}}, {"it", {"Caf\xC3\xA9"}}})});
  CHECK(lex.contains(en("new york")));
  // decomposed e + combining acute
  CHECK(lex.contains(it("cafe\xCC\x81")));
  CHECK(lex.contains(it("CAF\xC3\x89")));
}

TEST_CASE("monosemy and polysemy") {
  Lexicon lex = toy_lexicon();
  CHECK(lex.synsets_of(en("nonexistent")).empty());
  CHECK(lex.is_monosemous(en("essence")));
  CHECK(lex.synsets_of(it("prova")).size() == 2);
  CHECK(lex.is_polysemous(it("prova")));
  CHECK_FALSE(lex.is_monosemous(it("prova")));
  CHECK(code_of([&] { lex.is_monosemous(en("nonexistent")); }) == ErrorCode::UnknownLemma);
  for (const auto& [lemma, ids] : lex.index())
    CHECK(lex.is_monosemous(lemma) != (ids.size() >= 2));
}

TEST_CASE("sense synonymy") {
  Sense gist = sense(en("gist"), "E1");
  Sense essence = sense(en("essence"), "E1");
  CHECK(senses_synonymous(gist, essence));
  CHECK(senses_synonymous(gist, gist));
  CHECK_FALSE(senses_synonymous(sense(en("trial"), "T1"), sense(en("trial"), "T2")));
}

TEST_CASE("near and absolute synonymy") {
  Lexicon lex = toy_lexicon();
  CHECK(lex.near_synonyms(en("test"), en("trial")));
  CHECK_FALSE(lex.near_synonyms(en("time"), en("weather")));
  CHECK(lex.near_synonyms(en("trial"), en("trial")));
  CHECK(code_of([&] { lex.near_synonyms(en("test"), it("prova")); }) == ErrorCode::LanguageMismatch);
  CHECK(code_of([&] { lex.near_synonyms(en("turn", 'v'), en("test")); }) ==
        ErrorCode::LanguageMismatch);

  CHECK(lex.absolute_synonyms(en("liter"), en("litre")));
  CHECK(lex.synsets_of(en("haste")).size() == 3);
  CHECK(lex.absolute_synonyms(en("haste"), en("hurry")));
  CHECK_FALSE(lex.absolute_synonyms(en("test"), en("trial")));
  CHECK(code_of([&] { lex.absolute_synonyms(en("liter"), en("nonexistent")); }) ==
        ErrorCode::UnknownLemma);
}

TEST_CASE("absolute synonym pairs") {
  CHECK(Lexicon().absolute_synonym_pairs(LanguageId("en")).empty());
  Lexicon lex = toy_lexicon();
  auto pairs = lex.absolute_synonym_pairs(LanguageId("en"));
  auto expected = oracle::absolute_pairs(lex, LanguageId("en"), LanguageId("en"));
  CHECK(std::set(pairs.begin(), pairs.end()) == expected);
  CHECK(pairs.size() == expected.size());
  // liter/litre, haste/hurry, bundle/package, essence/gist
  CHECK(pairs.size() == 4);
  CHECK(lex.words_with_absolute_synonym(LanguageId("en")) == 8);

  Lexicon single = Lexicon::build({synset("L1", 'n', {{"en", {"liter", "litre"}}, {"it", {"litro"}}}),
                                   synset("L2", 'n', {{"en", {"meter"}}, {"it", {"metro"}}})});
  auto one = single.absolute_synonym_pairs(LanguageId("en"));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Lexicon::LemmaPair{en("liter"), en("litre")});

  Lexicon mono = Lexicon::build({synset("A", 'n', {{"en", {"a"}}}), synset("B", 'n', {{"en", {"b"}}})});
  CHECK(mono.absolute_synonym_pairs(LanguageId("en")).empty());
}

TEST_CASE("absolute translation pairs") {
  Lexicon lex = toy_lexicon();
  auto pairs = lex.absolute_translation_pairs(LanguageId("en"), LanguageId("it"));
  std::set<Lexicon::LemmaPair> got(pairs.begin(), pairs.end());
  CHECK(got.count({en("globally", 'r'), it("globalmente", 'r')}));
  CHECK(got.count({en("liter"), it("litro")}));
  // test and prova share T1 only
  CHECK_FALSE(got.count({en("test"), it("prova")}));
  CHECK(got == oracle::absolute_pairs(lex, LanguageId("en"), LanguageId("it")));
  CHECK(code_of([&] { lex.absolute_translation_pairs(LanguageId("en"), LanguageId("en")); }) ==
        ErrorCode::SameLanguage);

  Lexicon five = Lexicon::build({
      synset("A", 'n', {{"en", {"a1", "a2"}}, {"it", {"x1"}}}),
      synset("B", 'n', {{"en", {"a1", "a2", "b"}}, {"it", {"x1", "y"}}}),
      synset("C", 'n', {{"en", {"c"}}, {"it", {"y", "z"}}}),
      synset("D", 'v', {{"en", {"c"}}, {"it", {"z"}}}),
      synset("E", 'n', {{"en", {"e"}}}, {"it"}),
  });
  auto five_pairs = five.absolute_translation_pairs(LanguageId("en"), LanguageId("it"));
  CHECK(std::set(five_pairs.begin(), five_pairs.end()) ==
        oracle::absolute_pairs(five, LanguageId("en"), LanguageId("it")));
  CHECK(five_pairs.size() == 4);
}

TEST_CASE("shared translation witness") {
  Lexicon lex = toy_lexicon();
  auto witness = lex.shared_translation_witness(en("test"), en("trial"), LanguageId("it"));
  REQUIRE(witness.size() == 1);
  CHECK(witness[0].kind == WitnessKind::Member);
  CHECK(witness[0].translations == std::vector<Lemma>{it("prova")});

  auto gap = lex.shared_translation_witness(en("concept"), en("concept"), LanguageId("it"));
  REQUIRE(gap.size() == 2);
  CHECK(gap[0].synset == SynsetId("U1"));
  CHECK(gap[0].kind == WitnessKind::Uncovered);
  CHECK(gap[1].synset == SynsetId("X1"));
  CHECK(gap[1].kind == WitnessKind::Gap);
  CHECK(code_of([&] { lex.shared_translation_witness(en("time"), en("weather"), LanguageId("it")); }) ==
        ErrorCode::NotNearSynonyms);
}

TEST_CASE("restrict to language") {
  Lexicon lex = toy_lexicon();
  Lexicon en_only = lex.restrict_to_language(LanguageId("en"));
  CHECK(en_only.languages() == std::set<LanguageId>{LanguageId("en")});
  for (const Lemma& lemma : lex.lemmas(LanguageId("en")))
    CHECK(en_only.synsets_of(lemma) == lex.synsets_of(lemma));
  CHECK(en_only.lemmas(LanguageId("it")).empty());
  CHECK(lex.restrict_to_language(LanguageId("de")).empty());
  CHECK(en_only.restrict_to_language(LanguageId("en")).records() == en_only.records());
  Lexicon it_only = lex.restrict_to_language(LanguageId("it"));
  CHECK(it_only.find(SynsetId("X1")) == nullptr);
}

TEST_CASE("with_member adds a sense and clears the gap") {
  Lexicon lex = toy_lexicon();
  Lexicon grown = lex.with_member(SynsetId("X1"), it("concetto"));
  CHECK(grown.is_member(it("concetto"), SynsetId("X1")));
  CHECK(grown.at(SynsetId("X1")).gaps.empty());
  CHECK_FALSE(lex.contains(it("concetto")));
  CHECK(grown.index_consistent());
}

TEST_CASE("property: structure of random lexicons") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    GenConfig config;
    config.seed = seed;
    config.n_synsets = 60;
    config.languages = {LanguageId("en"), LanguageId("it"), LanguageId("es")};
    Lexicon lex = generate_lexicon(config);
    CHECK(lex.index_consistent());
    for (const auto& lang : lex.languages()) {
      auto pairs = lex.absolute_synonym_pairs(lang);
      CHECK(std::set(pairs.begin(), pairs.end()) == oracle::absolute_pairs(lex, lang, lang));
      Lexicon restricted = lex.restrict_to_language(lang);
      for (const Lemma& lemma : lex.lemmas(lang))
        CHECK(restricted.synsets_of(lemma) == lex.synsets_of(lemma));
    }
    auto cross = lex.absolute_translation_pairs(LanguageId("en"), LanguageId("es"));
    CHECK(std::set(cross.begin(), cross.end()) ==
          oracle::absolute_pairs(lex, LanguageId("en"), LanguageId("es")));
    for (const auto& [lemma, ids] : lex.index()) CHECK(lex.is_monosemous(lemma) != (ids.size() >= 2));
  }
}
