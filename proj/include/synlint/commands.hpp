#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace synlint::cli {

enum ExitStatus : int { kClean = 0, kFindings = 1, kInputError = 2 };

struct ValidateArgs {
  std::string lexicon;
  bool lenient = false;
};

struct DetectArgs {
  std::string lexicon;
  std::string alignments;
  std::string sense_index;  // optional
  std::string mode = "all";
  std::string direction = "both";
  std::string out;          // exceptions; empty = do not write
  std::string report;       // optional path for the JSON report (stdout otherwise)
  bool table = false;
  bool lenient = false;
};

struct RepairArgs {
  std::string lexicon;
  std::string alignments;
  std::string sense_index;
  std::string direction = "st";
  int min_support = 1;
  bool apply = false;
  bool no_add = false;
  std::string conflict = "skip";
  std::string out_alignments;
  std::string out_lexicon;
  std::string out_suggestions;
  bool lenient = false;
};

struct StatsArgs {
  std::string lexicon;
  std::string lang;
  std::string pair;  // "E,F"
  bool lenient = false;
};

struct SynthArgs {
  std::string config;
  std::string out_lexicon;
  std::string out_alignments;
  std::string out_truth;
  std::string out_sentences;
};

struct ScoreArgs {
  std::string exceptions;
  std::string suggestions;
  std::string truth;
  std::string lexicon;     // with alignments: restrict recall to detectable errors
  std::string alignments;
  std::string mode = "all";
  std::string direction = "both";
};

struct SubstituteArgs {
  std::string lexicon;
  std::string alignments;
  std::string sentences;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_validate(const ValidateArgs& args, std::ostream& out, std::ostream& err);
int cmd_detect(const DetectArgs& args, std::ostream& out, std::ostream& err);
int cmd_repair(const RepairArgs& args, std::ostream& out, std::ostream& err);
int cmd_stats(const StatsArgs& args, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);
int cmd_score(const ScoreArgs& args, std::ostream& out, std::ostream& err);
int cmd_substitute(const SubstituteArgs& args, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace synlint::cli
