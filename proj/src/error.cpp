#include "synlint/error.hpp"

namespace synlint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateSynsetId: return "DuplicateSynsetId";
    case ErrorCode::MemberGapConflict: return "MemberGapConflict";
    case ErrorCode::EmptySynset: return "EmptySynset";
    case ErrorCode::DuplicateSense: return "DuplicateSense";
    case ErrorCode::UnknownLemma: return "UnknownLemma";
    case ErrorCode::LanguageMismatch: return "LanguageMismatch";
    case ErrorCode::SameLanguage: return "SameLanguage";
    case ErrorCode::NotNearSynonyms: return "NotNearSynonyms";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::UnresolvedKey: return "UnresolvedKey";
    case ErrorCode::UnresolvedSynset: return "UnresolvedSynset";
    case ErrorCode::MissingSentence: return "MissingSentence";
    case ErrorCode::PremiseViolation: return "PremiseViolation";
    case ErrorCode::ConflictUnresolved: return "ConflictUnresolved";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InsufficientLexicalization: return "InsufficientLexicalization";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace synlint
