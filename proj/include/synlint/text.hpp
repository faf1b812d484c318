#pragma once

#include <string>
#include <string_view>

namespace synlint {

// Canonical lemma form: NFC, Unicode case-folded, whitespace runs collapsed to
// a single space, trimmed. Throws Error(SchemaError) on ill-formed UTF-8.
std::string normalize_form(std::string_view form);

// Language codes are ASCII-lowercased and trimmed.
std::string normalize_language(std::string_view code);

}  // namespace synlint
