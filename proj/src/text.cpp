#include "synlint/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>

#include <cctype>
#include <vector>

#include "synlint/error.hpp"

namespace synlint {

namespace {

icu::UnicodeString decode_strict(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  int32_t length = 0;
  u_strFromUTF8(nullptr, 0, &length, utf8.data(), static_cast<int32_t>(utf8.size()), &status);
  if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status))
    throw Error(ErrorCode::SchemaError, "ill-formed UTF-8 in lemma form");
  status = U_ZERO_ERROR;
  std::vector<UChar> buffer(static_cast<std::size_t>(length) + 1);
  u_strFromUTF8(buffer.data(), length + 1, nullptr, utf8.data(),
                static_cast<int32_t>(utf8.size()), &status);
  if (U_FAILURE(status)) throw Error(ErrorCode::SchemaError, "ill-formed UTF-8 in lemma form");
  return icu::UnicodeString(buffer.data(), length);
}

}  // namespace

std::string normalize_form(std::string_view form) {
  icu::UnicodeString text = decode_strict(form);
  text.foldCase();

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::SchemaError, "NFC normalizer unavailable");
  icu::UnicodeString normalized = nfc->normalize(text, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::SchemaError, "NFC normalization failed");

  icu::UnicodeString collapsed;
  bool pending_space = false;
  for (int32_t i = 0; i < normalized.length();) {
    UChar32 c = normalized.char32At(i);
    i += U16_LENGTH(c);
    if (u_isUWhiteSpace(c)) {
      pending_space = !collapsed.isEmpty();
      continue;
    }
    if (pending_space) collapsed.append(static_cast<UChar>(' '));
    pending_space = false;
    collapsed.append(c);
  }

  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

std::string normalize_language(std::string_view code) {
  std::size_t begin = 0, end = code.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(code[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(code[end - 1]))) --end;
  std::string out(code.substr(begin, end - begin));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace synlint
