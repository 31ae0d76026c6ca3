#pragma once

#include <optional>
#include <string>
#include <string_view>

// Self-contained UAX#15 normalization (NFC/NFD/NFKC/NFKD) plus the handful
// of character classifications the pipeline needs. Tables are generated from
// the CPython Unicode database; see tools/gen_unicode_tables.py.

namespace livkit::uni {

enum class Form { NFC, NFD, NFKC, NFKD };

// Parses "nfc" / "nfd" / "nfkc" / "nfkd" (case-insensitive).
std::optional<Form> parse_form(std::string_view name);
const char* form_name(Form f);

// Strict UTF-8 decode; nullopt on any malformed sequence (overlongs,
// surrogates and out-of-range values included).
std::optional<std::u32string> decode_utf8(std::string_view s);
// Lossy decode: malformed bytes become U+FFFD.
std::u32string decode_utf8_lossy(std::string_view s);
std::string encode_utf8(std::u32string_view s);

std::u32string normalize(std::u32string_view s, Form f);
// Convenience wrapper over decode/normalize/encode. Malformed input bytes
// are replaced with U+FFFD first; callers that must reject bad input should
// run decode_utf8 themselves.
std::string normalize(std::string_view s, Form f);
bool is_normalized(std::string_view s, Form f);

int combining_class(char32_t c);

bool is_punct(char32_t c);       // general category P*
bool is_format(char32_t c);      // Cf
bool is_space_sep(char32_t c);   // Zs
bool is_mark(char32_t c);        // M*
bool is_letter(char32_t c);      // L*
bool is_control(char32_t c);     // Cc
// Whitespace as Python's str.split() sees it (used by the 13a tokenizer).
bool is_py_space(char32_t c);

}  // namespace livkit::uni
