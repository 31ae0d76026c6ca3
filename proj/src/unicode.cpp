#include "livkit/unicode.hpp"

#include <algorithm>
#include <cctype>

#include "unicode_data.hpp"

namespace livkit::uni {

namespace {

using data::DecompEntry;
using data::Range;

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable composition constants (UAX#15 section 3.12).
constexpr char32_t kSBase = 0xAC00;
constexpr char32_t kLBase = 0x1100;
constexpr char32_t kVBase = 0x1161;
constexpr char32_t kTBase = 0x11A7;
constexpr int kLCount = 19;
constexpr int kVCount = 21;
constexpr int kTCount = 28;
constexpr int kNCount = kVCount * kTCount;
constexpr int kSCount = kLCount * kNCount;

const DecompEntry* find_decomp(const DecompEntry* table, std::size_t n,
                               char32_t cp) {
  const DecompEntry* end = table + n;
  const DecompEntry* it = std::lower_bound(
      table, end, cp,
      [](const DecompEntry& e, char32_t c) { return e.cp < c; });
  return (it != end && it->cp == cp) ? it : nullptr;
}

bool in_ranges(const Range* table, std::size_t n, char32_t cp) {
  const Range* end = table + n;
  const Range* it = std::upper_bound(
      table, end, cp, [](char32_t c, const Range& r) { return c < r.lo; });
  return it != table && cp <= (it - 1)->hi;
}

void decompose_cp(char32_t cp, bool compat, std::u32string& out) {
  if (cp >= kSBase && cp < kSBase + kSCount) {
    char32_t s = cp - kSBase;
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (char32_t t = s % kTCount) out.push_back(kTBase + t);
    return;
  }
  if (compat) {
    if (const DecompEntry* e =
            find_decomp(data::kCompat, data::kCompatCount, cp)) {
      out.append(data::kDecompPool + e->offset, e->len);
      return;
    }
  }
  if (const DecompEntry* e =
          find_decomp(data::kCanonical, data::kCanonicalCount, cp)) {
    out.append(data::kDecompPool + e->offset, e->len);
    return;
  }
  out.push_back(cp);
}

// Canonical ordering: stable sort of nonzero-ccc runs by combining class.
void canonical_order(std::u32string& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    int cc = combining_class(s[i]);
    if (cc == 0) continue;
    std::size_t j = i;
    while (j > 0 && combining_class(s[j - 1]) > cc) {
      std::swap(s[j - 1], s[j]);
      --j;
    }
  }
}

bool compose_pair(char32_t a, char32_t b, char32_t& out) {
  // Hangul L+V and LV+T.
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase &&
      b < kVBase + kVCount) {
    out = kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
    return true;
  }
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 &&
      b > kTBase && b < kTBase + kTCount) {
    out = a + (b - kTBase);
    return true;
  }
  unsigned long long key =
      (static_cast<unsigned long long>(a) << 21) | static_cast<unsigned long long>(b);
  const data::ComposeEntry* end = data::kCompose + data::kComposeCount;
  const data::ComposeEntry* it = std::lower_bound(
      data::kCompose, end, key,
      [](const data::ComposeEntry& e, unsigned long long k) { return e.key < k; });
  if (it != end && it->key == key) {
    out = it->composed;
    return true;
  }
  return false;
}

std::u32string decompose(std::u32string_view s, bool compat) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t c : s) decompose_cp(c, compat, out);
  canonical_order(out);
  return out;
}

// Canonical composition over a decomposed, canonically ordered string.
// This is the standard algorithm from the UAX#15 sample implementation.
std::u32string compose(const std::u32string& src) {
  if (src.empty()) return {};
  std::u32string out;
  out.reserve(src.size());
  out.push_back(src[0]);
  std::size_t starter_pos = 0;
  char32_t starter = src[0];
  int last_class = combining_class(starter);
  if (last_class != 0) last_class = 256;  // leading combining mark
  for (std::size_t i = 1; i < src.size(); ++i) {
    char32_t ch = src[i];
    int ch_class = combining_class(ch);
    char32_t composite;
    if (compose_pair(starter, ch, composite) &&
        (last_class < ch_class || last_class == 0)) {
      out[starter_pos] = composite;
      starter = composite;
    } else {
      if (ch_class == 0) {
        starter_pos = out.size();
        starter = ch;
      }
      last_class = ch_class;
      out.push_back(ch);
    }
  }
  return out;
}

}  // namespace

std::optional<Form> parse_form(std::string_view name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "nfc") return Form::NFC;
  if (lower == "nfd") return Form::NFD;
  if (lower == "nfkc") return Form::NFKC;
  if (lower == "nfkd") return Form::NFKD;
  return std::nullopt;
}

const char* form_name(Form f) {
  switch (f) {
    case Form::NFC: return "nfc";
    case Form::NFD: return "nfd";
    case Form::NFKC: return "nfkc";
    case Form::NFKD: return "nfkd";
  }
  return "?";
}

namespace {

// Decodes one code point starting at s[i]; advances i. Returns nullopt on a
// malformed sequence, in which case i advances by one byte.
std::optional<char32_t> decode_one(std::string_view s, std::size_t& i) {
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return std::nullopt;
  }
  if (i + len > s.size()) {
    ++i;
    return std::nullopt;
  }
  for (int k = 1; k < len; ++k) {
    unsigned char b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) {
      ++i;
      return std::nullopt;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  // Reject overlongs, surrogates, and out-of-range values.
  static const char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++i;
    return std::nullopt;
  }
  i += len;
  return cp;
}

}  // namespace

std::optional<std::u32string> decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto cp = decode_one(s, i);
    if (!cp) return std::nullopt;
    out.push_back(*cp);
  }
  return out;
}

std::u32string decode_utf8_lossy(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto cp = decode_one(s, i);
    out.push_back(cp ? *cp : kReplacement);
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

std::u32string normalize(std::u32string_view s, Form f) {
  switch (f) {
    case Form::NFD: return decompose(s, false);
    case Form::NFKD: return decompose(s, true);
    case Form::NFC: return compose(decompose(s, false));
    case Form::NFKC: return compose(decompose(s, true));
  }
  return std::u32string(s);
}

std::string normalize(std::string_view s, Form f) {
  return encode_utf8(normalize(decode_utf8_lossy(s), f));
}

bool is_normalized(std::string_view s, Form f) {
  return normalize(s, f) == s;
}

int combining_class(char32_t c) {
  const data::CccEntry* end = data::kCombiningClass + data::kCombiningClassCount;
  const data::CccEntry* it = std::lower_bound(
      data::kCombiningClass, end, c,
      [](const data::CccEntry& e, char32_t cp) { return e.cp < cp; });
  return (it != end && it->cp == c) ? it->ccc : 0;
}

bool is_punct(char32_t c) { return in_ranges(data::kPunct, data::kPunctCount, c); }
bool is_format(char32_t c) { return in_ranges(data::kCf, data::kCfCount, c); }
bool is_space_sep(char32_t c) { return in_ranges(data::kZs, data::kZsCount, c); }
bool is_mark(char32_t c) { return in_ranges(data::kMark, data::kMarkCount, c); }
bool is_letter(char32_t c) { return in_ranges(data::kLetter, data::kLetterCount, c); }
bool is_control(char32_t c) { return c < 0x20 || c == 0x7F || (c >= 0x80 && c <= 0x9F); }
bool is_py_space(char32_t c) {
  return in_ranges(data::kPySpace, data::kPySpaceCount, c);
}

}  // namespace livkit::uni
