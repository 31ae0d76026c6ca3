#pragma once

#include <cstddef>

// Raw tables backing the UAX#15 normalizer; see tools/gen_unicode_tables.py.

namespace livkit::uni::data {

struct DecompEntry {
  char32_t cp;
  unsigned offset;  // into kDecompPool
  unsigned char len;
};

struct CccEntry {
  char32_t cp;
  unsigned char ccc;
};

struct ComposeEntry {
  unsigned long long key;  // (first << 21) | second
  char32_t composed;
};

struct Range {
  char32_t lo, hi;
};

extern const char32_t kDecompPool[];

extern const DecompEntry kCanonical[];
extern const std::size_t kCanonicalCount;
extern const DecompEntry kCompat[];
extern const std::size_t kCompatCount;

extern const CccEntry kCombiningClass[];
extern const std::size_t kCombiningClassCount;

extern const ComposeEntry kCompose[];
extern const std::size_t kComposeCount;

extern const Range kPunct[];
extern const std::size_t kPunctCount;
extern const Range kCf[];
extern const std::size_t kCfCount;
extern const Range kZs[];
extern const std::size_t kZsCount;
extern const Range kMark[];
extern const std::size_t kMarkCount;
extern const Range kPySpace[];
extern const std::size_t kPySpaceCount;
extern const Range kLetter[];
extern const std::size_t kLetterCount;

}  // namespace livkit::uni::data
