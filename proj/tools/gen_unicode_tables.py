#!/usr/bin/env python3
"""Generate src/unicode_data.cpp from the Python unicodedata module.

The toolkit carries its own UAX#15 normalization tables so that NFC/NFD/
NFKC/NFKD behave identically on every platform we build on, without an ICU
dependency. Run this script from the repository root whenever the CPython
Unicode database is bumped and commit the regenerated file:

    python3 tools/gen_unicode_tables.py > src/unicode_data.cpp

Tables emitted:
  - fully expanded canonical decompositions (NFD, Hangul excluded)
  - fully expanded compatibility decompositions (NFKD), only where they
    differ from the canonical expansion
  - nonzero canonical combining classes
  - primary composition pairs (canonical two-character decompositions that
    recompose under NFC; exclusions are baked in by construction)
  - code point ranges for general categories P*, Cf, Zs, M*, and the set of
    code points Python's str.split() treats as whitespace
"""

import sys
import unicodedata

MAX_CP = 0x110000
HANGUL_FIRST, HANGUL_LAST = 0xAC00, 0xD7A3


def is_surrogate(cp):
    return 0xD800 <= cp <= 0xDFFF


def raw_decomposition(cp, compat):
    """One-level decomposition of cp, or None. Hangul handled in C++."""
    if HANGUL_FIRST <= cp <= HANGUL_LAST:
        return None
    raw = unicodedata.decomposition(chr(cp))
    if not raw:
        return None
    parts = raw.split()
    if parts[0].startswith("<"):
        if not compat:
            return None
        parts = parts[1:]
    return [int(p, 16) for p in parts]


def full_decomposition(cp, compat):
    """Recursively expanded decomposition of cp (no canonical reordering)."""
    out = []
    stack = [cp]
    while stack:
        c = stack.pop()
        d = raw_decomposition(c, compat)
        if d is None:
            out.append(c)
        else:
            stack.extend(reversed(d))
    return out


def collect_decompositions(compat):
    table = {}
    for cp in range(MAX_CP):
        if is_surrogate(cp):
            continue
        expanded = full_decomposition(cp, compat)
        if expanded != [cp]:
            table[cp] = expanded
    return table


def collect_compositions():
    pairs = []
    for cp in range(MAX_CP):
        if is_surrogate(cp) or HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        d = raw_decomposition(cp, compat=False)
        if d is None or len(d) != 2:
            continue
        a, b = d
        # The round trip bakes in the composition exclusions.
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            pairs.append((a, b, cp))
    pairs.sort(key=lambda t: (t[0] << 21) | t[1])
    return pairs


def collect_ranges(pred):
    ranges = []
    start = None
    for cp in range(MAX_CP):
        ok = (not is_surrogate(cp)) and pred(cp)
        if ok and start is None:
            start = cp
        elif not ok and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, MAX_CP - 1))
    return ranges


def emit(out):
    canonical = collect_decompositions(compat=False)
    compat_full = collect_decompositions(compat=True)
    # Only store compatibility expansions that differ from the canonical one.
    compat = {
        cp: seq
        for cp, seq in compat_full.items()
        if canonical.get(cp, [cp]) != seq
    }

    pool = []
    def add_to_pool(seq):
        off = len(pool)
        pool.extend(seq)
        return off

    canon_entries = []
    for cp in sorted(canonical):
        seq = canonical[cp]
        canon_entries.append((cp, add_to_pool(seq), len(seq)))
    compat_entries = []
    for cp in sorted(compat):
        seq = compat[cp]
        compat_entries.append((cp, add_to_pool(seq), len(seq)))

    ccc_entries = [
        (cp, unicodedata.combining(chr(cp)))
        for cp in range(MAX_CP)
        if not is_surrogate(cp) and unicodedata.combining(chr(cp)) != 0
    ]

    compositions = collect_compositions()

    cat = lambda cp: unicodedata.category(chr(cp))
    punct_ranges = collect_ranges(lambda cp: cat(cp).startswith("P"))
    cf_ranges = collect_ranges(lambda cp: cat(cp) == "Cf")
    zs_ranges = collect_ranges(lambda cp: cat(cp) == "Zs")
    mark_ranges = collect_ranges(lambda cp: cat(cp).startswith("M"))
    pyspace_ranges = collect_ranges(lambda cp: chr(cp).isspace())
    letter_ranges = collect_ranges(lambda cp: cat(cp).startswith("L"))

    w = out.write
    w("// Generated by tools/gen_unicode_tables.py from the CPython unicodedata\n")
    w("// module (Unicode %s). Do not edit by hand.\n\n" % unicodedata.unidata_version)
    w('#include "unicode_data.hpp"\n\n')
    w("namespace livkit::uni::data {\n\n")

    w("const char32_t kDecompPool[] = {\n")
    for i in range(0, len(pool), 12):
        w("  " + ",".join("0x%X" % c for c in pool[i : i + 12]) + ",\n")
    w("};\n\n")

    def emit_decomp(name, entries):
        w("const DecompEntry %s[] = {\n" % name)
        for i in range(0, len(entries), 4):
            row = entries[i : i + 4]
            w("  " + " ".join("{0x%X,%d,%d}," % e for e in row) + "\n")
        w("};\n")
        w("const std::size_t %sCount = %d;\n\n" % (name, len(entries)))

    emit_decomp("kCanonical", canon_entries)
    emit_decomp("kCompat", compat_entries)

    w("const CccEntry kCombiningClass[] = {\n")
    for i in range(0, len(ccc_entries), 6):
        row = ccc_entries[i : i + 6]
        w("  " + " ".join("{0x%X,%d}," % e for e in row) + "\n")
    w("};\n")
    w("const std::size_t kCombiningClassCount = %d;\n\n" % len(ccc_entries))

    w("const ComposeEntry kCompose[] = {\n")
    for i in range(0, len(compositions), 3):
        row = compositions[i : i + 3]
        w(
            "  "
            + " ".join(
                "{0x%XULL,0x%X}," % ((a << 21) | b, cp) for (a, b, cp) in row
            )
            + "\n"
        )
    w("};\n")
    w("const std::size_t kComposeCount = %d;\n\n" % len(compositions))

    def emit_ranges(name, ranges):
        w("const Range %s[] = {\n" % name)
        for i in range(0, len(ranges), 6):
            row = ranges[i : i + 6]
            w("  " + " ".join("{0x%X,0x%X}," % r for r in row) + "\n")
        w("};\n")
        w("const std::size_t %sCount = %d;\n\n" % (name, len(ranges)))

    emit_ranges("kPunct", punct_ranges)
    emit_ranges("kCf", cf_ranges)
    emit_ranges("kZs", zs_ranges)
    emit_ranges("kMark", mark_ranges)
    emit_ranges("kPySpace", pyspace_ranges)
    emit_ranges("kLetter", letter_ranges)

    w("}  // namespace livkit::uni::data\n")


if __name__ == "__main__":
    emit(sys.stdout)
