#!/usr/bin/env python3
"""Build the bundled word-frequency lexicon from English prose on disk.

Scans plain-text documentation (READMEs, licenses, changelogs, .txt/.md/.rst
files) under a few system roots, tokenizes to lowercase a-z words, and keeps
the most frequent ones that occur across several distinct files.  Output is
the package's `word<TAB>count` lexicon file.

Usage: python3 scripts/build_lexicon.py [out.tsv] [max_words]
"""

import os
import re
import sys
from collections import Counter, defaultdict

ROOTS = [
    "/usr/share/doc",
    "/usr/share/common-licenses",
    "/usr/local/lib/python3.10/dist-packages",
]
TEXT_NAMES = re.compile(
    r"(readme|license|licence|copying|copyright|changelog|authors|news|notice)",
    re.I,
)
TEXT_EXT = (".txt", ".md", ".rst")
TOKEN = re.compile(r"[a-z]{1,24}")
VOWELS = set("aeiouy")
MAX_FILE_BYTES = 2_000_000

# Everyday vocabulary the documentation corpus misses; merged in at a floor
# count so the bundled phrase set stays typeable end to end.
SUPPLEMENT_FILES = [
    "src/t9swipe/data/dolch_nonnouns.txt",
    "src/t9swipe/data/dolch_nouns.txt",
    "src/t9swipe/data/phrases.txt",
]
SUPPLEMENT_FLOOR = 150


def iter_text_files():
    for root in ROOTS:
        for dirpath, dirnames, filenames in os.walk(root):
            dirnames[:] = [d for d in dirnames if d != "__pycache__"]
            for name in filenames:
                lower = name.lower()
                if lower.endswith(TEXT_EXT) or TEXT_NAMES.search(lower):
                    yield os.path.join(dirpath, name)


def main():
    out_path = sys.argv[1] if len(sys.argv) > 1 else "src/t9swipe/data/lexicon.tsv"
    max_words = int(sys.argv[2]) if len(sys.argv) > 2 else 15000

    counts = Counter()
    files_seen = defaultdict(set)
    n_files = 0
    for path in iter_text_files():
        try:
            if os.path.getsize(path) > MAX_FILE_BYTES:
                continue
            with open(path, "r", encoding="utf-8", errors="ignore") as fh:
                text = fh.read().lower()
        except OSError:
            continue
        n_files += 1
        for tok in set(TOKEN.findall(text)):
            files_seen[tok].add(n_files)
        counts.update(TOKEN.findall(text))

    def keep(word):
        if len(word) == 1 and word not in ("a", "i"):
            return False
        if not VOWELS & set(word):
            return False
        return counts[word] >= 3 and len(files_seen[word]) >= 3

    supplement = set()
    for path in SUPPLEMENT_FILES:
        try:
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    supplement.update(TOKEN.findall(line.lower()))
        except OSError:
            pass
    for w in supplement:
        if len(w) > 1 or w in ("a", "i"):
            counts[w] = max(counts[w], SUPPLEMENT_FLOOR)

    ranked = sorted(
        (w for w in counts if keep(w) or w in supplement),
        key=lambda w: (-counts[w], w),
    )[:max_words]

    with open(out_path, "w", encoding="utf-8") as fh:
        for w in ranked:
            fh.write(f"{w}\t{counts[w]}\n")
    print(f"scanned {n_files} files, wrote {len(ranked)} words to {out_path}")


if __name__ == "__main__":
    main()
