#!/usr/bin/env python3
"""Regenerate the TSV dictionaries and the English word-frequency list under data/.

    python3 tools/data/build_dictionaries.py [--spell-resource en.json.gz]

The word list is derived from pyspellchecker's English frequency resource
(MIT licensed). When --spell-resource is omitted the existing
data/words_en.tsv is left untouched.
"""

import argparse
import gzip
import json
import pathlib
import sys
import unicodedata

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE.parent.parent / "data"

EXTRA_PUNCT = set("~^$|<>=+")
ACRONYM_SKIP = {"OF", "THE", "AT", "IN", "AND", "FOR", "A", "AN"}
# normalized default missing-value sentinels (null, none, n/a, na); a derived
# acronym equal to one of these would read as an empty field
SENTINEL_KEYS = {"NULL", "NONE", "NA"}
DEPT_BOILERPLATE = {"DEPARTMENT", "DEPT", "OF", "SCHOOL", "COLLEGE", "GRADUATE",
                    "STUDIES", "PROGRAM", "IN"}


def normalize(s):
    out = []
    for ch in s:
        if unicodedata.category(ch).startswith("P") or ch in EXTRA_PUNCT:
            continue
        out.append(ch.upper())
    return " ".join("".join(out).split())


def read_entries(path):
    entries = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        entries.append((parts[0], [p for p in parts[1:] if p]))
    return entries


def acronym(name):
    words = normalize(name.replace("-", " ")).split()
    letters = [w[0] for w in words if w not in ACRONYM_SKIP]
    return "".join(letters) if len(letters) >= 2 else None


def build(entries, derive_acronyms, key_fn=normalize):
    owner = {}
    for canonical, aliases in entries:
        for surface in [canonical] + aliases:
            key = key_fn(surface)
            if not key:
                sys.exit(f"empty key for {surface!r} ({canonical})")
            if normalize(surface) in SENTINEL_KEYS:
                sys.exit(f"{surface!r} ({canonical}) reads as a missing value")
            prev = owner.get(key)
            if prev is not None and prev != canonical:
                sys.exit(f"collision on {key!r}: {prev} / {canonical}")
            owner[key] = canonical
    result = []
    derived = {}
    if derive_acronyms:
        counts = {}
        for canonical, _ in entries:
            a = acronym(canonical)
            if a:
                counts[a] = counts.get(a, 0) + 1
        for canonical, _ in entries:
            a = acronym(canonical)
            if a and counts[a] == 1 and key_fn(a) not in owner and normalize(a) not in SENTINEL_KEYS:
                derived[canonical] = a
                owner[key_fn(a)] = canonical
    for canonical, aliases in entries:
        seen = set()
        out = []
        for a in aliases + ([derived[canonical]] if canonical in derived else []):
            k = key_fn(a)
            if k in seen or k == key_fn(canonical):
                continue
            seen.add(k)
            out.append(a)
        result.append((canonical, out))
    return result


def dept_key(s):
    return " ".join(w for w in normalize(s).split() if w not in DEPT_BOILERPLATE)


def write_tsv(path, entries):
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for canonical, aliases in entries:
            f.write("\t".join([canonical] + aliases) + "\n")
    print(f"{path.name}: {len(entries)} entries")


def write_words(resource):
    freq = json.load(gzip.open(resource, "rt", encoding="utf-8"))
    words = {}
    for w, c in freq.items():
        w = w.lower()
        if not w.isalpha():
            continue
        words[w] = words.get(w, 0) + int(c)
    path = DATA / "words_en.tsv"
    with path.open("w", encoding="utf-8", newline="\n") as f:
        for w in sorted(words):
            f.write(f"{w}\t{words[w]}\n")
    print(f"{path.name}: {len(words)} words")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--spell-resource")
    args = ap.parse_args()
    DATA.mkdir(exist_ok=True)
    write_tsv(DATA / "universities.tsv", build(read_entries(HERE / "universities.txt"), True))
    write_tsv(DATA / "degrees.tsv", build(read_entries(HERE / "degrees.txt"), False))
    departments = read_entries(HERE / "departments.txt")
    build(departments, False, dept_key)
    write_tsv(DATA / "departments.tsv", build(departments, False))
    if args.spell_resource:
        write_words(args.spell_resource)


if __name__ == "__main__":
    main()
