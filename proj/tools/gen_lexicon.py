#!/usr/bin/env python3
"""Regenerates the bundled lexicon tables under data/lexicon/.

Phones are toneless pinyin split into initial and final, with y/w treated
as zero initials (yun -> vn, wei -> uei). Requires `pypinyin`.
"""
import argparse
import json
import pathlib

from pypinyin import lazy_pinyin
from pypinyin.style._utils import get_finals, get_initials

LETTERS = {
    "a": "ei", "b": "bi", "c": "xi", "d": "di", "e": "yi", "f": "ai fu",
    "g": "ji", "h": "ai qi", "i": "ai", "j": "jie", "k": "kai", "l": "ai lu",
    "m": "ai mu", "n": "en", "o": "ou", "p": "pi", "q": "kiu", "r": "a er",
    "s": "ai si", "t": "ti", "u": "you", "v": "wei", "w": "da bu liu",
    "x": "ai ke si", "y": "wai", "z": "zei",
}
DIGITS = dict(zip("0123456789", "ling yi er san si wu liu qi ba jiu".split()))
# Mandarin-accented readings of Latin words that occur in the demo corpus.
WORDS = {
    "chat": "qie te",
    "check": "qie ke",
    "chest": "qie si te",
    "midjourney": "mi de jue ni",
}


def to_phones(syllables):
    out = []
    for s in syllables.split():
        ini = get_initials(s, strict=True)
        fin = get_finals(s, strict=True).replace("ü", "v")
        if ini:
            out.append(ini)
        out.append(fin)
    return " ".join(out)


def is_cjk(ch):
    return "一" <= ch <= "鿿"


def gb2312_chars():
    for hi in range(0xB0, 0xF8):
        for lo in range(0xA1, 0xFF):
            try:
                ch = bytes([hi, lo]).decode("gb2312")
            except UnicodeDecodeError:
                continue
            if is_cjk(ch):
                yield ch


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=pathlib.Path(__file__).resolve().parents[1])
    args = ap.parse_args()
    root = pathlib.Path(args.root)

    readings = {}
    # Sentence context first so heteronyms get the reading used in the corpus.
    with open(root / "data/minicorpus/cases.jsonl", encoding="utf-8") as f:
        for line in f:
            rec = json.loads(line)
            for text in (rec["ref"], rec["hyp"]):
                chars = [c for c in text if is_cjk(c)]
                for c, py in zip(chars, lazy_pinyin("".join(chars))):
                    readings.setdefault(c, py)
    with open(root / "data/minicorpus/entities.jsonl", encoding="utf-8") as f:
        for line in f:
            chars = [c for c in json.loads(line)["surface"] if is_cjk(c)]
            for c, py in zip(chars, lazy_pinyin("".join(chars))):
                readings.setdefault(c, py)
    for c in gb2312_chars():
        readings.setdefault(c, lazy_pinyin(c)[0])

    out = root / "data/lexicon"
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "zh_chars.tsv", "w", encoding="utf-8") as f:
        f.write("# surface<TAB>phones  (toneless pinyin, initial + final)\n")
        for c in sorted(readings):
            f.write(f"{c}\t{to_phones(readings[c])}\n")
    with open(out / "latin.tsv", "w", encoding="utf-8") as f:
        f.write("# letter names\n")
        for k, v in LETTERS.items():
            f.write(f"{k}\t{to_phones(v)}\n")
        f.write("# digit names\n")
        for k, v in DIGITS.items():
            f.write(f"{k}\t{to_phones(v)}\n")
        f.write("# words\n")
        for k, v in WORDS.items():
            f.write(f"{k}\t{to_phones(v)}\n")


if __name__ == "__main__":
    main()
