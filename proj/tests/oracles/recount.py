#!/usr/bin/env python3
# Copyright (c) 2026 The nec Authors. Licensed under the Apache License, Version 2.0.
"""Recounts CER, NE-CER and NNE-CER from scratch.

Reads JSON lines {"ref": str, "hyp": str, "spans": [[start, end], ...]} and
prints {"cer", "ne_cer", "nne_cer", "edits", "entity_edits",
"non_entity_edits"} as JSON. Shares no code with the library.
"""
import json
import sys


def levenshtein_table(ref, hyp):
    table = [[0] * (len(hyp) + 1) for _ in range(len(ref) + 1)]
    for i in range(len(ref) + 1):
        table[i][0] = i
    for j in range(len(hyp) + 1):
        table[0][j] = j
    for i in range(1, len(ref) + 1):
        for j in range(1, len(hyp) + 1):
            table[i][j] = min(
                table[i - 1][j - 1] + (ref[i - 1] != hyp[j - 1]),
                table[i - 1][j] + 1,
                table[i][j - 1] + 1,
            )
    return table


def backtrace(ref, hyp, table):
    """Ops as (kind, ref_index or None), tie order match, sub, del, ins."""
    ops = []
    i, j = len(ref), len(hyp)
    while i or j:
        cost = table[i][j]
        if i and j and ref[i - 1] == hyp[j - 1] and cost == table[i - 1][j - 1]:
            ops.append(("M", i - 1))
            i, j = i - 1, j - 1
        elif i and j and cost == table[i - 1][j - 1] + 1:
            ops.append(("S", i - 1))
            i, j = i - 1, j - 1
        elif i and cost == table[i - 1][j] + 1:
            ops.append(("D", i - 1))
            i -= 1
        else:
            ops.append(("I", None))
            j -= 1
    return ops[::-1]


def recount(ref, hyp, spans):
    owner = {}
    for k, (start, end) in enumerate(spans):
        for pos in range(start, end):
            owner[pos] = k
    ops = backtrace(ref, hyp, levenshtein_table(ref, hyp))
    entity = non_entity = 0
    for idx, (kind, pos) in enumerate(ops):
        if kind == "M":
            continue
        if kind == "I":
            before = [p for _, p in ops[:idx] if p is not None]
            after = [p for _, p in ops[idx + 1:] if p is not None]
            inside = (before and after and before[-1] in owner
                      and owner.get(after[0]) == owner[before[-1]])
        else:
            inside = pos in owner
        if inside:
            entity += 1
        else:
            non_entity += 1
    entity_chars = sum(end - start for start, end in spans)
    return entity, non_entity, len(ref), entity_chars


def main():
    totals = [0, 0, 0, 0]
    for line in sys.stdin:
        if not line.strip():
            continue
        rec = json.loads(line)
        for k, v in enumerate(recount(rec["ref"], rec["hyp"], rec["spans"])):
            totals[k] += v
    entity, non_entity, ref_chars, entity_chars = totals
    json.dump({
        "edits": entity + non_entity,
        "entity_edits": entity,
        "non_entity_edits": non_entity,
        "cer": (entity + non_entity) / max(ref_chars, 1),
        "ne_cer": entity / max(entity_chars, 1),
        "nne_cer": non_entity / max(ref_chars - entity_chars, 1),
    }, sys.stdout)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
