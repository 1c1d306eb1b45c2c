#!/usr/bin/env python3
# Copyright (c) 2026 The nec Authors. Licensed under the Apache License, Version 2.0.
"""Runs `nec evaluate` on the demo corpus and validates the report.

usage: validate_report.py NEC_CLI DEMO_DIR SCHEMA WORK_DIR

Checks the JSON report against the schema, the CSV against the JSON, and
the identity corpus against a zero-error report.
"""
import csv
import json
import os
import subprocess
import sys

import jsonschema


def evaluate(cli, ref, hyp, work, tag):
    out_json = os.path.join(work, tag + ".json")
    out_csv = os.path.join(work, tag + ".csv")
    subprocess.run([cli, "evaluate", "--ref", ref, "--hyp", hyp, "--out-json", out_json,
                    "--out-csv", out_csv], check=True)
    with open(out_json, encoding="utf-8") as f:
        report = json.load(f)
    with open(out_csv, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    return report, rows


def check(report, rows, schema):
    jsonschema.validate(report, schema)
    assert rows[-1]["id"] == "TOTAL", "last CSV row must be TOTAL"
    assert len(rows) == len(report["per_utterance"]) + 1
    for row, utt in zip(rows, report["per_utterance"] + [dict(report["totals"], id="TOTAL")]):
        assert row["id"] == utt["id"]
        for key, value in row.items():
            if key != "id":
                assert int(value) == utt[key], (row["id"], key)
    totals = report["totals"]
    for key in totals:
        if key != "id":
            assert totals[key] == sum(u[key] for u in report["per_utterance"]), key
    assert totals["edits"] == totals["entity_edits"] + totals["non_entity_edits"]


def main():
    cli, demo, schema_path, work = sys.argv[1:5]
    os.makedirs(work, exist_ok=True)
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    corpus = os.path.join(demo, "mini", "corpus.jsonl")

    report, rows = evaluate(cli, corpus, corpus, work, "asr")
    check(report, rows, schema)
    assert report["cer"] > 0

    identity = os.path.join(work, "identity.jsonl")
    with open(corpus, encoding="utf-8") as src, open(identity, "w", encoding="utf-8") as dst:
        for line in src:
            rec = json.loads(line)
            dst.write(json.dumps({"id": rec["id"], "corrected": rec["ref"]},
                                 ensure_ascii=False) + "\n")
    report, rows = evaluate(cli, corpus, identity, work, "identity")
    check(report, rows, schema)
    assert report["cer"] == 0 and report["nne_cer"] == 0 and report["ne_cer"] == 0
    assert report["ne_recall"] == 1
    print("report schema ok")


if __name__ == "__main__":
    main()
