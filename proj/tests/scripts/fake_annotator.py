#!/usr/bin/env python3
# Copyright (c) 2026 The nec Authors. Licensed under the Apache License, Version 2.0.
"""Scripted annotator speaking the JSON-lines protocol.

usage: fake_annotator.py MODE [ARG]
  reject         answer every candidate with <empty>
  first-error S  answer the first candidate with S, reject the rest
  reverse N      read N requests, answer them in reverse order
  slow MS        sleep MS milliseconds before each answer
  wrong-id       send a reply for an unknown id before each real one
  garbage        answer with a line that is not JSON
  exit           exit after reading the first request
  hang           read requests and never answer
"""
import json
import sys
import time


def answer(request, first=None):
    prompt = request["prompt"]
    candidates = prompt.split("<EC>", 1)[0].split("|||")
    fields = ["<empty>"] * len(candidates)
    if first is not None:
        fields[0] = first
    return " ||| ".join(fields)


def send(obj):
    sys.stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")
    sys.stdout.flush()


def main():
    mode = sys.argv[1]
    arg = sys.argv[2] if len(sys.argv) > 2 else None
    if mode == "reverse":
        batch = []
        for line in sys.stdin:
            batch.append(json.loads(line))
            if len(batch) == int(arg):
                for r in reversed(batch):
                    send({"id": r["id"], "raw": answer(r)})
                batch = []
        return
    for line in sys.stdin:
        r = json.loads(line)
        if mode == "reject":
            send({"id": r["id"], "raw": answer(r)})
        elif mode == "first-error":
            send({"id": r["id"], "raw": answer(r, arg)})
        elif mode == "slow":
            time.sleep(int(arg) / 1000.0)
            send({"id": r["id"], "raw": answer(r)})
        elif mode == "wrong-id":
            send({"id": "not-" + r["id"], "raw": "<empty>"})
            send({"id": r["id"], "raw": answer(r)})
        elif mode == "garbage":
            sys.stdout.write("this is not json\n")
            sys.stdout.flush()
        elif mode == "exit":
            sys.exit(0)
        elif mode == "hang":
            pass
        else:
            sys.exit("unknown mode " + mode)


if __name__ == "__main__":
    main()
