"""Exit codes, JSON schema conformance and determinism of the kbl CLI."""

import argparse
import json
import os
import subprocess
import sys
import tempfile

import jsonschema

MUTUAL = """agents: a b
domains:
  Obj = c
predicates:
  p/1
kb a:
  p(c)
  K[b] p(c)
kb b:
  p(c)
  K[a] p(c)
"""

INVALID = """agents: a
predicates:
  p/1
kb a:
  p(a)
  !p(a)
"""

SMALL = """agents: a b
domains:
  Obj = c
predicates:
  p/1
connections:
  follows: a b
kb a:
  p(c)
kb b:
  K[a] p(c)
"""


class Runner:
    def __init__(self, kbl, schemas, models, workdir):
        self.kbl = kbl
        self.schemas = schemas
        self.models = models
        self.workdir = workdir
        self.failures = []

    def model(self, name):
        return os.path.join(self.models, name)

    def write(self, name, text):
        path = os.path.join(self.workdir, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def run(self, *args):
        return subprocess.run([self.kbl, *args], capture_output=True, text=True, timeout=600)

    def expect(self, label, args, code, schema=None, check=None):
        r = self.run(*args)
        if r.returncode != code:
            self.failures.append(f"{label}: exit {r.returncode}, wanted {code}; stderr: {r.stderr.strip()}")
            return None
        if code == 2 and not r.stderr.strip():
            self.failures.append(f"{label}: error without a message")
        if schema is None:
            return r.stdout
        try:
            doc = json.loads(r.stdout)
            with open(os.path.join(self.schemas, schema + ".schema.json")) as f:
                jsonschema.validate(doc, json.load(f))
        except (ValueError, jsonschema.ValidationError) as e:
            self.failures.append(f"{label}: {e}")
            return None
        if check and not check(doc):
            self.failures.append(f"{label}: unexpected content {r.stdout[:400]}")
        return doc


def strip_timing(doc):
    for row in doc["rows"]:
        row["cost"].pop("check_seconds")
        row.pop("kripke_seconds")
    return doc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kbl", required=True)
    ap.add_argument("--schemas", required=True)
    ap.add_argument("--models", required=True)
    a = ap.parse_args()

    with tempfile.TemporaryDirectory() as tmp:
        t = Runner(a.kbl, a.schemas, a.models, tmp)
        fig2 = t.model("fig2.snm")
        fig1 = t.model("fig1.kripke")
        mutual = t.write("mutual.snm", MUTUAL)
        invalid = t.write("invalid.snm", INVALID)
        small = t.write("small.snm", SMALL)

        t.expect("check true", ["check", fig2, "K[Alice] loc(Bob,pub,1)", "--json"], 0, "check",
                 lambda d: d["verdict"] == "true")
        t.expect("check false with bounds", ["check", fig2, "K[Charlie] loc(Bob,pub,1)", "--json"], 1, "check",
                 lambda d: d["cost"]["snm_bound"] == "21" and d["cost"]["kripke_bound"] == "1073741829")
        t.expect("check unknown", ["check", mutual, "C[a,b] p(c)", "--common-bound", "1", "--json"], 3, "check",
                 lambda d: d["verdict"] == "unknown")
        t.expect("check plain", ["check", fig2, "friendRequest(Charlie,Alice)"], 0)
        t.expect("check parse error", ["check", fig2, "K[Alice] (post("], 2)
        t.expect("check unknown agent", ["check", fig2, "K[Dave] post(Bob,pub,1)"], 2)
        t.expect("check missing file", ["check", os.path.join(tmp, "nope.snm"), "p"], 2)
        t.expect("check invalid model", ["check", invalid, "p(a)"], 2)
        t.expect("bad bound", ["check", fig2, "p", "--common-bound", "0"], 2)

        t.expect("derive", ["derive", fig2, "Alice", "loc(Bob,pub,1)", "--json"], 0, "derive",
                 lambda d: d["derivable"])
        t.expect("derive trace", ["derive", fig2, "Charlie", "loc(Bob,pub,1)", "--trace", "--json"], 1, "derive",
                 lambda d: not d["derivable"] and d["trace"])
        t.expect("derive group", ["derive", fig2, "Alice,Charlie", "D[Alice,Charlie] post(Bob,library,2)", "--json"],
                 0, "derive")
        t.expect("derive unsupported", ["derive", fig2, "Alice", "C[Alice,Bob] post(Bob,pub,1)"], 2)

        t.expect("kripke-sat true", ["kripke-sat", fig1, "s0", "K[a] p(a)", "--json"], 0, "kripke-sat")
        t.expect("kripke-sat false", ["kripke-sat", fig1, "s1", "K[b] p(a)", "--json"], 1, "kripke-sat",
                 lambda d: d["satisfied"] is False)
        t.expect("kripke-sat unknown state", ["kripke-sat", fig1, "s9", "p(a)"], 2)

        t.expect("validate ok", ["validate", fig2, "--json"], 0, "validate", lambda d: d["valid"])
        t.expect("validate bad", ["validate", invalid, "--json"], 1, "validate",
                 lambda d: any("inconsistent" in x for x in d["diagnostics"]))

        first = t.expect("bench", ["bench", "--rows", "6", "--json"], 0, "bench")
        second = t.expect("bench again", ["bench", "--rows", "6", "--json"], 0, "bench")
        if first and second and strip_timing(first) != strip_timing(second):
            t.failures.append("bench output differs between runs")
        t.expect("bench given pair", ["bench", "--rows", "0", "--model", fig2, "--formula",
                                      "K[Charlie] loc(Bob,pub,1)", "--json"], 0, "bench",
                 lambda d: d["rows"][0]["cost"]["snm_bound"] == "21")

        t.expect("translate guard", ["translate", fig2], 2)
        kripke = os.path.join(tmp, "small.kripke")
        t.expect("translate", ["translate", small, "--marked", "-o", kripke], 0)
        back = os.path.join(tmp, "back.snm")
        t.expect("invert", ["invert", kripke, "-o", back], 0)
        if os.path.exists(back):
            text = open(back).read()
            for needle in ("K[a] p(c)", "follows: a b", "p(c)"):
                if needle not in text:
                    t.failures.append(f"invert output lacks {needle!r}")
            t.expect("inverted model checks", ["check", back, "K[b] K[a] p(c)"], 0)
        t.expect("invert plain model", ["invert", fig1], 2)

    for f in t.failures:
        print("FAIL", f)
    print(f"{len(t.failures)} failures")
    return 1 if t.failures else 0


if __name__ == "__main__":
    sys.exit(main())
