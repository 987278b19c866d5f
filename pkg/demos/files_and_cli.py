"""Text formats and the command line, driven from Python.

Everything the library does is reachable through ``ivmatch <command>``;
here the same entry point is called in-process on a scratch directory.
"""

import tempfile
from pathlib import Path

from ivmatch.cli import main

work = Path(tempfile.mkdtemp())


def run(*args):
    code = main([str(a) for a in args])
    print(f"  -> exit {code}")
    return code


# Seeded generation is byte-for-byte reproducible.
run("gen-3dm", "--n", 3, "--m", 7, "--seed", 7, "--planted", "-o", work / "inst.3dm")
print((work / "inst.3dm").read_text())

run("reduce", work / "inst.3dm", "-o", work / "inst.ivg", "--map", work / "inst.map")
run("solve", work / "inst.ivg", "--cert", work / "inst.cert")
print((work / "inst.cert").read_text())
run("verify", work / "inst.ivg", work / "inst.cert")
run("lift", work / "inst.3dm", work / "inst.map", work / "inst.cert", "-o", work / "inst.match")
print((work / "inst.match").read_text())

# A damaged certificate is rejected with one line per violation.
lines = (work / "inst.cert").read_text().splitlines()
(work / "cut.cert").write_text("\n".join(lines[:-1]) + "\n")
run("verify", work / "inst.ivg", work / "cut.cert")

# Malformed input is a usage error (exit 2) rather than a "no".
(work / "broken.ivg").write_text("ivg 1\nlayers 2\nlayer 1: 1\n")
run("solve", work / "broken.ivg")
