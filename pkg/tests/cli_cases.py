"""Documented CLI invocations and where their golden output lives.

Run ``python3 tests/cli_cases.py`` to rewrite the golden files.
"""

import io
import sys
from pathlib import Path

from a1deg.cli import run

GOLDEN_DIR = Path(__file__).parent / "golden"

CASES = {
    "gw_invariants": ["gw", "invariants", "--field", "Q", "15<1>+12<-1>"],
    "gw_equals_f5": ["gw", "equals", "--field", "F5", "<1>+<4>", "<1>+<1>"],
    "gw_normalize": ["gw", "normalize", "--field", "Q", "<2>+<-2>"],
    "degree_local_square": ["degree", "local", "--field", "Q", "--map", "x1^2", "--point", "0"],
    "degree_global_cube": ["degree", "global", "--field", "Q", "--map", "x1^3", "--value", "1"],
    "degree_local_identity": ["degree", "local", "--field", "Q", "--map", "x1", "--point", "0"],
    "mw_residue": ["mw", "residue", "--prime", "3", "[3][2]"],
    "mw_to_gw": ["mw", "to-gw", "eta*[-1] + 2"],
    "mw_realize_real": ["mw", "realize-real", "eta"],
    "transfer_gaussian": ["transfer", "--from", "Q[i]/(i^2+1)", "--to", "Q", "<1>"],
    "transfer_trivial": ["transfer", "--from", "Q", "--to", "Q", "<3>"],
    "transfer_sqrt2": ["transfer", "--from", "Q[t]/(t^2-2)", "--to", "Q", "<t>"],
    "transfer_sqrt2_verbose": ["transfer", "--from", "Q[t]/(t^2-2)", "--to", "Q", "<t>", "--verbose"],
    "degree_global_complex_square": ["degree", "global", "--field", "Q",
                                     "--map", "x1^2 - x2^2; 2*x1*x2", "--value", "1,0"],
}
# every documented invocation is also pinned in JSON mode
CASES.update({name + "_json": argv + ["--json"] for name, argv in list(CASES.items())})


def invoke(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    if stdin is not None:
        saved = sys.stdin
        sys.stdin = io.StringIO(stdin)
        try:
            code = run(argv, out, err)
        finally:
            sys.stdin = saved
    else:
        code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def render(argv):
    code, out, err = invoke(argv)
    return f"$ a1deg {' '.join(argv)}\n{out}{err}exit={code}\n"


def golden_path(name):
    return GOLDEN_DIR / f"{name}.txt"


def regenerate():
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        golden_path(name).write_text(render(argv), encoding="utf-8")


if __name__ == "__main__":
    regenerate()
