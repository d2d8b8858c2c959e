"""Compare the compiled and pure-Python kernels.

Every repetition runs in a fresh subprocess (the backend is chosen at
import, and no cache survives between runs); best-of-N wall times.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--only NAME]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "resolve_ci_q": """
from citor.rings import RingSpec
from citor.modules import GradedPresentation as GP
from citor.resolution import resolve
R = RingSpec.build(["x","y","z","w"], ["x^2+y*z", "y^2+z*w"])
resolve(GP.cyclic(R, ["x*y", "z^2", "w^2+x*z"]), 10)
""",
    "resolve_ci_fp": """
from citor.rings import RingSpec
from citor.modules import GradedPresentation as GP
from citor.resolution import resolve
R = RingSpec.build(["x","y","z","w"], ["x^2+y*z", "y^2+z*w"], field="fp:32003")
resolve(GP.cyclic(R, ["x*y", "z^2", "w^2+x*z"]), 10)
""",
    "tor_codim2": """
from citor.rings import RingSpec
from citor.modules import GradedPresentation as GP
from citor.pairs import betti_sequence
R = RingSpec.build(["x","y"], ["x^2", "y^2"])
k = GP.residue_field(R)
betti_sequence(k, k, 14)
""",
    "tor_codim3": """
from citor.rings import RingSpec
from citor.modules import GradedPresentation as GP
from citor.pairs import betti_sequence
R = RingSpec.build(["x","y","z"], ["x^2", "y^2", "z^2"])
k = GP.residue_field(R)
betti_sequence(k, k, 8)
""",
    "gb_cyclic5_fp": """
from citor.poly import PolyRing
from citor.scalar import GF
from citor.groebner import ideal_basis
Q = PolyRing(["a","b","c","d","e","h"], GF(32003))
ideal_basis(["a+b+c+d+e", "a*b+b*c+c*d+d*e+e*a", "a*b*c+b*c*d+c*d*e+d*e*a+e*a*b",
             "a*b*c*d+b*c*d*e+c*d*e*a+d*e*a*b+e*a*b*c", "a*b*c*d*e-h^5"], Q)
""",
    "gb_cyclic6_fp": """
from citor.poly import PolyRing
from citor.scalar import GF
from citor.groebner import ideal_basis
Q = PolyRing(["a","b","c","d","e","f","h"], GF(32003))
ideal_basis(["a+b+c+d+e+f", "a*b+b*c+c*d+d*e+e*f+f*a",
             "a*b*c+b*c*d+c*d*e+d*e*f+e*f*a+f*a*b",
             "a*b*c*d+b*c*d*e+c*d*e*f+d*e*f*a+e*f*a*b+f*a*b*c",
             "a*b*c*d*e+b*c*d*e*f+c*d*e*f*a+d*e*f*a*b+e*f*a*b*c+f*a*b*c*d",
             "a*b*c*d*e*f-h^6"], Q)
""",
}

RUNNER = """
import sys, time
from citor import kernels
body = sys.stdin.read()
t = time.perf_counter()
exec(compile(body, "<workload>", "exec"), {})
print(kernels.BACKEND, time.perf_counter() - t)
"""


def run(body, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["CITOR_PURE_PYTHON"] = "1"
    else:
        env.pop("CITOR_PURE_PYTHON", None)
    best = None
    for _ in range(repeat):
        out = subprocess.run([sys.executable, "-c", RUNNER], input=body,
                             capture_output=True, text=True, env=env, check=True)
        backend, t = out.stdout.split()
        best = float(t) if best is None else min(best, float(t))
    return backend, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--only", default=None, help="run a single workload")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for name, body in WORKLOADS.items():
        if args.only and name != args.only:
            continue
        b1, t_c = run(body, False, args.repeat)
        b2, t_p = run(body, True, args.repeat)
        rows.append({"workload": name, "compiled_backend": b1, "compiled_s": round(t_c, 4),
                     "python_s": round(t_p, 4), "speedup": round(t_p / t_c, 2)})
    if args.json:
        print(json.dumps(rows, indent=1))
        return
    print(f"{'workload':<16} {'backend':<8} {'compiled s':>11} {'python s':>9} {'speedup':>8}")
    for r in rows:
        print(f"{r['workload']:<16} {r['compiled_backend']:<8} {r['compiled_s']:>11.4f} "
              f"{r['python_s']:>9.4f} {r['speedup']:>7.2f}x")


if __name__ == "__main__":
    main()
