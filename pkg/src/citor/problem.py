"""Problem files: rings, named modules, pairs and short exact sequences in YAML.

Example::

    name: node
    field: q
    variables: [x, y]
    weights: [1, 1]          # optional, default all 1
    relations: ["x*y"]
    horizon: 12              # optional
    modules:
      Rx: {ideal: [x]}
      k: residue_field
      R: free
      P: {target: [0, 0], source: [1, 1], matrix: [[x, "0"], ["0", y]]}
    pairs:
      node_x_y: [Rx, Ry]
    sequences:
      node_ses: {modules: [A, B, C], alpha: [[y]], beta: [["1"]], against: [k]}

Validation (homogeneity, regularity of the relations, map degrees) happens
while loading, before anything is computed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import yaml

from .groebner import InhomogeneousError
from .modules import GradedPresentation, ModuleMap, PresentationError, direct_sum
from .poly import PolyParseError
from .rings import NotRegularSequence, RingSpec
from .scalar import FieldError


class ProblemError(ValueError):
    """Input error: exit status 2."""


@dataclass
class Sequence:
    name: str
    modules: tuple
    alpha: ModuleMap
    beta: ModuleMap
    against: tuple
    side: str = "first"  # the sequence sits in the first or second argument


@dataclass
class Problem:
    name: str
    ring: RingSpec
    modules: dict
    pairs: dict
    sequences: dict = field(default_factory=dict)
    horizon: int | None = None
    notes: dict = field(default_factory=dict)
    source: str | None = None


def _poly_err(where, exc: PolyParseError) -> ProblemError:
    return ProblemError(f"{where}: {exc.args[0]}\n{exc.annotated()}")


def _module(ring, name, spec):
    if spec == "residue_field":
        return GradedPresentation.residue_field(ring)
    if spec == "free":
        return GradedPresentation.free_module(ring)
    if not isinstance(spec, dict):
        raise ProblemError(f"module {name}: expected a mapping, 'free' or 'residue_field'")
    if "free" in spec:
        return GradedPresentation.free_module(ring, tuple(spec["free"]))
    if "ideal" in spec:
        return GradedPresentation.cyclic(ring, [str(g) for g in spec["ideal"]],
                                         int(spec.get("shift", 0)))
    if "matrix" in spec:
        rows = [[str(x) for x in row] for row in spec["matrix"]]
        return GradedPresentation.from_matrix(ring, spec["target"], spec["source"], rows)
    raise ProblemError(f"module {name}: needs one of free, ideal, matrix or sum")


def _load_modules(ring, raw):
    mods = {}
    pending = dict(raw or {})
    # direct sums refer to other modules, so resolve them after the rest
    sums = {k: v for k, v in pending.items() if isinstance(v, dict) and "sum" in v}
    for name, spec in pending.items():
        if name in sums:
            continue
        try:
            mods[name] = _module(ring, name, spec)
        except PolyParseError as exc:
            raise _poly_err(f"module {name}", exc) from None
        except (InhomogeneousError, PresentationError, KeyError, TypeError) as exc:
            raise ProblemError(f"module {name}: {exc}") from None
    for name, spec in sums.items():
        parts = spec["sum"]
        missing = [p for p in parts if p not in mods]
        if missing:
            raise ProblemError(f"module {name}: unknown summands {missing}")
        mods[name] = direct_sum(*[mods[p] for p in parts])
    return mods


def load_problem(data: dict, source: str | None = None) -> Problem:
    if not isinstance(data, dict):
        raise ProblemError("problem file must be a mapping")
    try:
        name = str(data["name"])
        variables = [str(v) for v in data["variables"]]
    except KeyError as exc:
        raise ProblemError(f"missing key {exc.args[0]!r}") from None
    rels = [str(f) for f in data.get("relations", []) or []]
    try:
        ring = RingSpec.build(variables, rels, field=str(data.get("field", "q")),
                              weights=data.get("weights"), name=name)
    except PolyParseError as exc:
        raise _poly_err("relations", exc) from None
    except (FieldError, InhomogeneousError) as exc:
        raise ProblemError(str(exc)) from None
    except NotRegularSequence as exc:
        raise ProblemError(f"relations: {exc}") from None
    except ValueError as exc:
        raise ProblemError(f"ring: {exc}") from None
    mods = _load_modules(ring, data.get("modules"))
    pairs = {}
    for pname, pr in (data.get("pairs") or {}).items():
        if not isinstance(pr, (list, tuple)) or len(pr) != 2 or any(m not in mods for m in pr):
            raise ProblemError(f"pair {pname}: expected two known module names, got {pr!r}")
        pairs[str(pname)] = (pr[0], pr[1])
    seqs = {}
    for sname, sp in (data.get("sequences") or {}).items():
        try:
            a, b, c = sp["modules"]
            for m in (a, b, c, *sp.get("against", [])):
                if m not in mods:
                    raise ProblemError(f"sequence {sname}: unknown module {m}")
            alpha = ModuleMap.from_matrix(mods[a], mods[b], [[str(x) for x in row] for row in sp["alpha"]])
            beta = ModuleMap.from_matrix(mods[b], mods[c], [[str(x) for x in row] for row in sp["beta"]])
        except PolyParseError as exc:
            raise _poly_err(f"sequence {sname}", exc) from None
        except (KeyError, ValueError, TypeError) as exc:
            if isinstance(exc, ProblemError):
                raise
            raise ProblemError(f"sequence {sname}: {exc}") from None
        side = sp.get("side", "first")
        if side not in ("first", "second"):
            raise ProblemError(f"sequence {sname}: side must be 'first' or 'second'")
        seqs[str(sname)] = Sequence(str(sname), (a, b, c), alpha, beta,
                                    tuple(sp.get("against", [])), side)
    horizon = data.get("horizon")
    if horizon is not None and (not isinstance(horizon, int) or horizon < 2):
        raise ProblemError("horizon must be an integer >= 2")
    return Problem(name, ring, mods, pairs, seqs, horizon, dict(data.get("notes") or {}), source)


def read_problem(path: str) -> Problem:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ProblemError(f"cannot read {path}: {exc.strerror}") from None
    except yaml.YAMLError as exc:
        raise ProblemError(f"{path}: malformed YAML: {exc}") from None
    return load_problem(data, source=os.path.basename(path))


def corpus_dir() -> str:
    return os.path.join(os.path.dirname(__file__), "corpus")


def corpus_files() -> list[str]:
    d = corpus_dir()
    return sorted(os.path.join(d, f) for f in os.listdir(d) if f.endswith(".yaml"))


def load_corpus() -> list[Problem]:
    return [read_problem(p) for p in corpus_files()]


def find_pair(problems, pair_name):
    for pb in problems:
        if pair_name in pb.pairs:
            return pb
    raise ProblemError(f"unknown pair {pair_name!r}")
