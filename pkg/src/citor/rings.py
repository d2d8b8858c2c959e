"""Graded complete intersections R = Q/(f_1..f_r) over a polynomial ring Q."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import groebner as gbm
from .poly import PolyRing, Polynomial
from .scalar import QQ, field_from_descriptor


class NotRegularSequence(ValueError):
    """Raised when (f_1..f_r) fails the colon test; carries a witness."""

    def __init__(self, index: int, witness: Polynomial):
        super().__init__(f"f_{index + 1} is a zerodivisor modulo its predecessors "
                         f"(witness {witness})")
        self.index = index
        self.witness = witness


@dataclass(frozen=True)
class RegularSequenceCertificate:
    passed: bool
    index: int | None = None  # failing position (0-based)
    witness: Polynomial | None = None

    def as_dict(self):
        if self.passed:
            return {"status": "pass"}
        return {"status": "fail", "index": self.index + 1, "witness": str(self.witness)}


def verify_regular_sequence(Q: PolyRing, seq) -> RegularSequenceCertificate:
    """Check ((f_1..f_{i-1}) : f_i) = (f_1..f_{i-1}) for each i."""
    seq = [Q(f) for f in seq]
    for i, f in enumerate(seq):
        if not f.is_homogeneous():
            raise gbm.InhomogeneousError(f"relation {f} is not homogeneous")
        if not f:
            return RegularSequenceCertificate(False, i, Q.one)
        if f.is_constant():
            # a unit: R would be the zero ring
            return RegularSequenceCertificate(False, i, Q.one)
        prev = seq[:i]
        col = gbm.colon(prev, f, Q)
        base = gbm.ideal_basis(prev, Q) if prev else None
        for g in col.as_polynomials():
            v = {(0, e): c for e, c in g._t.items()}
            if base is None or gbm.normal_form(v, base):
                return RegularSequenceCertificate(False, i, g)
    return RegularSequenceCertificate(True)


class RingSpec:
    """Q = k[vars] with positive weights, modulo a homogeneous regular sequence."""

    def __init__(self, Q: PolyRing, relations=(), verify: bool = True, name: str | None = None):
        self.Q = Q
        self.relations = tuple(Q(f) for f in relations)
        self.name = name
        if verify:
            cert = verify_regular_sequence(Q, self.relations)
            if not cert.passed:
                raise NotRegularSequence(cert.index, cert.witness)

    @classmethod
    def build(cls, variables, relations=(), field="q", weights=None, name=None):
        fld = field_from_descriptor(field) if isinstance(field, str) else (field or QQ)
        Q = PolyRing(variables, fld, weights)
        return cls(Q, [Q(f) for f in relations], name=name)

    # -- basic data -----------------------------------------------------------
    @property
    def field(self):
        return self.Q.field

    @property
    def codim(self) -> int:
        return len(self.relations)

    @property
    def relation_degrees(self) -> tuple:
        return tuple(f.degree() for f in self.relations)

    @property
    def dim_Q(self) -> int:
        return self.Q.nvars

    @property
    def dim(self) -> int:
        return self.Q.nvars - self.codim

    @property
    def depth(self) -> int:
        return self.dim

    def is_regular(self) -> bool:
        return self.codim == 0

    def __eq__(self, other):
        return isinstance(other, RingSpec) and other.Q == self.Q and other.relations == self.relations

    def __hash__(self):
        return hash((self.Q, self.relations))

    def __repr__(self):
        rel = ", ".join(str(f) for f in self.relations)
        return f"RingSpec({', '.join(self.Q.names)} / ({rel}))"

    # -- derived rings ----------------------------------------------------------
    def ambient(self) -> "RingSpec":
        return RingSpec(self.Q, (), verify=False)

    def prefix(self, s: int) -> "RingSpec":
        """Q/(f_1..f_s)."""
        return RingSpec(self.Q, self.relations[:s], verify=False)

    def drop_last(self) -> "RingSpec":
        return self.prefix(self.codim - 1)

    # -- relations --------------------------------------------------------------
    @cached_property
    def ideal_gb(self):
        return gbm.ideal_basis(list(self.relations), self.Q) if self.relations else None

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form modulo (f)."""
        if self.ideal_gb is None or not p:
            return p
        v = gbm.normal_form({(0, e): c for e, c in p._t.items()}, self.ideal_gb)
        return self.Q._raw({e: c for (_, e), c in v.items()})

    def reduce_raw(self, p: dict) -> dict:
        if self.ideal_gb is None or not p:
            return p
        v = gbm.normal_form({(0, e): c for e, c in p.items()}, self.ideal_gb)
        return {e: c for (_, e), c in v.items()}

    def reduce_vector(self, v: dict) -> dict:
        """Entrywise normal form of a vector modulo (f)."""
        if self.ideal_gb is None or not v:
            return v
        out = {}
        for i, comp in enumerate(_components(v)):
            if comp:
                for e, c in self.reduce_raw(comp).items():
                    out[(i, e)] = c
        return out

    def relation_multiples(self, free: gbm.FreeModule) -> list[dict]:
        """The vectors f_k e_i spanning (f)·free."""
        out = []
        for f in self.relations:
            for i in range(free.rank):
                out.append({(i, e): c for e, c in f._t.items()})
        return out

    @cached_property
    def hilbert(self) -> gbm.HilbertData:
        if self.ideal_gb is None:
            return gbm.HilbertData({0: 1}, self.Q.weights)
        return gbm.hilbert(self.ideal_gb)

    def describe(self) -> dict:
        return {
            "field": self.field.descriptor,
            "variables": list(self.Q.names),
            "weights": list(self.Q.weights),
            "relations": [str(f) for f in self.relations],
        }


def _components(v: dict):
    if not v:
        return []
    n = max(p for p, _ in v) + 1
    comps = [dict() for _ in range(n)]
    for (p, e), c in v.items():
        comps[p][e] = c
    return comps
