"""JSON interchange for problems and reports.

Complex numbers are [re, im] pairs; full matrix elements are row-major
nested arrays, diagonal elements flat arrays.  Floats round-trip
bit-exactly through the default shortest-repr encoding.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    AlgebraKind,
    Tolerance,
)
from .frames import FrameSystem
from .gframes import GFrameSystem
from .module import ModuleDescriptor, ModuleElement
from .opframes import OperatorFrameSystem
from .operators import AdjointableOp
from .verification import BoundsSpec, Mode

__all__ = [
    "PROBLEM_VERSION",
    "ProblemFile",
    "encode_problem",
    "decode_problem",
    "dumps_problem",
    "loads_problem",
    "dumps_report",
]

PROBLEM_VERSION = "1"


def _enc_complex(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _dec_complex(pair) -> complex:
    return complex(pair[0], pair[1])


def _enc_element(a: AlgebraElement):
    if a.algebra.kind is AlgebraKind.FULL:
        return [[_enc_complex(z) for z in row] for row in a.data]
    return [_enc_complex(z) for z in a.data]


def _dec_element(algebra: AlgebraDescriptor, data) -> AlgebraElement:
    if algebra.kind is AlgebraKind.FULL:
        arr = np.array([[_dec_complex(p) for p in row] for row in data])
    else:
        arr = np.array([_dec_complex(p) for p in data])
    return AlgebraElement(algebra, arr)


def _enc_module_element(x: ModuleElement):
    return [_enc_element(x.component(k)) for k in range(x.module.rank)]


def _dec_module_element(module: ModuleDescriptor, data) -> ModuleElement:
    comps = [_dec_element(module.algebra, c) for c in data]
    from .module import element

    return element(module, comps)


def _enc_op(op: AdjointableOp):
    return {
        "domain": {"rank": op.domain.rank},
        "codomain": {"rank": op.codomain.rank},
        "coeffs": [
            [_enc_element(op.coeff(k, j)) for j in range(op.codomain.rank)]
            for k in range(op.domain.rank)
        ],
    }


def _dec_op(algebra: AlgebraDescriptor, data) -> AdjointableOp:
    dom = ModuleDescriptor(algebra, int(data["domain"]["rank"]))
    cod = ModuleDescriptor(algebra, int(data["codomain"]["rank"]))
    from .operators import op_from_coeffs

    coeffs = [
        [_dec_element(algebra, data["coeffs"][k][j]) for j in range(cod.rank)]
        for k in range(dom.rank)
    ]
    return op_from_coeffs(dom, cod, coeffs)


def _enc_bound(value):
    if isinstance(value, AlgebraElement):
        return {"element": _enc_element(value)}
    return {"scalar": float(value)}


def _dec_bound(algebra: AlgebraDescriptor, data):
    if "element" in data:
        return _dec_element(algebra, data["element"])
    return float(data["scalar"])


class ProblemFile:
    """A system plus optional bounds, as read from or written to JSON."""

    def __init__(self, system, bounds: BoundsSpec | None = None):
        self.system = system
        self.bounds = bounds

    @property
    def module(self) -> ModuleDescriptor:
        if isinstance(self.system, FrameSystem):
            return self.system.module
        if isinstance(self.system, GFrameSystem):
            return self.system.domain
        return self.system.module

    @property
    def kind(self) -> str:
        if isinstance(self.system, FrameSystem):
            return "frame"
        if isinstance(self.system, GFrameSystem):
            return "gframe"
        return "opframe"


def encode_problem(problem: ProblemFile) -> dict:
    system = problem.system
    module = problem.module
    algebra = module.algebra
    out = {
        "version": PROBLEM_VERSION,
        "algebra": {"kind": algebra.kind.value, "n": algebra.n},
        "module": {"rank": module.rank},
    }
    if isinstance(system, FrameSystem):
        payload = {
            "kind": "frame",
            "vectors": [_enc_module_element(v) for v in system.vectors],
        }
    elif isinstance(system, GFrameSystem):
        payload = {
            "kind": "gframe",
            "blocks": [
                {"space": {"rank": op.codomain.rank}, "op": _enc_op(op)}
                for op in system.blocks
            ],
        }
    elif isinstance(system, OperatorFrameSystem):
        payload = {"kind": "opframe", "ops": [_enc_op(op) for op in system.ops]}
    else:
        raise TypeError(f"cannot encode system of type {type(system).__name__}")
    out["payload"] = payload
    if problem.bounds is not None:
        spec = problem.bounds
        out["bounds"] = {
            "mode": spec.mode.value,
            "lower": _enc_bound(spec.lower),
            "upper": _enc_bound(spec.upper),
        }
        if spec.k_op is not None:
            out["k_op"] = _enc_op(spec.k_op)
    return out


def decode_problem(doc: dict) -> ProblemFile:
    if doc.get("version") != PROBLEM_VERSION:
        raise ValueError(f"unsupported problem version {doc.get('version')!r}")
    algebra = AlgebraDescriptor(AlgebraKind(doc["algebra"]["kind"]), int(doc["algebra"]["n"]))
    module = ModuleDescriptor(algebra, int(doc["module"]["rank"]))
    payload = doc["payload"]
    kind = payload["kind"]
    if kind == "frame":
        system = FrameSystem(
            module, tuple(_dec_module_element(module, v) for v in payload["vectors"])
        )
    elif kind == "gframe":
        system = GFrameSystem(
            module, tuple(_dec_op(algebra, blk["op"]) for blk in payload["blocks"])
        )
    elif kind == "opframe":
        system = OperatorFrameSystem(
            module, tuple(_dec_op(algebra, op) for op in payload["ops"])
        )
    else:
        raise ValueError(f"unknown payload kind {kind!r}")
    bounds = None
    if "bounds" in doc:
        b = doc["bounds"]
        k_op = _dec_op(algebra, doc["k_op"]) if "k_op" in doc else None
        bounds = BoundsSpec(
            Mode(b["mode"]),
            _dec_bound(algebra, b["lower"]),
            _dec_bound(algebra, b["upper"]),
            k_op=k_op,
        )
    return ProblemFile(system, bounds)


def dumps_problem(problem: ProblemFile) -> str:
    return json.dumps(encode_problem(problem), indent=2, sort_keys=True) + "\n"


def loads_problem(text: str) -> ProblemFile:
    return decode_problem(json.loads(text))


def tolerances_dict(tol: Tolerance) -> dict:
    return {"psd_rel": tol.psd_rel, "rank_rel": tol.rank_rel, "recon_rel": tol.recon_rel}


def dumps_report(report: dict) -> str:
    """Deterministic JSON for report dictionaries."""
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def encode_element_file(x: ModuleElement) -> dict:
    algebra = x.module.algebra
    return {
        "version": PROBLEM_VERSION,
        "algebra": {"kind": algebra.kind.value, "n": algebra.n},
        "module": {"rank": x.module.rank},
        "element": _enc_module_element(x),
    }


def decode_element_file(doc: dict) -> ModuleElement:
    algebra = AlgebraDescriptor(AlgebraKind(doc["algebra"]["kind"]), int(doc["algebra"]["n"]))
    module = ModuleDescriptor(algebra, int(doc["module"]["rank"]))
    return _dec_module_element(module, doc["element"])


def encode_operator_file(op: AdjointableOp) -> dict:
    algebra = op.domain.algebra
    return {
        "version": PROBLEM_VERSION,
        "algebra": {"kind": algebra.kind.value, "n": algebra.n},
        "op": _enc_op(op),
    }


def decode_operator_file(doc: dict) -> AdjointableOp:
    algebra = AlgebraDescriptor(AlgebraKind(doc["algebra"]["kind"]), int(doc["algebra"]["n"]))
    return _dec_op(algebra, doc["op"])
