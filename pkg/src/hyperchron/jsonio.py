"""JSON schemas for events, group elements, systems and states.

Output is deterministic: keys keep insertion order and floats are written
with 17 significant digits so that every double round-trips exactly.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from . import chronometry as chrono
from .breaking import internal_dim
from .chronometry import DEFAULT_TOL, Tolerance
from .errors import HyperchronError, NonHermitianInput
from .mechanics import ElementarySystem
from .projection import Counterexample
from .symmetry import LorentzElement, PoincareElement


class MalformedInput(HyperchronError):
    pass


def format_float(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot encode non-finite float {x!r} as JSON")
    return format(x, ".17g")


def dumps(obj: Any, indent: int | None = 2) -> str:
    """Serialise plain data (dict/list/str/int/float/bool/None) deterministically."""
    pad = "" if indent is None else "\n"

    def enc(o, level):
        inner = "" if indent is None else " " * (indent * (level + 1))
        outer = "" if indent is None else " " * (indent * level)
        sep = "," if indent is None else ",\n"
        colon = ":" if indent is None else ": "
        if o is None:
            return "null"
        if isinstance(o, (bool, np.bool_)):
            return "true" if o else "false"
        if isinstance(o, (int, np.integer)):
            return str(int(o))
        if isinstance(o, (float, np.floating)):
            return format_float(o)
        if isinstance(o, str):
            return json.dumps(o)
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [f"{inner}{enc(str(k), 0)}{colon}{enc(v, level + 1)}" for k, v in o.items()]
            return "{" + pad + sep.join(items) + pad + outer + "}"
        if isinstance(o, (list, tuple, np.ndarray)):
            seq = list(o)
            if not seq:
                return "[]"
            # numeric rows stay on one line
            if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
                return "[" + ", ".join(enc(v, 0) for v in seq) + "]"
            items = [f"{inner}{enc(v, level + 1)}" for v in seq]
            return "[" + pad + sep.join(items) + pad + outer + "]"
        raise TypeError(f"cannot serialise {type(o).__name__}")

    return enc(obj, 0)


def matrix_to_json(M) -> dict:
    M = np.asarray(M, dtype=complex)
    return {"re": M.real.tolist(), "im": M.imag.tolist()}


def matrix_from_json(d: Any) -> np.ndarray:
    try:
        re = np.asarray(d["re"], dtype=float)
        im = np.asarray(d.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"expected an object with numeric 're' and 'im' matrices: {exc}") from exc
    if re.ndim != 2 or re.shape[0] != re.shape[1] or re.shape != im.shape:
        raise MalformedInput(f"'re' and 'im' must be equal-shape square matrices, got {re.shape}, {im.shape}")
    return re + 1j * im


def event_to_json(v) -> dict:
    v = np.asarray(v, dtype=complex)
    return {"r": v.shape[0], **matrix_to_json(v)}


def event_from_json(d: Any, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Parse ``{"r", "re", "im"}``; ``re`` must be symmetric and ``im`` antisymmetric."""
    if not isinstance(d, dict) or "r" not in d:
        raise MalformedInput("event JSON needs keys 'r', 're', 'im'")
    M = matrix_from_json(d)
    if not isinstance(d["r"], int) or M.shape[0] != d["r"]:
        raise MalformedInput(f"'r' = {d['r']!r} does not match matrix size {M.shape[0]}")
    scale = float(np.max(np.abs(M)))
    defect = max(float(np.max(np.abs(M.real - M.real.T))), float(np.max(np.abs(M.imag + M.imag.T))))
    if defect > tol.threshold(scale):
        raise NonHermitianInput(defect)
    return M


def broken_event_to_json(X) -> dict:
    X = np.asarray(X, dtype=complex)
    return {"n": internal_dim(X), **event_to_json(X)}


def broken_event_from_json(d: Any, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    X = event_from_json(d, tol)
    if "n" not in d or X.shape[0] != 2 * d["n"]:
        raise MalformedInput("broken event JSON needs 'n' with r = 2n")
    return X


def poincare_to_json(g: PoincareElement) -> dict:
    return {"lambda": matrix_to_json(g.lam.matrix), "beta": event_to_json(g.beta)}


def poincare_from_json(d: Any) -> PoincareElement:
    try:
        lam = matrix_from_json(d["lambda"])
        beta = event_from_json(d["beta"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput("Poincare JSON needs 'lambda' and 'beta'") from exc
    return PoincareElement(LorentzElement(lam), beta)


def system_to_json(sys: ElementarySystem) -> dict:
    return {"P": event_to_json(sys.p), "l": matrix_to_json(sys.l)}


def system_from_json(d: Any) -> ElementarySystem:
    try:
        p = event_from_json(d["P"])
        l = matrix_from_json(d["l"])
    except (KeyError, TypeError) as exc:
        raise MalformedInput("system JSON needs 'P' and 'l'") from exc
    return ElementarySystem.create(p, l)


def density_to_json(rho) -> dict:
    rho = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    return {"n": rho.shape[0], **matrix_to_json(rho)}


def density_from_json(d: Any) -> np.ndarray:
    """Return the raw matrix; wrap in DensityMatrix/CandidateMap to validate."""
    if not isinstance(d, dict) or "n" not in d:
        raise MalformedInput("density matrix JSON needs keys 'n', 're', 'im'")
    rho = matrix_from_json(d)
    if rho.shape[0] != d["n"]:
        raise MalformedInput(f"'n' = {d['n']!r} does not match matrix size {rho.shape[0]}")
    return rho


def class_to_json(cls: chrono.CausalClass) -> dict:
    return cls.to_dict()


def counterexample_to_json(cx: Counterexample) -> dict:
    return {
        "counterexample_X": broken_event_to_json(cx.X),
        "image": event_to_json(cx.image),
        "input_class": class_to_json(cx.input_class),
        "image_class": class_to_json(cx.image_class),
    }
