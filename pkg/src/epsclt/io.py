"""JSON schemas and loaders for graphs, grids, step graphons, laws and models.

Rationals are written as ``"p/q"`` strings (integers may be bare numbers).
Floats are accepted only in float mode.
"""

import json

import jsonschema

from ._numeric import format_number, to_number
from .cumulants import ScalarLaw
from .errors import DomainError, SchemaError
from .graphon import StepGraphon
from .graphs import GridGraph, SimpleGraph

__all__ = [
    "GRAPH_SCHEMA",
    "GRID_SCHEMA",
    "GRAPHON_SCHEMA",
    "LAW_SCHEMA",
    "MODEL_SCHEMA",
    "validate",
    "load_json",
    "parse_graph",
    "parse_grid",
    "parse_graphon",
    "parse_law",
    "parse_model",
    "graph_to_json",
    "graphon_to_json",
    "Model",
]

_NUMBER = {
    "oneOf": [
        {"type": "number"},
        {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"},
    ]
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["n", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer", "minimum": 1},
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
    "additionalProperties": False,
}

GRID_SCHEMA = {
    "type": "object",
    "required": ["n", "L", "edges"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "L": {"type": "integer", "minimum": 1},
        "edges": {
            "type": "array",
            "items": {
                "type": "array",
                "minItems": 2,
                "maxItems": 2,
                "items": {
                    "type": "array",
                    "items": {"type": "integer", "minimum": 1},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
    },
    "additionalProperties": False,
}

GRAPHON_SCHEMA = {
    "type": "object",
    "required": ["breaks", "values"],
    "properties": {
        "breaks": {"type": "array", "items": _NUMBER, "minItems": 2},
        "values": {"type": "array", "items": {"type": "array", "items": _NUMBER}, "minItems": 1},
    },
    "additionalProperties": False,
}

LAW_SCHEMA = {
    "type": "object",
    "required": ["moments"],
    "properties": {"moments": {"type": "array", "items": _NUMBER, "minItems": 1}},
    "additionalProperties": False,
}

_MEAN_VARIANCE_SCHEMA = {
    "type": "object",
    "required": ["lambda", "sigma2"],
    "properties": {"lambda": _NUMBER, "sigma2": _NUMBER},
    "additionalProperties": False,
}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["L", "g_L", "w", "law", "p_max"],
    "properties": {
        "L": {"type": "integer", "minimum": 1},
        "g_L": GRAPH_SCHEMA,
        "w": GRAPHON_SCHEMA,
        "law": {"oneOf": [LAW_SCHEMA, _MEAN_VARIANCE_SCHEMA]},
        "p_max": {"type": "integer", "minimum": 1},
        # optional finite-n settings
        "g_prime": {"oneOf": [{"enum": ["complete", "edgeless", "blowup"]}, GRAPH_SCHEMA]},
        "ns": {"type": "array", "items": {"type": "integer", "minimum": 1}},
    },
    "additionalProperties": False,
}


def _path(parts):
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in parts)


def validate(obj, schema):
    """Raise :class:`SchemaError` naming the offending path if ``obj`` violates ``schema``."""
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(obj))
    if err is not None:
        raise SchemaError(_path(err.absolute_path), err.message)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise SchemaError("$", f"cannot read {path}: {exc.strerror}") from None


def _num(x, exact, where):
    try:
        return to_number(x, exact)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(where, str(exc)) from None


def _wrap_domain(where, fn, *args):
    try:
        return fn(*args)
    except DomainError as exc:
        raise SchemaError(where, str(exc)) from None


def parse_graph(obj, where="$"):
    """``{"n": int, "edges": [[u, v], ...]}`` with 1-based vertices."""
    validate(obj, GRAPH_SCHEMA)
    n = obj["n"]
    for k, (u, v) in enumerate(obj["edges"]):
        if u > n or v > n:
            raise SchemaError(f"{where}.edges[{k}]", f"vertex out of range 1..{n}")
    return _wrap_domain(where, SimpleGraph, n, [tuple(e) for e in obj["edges"]])


def parse_grid(obj, where="$"):
    validate(obj, GRID_SCHEMA)
    edges = [tuple(tuple(v) for v in e) for e in obj["edges"]]
    return _wrap_domain(where, GridGraph, obj["n"], obj["L"], edges)


def parse_graphon(obj, exact=True, where="$"):
    validate(obj, GRAPHON_SCHEMA)
    breaks = [_num(t, exact, f"{where}.breaks[{k}]") for k, t in enumerate(obj["breaks"])]
    values = [
        [_num(v, exact, f"{where}.values[{a}][{b}]") for b, v in enumerate(row)]
        for a, row in enumerate(obj["values"])
    ]
    return _wrap_domain(where, StepGraphon, breaks, values, exact)


def parse_law(obj, exact=True, where="$"):
    validate(obj, LAW_SCHEMA)
    moments = [_num(m, exact, f"{where}.moments[{k}]") for k, m in enumerate(obj["moments"])]
    return _wrap_domain(where, ScalarLaw, tuple(moments))


class Model:
    """A parsed model file."""

    def __init__(self, gL, w, lam, sigma2, p_max, law=None, g_prime=None, ns=None):
        self.gL = gL
        self.w = w
        self.lam = lam
        self.sigma2 = sigma2
        self.p_max = p_max
        self.law = law
        self.g_prime = g_prime
        self.ns = ns

    @property
    def L(self):
        return self.gL.n

    def limit_model(self):
        from .limit_laws import LimitModel

        return LimitModel(self.gL, self.w, self.lam, self.sigma2)

    def summand_law(self, K=None):
        """The law of the summands; a semicircle with the model's mean and variance if none was given."""
        if self.law is not None:
            return self.law
        K = max(K or self.p_max, 2)
        return ScalarLaw.semicircle(K=K, mean=self.lam, variance=self.sigma2)


def parse_model(obj, exact=True):
    """Validate and parse a model object."""
    validate(obj, MODEL_SCHEMA)
    gL = parse_graph(obj["g_L"], "$.g_L")
    if gL.n != obj["L"]:
        raise SchemaError("$.g_L.n", f"g_L has {gL.n} vertices but L = {obj['L']}")
    w = parse_graphon(obj["w"], exact, "$.w")
    law_obj = obj["law"]
    law = None
    if "moments" in law_obj:
        law = parse_law(law_obj, exact, "$.law")
        if law.K < 2:
            raise SchemaError("$.law.moments", "need at least the first two moments")
        lam, sigma2 = law.mean, law.variance
    else:
        lam = _num(law_obj["lambda"], exact, "$.law.lambda")
        sigma2 = _num(law_obj["sigma2"], exact, "$.law.sigma2")
    if sigma2 <= 0:
        raise SchemaError("$.law", f"the variance must be positive, got {format_number(sigma2)}")
    g_prime = obj.get("g_prime")
    if isinstance(g_prime, dict):
        g_prime = parse_graph(g_prime, "$.g_prime")
    return Model(gL, w, lam, sigma2, obj["p_max"], law, g_prime, obj.get("ns"))


def graph_to_json(g):
    return {"n": g.n, "edges": [[g.index(u) + 1, g.index(v) + 1] for u, v in g.sorted_edges()]}


def graphon_to_json(w):
    return {
        "breaks": [format_number(t) for t in w.breaks],
        "values": [[format_number(v) for v in row] for row in w.values],
    }
