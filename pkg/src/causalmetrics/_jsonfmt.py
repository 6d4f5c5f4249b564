"""Deterministic JSON output: floats at 17 significant digits, insertion
order preserved, so identical results serialize to identical bytes."""

import json
import math


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("non-finite floats must be encoded upstream")
    return format(x, ".17g")


def dumps(doc) -> str:
    out = []
    _write(doc, out)
    return "".join(out)


def _write(doc, out) -> None:
    if doc is None:
        out.append("null")
    elif doc is True:
        out.append("true")
    elif doc is False:
        out.append("false")
    elif isinstance(doc, int):
        out.append(str(doc))
    elif isinstance(doc, float):
        out.append(_format_float(doc))
    elif isinstance(doc, str):
        out.append(json.dumps(doc))
    elif isinstance(doc, dict):
        out.append("{")
        for i, (key, value) in enumerate(doc.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _write(value, out)
        out.append("}")
    elif isinstance(doc, (list, tuple)):
        out.append("[")
        for i, value in enumerate(doc):
            if i:
                out.append(", ")
            _write(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(doc).__name__}")
