"""Canonical JSON with fixed-precision floats.

Records that must replay byte-identically are serialized here instead of
through ``json.dumps``: floats are always rendered with ``%.17g`` (which
round-trips every IEEE double), keys keep their insertion order, and there
is no whitespace variation.  Non-finite floats are rejected.
"""

from __future__ import annotations

import hashlib
import math

__all__ = ["format_float", "canonical_json", "sha256_of"]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError("cannot serialize a non-finite float")
    # Fold -0.0 into 0.0: "-0" would come back from a JSON parser as the
    # integer 0 and the reserialized text would no longer match.
    return f"{x + 0.0:.17g}"


def canonical_json(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        out = ['"']
        for ch in obj:
            if ch == '"':
                out.append('\\"')
            elif ch == "\\":
                out.append("\\\\")
            elif ord(ch) < 0x20:
                out.append(f"\\u{ord(ch):04x}")
            else:
                out.append(ch)
        out.append('"')
        return "".join(out)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, dict):
        parts = []
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError("canonical JSON keys must be strings")
            parts.append(canonical_json(k) + ":" + canonical_json(v))
        return "{" + ",".join(parts) + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def sha256_of(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
