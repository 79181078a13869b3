"""Ideal files: JSON with keys p, n, vars, regular_sequence, extras."""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import RingContext, form_parse, form_print
from .errors import InputError
from .verify import IdealInstance

KEYS = ("p", "n", "vars", "regular_sequence", "extras")


def instance_to_dict(inst: IdealInstance) -> dict:
    return {
        "p": inst.ctx.p,
        "n": inst.ctx.n,
        "vars": list(inst.ctx.var_names),
        "regular_sequence": [form_print(f) for f in inst.ci],
        "extras": [form_print(g) for g in inst.extras],
    }


def instance_from_dict(data: dict, validate: bool = True) -> IdealInstance:
    if not isinstance(data, dict):
        raise InputError("ideal must be a JSON object")
    missing = [k for k in ("p", "n", "regular_sequence") if k not in data]
    if missing:
        raise InputError(f"ideal is missing keys {missing}")
    unknown = sorted(set(data) - set(KEYS))
    if unknown:
        raise InputError(f"unknown keys {unknown}")
    try:
        ctx = RingContext(int(data["n"]), int(data["p"]), tuple(data.get("vars") or ()))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    ci = [form_parse(ctx, s) for s in data["regular_sequence"]]
    extras = [form_parse(ctx, s) for s in data.get("extras", [])]
    return IdealInstance(ctx, ci, extras, validate=validate)


def load_ideal(path: str | Path, validate: bool = True) -> IdealInstance:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc.msg})") from exc
    return instance_from_dict(data, validate)


def dump_ideal(inst: IdealInstance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst), indent=2) + "\n")
