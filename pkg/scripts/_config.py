"""Turn a dataclass of defaults into command-line overrides."""
from __future__ import annotations

import argparse
from dataclasses import fields
from typing import TypeVar

T = TypeVar("T")


def parse(cls: type[T], description: str | None = None) -> T:
    p = argparse.ArgumentParser(description=description or cls.__doc__)
    for f in fields(cls):
        flag = "--" + f.name.replace("_", "-")
        if f.type in (bool, "bool"):
            p.add_argument(flag, action="store_true", default=f.default)
        else:
            kind = {"int": int, "float": float, "str": str}.get(str(f.type), str)
            p.add_argument(flag, type=kind, default=f.default, help=f"default: {f.default}")
    return cls(**vars(p.parse_args()))
