"""Versioned tolerance and cap configuration (text ``key = value`` file)."""
from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Dict, Optional, Union

_DEFAULT_NAME = "tolerances.cfg"


def parse_config(text: str) -> Dict[str, float]:
    out: Dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        num = float(val)
        out[key] = int(num) if num.is_integer() and "e" not in val.lower() and "." not in val else num
    return out


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, float]:
    """Defaults from the packaged file, updated by ``path`` if given."""
    cfg = parse_config(resources.files("artifact").joinpath(_DEFAULT_NAME).read_text())
    if path is not None:
        cfg.update(parse_config(Path(path).read_text()))
    return cfg


DEFAULTS = load_config()
