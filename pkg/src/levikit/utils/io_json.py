"""
JSON loaders and the deterministic dumper used by the command line.

Nested references ("from", "to") may be inline objects or paths relative to
the file that mentions them.
"""

import json
import logging
import os
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

from ..components.isotypy import classify_steinberg, infer
from ..components.perm_groups import PermGroup, matrix_group
from ..components.root_datum import RootDatum, adjoint, make_based, require_valid, simply_connected
from .cyclotomic import CyclotomicNumber
from .errors import InvalidInputError
from .lattice import LatticeMap

logger = logging.getLogger(__name__)


def read_json(path: str) -> Tuple[Any, str]:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise InvalidInputError(f"file not found: {path}")
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"{path} is not valid JSON: {e}")
    logger.debug("loaded %s", path)
    return data, os.path.dirname(os.path.abspath(path))


def _resolve(value, base_dir: str, key: str) -> Tuple[dict, str]:
    if isinstance(value, str):
        return read_json(value if os.path.isabs(value) else os.path.join(base_dir, value))
    if isinstance(value, dict):
        return value, base_dir
    raise InvalidInputError(f"'{key}' must be an object or a file path")


def _require(data: dict, key: str, kind):
    if not isinstance(data, dict) or key not in data:
        raise InvalidInputError(f"missing key '{key}'")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise InvalidInputError(f"key '{key}' has the wrong type")
    return value


def _int_rows(value, key: str, width: Optional[int] = None) -> List[List[int]]:
    if not isinstance(value, list):
        raise InvalidInputError(f"key '{key}' must be a list of integer lists")
    rows = []
    for row in value:
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InvalidInputError(f"key '{key}' must be a list of integer lists")
        if width is not None and len(row) != width:
            raise InvalidInputError(f"key '{key}': entry {row} does not have length {width}")
        rows.append(row)
    return rows


# -- root data ---------------------------------------------------------------------

def _parse_cartan_type(data: dict):
    label = _require(data, "type", str)
    family, rank = label[:1], label[1:]
    if not rank.isdigit():
        raise InvalidInputError(f"key 'type': cannot read {label!r} as a Dynkin type")
    build = _LATTICES.get(data.get("lattice", "adjoint"))
    if build is None:
        raise InvalidInputError(f"key 'lattice' must be one of {sorted(_LATTICES)}")
    B = build(family, int(rank))
    R = RootDatum(B.datum.rank, B.datum.roots, B.datum.coroots, data.get("name", B.name))
    return R, B.simple


_LATTICES = {"adjoint": adjoint, "simply_connected": simply_connected}


def parse_rootdatum(data: dict):
    """Either explicit roots and coroots or {"type": "A5", "lattice": "adjoint"}."""
    if isinstance(data, dict) and "type" in data:
        return _parse_cartan_type(data)
    rank = _require(data, "rank", int)
    if rank < 0:
        raise InvalidInputError("key 'rank' must be non-negative")
    roots = _int_rows(_require(data, "roots", list), "roots", rank)
    coroots = _int_rows(_require(data, "coroots", list), "coroots", rank)
    simple = data.get("simple")
    if simple is not None:
        if not isinstance(simple, list) or not all(isinstance(i, int) for i in simple):
            raise InvalidInputError("key 'simple' must be a list of root indices")
        simple = tuple(simple)
    return RootDatum.build(rank, roots, coroots, data.get("name", "")), simple


def load_rootdatum(path: str):
    data, _ = read_json(path)
    return parse_rootdatum(data)


def load_based(path: str):
    R, simple = load_rootdatum(path)
    return make_based(R, simple)


def _parse_map(data: dict, base_dir: str):
    target_data, _ = _resolve(_require(data, "from", (dict, str)), base_dir, "from")
    source_data, _ = _resolve(_require(data, "to", (dict, str)), base_dir, "to")
    target, _ = parse_rootdatum(target_data)
    source, source_simple = parse_rootdatum(source_data)
    rows = _int_rows(_require(data, "matrix", list), "matrix", source.rank)
    if len(rows) != target.rank:
        raise InvalidInputError(f"key 'matrix' needs {target.rank} rows")
    f = LatticeMap.from_rows(rows, source.rank)
    return source, source_simple, target, f


def load_pmorphism(path: str, p: Optional[int] = None):
    data, base_dir = read_json(path)
    source, _, target, f = _parse_map(data, base_dir)
    require_valid(source)
    require_valid(target)
    p = p if p is not None else _require(data, "p", int)
    return infer(f, p, source, target)


def load_steinberg(path: str):
    data, base_dir = read_json(path)
    source, simple, target, f = _parse_map(data, base_dir)
    if source != target:
        raise InvalidInputError("a Steinberg file needs 'from' equal to 'to'")
    B = make_based(source, simple)
    return classify_steinberg(infer(f, _require(data, "p", int), B.datum, B.datum), B.simple)


# -- groups -----------------------------------------------------------------------------

def parse_group(data: dict, name: str = ""):
    name = data.get("name", name) if isinstance(data, dict) else name
    if isinstance(data, dict) and "matrices" in data:
        matrices = _require(data, "matrices", list)
        for M in matrices:
            _int_rows(M, "matrices")
        return matrix_group(matrices, _require(data, "q", int), name)
    degree = _require(data, "degree", int)
    generators = _int_rows(_require(data, "generators", list), "generators", degree)
    return PermGroup.from_one_based(degree, generators, name)


def load_group(path: str):
    data, _ = read_json(path)
    return parse_group(data, os.path.splitext(os.path.basename(path))[0])


def load_automorphisms(path: str, H) -> List[Tuple[Tuple[int, ...], ...]]:
    """Images of the generators of H under each generator of A, as 0-based tuples."""
    data, _ = read_json(path)
    autos = _require(data, "automorphisms", list)
    out = []
    for images in autos:
        rows = _int_rows(images, "automorphisms", H.degree)
        if len(rows) != len(H.generators):
            raise InvalidInputError(f"key 'automorphisms': {len(rows)} images for {len(H.generators)} generators")
        out.append(tuple(tuple(x - 1 for x in row) for row in rows))
    return out


def parse_subset(text: Optional[str], simple: Sequence[int]) -> Tuple[int, ...]:
    """'0,2,4' as positions in the simple root list, returned as root indices."""
    if text is None or text.strip() == "":
        return ()
    try:
        positions = [int(x) for x in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"--I expects comma separated integers, got {text!r}")
    for k in positions:
        if not 0 <= k < len(simple):
            raise InvalidInputError(f"--I position {k} out of range for {len(simple)} simple roots")
    return tuple(simple[k] for k in positions)


# -- output --------------------------------------------------------------------------------

def _default(obj):
    if isinstance(obj, (CyclotomicNumber, Fraction)):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if hasattr(obj, "as_dict"):
        return obj.as_dict()
    try:
        return int(obj)
    except (TypeError, ValueError):
        raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default, ensure_ascii=False)
