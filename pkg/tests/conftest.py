import copy
import json
import pathlib

import pytest

import maxclass5
from maxclass5.engine import build_group

SCHEMA_DIR = pathlib.Path(maxclass5.__file__).parent / "schemas"

_GROUPS = {}


def get_group(n, w, z, a=()):
    """Cached group builder so tests do not rebuild the same tuples."""
    key = (n, w, z, tuple(a))
    if key not in _GROUPS:
        _GROUPS[key] = build_group(n, w, z, tuple(a))
    return _GROUPS[key]


@pytest.fixture(scope="session")
def group():
    return get_group


def _load_schema(name, seen=None):
    seen = seen or set()
    with open(SCHEMA_DIR / name, "r", encoding="utf-8") as fh:
        schema = json.load(fh)

    def resolve(node):
        if isinstance(node, dict):
            if set(node) == {"$ref"}:
                ref = node["$ref"]
                assert ref not in seen, f"circular schema ref {ref}"
                return _load_schema(ref, seen | {ref})
            return {k: resolve(v) for k, v in node.items()}
        if isinstance(node, list):
            return [resolve(v) for v in node]
        return node

    return resolve(schema)


def validate_payload(payload, schema_name):
    jsonschema = pytest.importorskip("jsonschema")
    jsonschema.validate(payload, _load_schema(schema_name))


@pytest.fixture(scope="session")
def validate_schema():
    return validate_payload


def tampered_copy(G, table_name, index, value):
    """Shallow-copy a group with one conjugation-table entry corrupted."""
    from maxclass5.kernel import make_kernel

    bad = copy.copy(G)
    arr = getattr(G.kt, table_name).copy()
    arr[1, index] = value
    bad.kt = G.kt._replace(**{table_name: arr})
    bad.kern = make_kernel(bad.kt)
    return bad
