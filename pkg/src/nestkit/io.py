"""JSON file formats for posets and decompositions.

Poset: ``{"ranks": [...], "covers": [[i, a, b], ...], "labels": [[...], ...]}``
where ``[i, a, b]`` states that ``(i, a)`` is covered by ``(i + 1, b)``.

Decomposition: ``{"chains": [[[level, index], ...], ...], "method": ..., "trace": [...]}``.

Output is byte-deterministic: sorted keys, sorted covers, no floats.
"""
from __future__ import annotations

import json
from pathlib import Path

from .poset import ChainDecomposition, GradedPoset, build_poset


class FormatError(ValueError):
    pass


def poset_to_json(P: GradedPoset) -> dict:
    out = {"ranks": list(P.rank_sizes), "covers": [list(c) for c in P.covers()]}
    if P.labels is not None:
        out["labels"] = [list(lv) for lv in P.labels]
    return out


def poset_from_json(data) -> GradedPoset:
    if not isinstance(data, dict) or "ranks" not in data or "covers" not in data:
        raise FormatError("poset JSON needs 'ranks' and 'covers'")
    ranks, covers = data["ranks"], data["covers"]
    if not isinstance(ranks, list) or not all(isinstance(r, int) and not isinstance(r, bool) for r in ranks):
        raise FormatError("'ranks' must be a list of integers")
    triples = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 3 and all(isinstance(v, int) for v in c)):
            raise FormatError(f"bad cover entry {c!r}")
        triples.append(tuple(c))
    if len(set(triples)) != len(triples):
        raise FormatError("duplicate cover triples")
    return build_poset(ranks, triples, data.get("labels"))


def decomposition_to_json(D: ChainDecomposition) -> dict:
    return {
        "chains": [[list(e) for e in chain] for chain in D.chains],
        "method": D.method,
        "trace": list(D.trace),
    }


def decomposition_from_json(data) -> ChainDecomposition:
    if not isinstance(data, dict) or not isinstance(data.get("chains"), list):
        raise FormatError("decomposition JSON needs a 'chains' list")
    chains = []
    for chain in data["chains"]:
        if not isinstance(chain, list):
            raise FormatError(f"bad chain {chain!r}")
        elems = []
        for e in chain:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
                raise FormatError(f"bad element {e!r}")
            elems.append(tuple(e))
        chains.append(tuple(elems))
    return ChainDecomposition(tuple(chains), data.get("method", ""), tuple(data.get("trace", ())))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _load(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def read_poset(path) -> GradedPoset:
    return poset_from_json(_load(path))


def write_poset(P: GradedPoset, path) -> None:
    Path(path).write_text(dumps(poset_to_json(P)), encoding="utf-8")


def read_decomposition(path) -> ChainDecomposition:
    return decomposition_from_json(_load(path))


def write_decomposition(D: ChainDecomposition, path) -> None:
    Path(path).write_text(dumps(decomposition_to_json(D)), encoding="utf-8")
