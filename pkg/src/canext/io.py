"""JSON and DOT serialisation.

Lattice file::

    {"name": "M3", "elements": ["0", "b", ...], "covers": [["0", "b"], ...]}

or with ``"leq": [[bool]]`` in place of ``covers``.  Hom file::

    {"from": "chain3.json", "to": "m3.json", "map": {"0": "0", "a": "b", "1": "1"}}

with paths relative to the hom file; inline lattice objects also work.
All JSON output uses sorted keys so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import bits
from .errors import InputError
from .graph import Graph
from .lattice import Lattice, LatticeHom, build_lattice, validate_hom
from .mpe import Completion, CompleteHom, MpeMap


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _load(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def lattice_from_json(data: dict, default_name: str = "") -> Lattice:
    if not isinstance(data, dict) or "elements" not in data:
        raise InputError("lattice file needs an 'elements' list")
    names = [str(x) for x in data["elements"]]
    name = str(data.get("name", default_name))
    if "covers" in data:
        covers = [tuple(map(str, pair)) for pair in data["covers"]]
        if any(len(pair) != 2 for pair in covers):
            raise InputError("each cover must be a pair of element names")
        return build_lattice(names, covers=covers, name=name)
    if "leq" in data:
        return build_lattice(names, leq=[[bool(v) for v in row] for row in data["leq"]], name=name)
    raise InputError("lattice file needs 'covers' or 'leq'")


def read_lattice(path: str | Path) -> Lattice:
    return lattice_from_json(_load(path), Path(path).stem)


def lattice_to_json(L: Lattice) -> dict:
    return {
        "name": L.name,
        "elements": list(L.names),
        "covers": [[L.names[a], L.names[b]] for a, b in L.covers()],
    }


def write_lattice(L: Lattice, path: str | Path) -> None:
    Path(path).write_text(dumps(lattice_to_json(L)), encoding="utf-8")


def is_hom_file(data: Any) -> bool:
    return isinstance(data, dict) and "map" in data and "from" in data and "to" in data


def hom_from_json(data: dict, base: str | Path = ".") -> LatticeHom:
    base = Path(base)
    src, dst = (
        lattice_from_json(ref) if isinstance(ref, dict) else read_lattice(base / ref)
        for ref in (data["from"], data["to"])
    )
    mapping = data["map"]
    if not isinstance(mapping, dict):
        raise InputError("hom 'map' must be an object from source to target names")
    return validate_hom(src, dst, {str(k): str(v) for k, v in mapping.items()})


def read_hom(path: str | Path) -> LatticeHom:
    return hom_from_json(_load(path), Path(path).parent)


def read_any(path: str | Path) -> Lattice | LatticeHom:
    data = _load(path)
    if is_hom_file(data):
        return hom_from_json(data, Path(path).parent)
    return lattice_from_json(data, Path(path).stem)


def _element_json(C: Completion, i: int) -> dict:
    e = C.elements[i]
    if isinstance(e, MpeMap):
        G = C.host
        return {"index": i, "ones": G.subset_names(e.ones), "zeros": G.subset_names(e.zeros)}
    L = C.lattice
    return {"index": i, "filters": [f"↑{L.names[a]}" for a in bits.members(e)]}


def completion_to_json(C: Completion) -> dict:
    out: dict[str, Any] = {
        "kind": C.kind,
        "size": C.size,
        "elements": [_element_json(C, i) for i in range(C.size)],
        "order": [[i, j] for i in range(C.size) for j in range(C.size) if i != j and C.leq[i][j]],
        "bottom": C.bottom,
        "top": C.top,
    }
    if C.host is not None:
        out["vertices"] = list(C.host.names)
    if C.embedding is not None and C.lattice is not None:
        out["lattice"] = lattice_to_json(C.lattice)
        out["embedding"] = {C.lattice.names[a]: i for a, i in enumerate(C.embedding)}
    return out


def complete_hom_to_json(h: CompleteHom, src_file: str = "", dst_file: str = "") -> dict:
    return {
        "from": src_file,
        "to": dst_file,
        "map": list(h.map),
        "report": h.report.to_json() if h.report is not None else None,
    }


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(L: Lattice) -> str:
    lines = [f"digraph {_quote(L.name or 'L')} {{", "  rankdir=BT;", "  node [shape=circle];"]
    lines += [f"  {_quote(x)};" for x in L.names]
    lines += [f"  {_quote(L.names[a])} -> {_quote(L.names[b])};" for a, b in L.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def completion_dot(C: Completion) -> str:
    """Hasse diagram of a completion; embedded elements carry their lattice name."""
    label = [str(i) for i in range(C.size)]
    if C.embedding is not None and C.lattice is not None:
        for a, i in enumerate(C.embedding):
            label[i] = f"{i}:{C.lattice.names[a]}"
    lines = [f"digraph {_quote(C.kind)} {{", "  rankdir=BT;", "  node [shape=circle];"]
    lines += [f"  n{i} [label={_quote(label[i])}];" for i in range(C.size)]
    for i in range(C.size):
        for j in range(C.size):
            if i != j and C.leq[i][j] and not any(
                k not in (i, j) and C.leq[i][k] and C.leq[k][j] for k in range(C.size)
            ):
                lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_dot(G: Graph, orders: bool = False, subbasis: bool = False) -> str:
    """Edges of ``E`` without loops; optional dashed ``<=1`` and dotted ``<=2`` arcs."""
    lines = ["digraph G {", "  node [shape=box];"]
    for f in range(G.m):
        attrs = [f"label={_quote(G.names[f])}"]
        if subbasis and G.lattice is not None:
            L = G.lattice
            w = [L.names[a] for a in range(L.n) if G.W[a] >> f & 1]
            v = [L.names[a] for a in range(L.n) if G.V[a] >> f & 1]
            attrs.append(f"tooltip={_quote('W: ' + ','.join(w) + ' V: ' + ','.join(v))}")
        if G.mph_prefix is not None and f < G.mph_prefix:
            attrs.append("peripheries=2")
        lines.append(f"  v{f} [{', '.join(attrs)}];")
    for f, g in G.edges():
        if f != g:
            lines.append(f"  v{f} -> v{g};")
    if orders and G.labeled:
        for f in range(G.m):
            for g in bits.members(G.up1[f]):
                if f != g:
                    lines.append(f"  v{f} -> v{g} [style=dashed, color=blue];")
            for g in bits.members(G.up2[f]):
                if f != g:
                    lines.append(f"  v{f} -> v{g} [style=dotted, color=red];")
    lines.append("}")
    return "\n".join(lines) + "\n"
