"""Line-oriented text serialization and an on-disk artifact cache.

A record is one header line::

    weylcoh <kind> <version> <field>=<value> ... sha=<hex>

followed by lines of integers separated by single spaces.  ``sha`` is the
SHA-256 of the body, so truncated or edited files are rejected.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

import numpy as np

FORMAT_VERSION = "1"
CODE_VERSION = "weylcoh-1"
ENV_VAR = "WEYLCOH_CACHE"


class CacheFormatError(ValueError):
    pass


def _body(rows) -> str:
    return "".join(" ".join(str(int(x)) for x in row) + "\n" for row in rows)


def dumps(kind: str, fields: dict, rows) -> str:
    body = _body(rows)
    sha = hashlib.sha256(body.encode()).hexdigest()
    head = ["weylcoh", kind, FORMAT_VERSION]
    for k in sorted(fields):
        v = str(fields[k])
        if not v or any(c.isspace() or c == "=" for c in v):
            raise CacheFormatError(f"bad header value for {k!r}")
        head.append(f"{k}={v}")
    head.append(f"sha={sha}")
    return " ".join(head) + "\n" + body


def loads(text: str, kind: str) -> tuple[dict, list[tuple[int, ...]]]:
    if not text.endswith("\n"):
        raise CacheFormatError("missing final newline")
    lines = text.split("\n")[:-1]
    if not lines:
        raise CacheFormatError("empty record")
    head = lines[0].split(" ")
    if head[:2] != ["weylcoh", kind]:
        raise CacheFormatError(f"expected a {kind} record")
    if len(head) < 3 or head[2] != FORMAT_VERSION:
        raise CacheFormatError("format version mismatch")
    fields = {}
    for tok in head[3:]:
        k, sep, v = tok.partition("=")
        if not sep or not k or not v:
            raise CacheFormatError(f"malformed header field {tok!r}")
        fields[k] = v
    sha = fields.pop("sha", None)
    body = "".join(line + "\n" for line in lines[1:])
    if sha != hashlib.sha256(body.encode()).hexdigest():
        raise CacheFormatError("checksum mismatch")
    rows = []
    for line in lines[1:]:
        toks = line.split(" ") if line else []
        try:
            row = tuple(int(t) for t in toks)
        except ValueError as exc:
            raise CacheFormatError(f"non-integer token in {line!r}") from exc
        if any(str(x) != t for x, t in zip(row, toks)):
            raise CacheFormatError(f"non-canonical integer in {line!r}")
        rows.append(row)
    return fields, rows


def content_key(*parts) -> str:
    h = hashlib.sha256()
    for p in (CODE_VERSION,) + parts:
        if isinstance(p, np.ndarray):
            p = p.tolist()
        h.update(repr(p).encode())
        h.update(b"\0")
    return h.hexdigest()[:32]


# -- artifacts ---------------------------------------------------------------

def poset_to_text(poset) -> str:
    from .arrangements import LABEL_DENOMINATOR

    rows = [tuple(r) for r in poset.roots]
    for l, ps in zip(poset.layers, poset.parents):
        flat = [x for r in l.basis for x in r]
        rows.append((l.codim, *flat, *l.label, l.mask, len(ps), *ps))
    fields = {"kind": poset.kind, "rank": poset.rank, "roots": len(poset.roots),
              "layers": len(poset.layers), "denominator": LABEL_DENOMINATOR}
    return dumps("poset", fields, rows)


def poset_from_text(text: str):
    from .arrangements import LABEL_DENOMINATOR, ArrangementPoset, Layer

    fields, rows = loads(text, "poset")
    try:
        rank, nroots, nlayers = int(fields["rank"]), int(fields["roots"]), int(fields["layers"])
        kind = fields["kind"]
        denom = int(fields["denominator"])
    except (KeyError, ValueError) as exc:
        raise CacheFormatError("incomplete poset header") from exc
    if denom != LABEL_DENOMINATOR:
        raise CacheFormatError("label denominator mismatch")
    if len(rows) != nroots + nlayers:
        raise CacheFormatError("record count mismatch")
    roots = rows[:nroots]
    if any(len(r) != rank for r in roots):
        raise CacheFormatError("root of wrong length")
    layers, parents = [], []
    for row in rows[nroots:]:
        k = row[0]
        pos = 1
        basis = tuple(tuple(row[pos + i * rank: pos + (i + 1) * rank]) for i in range(k))
        pos += k * rank
        label = tuple(row[pos: pos + k])
        pos += k
        mask, npar = row[pos], row[pos + 1]
        ps = list(row[pos + 2:])
        if len(ps) != npar or len(label) != k:
            raise CacheFormatError("malformed layer record")
        layers.append(Layer(basis, label, mask))
        parents.append(ps)
    return ArrangementPoset.from_records(roots, rank, kind, layers, parents)


def group_to_text(group) -> str:
    gens = np.asarray(group.generators)
    fields = {"degree": gens.shape[1], "generators": len(gens), "order": group.order}
    return dumps("group", fields, gens.tolist())


def group_from_text(text: str):
    from .groups import PermGroup

    fields, rows = loads(text, "group")
    g = PermGroup(np.array(rows, dtype=np.int64))
    if g.order != int(fields["order"]):
        raise CacheFormatError("group order mismatch")
    return g


def polys_to_text(polys: list, label: str) -> str:
    rows = [(i, len(p), *p) for i, p in enumerate(polys)]
    return dumps("polys", {"label": label, "classes": len(polys)}, rows)


def polys_from_text(text: str) -> list[tuple[int, ...]]:
    fields, rows = loads(text, "polys")
    out = []
    for i, row in enumerate(rows):
        if row[0] != i or len(row) != row[1] + 2:
            raise CacheFormatError("malformed polynomial record")
        out.append(tuple(row[2:]))
    if len(out) != int(fields["classes"]):
        raise CacheFormatError("class count mismatch")
    return out


# -- the cache ---------------------------------------------------------------

class Cache:
    """Directory of text artifacts keyed by content hash.  ``directory=None``
    disables storage; statistics are kept either way."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else None
        self.hits = 0
        self.misses = 0
        self.writes = 0

    @classmethod
    def from_environment(cls, directory=None) -> "Cache":
        return cls(directory or os.environ.get(ENV_VAR) or None)

    def _path(self, kind: str, key: str) -> Path:
        return self.directory / f"{kind}-{key}.txt"

    def get(self, kind: str, key: str):
        if self.directory is None:
            self.misses += 1
            return None
        path = self._path(kind, key)
        try:
            text = path.read_text()
        except FileNotFoundError:
            self.misses += 1
            return None
        self.hits += 1
        return text

    def put(self, kind: str, key: str, text: str) -> None:
        if self.directory is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{kind}-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self._path(kind, key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.writes += 1

    def fetch(self, kind: str, key: str, compute, to_text, from_text):
        """Cached value if present and parseable, else compute and store."""
        text = self.get(kind, key)
        if text is not None:
            try:
                return from_text(text)
            except CacheFormatError:
                self.hits -= 1
                self.misses += 1
        value = compute()
        self.put(kind, key, to_text(value))
        return value

    def stats(self) -> str:
        return f"cache hits={self.hits} misses={self.misses} writes={self.writes}"
