"""Run reports, the binary factor log and the on-disk table cache."""

from __future__ import annotations

import hashlib
import json
import os
import struct
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .poly import Polynomial
from .valuations import FactorizationTable, FactorRecord

SCHEMA = 1
CACHE_ENV = "POLYLCM_CACHE"


@dataclass
class RunReport:
    command: str
    polynomial: str | None = None
    x: int | None = None
    config: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    certification: str = "deterministic"
    timing: dict | None = None
    version: str = __version__
    schema: int = SCHEMA

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["timing"] is None:
            del d["timing"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        d.setdefault("timing", None)
        return cls(**d)


# -- binary factor log ------------------------------------------------------
# per record: q u64, factor count u16, then per factor
# (len u16, big-endian magnitude of the prime, exponent u16); little-endian.


def encode_factor_log(records) -> bytes:
    out = bytearray()
    for rec in records:
        out += struct.pack("<QH", rec.q, len(rec.factors))
        for ell, v in rec.factors:
            mag = ell.to_bytes((ell.bit_length() + 7) // 8, "big")
            out += struct.pack("<H", len(mag)) + mag + struct.pack("<H", v)
    return bytes(out)


def decode_factor_log(blob: bytes) -> list[FactorRecord]:
    recs = []
    off = 0
    while off < len(blob):
        q, n = struct.unpack_from("<QH", blob, off)
        off += 10
        facs = []
        value = 1
        for _ in range(n):
            (ln,) = struct.unpack_from("<H", blob, off)
            off += 2
            ell = int.from_bytes(blob[off : off + ln], "big")
            off += ln
            (v,) = struct.unpack_from("<H", blob, off)
            off += 2
            facs.append((ell, v))
            value *= ell**v
        recs.append(FactorRecord(q, value, tuple(facs)))
    return recs


# -- cache ------------------------------------------------------------------


def cache_key(f: Polynomial, x: int, l0: int, arguments: str = "primes") -> str:
    text = f"{f.canonical()}|{x}|{l0}|{arguments}"
    return hashlib.sha256(text.encode()).hexdigest()[:32]


def cache_dir(explicit: str | os.PathLike | None = None) -> Path | None:
    d = explicit or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def store_table(directory, table: FactorizationTable) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    key = cache_key(table.poly, table.x, table.l0, table.arguments)
    blob = encode_factor_log(table.records)
    (directory / f"{key}.bin").write_bytes(blob)
    rep = RunReport(
        "factor-table",
        table.poly.canonical(),
        table.x,
        config={"l0": table.l0, "arguments": table.arguments},
        outputs={
            "n_arguments": table.n_arguments,
            "records": len(table.records),
            "factor_log_sha256": hashlib.sha256(blob).hexdigest(),
        },
        certification="deterministic" if table.certified else "probabilistic",
    )
    path = directory / f"{key}.json"
    path.write_text(rep.to_json())
    return path


def load_table(directory, f: Polynomial, x: int, l0: int, arguments: str = "primes"):
    """Cached table, or None on a miss or a content-hash mismatch."""
    directory = Path(directory)
    key = cache_key(f, x, l0, arguments)
    jpath, bpath = directory / f"{key}.json", directory / f"{key}.bin"
    if not (jpath.exists() and bpath.exists()):
        return None
    rep = RunReport.from_json(jpath.read_text())
    blob = bpath.read_bytes()
    if hashlib.sha256(blob).hexdigest() != rep.outputs.get("factor_log_sha256"):
        return None
    if (rep.polynomial, rep.x, rep.config.get("l0"), rep.config.get("arguments")) != (
        f.canonical(), x, l0, arguments,
    ):
        return None
    recs = decode_factor_log(blob)
    return FactorizationTable(f, x, tuple(recs), rep.outputs["n_arguments"], arguments, l0)
