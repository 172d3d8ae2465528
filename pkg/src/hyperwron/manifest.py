"""Certificate manifests.

A manifest is a small YAML document naming the certificate type, the
polynomial files it is built from (paths relative to the manifest), the
rational vectors e, u, v and the claimed result::

    type: hyperwron
    p: p.poly
    e: ["1", "1", "0"]
    u: ["1", "1", "0"]
    v: ["1", "1", "0"]
    phi: phi.poly        # optional, several poly blocks
    q: q.poly            # the claimed form
    seed: 0
    samples: {hyperbolicity: 200, nonneg: 10000, psd: 1000}

``hyperzout`` manifests add ``mu`` and ``xi`` (a file with all d slots);
``interlacer`` manifests add ``interlacer`` (the degree d-1 form).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import yaml

from .algebra import HomogeneousPoly, PolyFormatError, format_poly, parse_polys, read_poly
from .algebra.poly import check_polymap
from .bezoutian import GradedTuple, HyperzoutWitness
from .hyperbolic import Certified, HyperbolicPair, Refuted, Sampled, Verdict, check_hyperbolic
from .wronskian import HyperwronWitness

TYPES = ("hyperwron", "hyperzout", "interlacer")
DEFAULT_SAMPLES = {"hyperbolicity": 200, "nonneg": 10_000, "psd": 1_000}


class ManifestError(ValueError):
    pass


def verdict_to_dict(v: Verdict) -> dict:
    if isinstance(v, Certified):
        return {"kind": "certified", "reason": v.reason}
    if isinstance(v, Sampled):
        return {"kind": "sampled", "n": v.n, "seed": v.seed}
    return {"kind": "refuted", "reason": v.reason, "witness": [str(c) for c in v.witness]}


def verdict_from_dict(d: dict) -> Verdict:
    kind = d.get("kind")
    if kind == "certified":
        return Certified(str(d["reason"]))
    if kind == "sampled":
        return Sampled(int(d["n"]), int(d["seed"]))
    if kind == "refuted":
        return Refuted(_vector(d["witness"], "verdict.witness"), str(d.get("reason", "not-real-rooted")))
    raise ManifestError(f"unknown verdict kind {kind!r}")


def _vector(raw, name: str) -> tuple[Fraction, ...]:
    if not isinstance(raw, (list, tuple)):
        raise ManifestError(f"{name} must be a list of rationals")
    try:
        return tuple(Fraction(str(x)) for x in raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ManifestError(f"{name}: {exc}") from exc


@dataclass(frozen=True)
class Manifest:
    type: str
    p: str
    e: tuple[Fraction, ...]
    q: str
    u: tuple[Fraction, ...] = ()
    v: tuple[Fraction, ...] = ()
    phi: str | None = None
    mu: int | None = None
    xi: str | None = None
    interlacer: str | None = None
    seed: int = 0
    samples: dict = field(default_factory=lambda: dict(DEFAULT_SAMPLES))
    verdict: dict | None = None  # informational; verification recomputes it

    def __post_init__(self):
        if self.type not in TYPES:
            raise ManifestError(f"type must be one of {TYPES}, got {self.type!r}")
        if self.type in ("hyperwron", "hyperzout") and (not self.u or not self.v):
            raise ManifestError(f"{self.type} manifests need u and v")
        if self.type == "hyperzout" and (self.mu is None or self.xi is None):
            raise ManifestError("hyperzout manifests need mu and xi")
        if self.type == "interlacer" and self.interlacer is None:
            raise ManifestError("interlacer manifests need an interlacer file")
        unknown = set(self.samples) - set(DEFAULT_SAMPLES)
        if unknown:
            raise ManifestError(f"unknown sample keys {sorted(unknown)}")

    def with_samples(self, **counts) -> "Manifest":
        s = dict(self.samples)
        s.update({k: v for k, v in counts.items() if v is not None})
        return replace(self, samples=s)

    def to_dict(self) -> dict:
        out: dict = {"type": self.type, "p": self.p, "e": [str(c) for c in self.e]}
        if self.u:
            out["u"] = [str(c) for c in self.u]
            out["v"] = [str(c) for c in self.v]
        for key in ("phi", "mu", "xi", "interlacer"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        out["q"] = self.q
        out["seed"] = self.seed
        out["samples"] = dict(self.samples)
        if self.verdict is not None:
            out["verdict"] = self.verdict
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "Manifest":
        if not isinstance(d, dict):
            raise ManifestError("manifest must be a mapping")
        missing = [k for k in ("type", "p", "e", "q") if k not in d]
        if missing:
            raise ManifestError(f"missing fields {missing}")
        known = {"type", "p", "e", "u", "v", "q", "phi", "mu", "xi", "interlacer", "seed", "samples", "verdict"}
        extra = set(d) - known
        if extra:
            raise ManifestError(f"unknown fields {sorted(extra)}")
        samples = dict(DEFAULT_SAMPLES)
        samples.update(d.get("samples") or {})
        try:
            return cls(
                type=str(d["type"]), p=str(d["p"]), e=_vector(d["e"], "e"), q=str(d["q"]),
                u=_vector(d["u"], "u") if "u" in d else (), v=_vector(d["v"], "v") if "v" in d else (),
                phi=d.get("phi"), mu=None if d.get("mu") is None else int(d["mu"]),
                xi=d.get("xi"), interlacer=d.get("interlacer"), seed=int(d.get("seed", 0)),
                samples={k: int(v) for k, v in samples.items()}, verdict=d.get("verdict"),
            )
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ManifestError):
                raise
            raise ManifestError(str(exc)) from exc


def dumps(m: Manifest) -> str:
    return yaml.safe_dump(m.to_dict(), sort_keys=False)


def loads(text: str) -> Manifest:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ManifestError(f"invalid YAML: {exc}") from exc
    return Manifest.from_dict(data)


def write_manifest(path, m: Manifest) -> None:
    Path(path).write_text(dumps(m))


def read_manifest(path) -> Manifest:
    return loads(Path(path).read_text())


# -- resolving a manifest into witnesses -------------------------------------------------------


@dataclass(frozen=True)
class Loaded:
    manifest: Manifest
    pair: HyperbolicPair
    q: HomogeneousPoly
    witness: HyperwronWitness | HyperzoutWitness | None = None
    interlacer: HomogeneousPoly | None = None
    phi: tuple[HomogeneousPoly, ...] | None = None


def _read(base: Path, name: str) -> HomogeneousPoly:
    return read_poly(base / name)


def _read_many(base: Path, name: str) -> list[HomogeneousPoly]:
    return parse_polys((base / name).read_text())


def load(path) -> Loaded:
    """Read a manifest and every file it references; hyperbolicity is recomputed here."""
    path = Path(path)
    return resolve(read_manifest(path), path.parent)


def resolve(m: Manifest, base: Path) -> Loaded:
    base = Path(base)
    p = _read(base, m.p)
    q = _read(base, m.q)
    if len(m.e) != p.nvars:
        raise ManifestError(f"e has {len(m.e)} coordinates, p has {p.nvars} variables")
    for name, vec in (("u", m.u), ("v", m.v)):
        if vec and len(vec) != p.nvars:
            raise ManifestError(f"{name} has {len(vec)} coordinates, p has {p.nvars} variables")
    phi = tuple(_read_many(base, m.phi)) if m.phi else None
    try:
        pair = check_hyperbolic(p, m.e, samples=m.samples["hyperbolicity"], seed=m.seed)
        if m.type == "hyperwron":
            return Loaded(m, pair, q, HyperwronWitness.make(pair, m.u, m.v, phi), phi=phi)
        if m.type == "hyperzout":
            slots = tuple(_read_many(base, m.xi))
            k = 1 if phi is None else check_polymap(phi)[1]
            xi = GradedTuple(slots, m.mu, k)
            return Loaded(m, pair, q, HyperzoutWitness(pair, m.u, m.v, xi, phi), phi=phi)
        return Loaded(m, pair, q, interlacer=_read(base, m.interlacer), phi=phi)
    except PolyFormatError:
        raise
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc


def write_bundle(directory, m: Manifest, polys: dict[str, Sequence[HomogeneousPoly]],
                 name: str = "manifest.yaml") -> Path:
    """Write a manifest plus its polynomial files (one or more forms per file)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for fname, forms in polys.items():
        (directory / fname).write_text("".join(format_poly(f) for f in forms))
    out = directory / name
    write_manifest(out, m)
    return out
