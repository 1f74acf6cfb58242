"""q-expansions of the level-N Eisenstein series used by the theta lift.

All public ``expand_*`` functions take ``prec`` as a count of integral q-powers:
every coefficient of q^x with x < prec is exact.  Internally the returned
:class:`QSeries` has exponent-numerator precision ``prec * N``.
"""
from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .exactcore import CycElem, bernoulli, zeta_pow
from .qseries import QSeries

__all__ = [
    "EisensteinID",
    "expand_E",
    "expand_E2_00",
    "expand_G",
    "expand_Ehat",
    "expand_Ghat2",
    "expand_H",
    "siegel_log_deriv",
    "expand",
    "ExpansionCache",
]

TAGS = ("E", "E2_00", "Ehat", "G", "Ghat2", "H", "SiegelLogDeriv")


@dataclass(frozen=True)
class EisensteinID:
    """Names one series; indices are reduced mod N on construction."""

    tag: str
    level: int
    k: int = 0
    indices: tuple[int, ...] = ()

    def __post_init__(self):
        n = self.level
        if self.tag not in TAGS:
            raise ValueError(f"unknown series tag {self.tag!r}")
        if n < 1:
            raise ValueError("level must be positive")
        object.__setattr__(self, "indices", tuple(i % n for i in self.indices))
        want = {"E": 2, "E2_00": 0, "Ehat": 2, "G": 1, "Ghat2": 1, "H": 2, "SiegelLogDeriv": 2}[self.tag]
        if len(self.indices) != want:
            raise ValueError(f"{self.tag} takes {want} indices")
        if self.tag in ("E", "Ehat", "G") and self.k not in (1, 2):
            raise ValueError("weight k must be 1 or 2")
        if self.tag == "E" and self.indices == (0, 0):
            raise ValueError("E_(0,0) is not a valid index pair; use E2_00")
        if self.tag == "SiegelLogDeriv" and self.indices == (0, 0):
            raise ValueError("Siegel unit g_(0,0) is undefined")

    def key(self) -> str:
        idx = ",".join(map(str, self.indices))
        return f"{self.tag}(k={self.k};{idx})@N={self.level}"


def _check_pair(p: int, q: int, n: int, what: str):
    if p % n == 0 and q % n == 0:
        raise ValueError(f"{what}: (p, q) = ({p}, {q}) is 0 mod {n}")


@lru_cache(maxsize=4096)
def _raw_E(k: int, p: int, q: int, n: int, num_prec: int):
    """Non-constant part of E^(k)_{p,q} as {e: exponent vector over zeta^0..zeta^(N-1)}.

    The vectors are not yet multiplied by N^(1-k).
    """
    raw: dict[int, list[int]] = {}
    sign = -1 if k % 2 else 1
    for target, s, zsign in ((p, 1, 1), ((-p) % n, sign, -1)):
        start = target if target else n
        for nn in range(start, num_prec, n):
            w = s * nn ** (k - 1)
            for m in range(1, (num_prec - 1) // nn + 1):
                e = m * nn
                vec = raw.get(e)
                if vec is None:
                    vec = raw[e] = [0] * n
                vec[(zsign * m * q) % n] += w
    return {e: tuple(v) for e, v in raw.items() if any(v)}


def _const_E(k: int, p: int, q: int, n: int) -> CycElem:
    if k == 2:
        return CycElem.rational(n, -bernoulli(2, Fraction(p, n)) / 2)
    if p:
        return CycElem.rational(n, -bernoulli(1, Fraction(p, n)))
    z = zeta_pow(n, q)
    return (1 + z) / (1 - z) * Fraction(1, 2)


def _series_from_raw(n: int, const: CycElem, raw, factor, num_prec: int) -> QSeries:
    terms = {0: const}
    for e, vec in raw.items():
        if e < num_prec:
            terms[e] = CycElem.from_powers(n, [Fraction(v) * factor for v in vec])
    return QSeries(n, terms, num_prec)


def _expand_E_num(k: int, p: int, q: int, n: int, num_prec: int) -> QSeries:
    p, q = p % n, q % n
    raw = _raw_E(k, p, q, n, num_prec)
    return _series_from_raw(n, _const_E(k, p, q, n), raw, Fraction(1, n ** (k - 1)), num_prec)


def expand_E(k: int, p: int, q: int, N: int, prec: int) -> QSeries:
    """E^(k)_{p,q} for (p, q) not 0 mod N, exact below q^prec."""
    if k not in (1, 2):
        raise ValueError("expand_E: k must be 1 or 2")
    if prec < 1:
        raise ValueError("precision must be >= 1")
    _check_pair(p, q, N, "expand_E")
    return _expand_E_num(k, p, q, N, prec * N)


def _E2_00_num(n: int, num_prec: int) -> QSeries:
    terms = {0: Fraction(-1, 12)}
    top = (num_prec - 1) // n
    for d in range(1, top + 1):
        for m in range(d, top + 1, d):
            terms[m * n] = terms.get(m * n, 0) + 2 * d
    return QSeries(n, terms, num_prec)


def expand_E2_00(N: int, prec: int) -> QSeries:
    """Holomorphic part -1/12 + 2 sum sigma_1(n) q^n of the regularised E^(2)_{0,0}."""
    if prec < 1:
        raise ValueError("precision must be >= 1")
    return _E2_00_num(N, prec * N)


def expand_G(k: int, r: int, N: int, prec: int) -> QSeries:
    """G^(k)_r(tau) = E^(k)_{r,0}(N tau); integral exponents, rational coefficients."""
    if k not in (1, 2):
        raise ValueError("expand_G: k must be 1 or 2")
    if prec < 1:
        raise ValueError("precision must be >= 1")
    r %= N
    if r == 0:
        if k == 1:
            return QSeries.zero(N, prec * N)
        return _E2_00_num(N, prec).rescale(N)
    return _expand_E_num(k, r, 0, N, prec).rescale(N)


def _ehat_num(k: int, a: int, b: int, n: int, num_prec: int) -> QSeries:
    a, b = a % n, b % n
    acc: dict[int, list[Fraction]] = {}
    const = CycElem.zero(n)
    weight = Fraction(1, n ** (k - 1))
    for u in range(n):
        for v in range(n):
            shift = (b * u - a * v) % n
            if (u, v) == (0, 0):
                if k == 1:
                    continue
                e00 = _E2_00_num(n, num_prec)
                for e, c in e00.terms.items():
                    if e == 0:
                        const = const + c
                    else:
                        vec = acc.setdefault(e, [Fraction(0)] * n)
                        vec[shift] += c.to_rational()
                continue
            const = const + _const_E(k, u, v, n) * zeta_pow(n, shift)
            for e, vec_in in _raw_E(k, u, v, n, num_prec).items():
                vec = acc.setdefault(e, [Fraction(0)] * n)
                for j, x in enumerate(vec_in):
                    if x:
                        vec[(j + shift) % n] += x * weight
    norm = Fraction(n) ** (k - 2)
    terms = {0: const * norm}
    for e, vec in acc.items():
        terms[e] = CycElem.from_powers(n, [x * norm for x in vec])
    return QSeries(n, terms, num_prec)


def expand_Ehat(k: int, a: int, b: int, N: int, prec: int) -> QSeries:
    """Holomorphic part of Ehat^(k)_{a,b}, built by finite Fourier transform of the E^(k)_{u,v}."""
    if k not in (1, 2):
        raise ValueError("expand_Ehat: k must be 1 or 2")
    if prec < 1:
        raise ValueError("precision must be >= 1")
    return _ehat_num(k, a, b, N, prec * N)


def expand_Ghat2(p: int, N: int, prec: int) -> QSeries:
    """Ghat^(2)_p(tau) = Ehat^(2)_{p,0}(N tau), holomorphic part."""
    if prec < 1:
        raise ValueError("precision must be >= 1")
    return _ehat_num(2, p, 0, N, prec).rescale(N)


def expand_H(p: int, q: int, N: int, prec: int) -> QSeries:
    """H^(2)_{p,q} = G^(2)_q - [q = 0 mod N] Ghat^(2)_p."""
    if q % N:
        return expand_G(2, q, N, prec)
    return expand_G(2, 0, N, prec) - expand_Ghat2(p, N, prec)


def siegel_log_deriv(a: int, b: int, N: int, prec: int) -> QSeries:
    """q d/dq log g_{a,b} from the Siegel product, one geometric series per factor."""
    _check_pair(a, b, N, "siegel_log_deriv")
    if prec < 1:
        raise ValueError("precision must be >= 1")
    n = N
    a, b = a % n, b % n
    num_prec = prec * n
    acc: dict[int, list[Fraction]] = {}

    def factor(alpha_num: int, zexp: int):
        # q d/dq log(1 - zeta^zexp q^(alpha_num/N)) = -(alpha_num/N) sum_m zeta^(m zexp) q^(m alpha_num/N)
        w = Fraction(-alpha_num, n)
        for m in range(1, (num_prec - 1) // alpha_num + 1):
            vec = acc.setdefault(m * alpha_num, [Fraction(0)] * n)
            vec[(m * zexp) % n] += w

    # (1 - q^(j + a/N) zeta^b), j >= 0; the j = 0, a = 0 factor is a constant
    for j in range(0, prec + 1):
        alpha = j * n + a
        if 0 < alpha < num_prec:
            factor(alpha, b)
    # (1 - q^(j - a/N) zeta^-b), j >= 1
    for j in range(1, prec + 1):
        alpha = j * n - a
        if 0 < alpha < num_prec:
            factor(alpha, -b)
    terms = {0: bernoulli(2, Fraction(a, n)) / 2}
    for e, vec in acc.items():
        terms[e] = CycElem.from_powers(n, vec)
    return QSeries(n, terms, num_prec)


def expand(sid: EisensteinID, prec: int) -> QSeries:
    """Dispatch on an :class:`EisensteinID`."""
    n, k, idx = sid.level, sid.k, sid.indices
    if sid.tag == "E":
        return expand_E(k, *idx, n, prec)
    if sid.tag == "E2_00":
        return expand_E2_00(n, prec)
    if sid.tag == "Ehat":
        return expand_Ehat(k, *idx, n, prec)
    if sid.tag == "G":
        return expand_G(k, *idx, n, prec)
    if sid.tag == "Ghat2":
        return expand_Ghat2(*idx, n, prec)
    if sid.tag == "H":
        return expand_H(*idx, n, prec)
    return siegel_log_deriv(*idx, n, prec)


class ExpansionCache:
    """Memo of expansions keyed by (EisensteinID, prec), optionally mirrored on disk.

    Disk entries are one JSON document per key under a content-addressed name.
    Concurrent fills are idempotent: the value for a key is deterministic, and the
    file is written through a temporary name and renamed into place.
    """

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else None
        self._mem: dict[tuple[EisensteinID, int], QSeries] = {}
        self._lock = threading.Lock()
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def from_env(cls, directory=None) -> "ExpansionCache":
        return cls(directory or os.environ.get("EISENLIFT_CACHE") or None)

    def path_for(self, sid: EisensteinID, prec: int) -> Path:
        digest = hashlib.sha256(f"{sid.key()}|prec={prec}".encode()).hexdigest()[:32]
        return self.directory / f"N{sid.level}-{digest}.json"

    def get(self, sid: EisensteinID, prec: int) -> QSeries:
        key = (sid, prec)
        with self._lock:
            hit = self._mem.get(key)
        if hit is not None:
            return hit
        series = None
        if self.directory:
            path = self.path_for(sid, prec)
            if path.exists():
                series = QSeries.from_dict(json.loads(path.read_text())["series"])
        if series is None:
            series = expand(sid, prec)
            if self.directory:
                self._write(sid, prec, series)
        with self._lock:
            self._mem.setdefault(key, series)
            return self._mem[key]

    def _write(self, sid: EisensteinID, prec: int, series: QSeries):
        path = self.path_for(sid, prec)
        doc = {"id": sid.key(), "prec": prec, "series": series.to_dict()}
        tmp = path.with_suffix(f".{os.getpid()}.{threading.get_ident()}.tmp")
        tmp.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        os.replace(tmp, path)
