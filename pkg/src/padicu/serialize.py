"""Stable JSON-compatible encoding of every value the CLI exchanges.

Numbers cross the wire as decimal strings (no word-size assumptions); every
composite carries its (p, K, m, modulus_id) header.  Encoders and decoders
round-trip exactly; decoders validate and raise MalformedDocument on shape
errors so the CLI can map them to exit code 2.
"""

from __future__ import annotations

from .errors import MalformedDocument
from .gm import LaurentPoly
from .matrices import Norm, PadicMatrix, SeminormResult
from .quantum import WaveFunction
from .scalars import AnyRing, PadicScalar, UnramRing, UnramScalar, Zp
from .unitary import SpectralDatum, SpectrumTable

SCHEMA = "padicu/1"


def _need(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedDocument(f"missing field {key!r}")
    return doc[key]


def ring_header(ring: AnyRing) -> dict:
    if isinstance(ring, Zp):
        return {"p": ring.p, "K": ring.K, "m": 1, "modulus_id": None}
    return {"p": ring.p, "K": ring.K, "m": ring.m, "modulus_id": ring.modulus_id}


def ring_from_header(doc: dict) -> AnyRing:
    p = int(_need(doc, "p"))
    K = int(_need(doc, "K"))
    m = int(doc.get("m", 1))
    if m == 1:
        return Zp(p, K)
    return UnramRing(p, K, m)


def scalar_to_doc(x) -> dict:
    if isinstance(x, PadicScalar):
        return {**ring_header(x.ring), "value": str(x.lift())}
    if isinstance(x, UnramScalar):
        return {**ring_header(x.ring), "coeffs": [str(c) for c in x.coeff_ints]}
    raise MalformedDocument(f"not a scalar: {x!r}")


def scalar_from_doc(doc: dict):
    ring = ring_from_header(doc)
    if isinstance(ring, Zp):
        return ring.scalar(int(_need(doc, "value")))
    return ring.scalar(tuple(int(c) for c in _need(doc, "coeffs")))


def _entry_to_wire(ring: AnyRing, raw):
    if isinstance(ring, Zp):
        return str(raw)
    return [str(c) for c in raw]


def _entry_from_wire(ring: AnyRing, wire):
    if isinstance(ring, Zp):
        return int(wire)
    if isinstance(wire, str):
        return ring.rfrom_int(int(wire))
    return tuple(int(c) % ring.pk for c in wire)


def matrix_to_doc(M: PadicMatrix) -> dict:
    return {
        **ring_header(M.ring),
        "n": M.n,
        "entries": [_entry_to_wire(M.ring, v) for row in M.rows for v in row],
    }


def matrix_from_doc(doc: dict) -> PadicMatrix:
    ring = ring_from_header(doc)
    n = int(_need(doc, "n"))
    entries = _need(doc, "entries")
    if len(entries) != n * n:
        raise MalformedDocument(f"expected {n * n} entries, got {len(entries)}")
    rows = [
        [_entry_from_wire(ring, entries[i * n + j]) for j in range(n)] for i in range(n)
    ]
    return PadicMatrix(ring, rows)


def laurent_to_doc(f: LaurentPoly) -> dict:
    return {
        **ring_header(f.ring),
        "terms": [[e, str(c)] for e, c in sorted(f.terms.items())],
    }


def laurent_from_doc(doc: dict) -> LaurentPoly:
    ring = ring_from_header(doc)
    if not isinstance(ring, Zp):
        raise MalformedDocument("polynomials carry base-ring coefficients")
    terms = {}
    for pair in _need(doc, "terms"):
        if len(pair) != 2:
            raise MalformedDocument("terms are [exponent, coefficient] pairs")
        terms[int(pair[0])] = int(pair[1])
    return LaurentPoly(ring, terms)


def norm_to_doc(norm: Norm) -> dict:
    return {
        "valuation": norm.val,
        "floor": norm.at_floor,
        "display": str(norm),
    }


def seminorm_to_doc(result: SeminormResult) -> dict:
    return {
        "zero": result.is_zero,
        "nilpotency_k": result.nilpotency_k,
        "best_k": result.best_k,
        "valuation": result.val,
        "display": "0" if result.is_zero else f"{result.p}^(-{result.val}/{result.best_k})",
    }


def wave_to_doc(psi: WaveFunction) -> dict:
    return {
        **ring_header(psi.ring),
        "values": [_entry_to_wire(psi.ring, v) for v in psi.values],
        "norm": norm_to_doc(psi.norm()),
    }


def wave_from_doc(doc: dict) -> WaveFunction:
    ring = ring_from_header(doc)
    return WaveFunction(ring, [int(v) for v in _need(doc, "values")])


def spectral_datum_to_doc(datum: SpectralDatum) -> dict:
    orbits = []
    for orbit in datum.orbits:
        orbits.append(
            {
                **ring_header(orbit.ring),
                "degree": orbit.degree,
                "multiplicity": orbit.multiplicity,
                "factor": [str(c) for c in orbit.factor],
                "eigenvalues": [
                    _entry_to_wire(orbit.ring, lam) for lam in orbit.eigenvalues
                ],
                "projectors": [matrix_to_doc(proj) for proj in orbit.projectors],
            }
        )
    return {
        "n": datum.n,
        "orbits": orbits,
        "unipotent": matrix_to_doc(datum.unipotent),
    }


def spectrum_table_to_doc(table: SpectrumTable) -> dict:
    return {
        "n": table.n,
        "torsion_is_whole_module": table.torsion_is_whole_module,
        "completion_is_whole_module": table.completion_is_whole_module,
        "rows": [
            {
                "epsilon": row.epsilon,
                "j": row.j,
                "orbit": list(row.orbit),
                "dimension": row.dimension,
                "cokernel_divisors": list(row.cokernel_divisors),
            }
            for row in table.rows
        ],
    }
