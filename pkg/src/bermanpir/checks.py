"""Self-verification sweeps: every structural claim the library relies on,
run as an enumerable list of pass/fail cases.

Case order is fixed by enumeration, so reports are stable no matter how
evaluation is parallelized.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

from . import berman
from .berman import BermanParams, CodeKind
from .codes import MAX_BRUTE_FORCE_DIM
from .gf2 import BitMatrix, rank
from .star import UNDEFINED, predict_star, verify_star_case

THREADS_ENV = "BERMAN_PIR_THREADS"


@dataclass(frozen=True)
class VerifyCase:
    name: str
    ok: bool
    detail: str = ""
    record: dict | None = None


def _family(n_max: int, m_max: int) -> Iterator[BermanParams]:
    for n in range(2, n_max + 1):
        for m in range(1, m_max + 1):
            for kind in (CodeKind.BERMAN, CodeKind.DUAL_BERMAN):
                for r in range(m + 1):
                    yield BermanParams(kind, n, m, r)


def _case_builders(n_max: int, m_max: int) -> list[Callable[[], VerifyCase]]:
    builders: list[Callable[[], VerifyCase]] = []

    for params in _family(n_max, m_max):
        def dim_case(p=params) -> VerifyCase:
            vectors = berman.basis_vectors(p)
            got = rank(BitMatrix.from_rows(list(vectors), p.length)) if vectors else 0
            want = berman.dimension_formula(p)
            return VerifyCase(f"dimension {p.name}", got == want, f"rank {got}, formula {want}")

        builders.append(dim_case)

    for params in _family(n_max, m_max):
        if params.is_zero_code:
            continue
        if berman.dimension_formula(params) > MAX_BRUTE_FORCE_DIM:
            continue

        def dist_case(p=params) -> VerifyCase:
            got = berman.build(p).min_distance_bruteforce()
            want = berman.min_distance_formula(p)
            return VerifyCase(f"distance {p.name}", got == want, f"brute {got}, formula {want}")

        builders.append(dist_case)

    for params in _family(n_max, m_max):
        if params.r == 0:
            continue

        def contain_case(p=params) -> VerifyCase:
            inner, outer = (
                (p, BermanParams(p.kind, p.n, p.m, p.r - 1))
                if p.kind is CodeKind.BERMAN
                else (BermanParams(p.kind, p.n, p.m, p.r - 1), p)
            )
            outer_code = berman.build(outer)
            inner_code = berman.build(inner)
            ok = all(
                outer_code.contains(inner_code.generator.row(i))
                for i in range(inner_code.dimension)
            )
            return VerifyCase(f"containment {inner.name} within {outer.name}", ok)

        builders.append(contain_case)

    for params in _family(n_max, m_max):
        if params.kind is not CodeKind.BERMAN:
            continue

        def dual_case(p=params) -> VerifyCase:
            ok = berman.build(p).dual() == berman.build(p.dual)
            return VerifyCase(f"duality {p.name} vs {p.dual.name}", ok)

        builders.append(dual_case)

    for n in range(2, n_max + 1):
        for m in range(1, m_max + 1):
            members = [
                BermanParams(kind, n, m, r)
                for kind in (CodeKind.BERMAN, CodeKind.DUAL_BERMAN)
                for r in range(m + 1)
            ]
            for p in members:
                for q in members:
                    if predict_star(p, q) is UNDEFINED:
                        continue

                    def star_case(pp=p, qq=q) -> VerifyCase:
                        res = verify_star_case(pp, qq)
                        pred = (
                            res.predicted.name
                            if isinstance(res.predicted, BermanParams)
                            else res.predicted.value
                        )
                        return VerifyCase(
                            f"star {pp.name} * {qq.name}",
                            res.verified,
                            f"predicted {pred}, product dim {res.product_dimension}",
                            record={
                                "lhs": pp.name,
                                "rhs": qq.name,
                                "predicted": pred,
                                "verified": res.verified,
                                "dims": {
                                    "lhs": berman.dimension_formula(pp),
                                    "rhs": berman.dimension_formula(qq),
                                    "product": res.product_dimension,
                                },
                            },
                        )

                    builders.append(star_case)

    if n_max >= 2:
        for m in range(1, m_max + 1):
            for r in range(m + 1):
                def rm_case(mm=m, rr=r) -> VerifyCase:
                    dber = berman.build(BermanParams(CodeKind.DUAL_BERMAN, 2, mm, rr))
                    rm = berman.reed_muller_code(rr, mm)
                    ber = berman.build(BermanParams(CodeKind.BERMAN, 2, mm, rr))
                    rm_dual = berman.reed_muller_code(mm - rr - 1, mm)
                    ok = dber == rm and ber == rm_dual
                    return VerifyCase(f"reed-muller match n=2 r={rr} m={mm}", ok)

                builders.append(rm_case)

    for params in _family(n_max, m_max):
        if params.length > 9:
            continue

        def trans_case(p=params) -> VerifyCase:
            families = set()
            for a in range(p.length):
                for bcoord in range(p.length):
                    witness = berman.transitivity_witness(p, a, bcoord)
                    if witness is None:
                        return VerifyCase(
                            f"transitivity {p.name}", False, f"no witness maps {a} to {bcoord}"
                        )
                    families.add(witness)
            return VerifyCase(f"transitivity {p.name}", True, f"family: {', '.join(sorted(families))}")

        builders.append(trans_case)

    return builders


def iter_verification_cases(n_max: int = 3, m_max: int = 3) -> Iterator[VerifyCase]:
    """Evaluate every case, fanning out to worker threads when the
    BERMAN_PIR_THREADS environment variable allows more than one; results
    always come back in enumeration order."""
    builders = _case_builders(n_max, m_max)
    workers = 1
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            workers = max(1, int(raw))
        except ValueError:
            workers = 1
    if workers == 1:
        for make in builders:
            yield make()
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(lambda make: make(), builders)
