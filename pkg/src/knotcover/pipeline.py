"""End-to-end drivers: per-knot caches, per-(knot, prime) cell computations,
verdict assembly, and result serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .algebra.modp import fp_factorization_str
from .algebra.snf import AbelianGroup, abelian_from_divisor_list
from .bounds import BoundReport, cover_index_bounds, family_bound, smallest_good_prime
from .covers import (Budget, BudgetExceeded, CoverHomology, CyclicInvariants,
                     betti_sandwich, cover_homology, cyclic_cover_invariants,
                     cyclic_table, kernel_table, preimage_alpha_table,
                     torsion_ratio_check)
from .diagrams import builtin_knot, knot_metadata, wirtinger
from .fox import alexander_mod_p, alexander_poly, check_props
from .presentations import drop_redundant_relator, reduce_presentation
from .reps import (AffineRep, NoRepresentationError, build_rep,
                   roots_of_delta_modp, verify_rep)
from .strat import fibered_bound_check, stratification_betti

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class RunConfig:
    knots: tuple[str, ...]
    primes: tuple[int, ...] = DEFAULT_PRIMES
    budget: Budget = Budget()
    peripheral_limit: int = 400
    stratify: bool = True
    workers: int = 1
    seed: int = 0


class KnotStudy:
    """Everything derived from one diagram, computed once."""

    def __init__(self, name: str):
        self.name = name
        self.diagram = builtin_knot(name)
        self.metadata = knot_metadata(name)
        self.wirtinger = wirtinger(self.diagram)
        base = drop_redundant_relator(self.wirtinger) \
            if self.wirtinger.relators else self.wirtinger
        self.reduced, self.images = reduce_presentation(base)
        self.delta = alexander_poly(self.wirtinger)

    @property
    def crossing_count(self):
        return self.diagram.crossing_count


_STUDIES: dict[str, KnotStudy] = {}


def knot_study(name: str) -> KnotStudy:
    if name not in _STUDIES:
        _STUDIES[name] = KnotStudy(name)
    return _STUDIES[name]


@dataclass
class ClassResult:
    """One Galois class of roots at one prime."""
    modulus: tuple[int, ...]
    d: int
    n: int
    kernel: CoverHomology | None = None
    kernel_skipped: str | None = None
    preimage: CoverHomology | None = None
    cyclic: CoverHomology | None = None
    cyclic_closed: CyclicInvariants | None = None
    strat_betti: int | None = None
    sandwich_ok: bool | None = None
    sandwich: tuple[int, int] | None = None
    boundary_ok: bool | None = None
    torsion_ratio: str | None = None
    fibered_ok: bool | None = None
    rep_verified: bool = False


@dataclass
class CellResult:
    knot: str
    p: int
    status: str                      # 'ok' | 'trivial'
    factorization: str = ""
    classes: list[ClassResult] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"knot": self.knot, "p": self.p, "status": self.status,
               "delta_mod_p": self.factorization, "classes": []}
        for cl in self.classes:
            c = {"modulus": list(cl.modulus), "d": cl.d, "n": cl.n,
                 "degree": cl.n * (self.p ** cl.d)}
            if cl.kernel is not None:
                c["kernel_h1"] = str(cl.kernel.h1)
                c["boundary_components"] = cl.kernel.boundary_components
                c["peripheral_rank"] = cl.kernel.peripheral_rank
                c["nonperipheral_rank"] = cl.kernel.nonperipheral_rank
            if cl.kernel_skipped:
                c["kernel_skipped"] = cl.kernel_skipped
            if cl.cyclic is not None:
                c["cyclic_h1"] = str(cl.cyclic.h1)
            if cl.preimage is not None:
                c["preimage_h1"] = str(cl.preimage.h1)
            if cl.strat_betti is not None:
                c["stratification_betti"] = cl.strat_betti
            for k in ("sandwich_ok", "sandwich", "boundary_ok",
                      "torsion_ratio", "fibered_ok", "rep_verified"):
                v = getattr(cl, k)
                if v is not None:
                    c[k] = v
            out["classes"].append(c)
        return out


def compute_cell(name: str, p: int, budget: Budget = Budget(),
                 stratify: bool = True, peripheral_limit: int = 400,
                 preimage: bool = False) -> CellResult:
    """All covers and verdicts for one knot at one prime, one entry per
    Galois class of roots of the Alexander polynomial mod p."""
    study = knot_study(name)
    delta_p = alexander_mod_p(study.delta, p)
    factorization = fp_factorization_str(delta_p, p) if delta_p else "0"
    try:
        roots = roots_of_delta_modp(delta_p, p)
    except NoRepresentationError:
        return CellResult(name, p, "trivial", factorization)
    cell = CellResult(name, p, "ok", factorization)
    for root in roots:
        cl = ClassResult(root.factor, root.degree, root.order)
        cell.classes.append(cl)
        rep = build_rep(study.reduced, p, list(root.factor))
        cl.rep_verified = verify_rep(rep, closure_limit=2000).ok
        q = p ** root.degree
        closed = cyclic_cover_invariants(study.delta, root.order)
        cl.cyclic_closed = closed
        try:
            cyc = cover_homology(study.reduced, cyclic_table(study.reduced, root.order),
                                 "cyclic", budget=budget)
            cl.cyclic = cyc
            assert (cyc.h1.free_rank, cyc.h1.torsion) == \
                (closed.h1.free_rank, closed.h1.torsion), \
                "cyclic cover: rewriting and closed form disagree"
        except BudgetExceeded as e:
            cl.kernel_skipped = str(e)
            continue
        degree = root.order * q
        if budget is not None and degree > budget.degree:
            cl.kernel_skipped = f"cover degree {degree} exceeds budget {budget.degree}"
            continue
        try:
            tab = kernel_table(rep)
            ker = cover_homology(study.reduced, tab, "kernel", budget=budget,
                                 peripheral=tab.degree <= peripheral_limit)
            cl.kernel = ker
        except BudgetExceeded as e:
            cl.kernel_skipped = str(e)
            continue
        cl.boundary_ok = ker.boundary_components == q
        sw = betti_sandwich(study.crossing_count, root.order, p, root.degree,
                            ker.betti, closed.betti)
        cl.sandwich = (sw.lower, sw.upper)
        cl.sandwich_ok = sw.ok
        cl.torsion_ratio = torsion_ratio_check(ker, closed, p, root.degree).status
        if preimage:
            try:
                cl.preimage = cover_homology(
                    study.reduced, preimage_alpha_table(rep), "preimage_alpha",
                    budget=budget)
            except BudgetExceeded:
                pass
        if stratify and q <= 4096:
            sres = stratification_betti(study.reduced, rep, delta=study.delta)
            cl.strat_betti = sres.betti
            fib = fibered_bound_check(study.reduced, rep,
                                      study.metadata.get("fibered", False),
                                      study.metadata.get("genus"),
                                      strat=sres)
            if fib.applicable:
                cl.fibered_ok = fib.ok
    return cell


def bound_report(name: str) -> BoundReport:
    """Degree bounds plus the achieved indices at the good prime."""
    study = knot_study(name)
    ib = cover_index_bounds(study.crossing_count)
    gp = smallest_good_prime(study.delta, study.crossing_count)
    delta_p = alexander_mod_p(study.delta, gp.p)
    roots = roots_of_delta_modp(delta_p, gp.p)
    best = min(roots, key=lambda r: r.degree)
    fam = None
    if study.metadata.get("fibered") and study.metadata.get("genus"):
        fam = family_bound("fibered", genus=study.metadata["genus"])
    return BoundReport(study.crossing_count, ib.regular, ib.irregular,
                       gp.p, best.degree, best.order,
                       best.order * gp.p ** best.degree,
                       gp.p ** best.degree, fam)


# ---------------------------------------------------------------------------
# golden-table comparison


def parse_group_spec(spec: dict) -> AbelianGroup:
    return abelian_from_divisor_list(spec.get("free", 0),
                                     list(spec.get("divisors", [])))


@dataclass
class DiffOutcome:
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self):
        return not self.mismatches


def diff_cell(cell: CellResult, golden_cell: dict, out: DiffOutcome):
    """Compare one computed cell against its golden entry."""
    tag = f"{cell.knot} p={cell.p}"
    if golden_cell.get("trivial"):
        if cell.status != "trivial":
            out.mismatches.append(f"{tag}: expected trivial reduction")
        else:
            out.checked += 1
        return
    if cell.status == "trivial":
        out.mismatches.append(f"{tag}: unexpectedly trivial mod p")
        return
    if golden_cell.get("beyond_desk_budget"):
        out.skipped.append(f"{tag}: beyond desk budget")
        return
    upper = parse_group_spec(golden_cell["upper"])
    lower = parse_group_spec(golden_cell["lower"])
    for cl in cell.classes:
        if cl.kernel is None:
            if golden_cell.get("required"):
                out.mismatches.append(f"{tag}: required cell skipped "
                                      f"({cl.kernel_skipped})")
            else:
                out.skipped.append(f"{tag}: {cl.kernel_skipped}")
            continue
        if cl.kernel.h1 != upper:
            out.mismatches.append(f"{tag}: upper row {cl.kernel.h1} != {upper}")
        elif cl.cyclic.h1 != lower:
            out.mismatches.append(f"{tag}: lower row {cl.cyclic.h1} != {lower}")
        else:
            out.checked += 1


def run_table(config: RunConfig, preimage: bool = False) -> list[CellResult]:
    jobs = [(k, p) for k in config.knots for p in config.primes]
    if config.workers > 1:
        import multiprocessing as mp
        with mp.Pool(config.workers) as pool:
            cells = pool.starmap(_cell_job, [
                (k, p, config.budget.degree, config.budget.matrix_cells,
                 config.stratify, config.peripheral_limit, preimage)
                for k, p in jobs])
    else:
        cells = [compute_cell(k, p, config.budget, config.stratify,
                              config.peripheral_limit, preimage)
                 for k, p in jobs]
    return cells


def _cell_job(name, p, degree, cells, stratify, peripheral_limit, preimage):
    return compute_cell(name, p, Budget(degree, cells), stratify,
                        peripheral_limit, preimage)


# ---------------------------------------------------------------------------
# minimal non-cyclic covers


def minimal_report(name: str, cap: int = 8):
    """Minimal degree of a non-cyclic cover, whether the degree-p^d
    irregular cover attains it, and the reductions of the Alexander
    polynomial at the primes dividing that degree."""
    from .lowindex import MinimalCoverReport, minimal_noncyclic_degree

    study = knot_study(name)
    degree, records = minimal_noncyclic_degree(study.reduced, cap=cap)
    if degree is None:
        return MinimalCoverReport(name, None, cap, None, ())
    facs = []
    matches = False
    for p in sorted({q for q in _prime_divisors(degree)}):
        delta_p = alexander_mod_p(study.delta, p)
        facs.append((fp_factorization_str(delta_p, p), p))
        try:
            for root in roots_of_delta_modp(delta_p, p):
                if p ** root.degree == degree:
                    matches = True
        except NoRepresentationError:
            pass
    return MinimalCoverReport(name, degree, cap, matches, tuple(facs))


def _prime_divisors(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
