"""Exact checks on width complexes: d∘d = 0, gradedness, minimality, naturality,
and homology ranks of fibers at random rational points.

Generic acyclicity is certified probabilistically: a width component counts as
generically exact in degrees >= 1 when every sampled fiber is exact there.
Fibers cannot see torsion homology, so graded pieces H_j(C)_t over A(w) can be
probed as well (graded_homology, probe_graded_homology).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .complexes import ModuleBasis, OIComplex, OIComplexSpec, WidthComplex, assemble_oi_complex
from .free_mod import is_graded
from .polyring import Polynomial, degree, evaluate, is_homogeneous, matmul, push_forward

DEFAULT_BOX = 10**4
DEFAULT_MAX_DENOMINATOR = 100


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "witness": self.witness}


# -- linear algebra over Q --------------------------------------------------------


def rank(matrix) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    rows = [list(map(Fraction, row)) for row in matrix if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        pivot = next((r for r in range(rk, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        p = rows[rk]
        for r in range(rk + 1, len(rows)):
            f = rows[r][col]
            if f:
                f /= p[col]
                rows[r] = [a - f * b for a, b in zip(rows[r], p)]
        rk += 1
        if rk == len(rows):
            break
    return rk


# -- symbolic checks --------------------------------------------------------------


def check_dd_zero(C: WidthComplex) -> CheckResult:
    for h in range(2, C.length + 1):
        prod = matmul(C.d(h - 1), C.d(h), C.width)
        for r, row in enumerate(prod):
            for c, a in enumerate(row):
                if a:
                    return CheckResult("d∘d=0", False, {
                        "width": C.width, "degree": h, "row": r, "col": c, "entry": str(a),
                    })
    return CheckResult("d∘d=0", True)


def check_graded(C: WidthComplex, grading=None) -> CheckResult:
    """Every entry of d_h is homogeneous of degree deg(column) - deg(row)."""
    for h in range(1, C.length + 1):
        rdeg, cdeg = C.modules[h - 1].degrees, C.modules[h].degrees
        for r, row in enumerate(C.d(h)):
            for c, a in enumerate(row):
                if a and (not is_homogeneous(a, grading) or degree(a, grading) != cdeg[c] - rdeg[r]):
                    return CheckResult("graded", False, {
                        "width": C.width, "degree": h, "row": r, "col": c, "entry": str(a),
                        "expected_degree": cdeg[c] - rdeg[r],
                    })
    return CheckResult("graded", True)


def minimality_defects(C: WidthComplex) -> list:
    return [
        {"degree": h, "row": r, "col": c, "entry": str(a)}
        for h in range(1, C.length + 1)
        for r, row in enumerate(C.d(h))
        for c, a in enumerate(row)
        if a.constant_term()
    ]


def check_minimality(C: WidthComplex) -> CheckResult:
    """Pass iff no differential entry has a nonzero constant term."""
    bad = minimality_defects(C)
    if bad:
        return CheckResult("minimal", False, {"width": C.width, "offending": bad})
    return CheckResult("minimal", True)


def check_complex_naturality(oi: OIComplex) -> CheckResult:
    """eps_* o d_h(w) == d_h(w+1) o eps_* for every eps: w -> w+1, and the basis
    order is respected by every eps (pushed wedges need no reordering)."""
    for (w, eps), trans in oi.transitions.items():
        C, C2 = oi.components[w], oi.components[w + 1]
        for t in trans:
            if not t.monotone:
                return CheckResult("natural", False, {
                    "width": w, "eps": str(eps), "degree": t.degree, "reason": "basis order not preserved",
                })
        for h in range(1, min(C.length, C2.length) + 1):
            src, tgt = trans[h], trans[h - 1]
            d, d2 = C.d(h), C2.d(h)
            for col in range(C.modules[h].rank):
                lhs = {}
                for row in range(C.modules[h - 1].rank):
                    a = d[row][col]
                    if a:
                        r2, s = tgt.images[row]
                        lhs[r2] = push_forward(a, eps).scale(s)
                c2, s = src.images[col]
                rhs = {r: d2[r][c2].scale(s) for r in range(C2.modules[h - 1].rank) if d2[r][c2]}
                if lhs != rhs:
                    return CheckResult("natural", False, {
                        "width": w, "eps": str(eps), "degree": h,
                        "basis_element": C.label_text(h, C.modules[h].labels[col]),
                    })
    return CheckResult("natural", True)


# -- fibers at points ---------------------------------------------------------------


def random_point(variables, rng: random.Random, box: int = DEFAULT_BOX,
                 max_denominator: int = DEFAULT_MAX_DENOMINATOR) -> dict:
    """Nonzero rationals a/b with a uniform in 1..box and b uniform in 1..max_denominator."""
    return {v: Fraction(rng.randint(1, box), rng.randint(1, max_denominator)) for v in variables}


def point_rng(seed, w: int, trial: int) -> random.Random:
    return random.Random(f"{seed}:{w}:{trial}")


def _complex_variables(C: WidthComplex) -> list:
    found = set()
    for d in C.differentials:
        for row in d:
            for a in row:
                found |= a.variables()
    return sorted(found)


def evaluated_differentials(C: WidthComplex, point) -> list:
    return [[[evaluate(a, point) for a in row] for row in d] for d in C.differentials]


def homology_ranks(C: WidthComplex, point) -> list:
    """dim H_j of the fiber at `point` for j = 0..length."""
    mats = evaluated_differentials(C, point)
    ranks = [rank(m) for m in mats]  # ranks[h-1] = rank d_h
    out = []
    for j, m in enumerate(C.modules):
        rk_out = ranks[j - 1] if j >= 1 else 0
        rk_in = ranks[j] if j < len(ranks) else 0
        out.append(m.rank - rk_out - rk_in)
    return out


def homology_at_point(C: WidthComplex, point, j: int) -> int:
    if j < 0 or j >= len(C.modules):
        return 0
    return homology_ranks(C, point)[j]


def euler_characteristic(C: WidthComplex) -> int:
    return sum((-1) ** j * m.rank for j, m in enumerate(C.modules))


def _point_json(point) -> dict:
    return {str(v): str(c) for v, c in sorted(point.items())}


# -- graded pieces over A(w) --------------------------------------------------------
#
# A fiber at a point only sees the complex on a dense open set: the Koszul
# complex of any nonzero vector over a field is exact.  Non-acyclicity over
# A(w) itself shows up in the graded pieces H_j(C)_t, which are finite
# dimensional when every variable has positive degree.


def monomials_of_degree(variables, t: int, grading=None) -> list:
    """Monomials (sorted (Variable, exponent) tuples) of total degree t."""
    variables = sorted(variables)
    degs = [_var_degree(v, grading) for v in variables]
    if any(d <= 0 for d in degs):
        raise ValueError("graded pieces need every variable in positive degree")
    out = []

    def rec(k, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        if k == len(variables):
            return
        for e in range(left // degs[k], -1, -1):
            rec(k + 1, left - e * degs[k], acc + [(variables[k], e)] if e else acc)

    if t >= 0:
        rec(0, t, [])
    return out


def _var_degree(v, grading):
    if grading is None:
        return 1
    return grading(v) if callable(grading) else grading[v]


def _graded_columns(C: WidthComplex, h: int, t: int, variables, grading) -> list:
    cache = {}
    cols = []
    for c, deg in enumerate(C.modules[h].degrees):
        s = t - deg
        if s not in cache:
            cache[s] = monomials_of_degree(variables, s, grading)
        cols.extend((c, m) for m in cache[s])
    return cols


def _integer_row(row) -> dict:
    row = {k: Fraction(v) for k, v in row.items() if v}
    if not row:
        return row
    den = lcm(*(v.denominator for v in row.values()))
    ints = {k: int(v * den) for k, v in row.items()}
    g = gcd(*ints.values())
    return {k: v // g for k, v in ints.items()}


def sparse_rank(rows) -> int:
    """Rank of a matrix given as a list of {column: value} dicts.

    Fraction-free elimination on primitive integer rows; exact.
    """
    pivots = {}  # pivot column -> reduced row
    for row in rows:
        row = _integer_row(row)
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            a, b = piv[col], row[col]
            new = {k: a * v for k, v in row.items()}
            for k, v in piv.items():
                x = new.get(k, 0) - b * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            g = gcd(*new.values()) if new else 1
            row = {k: v // g for k, v in new.items()}
    return len(pivots)


def graded_rank(C: WidthComplex, h: int, t: int, variables, grading=None, points=None) -> int:
    """Rank of d_h restricted to internal degree t.

    Without `points` the image of each m·e_c is written in monomial coordinates
    (exact).  With `points` each row polynomial is recorded by its values at
    the points instead, which gives the same rank as soon as the points separate
    the relevant graded pieces of A(w) (true for random points with high
    probability, never an overestimate of the rank).
    """
    if h < 1 or h > C.length:
        return 0
    d = C.d(h)
    entry_values = {}
    rows = []
    for c, m in _graded_columns(C, h, t, variables, grading):
        mono = Polynomial(C.width, {m: Fraction(1)})
        if points is not None:
            mono_values = [evaluate(mono, p) for p in points]
        image = {}
        for r in range(len(d)):
            a = d[r][c]
            if not a:
                continue
            if points is None:
                for mm, coef in (a * mono).terms.items():
                    image[(r, mm)] = image.get((r, mm), 0) + coef
            else:
                if (r, c) not in entry_values:
                    entry_values[(r, c)] = [evaluate(a, p) for p in points]
                for k, (x, y) in enumerate(zip(entry_values[(r, c)], mono_values)):
                    image[(r, k)] = x * y
        rows.append({k: v for k, v in image.items() if v})
    if points is not None:
        return sparse_rank(rows)
    # monomial keys are not mutually comparable across rows; index them first
    index = {}
    for row in rows:
        for k in row:
            index.setdefault(k, len(index))
    return sparse_rank([{index[k]: v for k, v in row.items()} for row in rows])


def graded_homology(C: WidthComplex, j: int, t: int, variables, grading=None, points=None) -> int:
    """dim_Q H_j(C)_t, the internal-degree-t piece of homology over A(w)."""
    dim = len(_graded_columns(C, j, t, variables, grading))
    return dim - graded_rank(C, j, t, variables, grading, points) - graded_rank(C, j + 1, t, variables, grading, points)


def separating_points(C: WidthComplex, j: int, t: int, variables, rng, grading=None) -> list:
    """Enough random points to separate every graded piece of A(w) met by d_j and d_{j+1}."""
    need = 1
    for h in (j - 1, j):
        if 0 <= h < len(C.modules):
            for deg in set(C.modules[h].degrees):
                need = max(need, len(monomials_of_degree(variables, t - deg, grading)))
    # integer coordinates keep the evaluated rows small; separation only needs a large box
    return [random_point(variables, rng, max_denominator=1) for _ in range(need + 2)]


def probe_graded_homology(C: WidthComplex, j: int, t: int, variables, trials: int = 3, seed=0,
                          grading=None) -> list:
    """dim H_j(C)_t computed from values at a fresh set of random points in each trial."""
    out = []
    for trial in range(trials):
        pts = separating_points(C, j, t, variables, point_rng(f"graded:{seed}", C.width, trial), grading)
        out.append(graded_homology(C, j, t, variables, grading, pts))
    return out


# -- reports ------------------------------------------------------------------------


@dataclass
class WidthRow:
    width: int
    ranks: list
    dd_zero: bool = True
    graded: bool | None = None
    minimal: bool | None = None
    acyclic: str = "not probed"  # fiber probe status
    homology: list = field(default_factory=list)
    graded_homology: dict | None = None

    def to_json(self):
        return dict(self.__dict__)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    rows: list = field(default_factory=list)
    homology: dict = field(default_factory=dict)
    minimality: dict = field(default_factory=dict)
    label: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "rows": [r.to_json() for r in self.rows],
            "homology": {str(w): h for w, h in self.homology.items()},
            "minimality": {str(w): m for w, m in self.minimality.items()},
        }

    def table(self) -> str:
        head = f"{'w':>3}  {'ranks':<28} {'d²=0':<5} {'graded':<6} {'minimal':<7} acyclic-probe"
        lines = [head, "-" * len(head)]
        yn = {True: "yes", False: "NO", None: "-"}
        for r in self.rows:
            line = (f"{r.width:>3}  {str(r.ranks):<28} {yn[r.dd_zero]:<5} {yn[r.graded]:<6} "
                    f"{yn[r.minimal]:<7} {r.acyclic}")
            if r.graded_homology is not None:
                nonzero = sorted(r.graded_homology)
                line += "; graded H: " + ("zero" if not nonzero else "nonzero at (j,t) " + " ".join(nonzero))
            lines.append(line)
        for c in self.checks:
            if not c.passed:
                lines.append(f"FAIL {c.name}: {c.witness}")
        if self.label:
            lines.append(self.label)
        return "\n".join(lines)


def probe_component(C: WidthComplex, trials: int, seed, variables=None) -> dict:
    """Homology ranks at `trials` random points; exact in degrees >= 1 iff all vanish there."""
    if trials < 1:
        raise ValueError("need at least one trial")
    variables = _complex_variables(C) if variables is None else variables
    results, witness = [], None
    for t in range(trials):
        point = random_point(variables, point_rng(seed, C.width, t))
        hs = homology_ranks(C, point)
        euler_ok = euler_characteristic(C) == sum((-1) ** j * h for j, h in enumerate(hs))
        results.append({"trial": t, "homology": hs, "euler_ok": euler_ok})
        bad = [j for j, h in enumerate(hs) if j >= 1 and h]
        if bad and witness is None:
            witness = {"width": C.width, "degree": bad[0], "rank": hs[bad[0]], "trial": t,
                       "seed": seed, "point": _point_json(point)}
    return {"exact": witness is None, "results": results, "witness": witness}


def probe_generic_acyclicity(spec_or_complex, wmax: int, trials: int = 3, seed=0) -> VerificationReport:
    oi = _as_oi_complex(spec_or_complex, wmax)
    report = VerificationReport(label=f"probabilistic certificate ({trials} trials, seed {seed})")
    all_exact, first_witness, euler = True, None, True
    for C in oi.components[: wmax + 1]:
        probe = probe_component(C, trials, seed, _width_variables(oi, C))
        report.homology[C.width] = probe["results"]
        euler &= all(r["euler_ok"] for r in probe["results"])
        report.rows.append(WidthRow(C.width, C.ranks, acyclic=_status(probe),
                                    homology=[r["homology"] for r in probe["results"]]))
        if not probe["exact"]:
            all_exact = False
            first_witness = first_witness or probe["witness"]
    report.checks.append(CheckResult("acyclic in degrees >= 1", all_exact, first_witness))
    report.checks.append(CheckResult("euler characteristic", euler))
    return report


def _status(probe) -> str:
    if probe["exact"]:
        return "fiber exact in degrees >= 1"
    w = probe["witness"]
    return f"fiber NOT exact (H_{w['degree']} rank {w['rank']})"


def _width_variables(oi: OIComplex, C: WidthComplex):
    return oi.spec.phi.algebra.variables_at_width(C.width)


def _as_oi_complex(obj, wmax: int) -> OIComplex:
    if isinstance(obj, OIComplex):
        return obj
    if isinstance(obj, OIComplexSpec):
        return assemble_oi_complex(obj, wmax)
    raise TypeError(f"expected an OIComplexSpec or OIComplex, got {type(obj).__name__}")


def verify_oi_complex(spec_or_complex, wmax: int, trials: int = 3, seed=0, probe: bool = True,
                      minimality: bool = True, graded_degree: int | None = None) -> VerificationReport:
    """All checks on widths 0..wmax: d∘d=0, graded, minimal, natural, and the acyclicity probe.

    With `graded_degree` = T, also checks H_j(C)_t = 0 over A(w) for j >= 1 and
    t <= T (values at random points, see probe_graded_homology).
    """
    oi = _as_oi_complex(spec_or_complex, wmax)
    grading = oi.spec.phi.algebra.grading
    graded_input = is_graded(oi.spec.phi)
    report = VerificationReport(label=f"probabilistic certificate ({trials} trials, seed {seed})" if probe else "")
    dd_all = graded_all = minimal_all = exact_all = euler_all = True
    dd_w = graded_w = minimal_w = exact_w = None
    ghom_all, ghom_w = True, None
    for C in oi.components[: wmax + 1]:
        row = WidthRow(C.width, C.ranks)
        dd = check_dd_zero(C)
        gr = check_graded(C, grading) if graded_input else None
        row.dd_zero, row.graded = dd.passed, gr and gr.passed
        if not dd.passed and dd_all:
            dd_all, dd_w = False, dd.witness
        if gr is not None and not gr.passed and graded_all:
            graded_all, graded_w = False, gr.witness
        if minimality:
            mi = check_minimality(C)
            row.minimal = mi.passed
            report.minimality[C.width] = {"passed": mi.passed, "offending": minimality_defects(C)}
            if not mi.passed and minimal_all:
                minimal_all, minimal_w = False, mi.witness
        if probe:
            pr = probe_component(C, trials, seed, _width_variables(oi, C))
            report.homology[C.width] = pr["results"]
            row.acyclic = _status(pr)
            row.homology = [r["homology"] for r in pr["results"]]
            euler_all &= all(r["euler_ok"] for r in pr["results"])
            if not pr["exact"] and exact_all:
                exact_all, exact_w = False, pr["witness"]
        if graded_degree is not None:
            variables = _width_variables(oi, C)
            dims = {}
            for j in range(1, len(C.modules)):
                for t in range(graded_degree + 1):
                    hs = probe_graded_homology(C, j, t, variables, trials, seed, grading)
                    if any(hs):
                        dims[f"{j},{t}"] = hs
                        if ghom_all:
                            ghom_all, ghom_w = False, {"width": C.width, "degree": j, "internal_degree": t,
                                                       "dims": hs, "seed": seed}
            row.graded_homology = dims
        report.rows.append(row)
    report.checks.append(CheckResult("d∘d=0", dd_all, dd_w))
    if graded_input:
        report.checks.append(CheckResult("graded", graded_all, graded_w))
    if minimality:
        report.checks.append(CheckResult("minimal", minimal_all, minimal_w))
    report.checks.append(check_complex_naturality(oi))
    if probe:
        report.checks.append(CheckResult("acyclic in degrees >= 1", exact_all, exact_w))
        report.checks.append(CheckResult("euler characteristic", euler_all))
    if graded_degree is not None:
        report.checks.append(CheckResult(f"graded homology zero up to degree {graded_degree}", ghom_all, ghom_w))
    return report


def zero_complex(ranks, width: int = 0) -> WidthComplex:
    """A complex with the given module ranks and all differentials zero."""
    modules = [ModuleBasis(f"C{j}", [((k,), ()) for k in range(n)], [0] * n) for j, n in enumerate(ranks)]
    diffs = [[[Polynomial.zero(width) for _ in range(ranks[h])] for _ in range(ranks[h - 1])]
             for h in range(1, len(ranks))]
    return WidthComplex(width, modules, diffs, [], [], "zero")
