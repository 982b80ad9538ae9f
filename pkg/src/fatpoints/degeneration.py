"""Plane degeneration bookkeeping and the recursive dimension prover.

A ``(k, b)``-degeneration breaks the plane into two pieces, keeps ``n - b``
of the points on a plane carrying curves of degree ``d - k``, and moves ``b``
points onto a ruled piece (the blow-up of the plane in one point).  The limit
system restricts to four numerical systems::

    plane         L(d-k,   m0,    m^(n-b))
    ruled         L(d,     d-k,   m^b)
    plane_kernel  L(d-k-1, m0,    m^(n-b))
    ruled_kernel  L(d,     d-k+1, m^b)

``limit_dimension`` combines their four dimensions into the dimension of the
limit, which by semicontinuity bounds the dimension of the original system
from above.  Two sufficient criteria follow: one proving emptiness (for
systems with negative virtual dimension) and one proving non-speciality.
``recursive_dim`` chains these with the speciality classifier, reduction to
standard form, small base cases, and a finite-field rank fallback; every
verdict carries a trace that ``check_certificate`` replays without search.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (LinearSystem, expected_dim, format_system, parse_system,
                   virtual_dim)
from .cremona import Move, is_standard, replay_transcript, standard_reduce
from .neg_curves import hh_dimension, is_minus_one_special
from .oracle import DEFAULT_PRIME, dimension_char_p, monomial_count
from .verdict import EMPTY, REGULAR, SPECIAL, UNKNOWN, DimVerdict

__all__ = [
    "DegenerationSplit",
    "Budget",
    "CertificateError",
    "degenerate",
    "limit_dimension",
    "prove_empty",
    "prove_nonspecial",
    "recursive_dim",
    "check_certificate",
]


@dataclass(frozen=True)
class DegenerationSplit:
    base: LinearSystem
    k: int
    b: int
    plane: LinearSystem
    ruled: LinearSystem
    plane_kernel: LinearSystem
    ruled_kernel: LinearSystem

    @property
    def v_plane(self) -> int:
        return virtual_dim(self.plane)

    @property
    def v_ruled(self) -> int:
        return virtual_dim(self.ruled)

    @property
    def v_plane_kernel(self) -> int:
        return virtual_dim(self.plane_kernel)

    @property
    def v_ruled_kernel(self) -> int:
        return virtual_dim(self.ruled_kernel)


def degenerate(L: LinearSystem, k: int, b: int) -> DegenerationSplit:
    """The four restricted systems of a (k, b)-degeneration of ``L``."""
    base = L.normalize()
    if not base.is_quasi_homogeneous():
        raise ValueError(f"degeneration needs a quasi-homogeneous system, got {L}")
    n = len(base.tail)
    m = base.tail_multiplicity() if n else 0
    d, m0 = base.degree, base.m0
    if not 1 <= k < d:
        raise ValueError(f"need 1 <= k < d, got k={k}, d={d}")
    if not 0 <= b <= n:
        raise ValueError(f"need 0 <= b <= n, got b={b}, n={n}")
    split = DegenerationSplit(
        base=base, k=k, b=b,
        plane=LinearSystem(d - k, (m0,) + (m,) * (n - b)),
        ruled=LinearSystem(d, (d - k,) + (m,) * b),
        plane_kernel=LinearSystem(d - k - 1, (m0,) + (m,) * (n - b)),
        ruled_kernel=LinearSystem(d, (d - k + 1,) + (m,) * b),
    )
    # bookkeeping identity used throughout the induction
    assert split.v_plane + split.v_ruled_kernel == virtual_dim(base) - 1
    return split


def limit_value(d_minus_k: int, ell_plane: int, ell_ruled: int,
                ell_plane_kernel: int, ell_ruled_kernel: int) -> int:
    """Dimension of the limit system from the four restricted dimensions.

    With r = ell - kernel ell - 1 on each piece: if the two restricted series
    on the double curve are short enough to be transversal
    (r_plane + r_ruled <= d - k - 1) the kernels control the answer,
    otherwise the restrictions do.  At the overlap both formulas must agree.
    """
    r_plane = ell_plane - ell_plane_kernel - 1
    r_ruled = ell_ruled - ell_ruled_kernel - 1
    if r_plane + r_ruled <= d_minus_k - 1:
        out = ell_plane_kernel + ell_ruled_kernel + 1
        if r_plane + r_ruled == d_minus_k - 1 and out != ell_plane + ell_ruled - d_minus_k:
            raise ValueError("limit formulas disagree at the overlap; inconsistent input")
        return out
    return ell_plane + ell_ruled - d_minus_k


def limit_dimension(split: DegenerationSplit, ell_plane: int, ell_ruled: int,
                    ell_plane_kernel: int, ell_ruled_kernel: int) -> int:
    return limit_value(split.base.degree - split.k, ell_plane, ell_ruled,
                       ell_plane_kernel, ell_ruled_kernel)


# -- recursive prover ---------------------------------------------------------


@dataclass
class Budget:
    """Resource limits for :func:`recursive_dim`; exhaustion yields Unknown."""

    max_depth: int = 4
    scan_depth: int = 2          # degeneration scans allowed at depth < scan_depth
    max_scan_b: int = 24         # b values tried per (system, k)
    use_oracle: bool = True
    oracle_cols_cap: int = 5151  # (d+1)(d+2)/2 cap for the rank fallback
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 3
    max_nodes: int = 50_000


class _Ctx:
    def __init__(self, budget: Budget):
        self.budget = budget
        self.memo: dict[LinearSystem, DimVerdict] = {}
        self.nodes = 0


def recursive_dim(L: LinearSystem, budget: Budget | None = None) -> DimVerdict:
    """Sound decision procedure for the dimension of a tail-6 system.

    Order of attack: speciality classifier; reduction to standard form plus
    the known base classes (at most nine base points, or quasi-homogeneous
    tail multiplicity at most 5); a scan of (5, b)- and (6, b)-degenerations
    applying the emptiness / non-speciality criteria recursively; the
    finite-field rank oracle under the size cap.  Anything else is Unknown;
    a verdict is never guessed.
    """
    base = L.normalize()
    if not base.is_quasi_homogeneous():
        raise ValueError(f"recursive_dim needs a quasi-homogeneous system, got {L}")
    if base.tail and base.tail_multiplicity() > 6:
        raise ValueError(f"recursive_dim needs tail multiplicity <= 6, got {L}")
    return _solve(base, _Ctx(budget or Budget()), 0)


def _solve(L: LinearSystem, ctx: _Ctx, depth: int) -> DimVerdict:
    L = L.normalize()
    hit = ctx.memo.get(L)
    if hit is not None:
        return hit
    ctx.nodes += 1
    if ctx.nodes > ctx.budget.max_nodes or depth > ctx.budget.max_depth:
        return DimVerdict(UNKNOWN, None, L, {"kind": "unknown", "system": str(L),
                                             "reason": "budget exhausted"})
    verdict = _solve_fresh(L, ctx, depth)
    ctx.memo[L] = verdict
    return verdict


def _solve_fresh(L: LinearSystem, ctx: _Ctx, depth: int) -> DimVerdict:
    d = L.degree
    if L.base_points == 0:
        ell = d * (d + 3) // 2
        return DimVerdict(REGULAR, ell, L,
                          {"kind": "no_conditions", "system": str(L), "ell": ell})
    if any(m > d for m in L.mults):
        return DimVerdict(EMPTY, -1, L,
                          {"kind": "multiplicity_exceeds_degree", "system": str(L),
                           "ell": -1})

    removal = hh_dimension(L)
    if removal.status == SPECIAL:
        return DimVerdict(SPECIAL, removal.ell, L, removal.trace)

    reduced = _conclude_from_reduction(L, ctx)
    if reduced is not None:
        return reduced

    if depth < ctx.budget.scan_depth:
        found = _scan_degenerations(L, ctx, depth)
        if found is not None:
            return found

    if ctx.budget.use_oracle and monomial_count(L) <= ctx.budget.oracle_cols_cap:
        b = ctx.budget
        ell = dimension_char_p(L, b.seed, b.prime, b.trials)
        e = expected_dim(L)
        leaf = {"kind": "rank_oracle", "system": str(L), "prime": b.prime,
                "seed": b.seed, "trials": b.trials, "ell": ell, "expected": e}
        if ell == e:
            status = EMPTY if ell == -1 else REGULAR
            return DimVerdict(status, ell, L, leaf)
        return DimVerdict(UNKNOWN, None, L,
                          {"kind": "unknown", "system": str(L),
                           "reason": "rank oracle exceeds the expected dimension",
                           "oracle": leaf})

    return DimVerdict(UNKNOWN, None, L,
                      {"kind": "unknown", "system": str(L), "reason": "out of methods"})


def _conclude_from_reduction(L: LinearSystem, ctx: _Ctx) -> DimVerdict | None:
    final, moves = standard_reduce(L)
    leaf: dict | None = None
    if any(m > final.degree for m in final.mults):
        ell = -1
        leaf = {"kind": "multiplicity_exceeds_degree", "system": str(final), "ell": -1}
    elif final.base_points <= 9 and is_standard(final):
        ell = max(-1, virtual_dim(final))
        leaf = {"kind": "standard_small", "system": str(final),
                "points": final.base_points, "ell": ell}
    elif final.is_quasi_homogeneous() and 0 < final.tail_multiplicity() <= 5:
        inner = hh_dimension(final)
        ell = inner.ell
        leaf = {"kind": "bounded_tail", "system": str(final),
                "tail": final.tail_multiplicity(), "removal": inner.trace, "ell": ell}
    else:
        return None
    trace = {"kind": "cremona_reduction", "system": str(L),
             "moves": [m.to_json() for m in moves], "final": str(final),
             "leaf": leaf, "ell": ell}
    if ell == -1:
        return DimVerdict(EMPTY, -1, L, trace)
    if ell == expected_dim(L):
        return DimVerdict(REGULAR, ell, L, trace)
    # a special value here would contradict the classifier run before us
    return DimVerdict(UNKNOWN, None, L,
                      {"kind": "unknown", "system": str(L),
                       "reason": f"reduction reports dimension {ell} above expected",
                       "reduction": trace})


def _scan_degenerations(L: LinearSystem, ctx: _Ctx, depth: int) -> DimVerdict | None:
    n = len(L.tail)
    d = L.degree
    v = virtual_dim(L)
    for k in (5, 6):
        if not 1 <= k < d:
            continue
        b0 = min(n, (2 * d) // 7)
        candidates = list(range(b0, -1, -1)) + list(range(b0 + 1, n))
        candidates = [b for b in candidates if 0 <= b < n][:ctx.budget.max_scan_b]
        for b in candidates:
            if v <= -1:
                node = _try_empty(L, k, b, ctx, depth)
                if node is not None:
                    return DimVerdict(EMPTY, -1, L, node)
            if v >= -1:
                node = _try_nonspecial(L, k, b, ctx, depth)
                if node is not None:
                    return DimVerdict(REGULAR, expected_dim(L), L, node)
    return None


def _child_verdicts(split: DegenerationSplit, ctx: _Ctx, depth: int
                    ) -> dict[str, DimVerdict]:
    return {
        "plane": _solve(split.plane, ctx, depth + 1),
        "ruled": _solve(split.ruled, ctx, depth + 1),
        "plane_kernel": _solve(split.plane_kernel, ctx, depth + 1),
        "ruled_kernel": _solve(split.ruled_kernel, ctx, depth + 1),
    }


def _degeneration_node(L, split, rule, children, ell) -> dict:
    return {"kind": "degeneration", "system": str(L), "k": split.k, "b": split.b,
            "rule": rule, "ell": ell,
            "children": {name: v.to_json() for name, v in children.items()}}


def _try_empty(L: LinearSystem, k: int, b: int, ctx: _Ctx, depth: int) -> dict | None:
    """Emptiness criterion: non-special restrictions, empty kernels, and
    v(plane_kernel) <= v(L)."""
    if b >= len(L.tail):
        return None
    split = degenerate(L, k, b)
    if split.v_ruled_kernel > -1 or split.v_plane_kernel > virtual_dim(L):
        return None
    if any(is_minus_one_special(s)[0] for s in
           (split.plane, split.ruled, split.plane_kernel, split.ruled_kernel)):
        return None
    children = _child_verdicts(split, ctx, depth)
    if children["plane"].status not in (REGULAR, EMPTY):
        return None
    if children["ruled"].status not in (REGULAR, EMPTY):
        return None
    if children["plane_kernel"].status != EMPTY or children["ruled_kernel"].status != EMPTY:
        return None
    return _degeneration_node(L, split, "empty", children, -1)


def _try_nonspecial(L: LinearSystem, k: int, b: int, ctx: _Ctx, depth: int) -> dict | None:
    """Non-speciality criterion: regular restrictions with v >= -1 and kernels
    small enough that v(L) - 1 >= ell(plane_kernel) + ell(ruled_kernel)."""
    if b >= len(L.tail):
        return None
    split = degenerate(L, k, b)
    if split.v_plane < -1 or split.v_ruled < -1:
        return None
    if is_minus_one_special(split.plane)[0] or is_minus_one_special(split.ruled)[0]:
        return None
    children = _child_verdicts(split, ctx, depth)
    if children["plane"].status not in (REGULAR, EMPTY):
        return None
    if children["ruled"].status not in (REGULAR, EMPTY):
        return None
    pk, rk = children["plane_kernel"], children["ruled_kernel"]
    if not (pk.conclusive and rk.conclusive):
        return None
    if pk.ell + rk.ell > virtual_dim(L) - 1:
        return None
    return _degeneration_node(L, split, "nonspecial", children, expected_dim(L))


def prove_empty(L: LinearSystem, k: int, b: int, budget: Budget | None = None) -> bool:
    """True iff the (k, b)-degeneration certifies that ``L`` is empty."""
    base = L.normalize()
    if virtual_dim(base) > -1:
        raise ValueError(f"prove_empty needs virtual dimension <= -1, got {L}")
    if not 0 <= b < len(base.tail):
        raise ValueError(f"need 0 <= b < n, got b={b}")
    ctx = _Ctx(budget or Budget())
    return _try_empty(base, k, b, ctx, 0) is not None


def prove_nonspecial(L: LinearSystem, k: int, b: int, budget: Budget | None = None) -> bool:
    """True iff the (k, b)-degeneration certifies that ``L`` is non-special.

    The criterion only speaks about systems with virtual dimension at least
    -1; anything below that is answered False (inconclusive), never certified.
    """
    base = L.normalize()
    if virtual_dim(base) < -1:
        return False
    if not 0 <= b < len(base.tail):
        raise ValueError(f"need 0 <= b < n, got b={b}")
    ctx = _Ctx(budget or Budget())
    return _try_nonspecial(base, k, b, ctx, 0) is not None


# -- certificate replay --------------------------------------------------------


class CertificateError(ValueError):
    """A trace failed to replay."""


def check_certificate(cert: dict, replay_oracle: bool = True) -> None:
    """Re-verify a verdict tree using only arithmetic; raises on any mismatch.

    ``cert`` is the JSON form of a :class:`DimVerdict`.  No search happens:
    recorded moves, splits and (k, b) choices are replayed and every claimed
    inequality is recomputed.
    """
    system = parse_system(cert["system"]).normalize()
    status, ell = cert["status"], cert["ell"]
    if status == UNKNOWN:
        raise CertificateError("unknown verdicts carry no certificate")
    got = _check_node(cert["trace"], system, replay_oracle)
    if got != ell:
        raise CertificateError(f"trace for {system} proves ell={got}, verdict says {ell}")
    e = expected_dim(system)
    if status == EMPTY and ell != -1:
        raise CertificateError("empty verdict with ell != -1")
    if status == REGULAR and ell != e:
        raise CertificateError("regular verdict with ell != expected")
    if status == SPECIAL and ell <= e:
        raise CertificateError("special verdict without excess dimension")


def _node_system(node: dict, expect: LinearSystem) -> LinearSystem:
    sys = parse_system(node["system"]).normalize()
    if sys != expect:
        raise CertificateError(f"trace node is about {sys}, expected {expect}")
    return sys


def _check_node(node: dict, system: LinearSystem, replay_oracle: bool) -> int:
    kind = node.get("kind")
    if kind == "no_conditions":
        _node_system(node, system)
        if system.base_points != 0:
            raise CertificateError(f"{system} has base conditions")
        ell = system.degree * (system.degree + 3) // 2
        if node["ell"] != ell:
            raise CertificateError("wrong unconditioned dimension")
        return ell
    if kind == "multiplicity_exceeds_degree":
        _node_system(node, system)
        if not any(m > system.degree for m in system.mults):
            raise CertificateError(f"no multiplicity exceeds the degree in {system}")
        return -1
    if kind == "fixed_part_removal":
        _node_system(node, system)
        return _check_removal(node, system)
    if kind == "cremona_reduction":
        _node_system(node, system)
        moves = tuple(Move.from_json(m) for m in node["moves"])
        final = replay_transcript(moves, system)
        if format_system(final) != node["final"]:
            raise CertificateError("reduction final system mismatch")
        leaf = node["leaf"]
        got = _check_node(leaf, parse_system(leaf["system"]).normalize(), replay_oracle)
        if parse_system(leaf["system"]).normalize() != final.normalize():
            raise CertificateError("reduction leaf is about the wrong system")
        if got != node["ell"]:
            raise CertificateError("reduction ell mismatch")
        return got
    if kind == "standard_small":
        sys = _node_system(node, system)
        if sys.base_points > 9 or not is_standard(sys):
            raise CertificateError(f"{sys} is not a small standard system")
        ell = max(-1, virtual_dim(sys))
        if node["ell"] != ell:
            raise CertificateError("standard_small ell mismatch")
        return ell
    if kind == "bounded_tail":
        sys = _node_system(node, system)
        if not sys.is_quasi_homogeneous() or not 0 < sys.tail_multiplicity() <= 5:
            raise CertificateError(f"{sys} is not a bounded-tail base case")
        got = _check_node(node["removal"], sys, replay_oracle)
        if got != node["ell"]:
            raise CertificateError("bounded_tail ell mismatch")
        return got
    if kind == "degeneration":
        return _check_degeneration(node, system, replay_oracle)
    if kind == "rank_oracle":
        sys = _node_system(node, system)
        if replay_oracle:
            got = dimension_char_p(sys, node["seed"], node["prime"], node["trials"])
            if got != node["ell"]:
                raise CertificateError(f"oracle replay got {got}, trace says {node['ell']}")
        if node["ell"] != expected_dim(sys):
            raise CertificateError("rank oracle certifies regular values only")
        return node["ell"]
    raise CertificateError(f"unknown trace node kind {kind!r}")


def _check_removal(node: dict, system: LinearSystem) -> int:
    from .core import intersect  # local import to keep module top tidy

    d = system.degree
    m = list(system.mults)
    max_n = 0
    curves: list[LinearSystem] = []
    for step in node["steps"]:
        curve = parse_system(step["curve"])
        n = step["n"]
        width = max(len(m), len(curve.mults))
        m += [0] * (width - len(m))
        cur = LinearSystem(d, tuple(m))
        if intersect(cur, curve) != -n or n < 1:
            raise CertificateError(f"split {curve} x{n} does not match its intersection")
        d -= n * curve.degree
        for idx, mu in enumerate(curve.mults):
            m[idx] -= n * mu
        if d < 0 or any(x < 0 for x in m):
            raise CertificateError("split walks out of the effective cone")
        max_n = max(max_n, n)
        curves.append(curve)
    if node.get("rejected"):
        rej = node["rejected"]
        curve = parse_system(rej["curve"])
        cur = LinearSystem(d, tuple(m))
        if intersect(cur, curve) != -rej["n"] or rej["n"] < 1:
            raise CertificateError("rejected split does not meet the residual negatively")
        nd = d - rej["n"] * curve.degree
        rest = [x - rej["n"] * y for x, y in
                zip(m, list(curve.mults) + [0] * (len(m) - len(curve.mults)))]
        if nd >= 0 and all(x >= 0 for x in rest):
            raise CertificateError("rejected split would actually fit")
        if node["ell"] != -1:
            raise CertificateError("rejected removal must conclude emptiness")
        return -1
    residual = LinearSystem(d, tuple(m))
    if parse_system(node["residual"]).normalize() != residual.normalize():
        raise CertificateError("removal residual mismatch")
    ell = max(-1, virtual_dim(residual))
    if node["ell"] != ell:
        raise CertificateError("removal ell mismatch")
    if node.get("special"):
        if max_n < 2 or virtual_dim(residual) < 0:
            raise CertificateError("claimed speciality without a valid witness")
        for i in range(len(curves)):
            for j in range(i + 1, len(curves)):
                if intersect(curves[i], curves[j]) != 0:
                    raise CertificateError("witness curves are not disjoint")
    return ell


def _check_degeneration(node: dict, system: LinearSystem, replay_oracle: bool) -> int:
    sys = _node_system(node, system)
    split = degenerate(sys, node["k"], node["b"])
    if node["b"] >= len(sys.tail):
        raise CertificateError("degeneration needs b < n")
    expect = {"plane": split.plane, "ruled": split.ruled,
              "plane_kernel": split.plane_kernel, "ruled_kernel": split.ruled_kernel}
    children = node["children"]
    ells: dict[str, int] = {}
    status: dict[str, str] = {}
    for name, want in expect.items():
        child = children[name]
        if parse_system(child["system"]).normalize() != want.normalize():
            raise CertificateError(f"degeneration child {name} is about the wrong system")
        check_certificate(child, replay_oracle)
        ells[name] = child["ell"]
        status[name] = child["status"]
    v = virtual_dim(sys)
    if status["plane"] not in (REGULAR, EMPTY) or status["ruled"] not in (REGULAR, EMPTY):
        raise CertificateError("restrictions must be certified non-special")
    if node["rule"] == "empty":
        if v > -1:
            raise CertificateError("emptiness rule needs v <= -1")
        if status["plane_kernel"] != EMPTY or status["ruled_kernel"] != EMPTY:
            raise CertificateError("emptiness rule needs empty kernels")
        if split.v_plane_kernel > v:
            raise CertificateError("emptiness rule needs v(plane_kernel) <= v")
        if node["ell"] != -1:
            raise CertificateError("emptiness rule proves ell = -1")
        return -1
    if node["rule"] == "nonspecial":
        if v < -1:
            raise CertificateError("non-speciality rule needs v >= -1")
        if split.v_plane < -1 or split.v_ruled < -1:
            raise CertificateError("non-speciality rule needs restriction v >= -1")
        if ells["plane_kernel"] + ells["ruled_kernel"] > v - 1:
            raise CertificateError("kernels too large for the non-speciality rule")
        if node["ell"] != expected_dim(sys):
            raise CertificateError("non-speciality rule proves ell = expected")
        return node["ell"]
    raise CertificateError(f"unknown degeneration rule {node['rule']!r}")
