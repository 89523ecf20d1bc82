"""Exhaustive and sampled verification of the duality properties.

Each property is recorded under a descriptive id:

    kernel-of-ones              A_pi 1 = 0 for all three families
    score-bound                 |[A_pi^T lam]_i| <= n - 1
    score-parity                A_pi^T lam + (n + 1) is even
    adjointness                 <A_pi x, lam> = <x, A_pi^T lam>
    sign-identity               A(n)^T sgn(A(n) p) + (n + 1) = 2p
    dual-from-primal-feasible   valid complete board -> its sign certificate is dual feasible
    dual-feasible-iff-distinct  lam dual feasible <-> its board repeats no value in a group
    dual-board-in-range         dual feasible lam -> board cells in 1..n
    primal-to-dual-solves       primal solution -> sign certificate solves the dual
    dual-to-primal-solves       dual solution -> its board solves the primal
    roundtrip-primal            board -> certificate -> same board
    roundtrip-dual              dual feasible certificate -> board -> same certificate
    primal-optimum-equivalence  primal solution <-> optimal with value 0
    dual-optimum-equivalence    dual solution <-> optimal with value 0
    weak-duality                dual objective <= 0 <= primal objective
    equal-objectives-vanish     equal primal and dual objectives are both 0
    strong-duality              no gap <-> complete optimum <-> given-matching dual optimum
    solver-agreement            solver optimum equals the oracle optimum
    solver-certificate          a complete solver board yields a dual solution
    descent-trace               solver trace is feasible and strictly descending
    dual-enumeration            per-group dual enumeration equals raw enumeration
    empty-dual-third-family     a third family found by search has no dual feasible certificate
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

import numpy as np

from core.duality import dual_to_primal, primal_to_dual
from core.errors import CapabilityError
from core.pairdiff import (
    Permutation,
    all_nonzero,
    diagonal_perm,
    pair_apply,
    pair_apply_transpose,
    sgn_vec,
    triangular_size,
)
from core.problems import (
    DualCertificate,
    Verdict,
    default_perms,
    dual_objective,
    is_dual_feasible,
    is_dual_solution,
    is_primal_feasible,
    is_primal_solution,
    make_primal,
    primal_objective,
)
from solvers.descent import SolveResult, solve
from solvers.oracle import (
    UNSOLVABLE,
    complete_feasible_boards,
    dual_feasible_set,
    dual_optimum,
    enumerate_boards,
    enumerate_certificates,
    find_empty_dual_pi3,
    primal_optimum,
)

logger = logging.getLogger(__name__)

DEFAULT_SEED = 20240917
MAX_STORED_COUNTEREXAMPLES = 5


@dataclass
class TheoremEntry:
    checked: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self):
        return self.failed == 0


class VerificationLedger:
    """Pass/fail counts per property, with replayable counterexamples."""

    def __init__(self, n=None, seed=None):
        self.n = n
        self.seed = seed
        self.entries = {}

    def check(self, theorem, ok, **payload):
        """Record one check; a failure keeps its payload as counterexample."""
        entry = self.entries.setdefault(theorem, TheoremEntry())
        entry.checked += 1
        if not ok:
            entry.failed += 1
            if len(entry.counterexamples) < MAX_STORED_COUNTEREXAMPLES:
                entry.counterexamples.append(dict(payload))
            logger.warning("%s failed: %s", theorem, payload)
        return ok

    @property
    def passed(self):
        return all(entry.passed for entry in self.entries.values())

    def failures(self):
        return {name: entry for name, entry in self.entries.items() if not entry.passed}

    def to_text(self):
        """Line-oriented report: one THEOREM line per property, then counterexamples."""
        lines = []
        if self.n is not None or self.seed is not None:
            lines.append(f"# n={self.n} seed={self.seed}")
        for name, entry in self.entries.items():
            status = "PASS" if entry.passed else "FAIL"
            lines.append(f"THEOREM {name} {status} checked={entry.checked}")
        for name, entry in self.entries.items():
            for example in entry.counterexamples:
                lines.append(f"COUNTEREXAMPLE {name}")
                for key, value in example.items():
                    lines.append(f"  {key}={value}")
                lines.append("END")
        return "\n".join(lines)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _perms_for(n, pi3, rng):
    rows, columns, blocks = default_perms(n)
    if isinstance(pi3, Permutation):
        return rows, columns, pi3
    if pi3 is None or pi3 == "standard":
        if blocks is not None:
            return rows, columns, blocks
        pi3 = "diagonal"
    if pi3 == "rows":
        return rows, columns, rows
    if pi3 == "diagonal":
        return rows, columns, diagonal_perm(n)
    if pi3 == "random":
        return rows, columns, Permutation(tuple(rng.permutation(n * n).tolist()))
    raise ValueError(f"unknown third permutation choice {pi3!r}")


def crafted_gap_instance():
    """
    A 4 x 4 instance with pairwise consistent givens and no completion.

    Cell 0 sees 1 and 2 in its row, 3 in its block and 4 in its column, so
    it can never be filled.
    """
    return make_primal(4, givens=[(1, 1), (2, 2), (4, 3), (8, 4)])


def default_instances(base, rng, count):
    """All given-sets of size <= 2 at n = 2; seeded samples otherwise."""
    n, size = base.n, base.n_cells
    if n == 2:
        family = []
        for k in range(3):
            for cells in combinations(range(size), k):
                for values in product(range(1, n + 1), repeat=k):
                    family.append(make_primal(n, base.perms, list(zip(cells, values))))
        return family

    family = [make_primal(n, base.perms)]
    if n == 4:
        family.append(crafted_gap_instance())
    while len(family) < count:
        k = int(rng.integers(1, n + 2))
        cells = rng.choice(size, size=k, replace=False).tolist()
        values = rng.integers(1, n + 1, size=k).tolist()
        family.append(make_primal(n, base.perms, list(zip(cells, values))))
    return family


def verify_sign_identity(ns=range(1, 7), sign_fn=sgn_vec, ledger=None):
    """A(n)^T sgn(A(n) p) + (n + 1) = 2p for every permutation p of 1..n."""
    ledger = ledger if ledger is not None else VerificationLedger()
    for n in ns:
        for p in permutations(range(1, n + 1)):
            signs = sign_fn(pair_apply(p))
            scores = pair_apply_transpose(n, signs)
            ok = all(s + n + 1 == 2 * v for s, v in zip(scores, p))
            ledger.check("sign-identity", ok, n=n, permutation=p, scores=scores)
    return ledger


def _check_operators(ledger, base, certs, rng):
    n, size = base.n, base.n_cells
    ones = (1,) * size
    for family, system in enumerate(base.systems):
        ledger.check("kernel-of-ones", all(v == 0 for v in system.apply(ones)), family=family)
        for cert in certs:
            scores = system.apply_transpose(cert.lam)
            ledger.check(
                "score-bound", all(abs(s) <= n - 1 for s in scores),
                family=family, certificate=cert.lam, scores=scores,
            )
            ledger.check(
                "score-parity", all((s + n + 1) % 2 == 0 for s in scores),
                family=family, certificate=cert.lam, scores=scores,
            )
        for cert in certs[:64]:
            x = tuple(rng.integers(-n, n + 1, size=size).tolist())
            lhs = _dot(system.apply(x), cert.lam)
            rhs = _dot(x, system.apply_transpose(cert.lam))
            ledger.check("adjointness", lhs == rhs, family=family, x=x, certificate=cert.lam)


def _distinct_everywhere(inst, board):
    return all(all_nonzero(system.apply(board)) for system in inst.systems)


def _check_primal_side(ledger, base, boards, instances, sign_fn):
    """Properties starting from complete boards."""
    valid = []
    for board in boards:
        differences = base.systems[0].apply(board)
        if not all_nonzero(differences):
            continue
        if not _distinct_everywhere(base, board):
            continue
        valid.append(board)
        cert = DualCertificate(base.n, sign_fn(differences))
        ledger.check("dual-from-primal-feasible", is_dual_feasible(base, cert), board=board)
        back = dual_to_primal(base, cert)
        ledger.check("roundtrip-primal", back == board, board=board, certificate=cert.lam, back=back)

    for inst in instances:
        for board in valid:
            if is_primal_solution(inst, board):
                cert = primal_to_dual(inst, board)
                ledger.check(
                    "primal-to-dual-solves", is_dual_solution(inst, cert),
                    givens=inst.givens, board=board,
                )
    return valid


def _check_dual_side(ledger, base, certs, instances):
    """Properties starting from certificates."""
    n = base.n
    for cert in certs:
        board = dual_to_primal(base, cert)
        feasible = is_dual_feasible(base, cert)
        ledger.check(
            "dual-feasible-iff-distinct", feasible == _distinct_everywhere(base, board),
            certificate=cert.lam, board=board,
        )
        if not feasible:
            continue
        ledger.check(
            "dual-board-in-range", all(1 <= v <= n for v in board),
            certificate=cert.lam, board=board,
        )
        again = primal_to_dual(base, board)
        ledger.check("roundtrip-dual", again == cert, certificate=cert.lam, back=again.lam)
        for inst in instances:
            if is_dual_solution(inst, cert):
                ledger.check(
                    "dual-to-primal-solves", is_primal_solution(inst, board),
                    givens=inst.givens, certificate=cert.lam,
                )


def _check_optimization(ledger, inst, points, valid_boards, certs):
    """
    Optimal values, weak/strong duality and solver agreement for one instance.

    points are the boards tested against the primal (the witness is added),
    certs the certificates tested against the dual; valid_boards are the
    complete boards feasible for inst.
    """
    n = inst.n
    primal = primal_optimum(inst)
    dual = dual_optimum(inst)
    vp = primal if primal is UNSOLVABLE else primal.value
    vd = dual if dual is UNSOLVABLE else dual.value
    givens = inst.givens

    boards = list(points)
    if primal is not UNSOLVABLE:
        boards.append(primal.witness)
    feasible = [is_primal_feasible(inst, b) for b in boards]
    primal_points = [b for b, ok in zip(boards, feasible) if ok]

    for board, ok in zip(boards, feasible):
        expected = ok and primal_objective(inst, board) == vp and vp == 0
        ledger.check(
            "primal-optimum-equivalence", is_primal_solution(inst, board) == expected,
            givens=givens, board=board, primal_value=vp,
        )
    for cert in certs:
        expected = is_dual_feasible(inst, cert) and dual_objective(inst, cert) == vd and vd == 0
        ledger.check(
            "dual-optimum-equivalence", is_dual_solution(inst, cert) == expected,
            givens=givens, certificate=cert.lam, dual_value=vd,
        )

    dual_values = {
        cert.lam: dual_objective(inst, cert) for cert in certs if is_dual_feasible(inst, cert)
    }
    for board in primal_points:
        ledger.check("weak-duality", primal_objective(inst, board) >= 0, givens=givens, board=board)
    for lam, value in dual_values.items():
        ledger.check("weak-duality", value <= 0, givens=givens, certificate=lam)

    if n == 2:
        for board in primal_points:
            fp = primal_objective(inst, board)
            for lam, fd in dual_values.items():
                if fp == fd:
                    ledger.check(
                        "equal-objectives-vanish", fp == 0 and vp == 0 and vd == 0,
                        givens=givens, board=board, certificate=lam,
                    )
    elif vp is not UNSOLVABLE:
        for lam, fd in dual_values.items():
            if fd == vp:
                ledger.check(
                    "equal-objectives-vanish", fd == 0 and vd == 0,
                    givens=givens, board=primal.witness, certificate=lam,
                )

    if vp is not UNSOLVABLE and vd is not UNSOLVABLE:
        no_gap = vp == vd
        complete_optimum = any(is_primal_solution(inst, b) for b in valid_boards)
        matching_dual = any(value == 0 for value in dual_values.values())
        ledger.check(
            "strong-duality", no_gap == complete_optimum == matching_dual,
            givens=givens, primal_value=vp, dual_value=vd,
        )

    result = solve(inst)
    if vp is UNSOLVABLE:
        ledger.check("solver-agreement", result is Verdict.INFEASIBLE, givens=givens, solver=result)
        return
    if not isinstance(result, SolveResult):
        ledger.check("solver-agreement", False, givens=givens, solver=result, primal_value=vp)
        return
    ledger.check(
        "solver-agreement",
        result.primal_value == vp and is_primal_feasible(inst, result.board),
        givens=givens, solver_value=result.primal_value, primal_value=vp, board=result.board,
    )
    trace = result.trace
    ledger.check(
        "descent-trace",
        trace.is_descending()
        and all(is_primal_feasible(inst, b) for b in trace.boards)
        and trace.boards[-1] == result.board,
        givens=givens, values=trace.values,
    )
    if result.primal_value == 0:
        cert = primal_to_dual(inst, result.board)
        ledger.check(
            "solver-certificate",
            is_dual_feasible(inst, cert) and dual_objective(inst, cert) == 0,
            givens=givens, board=result.board,
        )


def verify_theorems(n, pi3=None, instances=None, *, seed=DEFAULT_SEED,
                    instance_count=12, samples=2000, sign_fn=sgn_vec):
    """
    Verify every duality property for one board size.

    n = 2 and n = 3 enumerate every complete board and every certificate;
    n = 4 uses all complete feasible boards plus seeded random samples.

    Args:
        n: Board size, 2..4
        pi3: Permutation, or "standard" / "rows" / "diagonal" / "random";
            None picks blocks for square n, rows for n = 2, diagonals for n = 3
        instances: Given-sets to sweep; None uses default_instances()
        seed: Seed for every random choice, recorded in the ledger
        instance_count: Number of sampled instances when n > 2
        samples: Random boards / certificates added at n = 4
        sign_fn: Sign function under test (swap in a faulty one to self-test)

    Returns:
        VerificationLedger
    """
    if n not in (2, 3, 4):
        raise CapabilityError(f"verification supports n in 2..4, got {n}")
    rng = np.random.default_rng(seed)
    perms = _perms_for(n, pi3, rng)
    base = make_primal(n, perms)
    if instances is None:
        instances = default_instances(base, rng, instance_count)
    ledger = VerificationLedger(n=n, seed=seed)
    logger.info("verifying n=%d over %d instances", n, len(instances))

    if n <= 3:
        boards = list(enumerate_boards(n, complete=True))
        all_certs = list(enumerate_certificates(n))
    else:
        boards = complete_feasible_boards(base)
        dual_set = dual_feasible_set(n, base.perms)
        boards += [tuple(row) for row in rng.integers(1, n + 1, size=(samples // 4, n * n)).tolist()]
        width = n * triangular_size(n)
        random_lams = rng.choice((-1, 1), size=(samples, width)).tolist()
        all_certs = list(dual_set) + [DualCertificate(n, tuple(lam)) for lam in random_lams]

    _check_operators(ledger, base, all_certs, rng)
    verify_sign_identity([n], sign_fn=sign_fn, ledger=ledger)
    valid = _check_primal_side(ledger, base, boards, instances, sign_fn)
    _check_dual_side(ledger, base, all_certs, instances)
    # Every extended board at n = 2, the complete boards otherwise
    points = list(enumerate_boards(n)) if n == 2 else boards
    for inst in instances:
        _check_optimization(ledger, inst, points,
                            [b for b in valid if is_primal_feasible(inst, b)], all_certs)

    if n <= 3:
        raw = dual_feasible_set(n, base.perms, "raw")
        grouped = dual_feasible_set(n, base.perms, "per_group")
        ledger.check(
            "dual-enumeration", raw == grouped,
            raw_count=len(raw), per_group_count=len(grouped),
        )
        rows, columns, _ = default_perms(n)
        empty = find_empty_dual_pi3(n, seed=seed)
        if empty is None:
            logger.info("no third family with an empty dual feasible set found for n=%d", n)
        ledger.check(
            "empty-dual-third-family",
            empty is None or dual_feasible_set(n, (rows, columns, empty), "raw") == (),
            pi3=None if empty is None else empty.to_one_based(),
        )

    logger.info("verification for n=%d %s", n, "passed" if ledger.passed else "FAILED")
    return ledger
