"""
SudokuDuality - primal/dual constraint models for generalized Sudoku
Solve puzzles, convert between boards and sign certificates, verify duality
"""
import argparse
import logging
import sys
from pathlib import Path

from core.duality import describe_primalization, gap_report, primal_to_dual
from core.errors import CapabilityError, DomainError, PuzzleParseError
from core.pairdiff import GroupSystem, diagonal_perm, dump_matrix
from core.problems import (
    Verdict,
    check_primal_feasible,
    default_perms,
    dual_objective,
    is_dual_feasible,
    is_dual_solution,
    is_primal_solution,
    primal_objective,
)
from solvers.descent import solve
from solvers.ledger import DEFAULT_SEED, verify_sign_identity, verify_theorems
from solvers.oracle import UNSOLVABLE, exact_dual_value, exact_primal_value
from utils.file_detection import detect_type, is_board_format
from utils.file_formats import emit_certificate, format_board, parse_certificate, parse_puzzle
from utils.normalize import normalize_feasibility, normalize_gap_report, normalize_solve_report
from utils.text_writer import generate_output_filename, save_report

logger = logging.getLogger("sudoku_duality")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


class UsageError(Exception):
    """Bad input that should exit with the usage code."""


class DualityApp:
    """Runs one subcommand and returns its exit code."""

    def __init__(self, args, out=None):
        self.args = args
        self.out = out if out is not None else sys.stdout

    def run(self):
        handler = getattr(self, "cmd_" + self.args.command.replace("-", "_"))
        try:
            return handler()
        except (PuzzleParseError, UsageError, CapabilityError) as e:
            logger.error("%s", e)
            return EXIT_USAGE
        except OSError as e:
            logger.error("cannot read input: %s", e)
            return EXIT_USAGE

    # Input helpers

    def read_text(self, path):
        return Path(path).read_text(encoding="utf-8")

    def load_puzzle(self, path):
        text = self.read_text(path)
        if not is_board_format(detect_type(text)):
            raise UsageError(f"{path}: not a puzzle file")
        return parse_puzzle(text)

    def load_certificate(self, path, n):
        text = self.read_text(path)
        if detect_type(text) != "certificate":
            raise UsageError(f"{path}: not a certificate file")
        return parse_certificate(text, n)

    def emit(self, text):
        print(text, file=self.out)
        output = getattr(self.args, "output", None)
        if output:
            save_report(text, output)

    # Subcommands

    def cmd_solve(self):
        inst, _ = self.load_puzzle(self.args.puzzle)
        if self.args.save and not self.args.output:
            self.args.output = generate_output_filename(self.args.puzzle, "solution")

        result = solve(inst)
        if result is Verdict.INFEASIBLE:
            logger.error("givens conflict, the primal feasible set is empty")
            print(Verdict.INFEASIBLE.value, file=self.out)
            return EXIT_INFEASIBLE

        if result.note:
            logger.info("%s", result.note)
        self.emit(normalize_solve_report(result, inst.n, show_trace=self.args.trace))
        return EXIT_OK

    def cmd_check_primal(self):
        inst, _ = self.load_puzzle(self.args.puzzle)
        board_inst, board = self.load_puzzle(self.args.board)
        if board_inst.n != inst.n:
            raise UsageError(f"board has n={board_inst.n}, puzzle has n={inst.n}")

        report = check_primal_feasible(inst, board)
        solved = is_primal_solution(inst, board)
        if not report:
            logger.warning("%s", normalize_feasibility(report))
        self.emit("\n".join([
            f"primal_feasible={str(report.feasible).lower()}",
            f"primal_objective={primal_objective(inst, board)}",
            f"solution={str(solved).lower()}",
        ]))
        return EXIT_OK if solved else EXIT_FALSE

    def cmd_check_dual(self):
        inst, _ = self.load_puzzle(self.args.puzzle)
        cert = self.load_certificate(self.args.certificate, inst.n)

        solved = is_dual_solution(inst, cert)
        self.emit("\n".join([
            f"dual_feasible={str(is_dual_feasible(inst, cert)).lower()}",
            f"dual_objective={dual_objective(inst, cert)}",
            f"solution={str(solved).lower()}",
        ]))
        return EXIT_OK if solved else EXIT_FALSE

    def cmd_dualize(self):
        inst, board = self.load_puzzle(self.args.puzzle)
        try:
            cert = primal_to_dual(inst, board)
        except DomainError as e:
            logger.error("cannot dualize: %s", e)
            return EXIT_FALSE
        if not is_primal_solution(inst, board):
            logger.warning("board is not a primal solution; certificate need not solve the dual")
        self.emit(emit_certificate(cert))
        return EXIT_OK

    def cmd_primalize(self):
        inst, _ = self.load_puzzle(self.args.puzzle)
        cert = self.load_certificate(self.args.certificate, inst.n)

        report = describe_primalization(inst, cert)
        logger.info(
            "dual_feasible=%s in_range=%s solves_primal=%s",
            report.dual_feasible, report.in_range, report.solves_primal,
        )
        self.emit(format_board(report.board, inst.n))
        return EXIT_OK if report.solves_primal else EXIT_FALSE

    def cmd_gap(self):
        inst, _ = self.load_puzzle(self.args.puzzle)
        primal = exact_primal_value(inst)
        dual = exact_dual_value(inst)
        report = gap_report(primal, dual)
        self.emit(normalize_gap_report(report))
        if primal is UNSOLVABLE or dual is UNSOLVABLE:
            return EXIT_INFEASIBLE
        return EXIT_OK

    def cmd_verify(self):
        if self.args.sign_identity:
            ledger = verify_sign_identity()
        elif self.args.n is None:
            raise UsageError("verify needs --n or --sign-identity")
        else:
            ledger = verify_theorems(
                self.args.n,
                pi3=self.args.pi3,
                seed=self.args.seed,
                instance_count=self.args.instances,
                samples=self.args.samples,
            )
        self.emit(ledger.to_text())
        return EXIT_OK if ledger.passed else EXIT_FALSE

    def cmd_dump_matrix(self):
        n = self.args.n
        if n < 2:
            raise UsageError(f"--n must be >= 2, got {n}")
        perms = default_perms(n)
        perm = perms[self.args.perm - 1]
        if perm is None:
            if self.args.pi3 != "diagonal":
                raise UsageError(f"n={n} has no blocks; pass --pi3 diagonal")
            perm = diagonal_perm(n)
        self.emit(dump_matrix(GroupSystem(n, perm)))
        return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sudoku-duality",
        description="Primal and dual constraint models for generalized Sudoku",
    )
    parser.add_argument("--verbose", action="store_true", help="Enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="Minimize empty cells by f_P descent")
    p.add_argument("puzzle")
    p.add_argument("--trace", action="store_true", help="Print every descent step")
    p.add_argument("-o", "--output", help="Also write the report to this file")
    p.add_argument("--save", action="store_true", help="Write the report next to the puzzle")

    p = sub.add_parser("check-primal", help="Check a board against a puzzle")
    p.add_argument("puzzle")
    p.add_argument("board")

    p = sub.add_parser("check-dual", help="Check a certificate against a puzzle")
    p.add_argument("puzzle")
    p.add_argument("certificate")

    p = sub.add_parser("dualize", help="Sign certificate of a complete board")
    p.add_argument("puzzle")

    p = sub.add_parser("primalize", help="Board recovered from a certificate")
    p.add_argument("puzzle")
    p.add_argument("certificate")

    p = sub.add_parser("gap", help="Exact optimal values and duality gap (n <= 4)")
    p.add_argument("puzzle")
    p.add_argument("-o", "--output", help="Also write the report to this file")

    p = sub.add_parser("verify", help="Verify the duality properties")
    p.add_argument("--n", type=int, choices=(2, 3, 4))
    p.add_argument("--sign-identity", action="store_true", help="Check the sign identity for n = 1..6")
    p.add_argument("--pi3", choices=("standard", "rows", "diagonal", "random"), default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--instances", type=int, default=12, help="Sampled instances for n > 2")
    p.add_argument("--samples", type=int, default=2000, help="Random samples at n = 4")
    p.add_argument("-o", "--output", help="Also write the ledger to this file")

    p = sub.add_parser("dump-matrix", help="Print A_pi densely")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--perm", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--pi3", choices=("diagonal",), default=None, help="Third family for non-square n")

    return parser


def main(argv=None, out=None):
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    return DualityApp(args, out=out).run()


if __name__ == "__main__":
    sys.exit(main())
