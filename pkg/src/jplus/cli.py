"""Command-line front end.

Every command prints a human block followed by a machine block of
``key<TAB>value`` lines; ``--machine`` prints only the latter. The exit status
is 0 exactly when the report ends in ``status ok``.
"""

from __future__ import annotations

import argparse
import hashlib
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from .coeffs import ALL, EMPTY, FINITE, AbelianInvariants, JSet
from .errors import JPlusError, OracleDisagreement, ParseError
from .fingroup import (
    abelianization, brute_force_radical, gamma_radical, generating_set, quotient,
)
from .gamma import check_witness, schema_homology, schema_presentation, witnessed_subgroup
from .linalg import IntMatrix, gcd_minors, smith_normal_form
from .presentations import Certificate, check_certificate, homology, is_r_perfect_presentation
from .words import IDENTITY, Word, conjugate, invert

EMPTY_J = JSet.empty()
EXIT_CODES = {"PARSE": 2, "IO": 3, "CAP": 4, "GUARD": 4, "CERT": 1, "WITNESS": 1, "ORACLE": 1}


@dataclass
class Report:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    records: list[tuple[str, str]] = field(default_factory=list)
    human: list[str] = field(default_factory=list)
    code: str | None = None
    message: str = ""

    def add_input(self, path: str, data: bytes | None = None):
        digest = "sha256:" + hashlib.sha256(data).hexdigest() if data is not None else "-"
        self.inputs.append((path, digest))

    def put(self, key: str, value, human: str | None = None):
        self.records.append((key, str(value)))
        if human is not None:
            self.human.append(human)

    def fail(self, code: str, message: str):
        self.code, self.message = code, message

    @property
    def exit_code(self) -> int:
        return 0 if self.code is None else EXIT_CODES.get(self.code, 1)

    def render(self, machine_only: bool = False) -> str:
        lines = []
        if not machine_only:
            lines.append(f"== {self.command} " + " ".join(p for p, _ in self.inputs))
            lines += [f"  {h}" for h in self.human]
            if self.code:
                lines.append(f"  error [{self.code}]: {self.message}")
        lines.append(f"command\t{self.command}")
        lines += [f"input\t{p} {d}" for p, d in self.inputs]
        lines += [f"{k}\t{v}" for k, v in self.records]
        if self.code is None:
            lines.append("status\tok")
        else:
            lines += ["status\terror", f"code\t{self.code}", f"message\t{self.message}"]
        return "\n".join(lines) + "\n"


def _read(report: Report, path: str) -> str:
    data = Path(path).read_bytes()
    report.add_input(path, data)
    return data.decode()


def ring_name(J: JSet) -> str:
    if J.mode == EMPTY:
        return "Z"
    if J.mode == ALL:
        return "Q"
    if J.mode == FINITE:
        return "Z[" + ",".join(f"1/{p}" for p in J.primes) + "]"
    return f"Z[J^-1] with J = {J}"


def torsion_field(a: AbelianInvariants) -> str:
    return ",".join(map(str, a.torsion)) or "0"


def _put_homology(rep: Report, H1: AbelianInvariants, H2_rank: int, J: JSet, H0_rank: int = 1):
    R = ring_name(J)
    rep.put("H0_rank", H0_rank, f"H0 = {R}")
    rep.put("H1", torsion_field(H1), f"H1 = {_display(H1, R)}")
    rep.put("H1_rank", H1.free_rank)
    rep.put("H2_rank", H2_rank, f"H2 = {R}^{H2_rank}" if H2_rank else "H2 = 0")


def _display(a: AbelianInvariants, R: str) -> str:
    parts = [f"Z/{d}" for d in a.torsion]
    if a.free_rank:
        parts.insert(0, R if a.free_rank == 1 else f"{R}^{a.free_rank}")
    return " + ".join(parts) or "0"


# ---- commands ---------------------------------------------------------------

def run_homology(path: str, J: JSet) -> Report:
    rep = Report("homology")
    P = formats.parse_grp(_read(rep, path))
    rep.put("group", P.name)
    rep.put("invert", J)
    h = homology(P, J)
    _put_homology(rep, h.H1, h.H2_rank, J)
    perfect = is_r_perfect_presentation(P, J)
    rep.put("r_perfect", str(perfect).lower(), f"{ring_name(J)}-perfect: {'yes' if perfect else 'no'}")
    return rep


def run_schema(path: str, J: JSet, mode: str) -> Report:
    rep = Report(f"schema {mode}")
    t = formats.parse_tree(_read(rep, path))
    rep.put("invert", J)
    rep.put("tree", formats.format_tree(t))
    try:
        P = schema_presentation(t, J, name=Path(path).stem)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if mode == "present":
        rep.put("gens", " ".join(P.gens), "< " + ", ".join(P.gens) + " |")
        for i, rho in enumerate(P.relators, start=1):
            rep.put(f"relator.{i}", rho, f"    {rho}")
        rep.human.append(">")
    else:
        # integral homology of the Moore complex; the ambient J only constrains r
        H1, H2_rank = schema_homology(t, J, EMPTY_J)
        _put_homology(rep, H1, H2_rank, EMPTY_J)
        local = schema_homology(t, J)[0]
        rep.put("H1_local", torsion_field(local), f"H1 with {ring_name(J)} coefficients = "
                + _display(local, ring_name(J)))
        rep.put("H1_local_rank", local.free_rank)
        perfect = local.is_trivial
        rep.put("r_perfect", str(perfect).lower(), f"{ring_name(J)}-perfect: {'yes' if perfect else 'no'}")
    return rep


def _load_perm(rep: Report, path: str):
    spec = formats.parse_perm(_read(rep, path))
    return spec, formats.perm_group(spec, name=Path(path).stem)


def run_radical(path: str, J: JSet, oracle: bool, quotient_only: bool = False) -> Report:
    rep = Report("plus" if quotient_only else "radical")
    _, G = _load_perm(rep, path)
    rep.put("group", G.name)
    rep.put("invert", J)
    rep.put("order", G.order)
    R = gamma_radical(G, J)
    if not quotient_only:
        gens = "; ".join(G.labels[g] for g in generating_set(G, R)) or "()"
        rep.put("radical_order", R.order, f"radical: order {R.order}, generated by {gens}")
        rep.put("radical_generators", gens)
    Q = quotient(G, R).group
    qab = abelianization(Q)
    rep.put("quotient_order", Q.order, f"nullification: order {Q.order}, abelianization {qab}")
    rep.put("quotient_invariants", torsion_field(qab))
    if oracle and not quotient_only:
        B = brute_force_radical(G, J)
        W = witnessed_subgroup(G, J)
        agree = R.members == B.members == W.members
        rep.put("brute_force_order", B.order)
        rep.put("witnessed_order", W.order)
        rep.put("agreement", str(agree).lower(),
                f"oracles: lattice {B.order}, witnessed {W.order} ({'agree' if agree else 'DISAGREE'})")
        if not agree:
            raise OracleDisagreement("radical computations disagree")
    return rep


def _conjugators(gens, max_len: int):
    """All freely reduced words of letter length <= max_len, shortest first."""
    out = [IDENTITY]
    level = [IDENTITY]
    letters = [Word.gen(g, e) for g in gens for e in (1, -1)]
    for _ in range(max_len):
        nxt = []
        for w in level:
            for a in letters:
                v = w * a
                if len(v) == len(w) + 1:
                    nxt.append(v)
        out += nxt
        level = nxt
    return out


def search_certificate(P, claim: Word, max_steps: int, max_conj: int, budget: int):
    """Bounded search for a certificate of ``claim``; None when the budget runs out.

    Products of up to ``max_steps - 1`` conjugated relators are enumerated
    breadth-first and the last step is looked up in a table of single steps.
    """
    if claim == IDENTITY:
        return Certificate(claim)
    singles = {}
    for c in _conjugators(P.gens, max_conj):
        for k, rho in enumerate(P.relators):
            for sign in (1, -1):
                w = conjugate(rho if sign == 1 else invert(rho), c)
                singles.setdefault(w, (c, k, sign))
    level = {IDENTITY: ()}
    spent = 0
    for depth in range(1, max_steps + 1):
        for prod, steps in level.items():
            spent += 1
            if spent > budget:
                return None
            last = singles.get(invert(prod) * claim)
            if last is not None:
                return Certificate(claim, steps + (last,))
        if depth == max_steps:
            break
        nxt = {}
        for prod, steps in level.items():
            for w, step in singles.items():
                spent += 1
                if spent > budget:
                    return None
                nxt.setdefault(prod * w, steps + (step,))
        level = nxt
    return None


def run_certify(grp: str, cert: str, search: tuple[int, int, int] | None = None) -> Report:
    rep = Report("certify")
    P = formats.parse_grp(_read(rep, grp))
    C = formats.parse_cert(_read(rep, cert))
    rep.put("group", P.name)
    rep.put("claim", C.claim)
    rep.put("steps", len(C.steps))
    ok = check_certificate(P, C)
    rep.put("verified", str(ok).lower(), f"{C.claim} = 1: {'verified' if ok else 'certificate fails'}")
    if not ok and search is not None:
        max_steps, max_conj, budget = search
        found = search_certificate(P, C.claim, max_steps, max_conj, budget)
        rep.put("search", "found" if found else "exhausted",
                f"search (steps <= {max_steps}, conjugators <= {max_conj}, budget {budget}): "
                + ("found" if found else "nothing found"))
        if found is not None:
            text = formats.format_cert(found)
            for i, line in enumerate(text.splitlines(), start=1):
                rep.put(f"found.{i}", line, f"    {line}")
            return rep
    if not ok:
        rep.fail("CERT", "certificate does not multiply out to its claim")
    return rep


def run_witness(target: str, wit: str, J: JSet) -> Report:
    rep = Report("witness")
    names = None
    if target.endswith(".perm"):
        spec, T = _load_perm(rep, target)
        names = formats.perm_generator_names(spec, T)
    else:
        T = formats.parse_grp(_read(rep, target))
    W = formats.parse_wit(_read(rep, wit))
    graph = formats.resolve_witness(W, T, Path(wit).parent, names)
    rep.put("target", T.name)
    rep.put("invert", J)
    rep.put("nodes", len(graph.nodes))
    rep.put("root", graph.root)
    ok = check_witness(T, graph, J)
    rep.put("valid", str(ok).lower(), f"witness graph with {len(graph.nodes)} nodes: {'valid' if ok else 'INVALID'}")
    if not ok:
        rep.fail("WITNESS", "some node relation fails or an r is not a J-number")
    return rep


def _snf_check(M: IntMatrix) -> tuple[tuple[int, ...], bool, bool | None]:
    res = smith_normal_form(M)
    back = (res.U @ M @ res.V).entries == IntMatrix.diag(res.d, M.rows, M.cols).entries
    try:
        agree = gcd_minors(M) == res.nonzero
    except JPlusError:
        agree = None
    return res.d, back, agree


def run_oracle_snf(path: str) -> Report:
    rep = Report("oracle snf")
    M = formats.parse_matrix(_read(rep, path))
    d, back, agree = _snf_check(M)
    rep.put("shape", f"{M.rows}x{M.cols}")
    rep.put("factors", ",".join(map(str, d)) or "-", f"invariant factors: {list(d)}")
    rep.put("multiply_back", str(back).lower())
    rep.put("agreement", "skipped" if agree is None else str(agree).lower(),
            f"gcd-of-minors oracle: {'skipped' if agree is None else ('agrees' if agree else 'DISAGREES')}")
    if not back or agree is False:
        raise OracleDisagreement("SNF failed its checks")
    return rep


def run_oracle_random(count: int, seed: int, max_size: int, bound: int) -> Report:
    rep = Report("oracle snf")
    rep.inputs.append((f"random:count={count},seed={seed},max_size={max_size},bound={bound}", "-"))
    rng = random.Random(seed)
    agree_all = back_all = True
    for _ in range(count):
        m, n = rng.randint(1, max_size), rng.randint(1, max_size)
        M = IntMatrix(m, n, tuple(rng.randint(-bound, bound) for _ in range(m * n)))
        _, back, agree = _snf_check(M)
        back_all &= back
        agree_all &= bool(agree)
    rep.put("matrices", count)
    rep.put("multiply_back", str(back_all).lower())
    rep.put("agreement", str(agree_all).lower(),
            f"{count} random matrices: {'all agree' if agree_all and back_all else 'DISAGREEMENT'}")
    if not (agree_all and back_all):
        raise OracleDisagreement("SNF and gcd-of-minors disagree")
    return rep


# ---- dispatch ---------------------------------------------------------------

def _guarded(command: str, fn, *args) -> Report:
    try:
        return fn(*args)
    except (OSError, JPlusError) as exc:
        rep = Report(command)
        for a in args:
            if isinstance(a, str) and Path(a).suffix:
                rep.add_input(a)
        if isinstance(exc, OSError):
            rep.fail("IO", f"{exc.strerror or exc}: {exc.filename or ''}")
        else:
            rep.fail(exc.code, str(exc))
        return rep


def _task(job):
    command, fn, args = job
    return _guarded(command, fn, *args)


def _run_jobs(jobs, n_jobs: int) -> list[Report]:
    if n_jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as ex:
            return list(ex.map(_task, jobs))
    return [_task(j) for j in jobs]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--invert", default="all", metavar="JSET",
                        help="primes to invert: none, all, 2,3,7 or all-except:2,5 (default: all)")
    common.add_argument("--machine", action="store_true", help="print only the key/value block")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers across input files")

    p = argparse.ArgumentParser(prog="jplus", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("homology", parents=[common], help="homology of presentation complexes")
    s.add_argument("files", nargs="+")

    s = sub.add_parser("schema", parents=[common], help="schema tree presentations and homology")
    s.add_argument("mode", choices=["present", "homology"])
    s.add_argument("files", nargs="+")

    for name, helptext in (("radical", "J-perfect radical of a permutation group"),
                           ("plus", "nullification quotient only")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("files", nargs="+")
        s.add_argument("--oracle", action="store_true",
                       help="cross-check against the lattice and witnessed-subgroup computations")

    s = sub.add_parser("certify", parents=[common], help="verify a relator certificate")
    s.add_argument("group")
    s.add_argument("cert")
    s.add_argument("--search", action="store_true",
                   help="if the certificate fails, search for one proving the same claim")
    s.add_argument("--max-steps", type=int, default=2)
    s.add_argument("--max-conjugator", type=int, default=4, help="letter length bound")
    s.add_argument("--budget", type=int, default=200_000, help="products examined before giving up")

    s = sub.add_parser("witness", parents=[common], help="verify a witness graph")
    s.add_argument("target", help=".grp or .perm file")
    s.add_argument("witness")

    s = sub.add_parser("oracle", parents=[common], help="independent oracles")
    s.add_argument("which", choices=["snf"])
    s.add_argument("files", nargs="*")
    s.add_argument("--random", type=int, default=0, metavar="N", help="also check N random matrices")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-size", type=int, default=6)
    s.add_argument("--bound", type=int, default=10)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        J = JSet.parse(args.invert)
    except ParseError as exc:
        rep = Report(args.command)
        rep.fail("PARSE", str(exc))
        sys.stdout.write(rep.render(args.machine))
        return rep.exit_code

    cmd = args.command
    if cmd == "homology":
        jobs = [(cmd, run_homology, (f, J)) for f in args.files]
    elif cmd == "schema":
        jobs = [(f"schema {args.mode}", run_schema, (f, J, args.mode)) for f in args.files]
    elif cmd in ("radical", "plus"):
        jobs = [(cmd, run_radical, (f, J, args.oracle, cmd == "plus")) for f in args.files]
    elif cmd == "certify":
        search = (args.max_steps, args.max_conjugator, args.budget) if args.search else None
        jobs = [(cmd, run_certify, (args.group, args.cert, search))]
    elif cmd == "witness":
        jobs = [(cmd, run_witness, (args.target, args.witness, J))]
    else:
        jobs = [("oracle snf", run_oracle_snf, (f,)) for f in args.files]
        if args.random or not args.files:
            jobs.append(("oracle snf", run_oracle_random,
                         (args.random or 200, args.seed, args.max_size, args.bound)))

    reports = _run_jobs(jobs, args.jobs)
    for rep in reports:
        sys.stdout.write(rep.render(args.machine))
    return max(rep.exit_code for rep in reports)


if __name__ == "__main__":
    sys.exit(main())
