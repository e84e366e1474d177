"""Command line interface: `oikomplex <command> ...`.

Exit codes: 0 success, 1 a requested check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .complexes import OIComplexSpec, assemble_oi_complex
from .errors import OIError, ParseError
from .free_mod import FreeOIModule, morphism_from_json, morphism_to_json
from .multilinear import certify_rank_identity, sym_decompose, tensor_decompose, wedge_decompose
from .oi_algebra import AlgebraSignature
from .verify import verify_oi_complex

WMAX_LIMIT = 12
COMMANDS = ("basis", "tensor", "wedge", "sym", "koszul", "be", "verify", "identity")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    algebra: str | None = None
    phi: str | None = None
    free: str | None = None
    free2: str | None = None
    i: int = 0
    q: int = 0
    wmax: int | None = None
    trunc: int | None = None
    trials: int = 3
    seed: int = 0
    graded_degree: int | None = 2
    spec: str | None = None
    construction: str = "tensor"
    out: str | None = None
    format: str = "text"
    jobs: int = 1

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.wmax is not None and self.wmax > WMAX_LIMIT:
            raise UsageError(f"refusing --wmax {self.wmax}: widths above {WMAX_LIMIT} are not supported")
        if self.wmax is not None and self.wmax < 0:
            raise UsageError("--wmax must be non-negative")
        if self.i < 0 or self.q < 0:
            raise UsageError("--i and --q must be non-negative")
        if self.trials < 1:
            raise UsageError("--trials must be at least 1")
        if self.trunc is not None and self.trunc < 0:
            raise UsageError("--trunc must be non-negative")


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _write(path: Path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(obj), encoding="utf-8")


def _algebra(cfg: RunConfig) -> AlgebraSignature:
    if not cfg.algebra:
        raise UsageError(f"{cfg.command} needs --algebra")
    return AlgebraSignature.parse(cfg.algebra)


def _free(cfg: RunConfig, text: str | None, flag: str) -> FreeOIModule:
    if text is None:
        raise UsageError(f"{cfg.command} needs {flag}")
    return FreeOIModule.parse(_algebra(cfg), text)


def _load_phi(cfg: RunConfig):
    if not cfg.phi:
        raise UsageError(f"{cfg.command} needs --phi")
    try:
        text = Path(cfg.phi).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {cfg.phi}: {exc.strerror}") from None
    try:
        return morphism_from_json(text, _algebra(cfg) if cfg.algebra else None)
    except ParseError as exc:
        raise ParseError(f"{cfg.phi}: {exc}") from None


def _emit(cfg: RunConfig, text: str, obj, out=None):
    out = sys.stdout if out is None else out
    if cfg.format == "json":
        out.write(dump_json(obj))
    else:
        print(text, file=out)
    if cfg.out and cfg.command not in ("koszul", "be"):
        _write(Path(cfg.out), obj)


def _decomposition(cfg: RunConfig, kind: str):
    F = _free(cfg, cfg.free, "--free")
    if kind == "tensor":
        return tensor_decompose(F, _free(cfg, cfg.free2, "--free2"))
    if kind == "wedge":
        return wedge_decompose(F, cfg.i)
    if kind == "sym":
        return sym_decompose(F, cfg.q)
    raise UsageError(f"unknown construction {kind!r}")


# -- commands -------------------------------------------------------------------


def cmd_basis(cfg: RunConfig) -> int:
    F = _free(cfg, cfg.free, "--free")
    wmax = 3 if cfg.wmax is None else cfg.wmax
    data = {str(w): [str(k) for k in F.basis_at_width(w)] for w in range(wmax + 1)}
    text = "\n".join(f"w={w}: " + ", ".join(keys) for w, keys in data.items())
    _emit(cfg, text, {"module": str(F), "bases": data})
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    dec = _decomposition(cfg, cfg.command)
    wmax = 10 if cfg.wmax is None else cfg.wmax
    rep = certify_rank_identity(dec, wmax=wmax)
    text = f"{dec.description}\n{dec.summary()}\n{dec.identity_text()}  (checked for w <= {wmax}: {'ok' if rep.passed else 'FAILED'})"
    _emit(cfg, text, dec.to_json() | {"rank": dec.rank, "widths": {str(k): v for k, v in dec.width_multiplicities().items()}})
    return 0 if rep.passed else 1


def cmd_identity(cfg: RunConfig) -> int:
    dec = _decomposition(cfg, cfg.construction)
    wmax = 10 if cfg.wmax is None else cfg.wmax
    rep = certify_rank_identity(dec, wmax=wmax)
    status = f"holds for 0 <= w <= {wmax}" if rep.passed else f"FAILS at w = {rep.first_failure}"
    text = f"{rep.identity}\n{status}"
    _emit(cfg, text, {"identity": rep.identity, "passed": rep.passed, "wmax": wmax,
                      "first_failure": rep.first_failure,
                      "values": [list(v) for v in rep.values]})
    return 0 if rep.passed else 1


def _spec_json(spec: OIComplexSpec, wmax: int) -> dict:
    return {"kind": spec.kind, "i": spec.i, "truncation": spec.truncation, "wmax": wmax,
            "phi": morphism_to_json(spec.phi)}


def cmd_build(cfg: RunConfig) -> int:
    phi = _load_phi(cfg)
    wmax = 4 if cfg.wmax is None else cfg.wmax
    spec = OIComplexSpec(cfg.command, phi, cfg.i if cfg.command == "be" else 0,
                         cfg.trunc if cfg.command == "koszul" else None)
    oi = assemble_oi_complex(spec, wmax, jobs=cfg.jobs)
    if cfg.out:
        out = Path(cfg.out)
        _write(out / "spec.json", _spec_json(spec, wmax))
        for C in oi.components:
            _write(out / f"width_{C.width}.json", C.to_json())
    lines = [f"{spec.kind} complex, widths 0..{wmax}"]
    lines += [f"w={C.width}: ranks {C.ranks}" for C in oi.components]
    if cfg.out:
        lines.append(f"wrote {cfg.out}/spec.json and width_*.json")
    if cfg.format == "json":
        sys.stdout.write(dump_json([C.to_json() for C in oi.components]))
    else:
        print("\n".join(lines))
    return 0


def load_spec(path: str) -> tuple[OIComplexSpec, int]:
    p = Path(path)
    if p.is_dir():
        p = p / "spec.json"
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {p}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{p}: not valid JSON (line {exc.lineno}): {exc.msg}") from None
    for fld in ("kind", "phi"):
        if fld not in data:
            raise ParseError(f"{p}: missing field {fld!r}")
    phi = morphism_from_json(data["phi"])
    spec = OIComplexSpec(data["kind"], phi, int(data.get("i") or 0), data.get("truncation"))
    return spec, int(data.get("wmax", 4))


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.spec:
        raise UsageError("verify needs --spec")
    spec, stored = load_spec(cfg.spec)
    wmax = stored if cfg.wmax is None else cfg.wmax
    oi = assemble_oi_complex(spec, wmax, jobs=cfg.jobs)
    report = verify_oi_complex(oi, wmax, cfg.trials, cfg.seed, graded_degree=cfg.graded_degree)
    _emit(cfg, report.table(), report.to_json())
    return 0 if report.passed else 1


HANDLERS = {
    "basis": cmd_basis, "tensor": cmd_decompose, "wedge": cmd_decompose, "sym": cmd_decompose,
    "identity": cmd_identity, "koszul": cmd_build, "be": cmd_build, "verify": cmd_verify,
}


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        return HANDLERS[cfg.command](cfg)
    except (UsageError, OIError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


# -- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="oikomplex",
        description="Free OI-modules, their multilinear constructions, and OI Koszul / "
                    "Buchsbaum-Eisenbud complexes with exact verification.",
        epilog="exit codes: 0 ok, 1 check failure, 2 usage error",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
        sp.add_argument("--out", help="write JSON output here (a directory for koszul/be)")
        sp.add_argument("--wmax", type=int, help=f"largest width (at most {WMAX_LIMIT})")

    def algebra(sp, required=True):
        sp.add_argument("--algebra", required=required, help='factor widths, e.g. "1,1,1"')

    def free(sp):
        sp.add_argument("--free", required=True, help='generators "n:a,..." (width n, degree a; ":a" optional)')

    sp = sub.add_parser("basis", help="list width-w bases of a free module")
    algebra(sp), free(sp), common(sp)

    sp = sub.add_parser("tensor", help="free decomposition of F ⊗ F2")
    algebra(sp), free(sp), common(sp)
    sp.add_argument("--free2", required=True, help="second factor, same syntax as --free")

    sp = sub.add_parser("wedge", help="free decomposition of Λ^i F")
    algebra(sp), free(sp), common(sp)
    sp.add_argument("--i", type=int, required=True, help="exterior power")

    sp = sub.add_parser("sym", help="free decomposition of S_q F")
    algebra(sp), free(sp), common(sp)
    sp.add_argument("--q", type=int, required=True, help="symmetric power")

    sp = sub.add_parser("identity", help="certify the binomial rank identity of a decomposition")
    algebra(sp), free(sp), common(sp)
    sp.add_argument("--construction", choices=("tensor", "wedge", "sym"), default="tensor")
    sp.add_argument("--free2", help="second factor for tensor")
    sp.add_argument("--i", type=int, default=0, help="exterior power")
    sp.add_argument("--q", type=int, default=0, help="symmetric power")

    for name, helptext in (("koszul", "build the OI Koszul complex of phi: F -> A"),
                           ("be", "build the OI Buchsbaum-Eisenbud complex BE^i(phi)")):
        sp = sub.add_parser(name, help=helptext)
        algebra(sp, required=False), common(sp)
        sp.add_argument("--phi", required=True, help="morphism JSON file")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes for width components")
        if name == "koszul":
            sp.add_argument("--trunc", type=int, help="largest homological degree (default: untruncated)")
        else:
            sp.add_argument("--i", type=int, default=0, help="BE index i")

    sp = sub.add_parser("verify", help="check d∘d=0, gradedness, minimality, naturality and acyclicity")
    common(sp)
    sp.add_argument("--spec", required=True, help="spec.json written by koszul/be (or its directory)")
    sp.add_argument("--trials", type=int, default=3, help="random points per width")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--graded-degree", type=int, default=2,
                    help="check graded homology H_j(C)_t = 0 for t up to this degree (-1 disables)")
    sp.add_argument("--jobs", type=int, default=1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fields = RunConfig.__dataclass_fields__
    cfg = RunConfig(**{k: v for k, v in vars(args).items() if k in fields})
    if cfg.graded_degree is not None and cfg.graded_degree < 0:
        cfg.graded_degree = None
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
