"""Command-line front end: one query per process, JSON in, JSON out.

Exit codes: 0 computed and yes/true, 1 computed and no/false, 2 unknown,
3 bad input, 4 internal invariant violation (including a failed --verify).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import serialize as ser
from .certify import MalformedCertificate, homology_invariants
from .complexes import (ChainMap, FreeComplex, InvalidChainMap, InvalidComplex, cone,
                         direct_sum, hocolim, homology, suspend, tensor)
from .exactla import snf
from .oracles import OracleSizeError, oracle_homology_enum, oracle_quotient_of_sum, oracle_snf_minors
from .relations import InvalidHint, acyclic_over, cellular_decide, verify_certificate
from .rings import RingMismatch, RingSpec, SuppSet
from .stanley import class_contained, classes_equal, localizing_member, phi_member, phi_of_generators

log = logging.getLogger("cellular")

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


class VerificationFailed(Exception):
    pass


def _read(path: str):
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return ser.loads(text)


def _need(args, name: str):
    value = getattr(args, name)
    if value is None or value == []:
        raise InputError(f"--{name} is required for {args.command}")
    return value


def _check_ring(args, *objs):
    rings = {o.ring for o in objs}
    if args.ring is not None:
        rings.add(ser.parse_ring_name(args.ring))
    if len(rings) > 1:
        raise RingMismatch("inputs live over different rings: "
                           + ", ".join(sorted(str(r) for r in rings)))


def _obj(args, name: str):
    x = ser.object_from_json(_read(_need(args, name)))
    _check_ring(args, x)
    return x


def _objs(args, name: str):
    xs = [ser.object_from_json(_read(p)) for p in _need(args, name)]
    _check_ring(args, *xs)
    return xs


def _complex(args, name: str) -> FreeComplex:
    x = _obj(args, name)
    if not isinstance(x, FreeComplex):
        raise InputError(f"--{name} must be a complex document")
    return x


def _maps(args) -> list[ChainMap]:
    fs = [ser.map_from_json(_read(p)) for p in _need(args, "map")]
    _check_ring(args, *[f.source for f in fs])
    return fs


def _verdict_code(flag: bool) -> int:
    return EXIT_YES if flag else EXIT_NO


# commands; each returns (document, exit code)

def cmd_homology(args):
    x = _obj(args, "x")
    h = homology(x)
    if args.verify and isinstance(x, FreeComplex):
        try:
            ok = oracle_homology_enum(x) == h
        except OracleSizeError:
            ok = homology_invariants(x) == homology_invariants(h)
        if not ok:
            raise VerificationFailed("homology disagrees with the independent recomputation")
    return ser.homology_to_json(h), EXIT_YES


def cmd_snf(args):
    doc = _read(_need(args, "x"))
    a = ser.matrix_from_json(doc.get("matrix", doc) if isinstance(doc, dict) else doc)
    if args.ring is not None and not ser.parse_ring_name(args.ring).is_integers:
        raise InputError("snf works over Z only")
    res = snf(a)
    if args.verify:
        minors = oracle_snf_minors(a)
        running = 1
        for k, g in enumerate(minors):
            running *= res.diag[k] if k < len(res.diag) else 0
            if running != g:
                raise VerificationFailed("diagonal disagrees with the gcd of minors")
    return {"diag": [ser.int_to_json(d) for d in res.diag], "rank": res.rank,
            "s": ser.matrix_to_json(res.s), "u": ser.matrix_to_json(res.u),
            "v": ser.matrix_to_json(res.v)}, EXIT_YES


def cmd_support(args):
    x = _obj(args, "x")
    h = homology(x)
    s = h[args.degree].support if args.degree is not None else h.total_support
    return ser.supp_to_json(s), EXIT_YES


def cmd_op(args):
    name = args.operation
    if name == "cone":
        fs = _maps(args)
        if len(fs) != 1:
            raise InputError("op cone takes exactly one --map")
        return ser.complex_to_json(cone(fs[0]).complex), EXIT_YES
    if name == "hocolim":
        return ser.complex_to_json(hocolim(_maps(args))), EXIT_YES
    if name == "sum":
        xs = _objs(args, "gens")
        if not all(isinstance(x, FreeComplex) for x in xs):
            raise InputError("sum needs complex documents")
        return ser.complex_to_json(direct_sum(xs)), EXIT_YES
    if name == "suspend":
        x = _obj(args, "x")
        return ser.object_to_json(suspend(x, args.shift if args.shift is not None else 1)), EXIT_YES
    if name == "tensor":
        x, y = _complex(args, "x"), _complex(args, "y")
        _check_ring(args, x, y)
        return ser.complex_to_json(tensor(x, y)), EXIT_YES
    raise InputError(f"unknown operation {name!r}")


def _gens_or_x(args):
    if args.gens:
        return _objs(args, "gens")
    return [_obj(args, "x")]


def cmd_decide_acyclic(args):
    y = _obj(args, "y")
    gens = _gens_or_x(args)
    _check_ring(args, y, *gens)
    ok, obstruction = acyclic_over(y, gens)
    if ok:
        return {"verdict": "yes"}, EXIT_YES
    return {"verdict": "no", "obstruction": ser.obstruction_to_json(obstruction)}, EXIT_NO


def _module_degree(hy, hx) -> int | None:
    degrees = set(hy.degrees) | set(hx.degrees)
    if len(hy.degrees) <= 1 and len(hx.degrees) <= 1 and len(degrees) == 1:
        return degrees.pop()
    return None


def cmd_decide_cellular(args):
    y, x = _obj(args, "y"), _obj(args, "x")
    _check_ring(args, y, x)
    hint = None
    if args.map:
        if len(args.map) > 1:
            raise InputError("decide-cellular takes at most one --map hint")
        hint = _maps(args)[0]
    verdict = cellular_decide(y, x, hint)
    if args.verify:
        if verdict.is_yes and not verify_certificate(verdict.certificate, y, x):
            raise VerificationFailed("the certificate does not verify")
        hy, hx = homology(y), homology(x)
        k = _module_degree(hy, hx)
        if k is not None and not verdict.is_unknown:
            try:
                expected = oracle_quotient_of_sum(hy[k], hx[k])
            except OracleSizeError:
                log.warning("modules too large for the oracle; certificate check only")
            else:
                if expected != verdict.is_yes:
                    raise VerificationFailed("module verdict disagrees with the oracle")
    code = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[verdict.status]
    return ser.verdict_to_json(verdict), code


def cmd_phi(args):
    return ser.phi_to_json(phi_of_generators(_gens_or_x(args))), EXIT_YES


def cmd_compare_classes(args):
    a, b = _objs(args, "a"), _objs(args, "b")
    _check_ring(args, *a, *b)
    if args.contained:
        flag = class_contained(a, b)
        return {"contained": flag}, _verdict_code(flag)
    flag = classes_equal(a, b)
    return {"equal": flag}, _verdict_code(flag)


def cmd_member(args):
    x = _obj(args, "x")
    if args.phi:
        phi = ser.phi_from_json(_read(args.phi))
        _check_ring(args, x, phi)
    else:
        gens = _objs(args, "gens")
        _check_ring(args, x, *gens)
        phi = phi_of_generators(gens)
    flag = phi_member(x, phi)
    return {"member": flag}, _verdict_code(flag)


def _parse_primes(text: str, ring: RingSpec) -> SuppSet:
    if Path(text).suffix == ".json" or Path(text).is_file():
        return ser.supp_from_json(_read(text), ring)
    text = text.strip()
    if text == "everything":
        return SuppSet.everything(ring)
    try:
        primes = sorted({int(p) for p in text.split(",") if p.strip()})
    except ValueError:
        raise InputError(f"--primes: expected a comma separated list, got {text!r}") from None
    return ser.supp_from_value(primes, ring)


def cmd_localizing_member(args):
    x = _obj(args, "x")
    primes = _parse_primes(_need(args, "primes"), x.ring)
    flag = localizing_member(x, primes)
    return {"member": flag}, _verdict_code(flag)


def cmd_verify_cert(args):
    y, x = _obj(args, "y"), _obj(args, "x")
    _check_ring(args, y, x)
    doc = _read(_need(args, "cert"))
    if isinstance(doc, dict) and "verdict" in doc:
        if "certificate" not in doc:
            raise InputError("the verdict carries no certificate")
        doc = doc["certificate"]
    cert = ser.certificate_from_json(doc, y.ring)
    flag = verify_certificate(cert, y, x)
    return {"valid": flag}, _verdict_code(flag)


COMMANDS = {
    "homology": cmd_homology,
    "snf": cmd_snf,
    "support": cmd_support,
    "op": cmd_op,
    "decide-acyclic": cmd_decide_acyclic,
    "decide-cellular": cmd_decide_cellular,
    "phi": cmd_phi,
    "compare-classes": cmd_compare_classes,
    "member": cmd_member,
    "localizing-member": cmd_localizing_member,
    "verify-cert": cmd_verify_cert,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", help="expected ring of every input, e.g. Z or Z/4")
    common.add_argument("--x", help="object (complex, homology or module document)")
    common.add_argument("--y", help="second object")
    common.add_argument("--gens", action="append", default=[], help="generator object (repeatable)")
    common.add_argument("--map", action="append", default=[], help="chain map document (repeatable)")
    common.add_argument("--degree", type=int, help="restrict to one homological degree")
    common.add_argument("--shift", type=int, help="suspension amount for op suspend")
    common.add_argument("--verify", action="store_true",
                        help="re-check the answer independently; exit 4 on disagreement")
    common.add_argument("--output", help="write the result here instead of standard output")
    common.add_argument("--a", action="append", default=[], help="generator of the first class")
    common.add_argument("--b", action="append", default=[], help="generator of the second class")
    common.add_argument("--contained", action="store_true",
                        help="compare-classes: test containment of the first class in the second")
    common.add_argument("--phi", help="phi document for member")
    common.add_argument("--primes", help="prime set: comma list, 'everything' or a supp document")
    common.add_argument("--cert", help="certificate or verdict document")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(
        prog="cellular",
        description="Acyclic and cellular relations between finite chain complexes over Z and Z/n.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "op":
            p.add_argument("operation", choices=["cone", "sum", "suspend", "tensor", "hocolim"])
    return parser


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(ser.dumps({"error": kind, "message": message}))


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_YES
    logging.basicConfig(stream=sys.stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    log.info("running %s", args.command)
    try:
        doc, code = COMMANDS[args.command](args)
    except VerificationFailed as e:
        _emit_error("verification_failed", str(e))
        return EXIT_INTERNAL
    except (InputError, ser.SchemaError, RingMismatch, InvalidComplex, InvalidChainMap,
            InvalidHint, MalformedCertificate, OracleSizeError) as e:
        _emit_error(type(e).__name__, str(e))
        return EXIT_INPUT
    except ValueError as e:
        # constructors reject bad input with ValueError
        _emit_error(type(e).__name__, str(e))
        return EXIT_INPUT
    except Exception as e:  # noqa: BLE001 - anything else is our bug
        log.exception("internal error")
        _emit_error("internal", f"{type(e).__name__}: {e}")
        return EXIT_INTERNAL
    text = ser.dumps(doc)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))
