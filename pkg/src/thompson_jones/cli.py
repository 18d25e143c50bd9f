"""Command line: ``thompson-jones VERB [arguments] [options]``.

Exit status is 0 on success, 1 when an engine rejects the input and 2 when
the input cannot be parsed.  Errors are reported on one stderr line as
``error: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import acceptance, reps
from .config import Config, load_config
from .errors import ParseError, ThompsonError
from .group import (
    act_word,
    as_pl_map,
    enumerate_elements,
    fixed_point_measure,
    invert,
    multiply,
    random_element,
)
from .links.bracket import bracket_by_states, kauffman_bracket
from .links.build import build_link
from .links.diagram import LinkDiagram, components, export_code, parse_code, unknot
from .links.faces import is_orientable, stabilizer_member
from .links.index import fingerprint, jt_index_search, load_fingerprint
from .links.svg import export_svg
from .notation import parse_element, parse_pair

__all__ = ["main", "build_parser"]

COEFF_ENGINES = ("koopman", "symbolic", "direct-sum", "deformed", "regular", "property-t", "fixed-point", "tensor")
GRAM_ENGINES = ("koopman", "deformed", "regular", "fixed-point", "property-t")
KNOWN_LINKS = {"unknot": None, "hopf": acceptance.HOPF, "trefoil": acceptance.TREFOIL}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(2, f"error: usage: {message}\n")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=["text", "code", "json", "svg"], default="text")
    p.add_argument("--out", help="write the output to this file instead of stdout")
    p.add_argument("--config", help="JSON configuration file")
    p.add_argument("--tolerance", type=float, help="override the isometry tolerance")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="thompson-jones", description="Thompson groups, Jones representations and Jones links.")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def verb(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _common(p)
        return p

    p = verb("normal-form", "reduced form of an element")
    p.add_argument("element")
    p.add_argument("--unreduced", action="store_true", help="echo the pair without reducing")

    p = verb("mul", "product of elements, rightmost applied first")
    p.add_argument("elements", nargs="+")

    p = verb("inv", "inverse")
    p.add_argument("element")

    p = verb("act", "action on a binary word")
    p.add_argument("element")
    p.add_argument("word")

    p = verb("plmap", "piecewise-linear map of an element of F or T")
    p.add_argument("element")

    p = verb("fixmeasure", "measure of the fixed-point set")
    p.add_argument("element")

    p = verb("coeff", "vacuum matrix coefficient")
    p.add_argument("element")
    p.add_argument("--engine", choices=COEFF_ENGINES, default="koopman")
    p.add_argument("--params", help="JSON file with A, B, xi (direct-sum) or R, xi, eta (tensor)")
    p.add_argument("--v", type=complex, help="deformed engine: amplitude on the left branch")
    p.add_argument("--w", type=complex, help="deformed engine: amplitude on the right branch")
    p.add_argument("--theta", type=float, help="property-t engine: rotation angle")

    p = verb("gram", "Gram matrix of a coefficient and its smallest eigenvalue")
    p.add_argument("elements", nargs="*")
    p.add_argument("--engine", choices=GRAM_ENGINES, default="koopman")
    p.add_argument("--random", type=int, default=0, help="add this many random elements")
    p.add_argument("--max-leaves", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--v", type=complex)
    p.add_argument("--w", type=complex)
    p.add_argument("--theta", type=float)

    p = verb("link", "link diagram of an element of F")
    p.add_argument("element")
    p.add_argument("--unreduced", action="store_true", help="build from the pair as written")

    p = verb("bracket", "Kauffman bracket of L(g) or of a diagram file")
    p.add_argument("element", nargs="?")
    p.add_argument("--diagram", help="file in X(a,b,c,d) code")
    p.add_argument("--engine", choices=["frontier", "states"], default="frontier")
    p.add_argument("--unreduced", action="store_true")

    p = verb("orientable", "Jones subgroup membership")
    p.add_argument("element")
    p.add_argument("--unreduced", action="store_true")

    p = verb("jt-index", "fewest leaves giving a link with a given fingerprint")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target", help="fingerprint JSON file")
    group.add_argument("--link", choices=sorted(KNOWN_LINKS), help="a built-in link")
    group.add_argument("--diagram", help="file in X(a,b,c,d) code")
    p.add_argument("--max-leaves", type=int, default=8)

    p = verb("enumerate", "list reduced elements")
    p.add_argument("--max-leaves", type=int, default=4)
    p.add_argument("--flavor", choices=["F", "T", "V"], default="F")

    p = verb("selftest", "run the acceptance checks")
    p.add_argument("--only", type=int, nargs="*", help="check numbers to run")
    p.add_argument("--seed", type=int, default=0)
    return ap


def _elem(text: str, unreduced: bool = False):
    return parse_pair(text) if unreduced else parse_element(text)


def _cnum(x) -> complex:
    if isinstance(x, list):
        if len(x) != 2:
            raise ParseError(f"complex numbers are [re, im], got {x}")
        return complex(float(x[0]), float(x[1]))
    return complex(x)


def _cmatrix(data):
    return np.array([[_cnum(x) for x in row] for row in data], dtype=complex)


def _pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ThompsonError(f"cannot read {path}: {exc.strerror}") from None


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not JSON: {exc.msg}", text, exc.pos) from None


def _read_diagram(path: str) -> LinkDiagram:
    return parse_code(_read_text(path))


def _fmt_complex(z) -> str:
    z = complex(z)
    if abs(z.imag) <= 1e-15 * max(1.0, abs(z.real)):
        return f"{z.real:.12g}"
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _deformed_params(args):
    if args.v is None or args.w is None:
        raise ThompsonError("the deformed engine needs --v and --w")
    return args.v, args.w


def _coefficient(args, cfg: Config):
    """(coefficient function, parameter record)."""
    engine = args.engine
    if engine == "koopman":
        return reps.koopman_coeff, {}
    if engine == "deformed":
        v, w = _deformed_params(args)
        return (lambda g: reps.deformed_coeff(g, v, w, cfg.tolerance)), {"v": _pair(v), "w": _pair(w)}
    if engine == "regular":
        return reps.regular_coeff, {}
    if engine == "fixed-point":
        return fixed_point_measure, {}
    if engine == "property-t":
        if args.theta is None:
            raise ThompsonError("the property-t engine needs --theta")
        theta = args.theta
        return (lambda g: reps.property_t_coeff(g, theta)), {"theta": theta}
    if engine in ("direct-sum", "tensor"):
        if not args.params:
            raise ThompsonError(f"the {engine} engine needs --params")
        data = _read_json(args.params)
        try:
            if engine == "direct-sum":
                rep = reps.PythRep(_cmatrix(data["A"]), _cmatrix(data["B"]), tol=cfg.tolerance)
                xi = [_cnum(x) for x in data["xi"]]
                return (lambda g: reps.coeff_direct_sum(g, rep, xi)), data
            rep = reps.TensorRep(_cmatrix(data["R"]), tol=cfg.tolerance)
            xi = [_cnum(x) for x in data["xi"]]
            eta = [_cnum(x) for x in data.get("eta", data["xi"])]
            return (lambda g: reps.coeff_tensor(g, rep, xi, eta, cfg.max_terms)), data
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad parameter file: missing or malformed {exc}") from None
    raise ThompsonError(f"unknown engine {engine}")


def _render(args, text: str, data):
    if args.format == "json":
        return json.dumps(data, sort_keys=True, ensure_ascii=False) + "\n"
    return text if text.endswith("\n") else text + "\n"


def _diagram_json(L: LinkDiagram) -> dict:
    return {
        "crossings": [list(c) for c in L.crossings],
        "free_loops": L.free_loops,
        "components": components(L)[0],
        "outer": list(L.outer) if L.outer is not None else None,
    }


def _run(args, cfg: Config) -> tuple[str, int]:
    v = args.verb
    if v == "normal-form":
        g = _elem(args.element, args.unreduced)
        return _render(args, str(g), {"element": str(g), "flavor": g.flavor, "leaves": g.leaf_count}), 0
    if v == "mul":
        elems = [parse_element(e) for e in args.elements]
        g = elems[-1]
        for h in reversed(elems[:-1]):
            g = multiply(h, g)
        return _render(args, str(g), {"element": str(g)}), 0
    if v == "inv":
        g = invert(parse_element(args.element))
        return _render(args, str(g), {"element": str(g)}), 0
    if v == "act":
        g = parse_element(args.element)
        w = act_word(g, args.word)
        return _render(args, w, {"element": str(g), "word": args.word, "image": w}), 0
    if v == "plmap":
        pl = as_pl_map(parse_element(args.element))
        data = {
            "breakpoints": [str(b) for b in pl.breakpoints],
            "slopes": [str(k) for k in pl.slopes],
            "offsets": [str(c) for c in pl.offsets],
            "circle": pl.circle,
        }
        return _render(args, str(pl), data), 0
    if v == "fixmeasure":
        m = fixed_point_measure(parse_element(args.element))
        return _render(args, str(m), {"measure": str(m)}), 0
    if v == "coeff":
        g = parse_element(args.element)
        if args.engine == "symbolic":
            text = reps.symbolic_coefficient(g)
            data = {"element": str(g), "engine": "symbolic", "parameters": {}, "value": text}
            return _render(args, text, data), 0
        fn, params = _coefficient(args, cfg)
        val = fn(g)
        shown = str(val) if isinstance(val, Fraction) else _fmt_complex(val)
        data = {"element": str(g), "engine": args.engine, "parameters": params, "value": _pair(val)}
        return _render(args, shown, data), 0
    if v == "gram":
        elems = [parse_element(e) for e in args.elements]
        rng = random.Random(args.seed)
        elems += [random_element(args.max_leaves, rng) for _ in range(args.random)]
        if not elems:
            raise ThompsonError("gram needs elements or --random N")
        fn, params = _coefficient(args, cfg)
        M, lam = reps.gram_psd(fn, elems)
        psd = reps.is_psd(lam, cfg.psd_tolerance)
        rows = [" ".join(_fmt_complex(z) for z in row) for row in M]
        text = "\n".join(rows + [f"min eigenvalue {lam:.6g} ({'PSD' if psd else 'not PSD'})"])
        data = {
            "elements": [str(g) for g in elems],
            "engine": args.engine,
            "parameters": params,
            "matrix": [[_pair(z) for z in row] for row in M],
            "min_eigenvalue": lam,
            "psd": psd,
        }
        return _render(args, text, data), 0
    if v == "link":
        g = _elem(args.element, args.unreduced)
        L = build_link(g, allow_unreduced=args.unreduced)
        if args.format == "svg":
            return export_svg(g), 0
        return _render(args, export_code(L), _diagram_json(L)), 0
    if v == "bracket":
        if args.diagram:
            L = _read_diagram(args.diagram)
        elif args.element:
            g = _elem(args.element, args.unreduced)
            L = build_link(g, allow_unreduced=args.unreduced)
        else:
            raise ThompsonError("bracket needs an element or --diagram")
        if args.engine == "states":
            b = bracket_by_states(L, max_crossings=cfg.max_crossings)
        else:
            b = kauffman_bracket(L, max_crossings=cfg.max_crossings)
        data = {"bracket": b.to_json(), "components": components(L)[0], "crossings": L.crossing_count}
        return _render(args, str(b), data), 0
    if v == "orientable":
        g = _elem(args.element, args.unreduced)
        o = is_orientable(g, cfg.shading, allow_unreduced=args.unreduced)
        data = {"element": str(g), "orientable": o, "shading": cfg.shading}
        if not args.unreduced:
            data["stabilizer"] = stabilizer_member(g)
        return _render(args, "true" if o else "false", data), 0
    if v == "jt-index":
        if args.target:
            target = load_fingerprint(_read_text(args.target))
        elif args.link:
            code = KNOWN_LINKS[args.link]
            target = fingerprint(parse_code(code) if code else unknot())
        else:
            target = fingerprint(_read_diagram(args.diagram))
        res = jt_index_search(target, args.max_leaves, cfg.max_crossings)
        lines = [f"target: {target}", f"leaves: {res.leaves}", "witnesses:"]
        lines += [f"  {g}" for g in res.witnesses]
        lines.append("fingerprints seen:")
        for row in res.audit_json():
            lines.append(f"  {row['count']:>6}  {json.dumps(row['fingerprint'], sort_keys=True)}  e.g. {', '.join(row['examples'])}")
        data = {
            "target": target.to_json(),
            "leaves": res.leaves,
            "witnesses": [str(g) for g in res.witnesses],
            "audit": res.audit_json(),
        }
        return _render(args, "\n".join(lines), data), 0
    if v == "enumerate":
        elems = [str(g) for g in enumerate_elements(args.max_leaves, args.flavor)]
        return _render(args, "\n".join(elems), {"elements": elems, "count": len(elems)}), 0
    if v == "selftest":
        results = acceptance.run_all(args.seed, args.only)
        lines = [r.line() for r in results]
        passed = sum(r.passed for r in results)
        lines.append(f"{passed}/{len(results)} checks passed")
        data = {
            "checks": [
                {"number": r.number, "title": r.title, "passed": r.passed, "detail": r.detail, "seconds": r.seconds}
                for r in results
            ]
        }
        return _render(args, "\n".join(lines), data), 0 if passed == len(results) else 1
    raise ThompsonError(f"unknown verb {v}")


def _one_line(exc) -> str:
    return " ".join(str(exc).split())


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.tolerance is not None:
            cfg = cfg.replace(tolerance=args.tolerance)
        if args.format == "svg" and args.verb != "link":
            raise ThompsonError("svg output is only available for link")
        out, code = _run(args, cfg)
    except ParseError as exc:
        print(f"error: parse: {_one_line(exc)}", file=sys.stderr)
        return 2
    except ThompsonError as exc:
        print(f"error: {type(exc).__name__}: {_one_line(exc)}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
