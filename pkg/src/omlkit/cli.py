"""Command-line front end.

Every command builds one report dict. ``--format json`` prints it as JSON;
the default text format prints the same dict as YAML under a title comment,
so both carry identical verdicts and witnesses.

Exit codes: 0 the property holds, 1 it fails or nothing was found, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

import yaml

from . import __version__
from .boolean import maximal_blocks
from .catalog import UnknownFixture
from .formats import FORMAT_VERSION, DocumentSyntaxError, SemanticError, emit_lattice, load_source, to_dot
from .hypergraph import (
    BlocksOverlapTooMuch,
    ContextHypergraph,
    InvalidHypergraph,
    NotOrthomodularAfterPaste,
    hypergraph_assignment,
    paste_greechie,
)
from .lattice import (
    FiniteOrtholattice,
    Witness,
    atoms,
    center,
    check_atomistic,
    check_ortholattice,
    check_orthomodular,
)
from .modal import (
    Infeasible,
    check_s_axioms,
    common_complement_lemma,
    cons_bruteforce,
    cons_closed_form,
    many_worlds_valuation,
    possibility_space,
    saturate,
    two_valuations_of_space,
)
from .valuation import (
    MWIFamily,
    ZeroDesignated,
    check_mks,
    compatible_actualization,
    count_global_valuations,
    find_global_valuation,
    mwi_family_check,
    one_per_block,
)


class InputError(Exception):
    pass


def _names(L: FiniteOrtholattice, xs) -> list[str]:
    return L.names(xs)


def _witness(L: FiniteOrtholattice, w: Witness | None):
    if w is None:
        return "pass"
    out = {"law": w.law, "at": list(w.named(L))}
    if w.detail:
        out["detail"] = w.detail
    return out


def _lattice(obj) -> FiniteOrtholattice:
    if isinstance(obj, FiniteOrtholattice):
        return obj
    try:
        return paste_greechie(obj)
    except (NotOrthomodularAfterPaste, BlocksOverlapTooMuch) as exc:
        raise InputError(f"hypergraph does not paste to an orthomodular lattice: {exc}") from None


def _oml(obj) -> FiniteOrtholattice:
    L = _lattice(obj)
    bad = check_ortholattice(L) or check_orthomodular(L)
    if bad is not None:
        raise InputError(f"not an orthomodular lattice: {bad.describe(L)}")
    return L


def _element(L: FiniteOrtholattice, name: str) -> int:
    try:
        return L.index(name)
    except KeyError:
        raise InputError(f"unknown element {name!r}") from None


def _split_items(text: str) -> list[str]:
    """Split on commas outside parentheses, so product labels like ``(a,0)`` stay whole."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            items.append("".join(cur))
            cur = []
            continue
        depth += (ch == "(") - (ch == ")")
        cur.append(ch)
    items.append("".join(cur))
    return [item.strip() for item in items if item.strip()]


def _assignment_spec(L: FiniteOrtholattice, text: str | None) -> dict[int, int]:
    values: dict[int, int] = {}
    if not text:
        return values
    for item in _split_items(text):
        name, sep, val = item.partition("=")
        if not sep or val.strip() not in ("0", "1"):
            raise InputError(f"expected name=0 or name=1, got {item!r}")
        values[_element(L, name.strip())] = int(val)
    return values


def _block_info(L: FiniteOrtholattice, B) -> dict:
    return {"members": _names(L, B.members), "atoms": _names(L, B.atoms)}


def _global(L: FiniteOrtholattice, gv) -> dict | None:
    if gv is None:
        return None
    return {
        "true_atoms_per_block": [L.labels[v.atom] for v in gv.per_block.values()],
        "true_elements": [L.labels[x] for x, v in gv.values.items() if v == 1],
    }


# -- commands ----------------------------------------------------------------------


def cmd_check(obj, args):
    L = _lattice(obj)
    ol = check_ortholattice(L)
    om = check_orthomodular(L) if ol is None else None
    report = {
        "elements": len(L),
        "ortholattice": _witness(L, ol),
        "orthomodular": _witness(L, om) if ol is None else "skipped",
        "atomistic": _witness(L, check_atomistic(L)),
        "center": _names(L, center(L)),
    }
    holds = ol is None and om is None
    if holds:
        M = saturate(L)
        report["saturation"] = {
            "s_axioms": {k: _witness(L, w) for k, w in check_s_axioms(M).items()},
            "diamond": {L.labels[x]: L.labels[M.diamond(x)] for x in L.elements},
        }
    else:
        report["saturation"] = "skipped: not orthomodular"
    report["verdict"] = "pass" if holds else "fail"
    return (0 if holds else 1), report


def cmd_center(obj, args):
    L = _lattice(obj)
    return 0, {"center": _names(L, center(L)), "verdict": "pass"}


def cmd_blocks(obj, args):
    L = _oml(obj)
    blocks = maximal_blocks(L)
    return 0, {"count": len(blocks), "blocks": [_block_info(L, B) for B in blocks], "verdict": "pass"}


def cmd_diamond(obj, args):
    L = _oml(obj)
    M = saturate(L)
    table = [
        {"element": L.labels[x], "diamond": L.labels[M.diamond(x)], "box": L.labels[M.box(x)]}
        for x in L.elements
    ]
    return 0, {"center": _names(L, M.center_set), "table": table, "verdict": "pass"}


def cmd_cons(obj, args):
    L = _oml(obj)
    M = saturate(L)
    targets = [_element(L, args.element)] if args.element else [x for x in L.elements if x != L.bottom]
    rows = []
    for p in targets:
        brute, closed = cons_bruteforce(M, p), cons_closed_form(M, p)
        rows.append(
            {
                "element": L.labels[p],
                "diamond": L.labels[M.diamond(p)],
                "bruteforce": _names(L, brute),
                "closed_form": _names(L, closed),
                "agree": brute == closed,
            }
        )
    ok = all(r["agree"] for r in rows)
    report = {"possibility_space": _names(L, possibility_space(M).members), "results": rows}
    report["verdict"] = "pass" if ok else "fail"
    return (0 if ok else 1), report


def cmd_valuations(obj, args):
    L = _oml(obj)
    gv = find_global_valuation(L)
    report = {
        "blocks": len(maximal_blocks(L)),
        "first": _global(L, gv),
        "count": count_global_valuations(L),
        "verdict": "found" if gv is not None else "none",
    }
    return (0 if gv is not None else 1), report


def cmd_actualize(obj, args):
    L = _oml(obj)
    M = saturate(L)
    partial = _assignment_spec(L, args.f)
    space = possibility_space(M)
    stray = [L.labels[x] for x in partial if x not in space.members]
    if stray:
        raise InputError(f"f is only defined on the possibility space; not in it: {', '.join(stray)}")
    fits = [f for f in two_valuations_of_space(M) if all(f(x) == v for x, v in partial.items())]
    if not fits:
        raise InputError("the f specification is not a Boolean homomorphism of the possibility space")
    if len(fits) > 1:
        raise InputError(f"the f specification is ambiguous: {len(fits)} homomorphisms fit it")
    (f,) = fits
    require = _assignment_spec(L, args.require)
    act = compatible_actualization(M, f, require)
    report = {
        "possibility_space": _names(L, space.members),
        "f": {L.labels[x]: f(x) for x in sorted(space.members)},
        "require": {L.labels[x]: v for x, v in sorted(require.items())},
        "actualization": _global(L, act),
        "verdict": "found" if act is not None else "none",
    }
    return (0 if act is not None else 1), report


def cmd_mks(obj, args):
    L = _oml(obj)
    M = saturate(L)
    r = check_mks(M)
    report = {
        "global_valuation": _global(L, r.global_valuation),
        "f_checked": r.f_checked,
        "actualizable_f": None if r.f is None else {L.labels[x]: r.f(x) for x in sorted(r.f.assignment)},
        "actualization": _global(L, r.actualization),
        "equivalent": r.equivalent,
        "verdict": "pass" if r.equivalent else "fail",
    }
    return (0 if r.equivalent else 1), report


def _family(L: FiniteOrtholattice, text: str | None) -> list[int]:
    if not text:
        return sorted(atoms(L))
    return [_element(L, t) for t in _split_items(text)]


def _many(L, M, family) -> dict:
    v = many_worlds_valuation(M, family)
    out = {
        "family": [L.labels[p] for p in family],
        "diamonds": [L.labels[M.diamond(p)] for p in family],
    }
    if isinstance(v, Infeasible):
        out["valuation"] = None
        out["infeasible_subfamily"] = [L.labels[p] for p in v.witness]
        out["meet"] = L.labels[v.meet]
    else:
        out["valuation"] = {L.labels[x]: v(x) for x in sorted(v.assignment)}
    return out


def cmd_many(obj, args):
    L = _oml(obj)
    M = saturate(L)
    family = _family(L, args.family)
    if not family:
        raise InputError("family must be nonempty")
    report = _many(L, M, family)
    ok = report["valuation"] is not None
    report["verdict"] = "found" if ok else "infeasible"
    return (0 if ok else 1), report


def _designations(obj, text: str | None) -> MWIFamily:
    if not text:
        return one_per_block(obj)
    if isinstance(obj, ContextHypergraph):
        index = {name: i for i, name in enumerate(obj.labels)}
        out = []
        for item in _split_items(text):
            bname, _, aname = item.rpartition(":")
            if aname not in index:
                raise InputError(f"unknown atom {aname!r}")
            a = index[aname]
            blocks = [i for i, b in enumerate(obj.blocks) if a in b]
            b = int(bname) if bname else blocks[0]
            if b not in blocks:
                raise InputError(f"atom {aname!r} is not in block {b}")
            out.append((b, a))
        return MWIFamily(obj, tuple(out))
    L = obj
    blocks = maximal_blocks(L)
    out = []
    for item in _split_items(text):
        bname, _, ename = item.rpartition(":")
        x = _element(L, ename)
        holding = [i for i, B in enumerate(blocks) if x in B]
        b = int(bname) if bname else holding[0]
        if b not in holding:
            raise InputError(f"element {ename!r} is not in block {b}")
        out.append((blocks[b], x))
    return MWIFamily(L, tuple(out))


def _mwi(obj, family: MWIFamily) -> dict:
    try:
        r = mwi_family_check(family)
    except ZeroDesignated as exc:
        raise InputError(str(exc)) from None
    if isinstance(obj, ContextHypergraph):
        labels = obj.labels
        worlds = [
            {"block": b, "designated": labels[a], "satisfiable": w.satisfiable}
            for (b, a), w in zip(family.designated, r.worlds)
        ]
        joint = None if not r.jointly_satisfiable else sorted(labels[a] for a in r.joint.assignment)
    else:
        L = obj
        blocks = maximal_blocks(L)
        worlds = [
            {
                "block": blocks.index(w.block),
                "designated": L.labels[w.element],
                "true_atom": L.labels[w.witness],
                "satisfiable": w.satisfiable,
            }
            for w in r.worlds
        ]
        joint = _global(L, r.joint)
    return {
        "worlds": worlds,
        "every_world_satisfiable": r.all_worlds_satisfiable,
        "jointly_satisfiable": r.jointly_satisfiable,
        "joint_valuation": joint,
    }


def cmd_mwi(obj, args):
    if isinstance(obj, FiniteOrtholattice):
        obj = _oml(obj)
    report = _mwi(obj, _designations(obj, args.designate))
    ok = report["every_world_satisfiable"]
    report["verdict"] = "pass" if ok else "fail"
    return (0 if ok else 1), report


def _hypergraph(obj) -> ContextHypergraph:
    if not isinstance(obj, ContextHypergraph):
        raise InputError("this command needs a context hypergraph")
    return obj


def cmd_ks(obj, args):
    H = _hypergraph(obj)
    r = hypergraph_assignment(H)
    report = {
        "atoms": H.atom_count,
        "blocks": len(H.blocks),
        "scope": "finite context hypergraph standing in for a fragment of a Hilbert lattice",
        "assignment": None if r.assignment is None else sorted(H.labels[a] for a in r.assignment),
        "certificate": None if r.certificate is None else r.certificate.text(),
        "verdict": "found" if r.found else "none",
    }
    return (0 if r.found else 1), report


def cmd_paste(obj, args):
    H = _hypergraph(obj)
    try:
        L = paste_greechie(H)
    except (NotOrthomodularAfterPaste, BlocksOverlapTooMuch) as exc:
        return 1, {"pasted": False, "diagnostic": str(exc), "verdict": "fail"}
    return 0, {"pasted": True, "elements": len(L), "document": emit_lattice(L), "verdict": "pass"}


def cmd_compare(obj, args):
    """Modal reading and many-worlds reading of the same context family, side by side."""
    report: dict = {}
    if isinstance(obj, ContextHypergraph):
        try:
            L = paste_greechie(obj)
        except (NotOrthomodularAfterPaste, BlocksOverlapTooMuch) as exc:
            L = None
            report["modality"] = {"available": False, "reason": str(exc)}
        mwi_host = obj
    else:
        L = _oml(obj)
        mwi_host = L
    family = one_per_block(mwi_host) if not args.designate else _designations(mwi_host, args.designate)
    mwi = _mwi(mwi_host, family)

    if L is not None:
        M = saturate(L)
        if isinstance(mwi_host, ContextHypergraph):
            props = [L.index(mwi_host.labels[a]) for _, a in family.designated]
        else:
            props = [x for _, x in family.designated]
        modal = _many(L, M, props)
        modal["available"] = True
        v = many_worlds_valuation(M, props)
        if isinstance(v, Infeasible):
            modal["actualization"] = None
        else:
            modal["actualization"] = _global(L, compatible_actualization(M, v))
        modal["actualizable"] = modal["actualization"] is not None
        report["modality"] = modal
    else:
        ks = hypergraph_assignment(obj)
        report["modality"]["actualizable"] = ks.found
        report["modality"]["ks"] = None if ks.certificate is None else ks.certificate.text()
    report["mwi"] = mwi
    report["verdict"] = "pass"
    return 0, report


def _compare_table(report: dict) -> str:
    modal, mwi = report["modality"], report["mwi"]
    if modal.get("available"):
        if modal["valuation"] is None:
            left_v = f"no v on the possibility space: ◇-meet of {modal['infeasible_subfamily']} is 0"
        else:
            left_v = "v on the possibility space with v(◇P) = 1 for every designated P"
    else:
        left_v = "possibility space unavailable (pasting failed)"
    left_ks = "compatible actualization exists" if modal["actualizable"] else "no compatible actualization"
    right_v = (
        f"{len(mwi['worlds'])} worlds, each valuation v_i(P_i) = 1 "
        + ("satisfiable" if mwi["every_world_satisfiable"] else "NOT all satisfiable")
    )
    right_ks = (
        "worlds jointly compatible as well" if mwi["jointly_satisfiable"] else "no single compatible valuation; worlds stay separate"
    )
    rows = [("", "Modality", "MWI"), ("Valuations", left_v, right_v), ("KS", left_ks, right_ks)]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    return "\n".join(f"# {a:<{w0}} | {b:<{w1}} | {c}" for a, b, c in rows) + "\n"


def cmd_export_dot(obj, args):
    L = _lattice(obj)
    return 0, {"dot": to_dot(L), "covers": len(L.covers), "verdict": "pass"}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "check": (cmd_check, "ortholattice and orthomodular laws, center, saturation"),
    "center": (cmd_center, "central elements"),
    "blocks": (cmd_blocks, "maximal Boolean sublattices"),
    "diamond": (cmd_diamond, "◇ and □ for every element"),
    "cons": (cmd_cons, "classical consequences, both methods"),
    "valuations": (cmd_valuations, "find and count global valuations"),
    "actualize": (cmd_actualize, "compatible actualization of a given f"),
    "mks": (cmd_mks, "global valuation vs actualizable f"),
    "many": (cmd_many, "valuation of the possibility space with every ◇p true"),
    "mwi": (cmd_mwi, "many-worlds family report"),
    "ks": (cmd_ks, "exactly-one-per-block search on a hypergraph"),
    "paste": (cmd_paste, "Greechie pasting of a hypergraph"),
    "compare": (cmd_compare, "modality vs many worlds"),
    "export-dot": (cmd_export_dot, "Hasse diagram as DOT"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="omlkit", description="Finite orthomodular lattice toolkit.")
    parser.add_argument("--version", action="version", version=f"omlkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("source", help="catalog fixture name or path to a lattice/hypergraph document")
        p.add_argument("--format", choices=("text", "json"), default="text")
        if name == "cons":
            p.add_argument("--element", help="only this element (default: every nonzero element)")
        if name == "actualize":
            p.add_argument("--f", required=True, help="values on the possibility space, e.g. '(1,0)=1'")
            p.add_argument("--require", help="extra pinned values, e.g. '(a,0)=1'")
        if name in ("many",):
            p.add_argument("--family", help="comma-separated elements (default: all atoms)")
        if name in ("mwi", "compare"):
            p.add_argument("--designate", help="comma-separated [block:]element designations (default: one per block)")
    return parser


def render(command: str, source: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if command == "export-dot":
        return report["dot"]
    head = f"# omlkit {command}: {source}\n"
    if command == "compare":
        head += _compare_table(report)
    return head + yaml.safe_dump(report, sort_keys=False, allow_unicode=True, width=100)


def run_command(argv: list[str] | None = None) -> tuple[int, str]:
    """Run one command; returns (exit code, full output text)."""
    args = build_parser().parse_args(argv)
    handler, _ = COMMANDS[args.command]
    try:
        obj = load_source(args.source)
        code, body = handler(obj, args)
    except (InputError, UnknownFixture, DocumentSyntaxError, SemanticError, InvalidHypergraph, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownFixture) else str(exc)
        report = {"format_version": FORMAT_VERSION, "command": args.command, "source": args.source, "error": msg}
        return 2, render("error", args.source, report, args.format)
    report = {"format_version": FORMAT_VERSION, "command": args.command, "source": args.source, **body}
    report["exit_code"] = code
    return code, render(args.command, args.source, report, args.format)


def main(argv: list[str] | None = None) -> int:
    code, text = run_command(argv)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
