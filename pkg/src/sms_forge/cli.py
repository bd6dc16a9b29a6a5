"""Command-line drivers.

    sms-forge algebra-check --algebra example5
    sms-forge sms verify --algebra example5 --sms Z_0,Z_1,Z_2,Z_3
    sms-forge sms mutate --algebra example5 --sms Z_0,Z_1,Z_2,Z_3 --at Z_0,Z_2 --at k,S_1,S_3
    sms-forge sms orbit --algebra example4 --sms L --format dot
    sms-forge okuyama check --algebra example5 --at k,1,3

Exit codes: 0 ok, 1 input error, 2 verified negative, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time
from typing import Optional, Sequence


from . import okuyama_tilt as ok
from . import sms_engine as se
from .algebra_core import BasicAlgebra, NotSelfInjective, PresentationError, cartan_matrix, self_injective_check
from .docs import DocError, chain_map_to_doc, complex_to_doc, dumps, load_algebra_doc, load_module_doc, read_json
from .fixtures import BUILTINS, algebra_doc, builtin_algebra, builtin_module, module_docs
from .rep_mod import Rep, is_isomorphic, loewy_layers, simple
from .stable_cat import minimal

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEGATIVE = 2
EXIT_INCONCLUSIVE = 3


class InputError(ValueError):
    pass


# -- loading


def load_algebra(source: str) -> tuple[BasicAlgebra, str]:
    """A builtin name or a path to an algebra document."""
    if os.path.isfile(source):
        doc = read_json(source)
        name = os.path.splitext(os.path.basename(source))[0]
        if name in BUILTINS and doc == algebra_doc(name):
            return builtin_algebra(name), name
        return load_algebra_doc(doc), name
    if source in BUILTINS:
        return builtin_algebra(source), source
    raise InputError(f"no algebra file or builtin named {source!r}")


class ModulePool:
    """Named modules of an algebra, used to resolve and label members."""

    def __init__(self, A: BasicAlgebra, algebra_id: str):
        self.A, self.algebra_id = A, algebra_id
        self.docs = module_docs(algebra_id) if algebra_id in BUILTINS else {}
        V = [str(v) for v in A.pres.vertices]
        self.names = [f"S_{v}" for v in V] + sorted(self.docs)
        self._mods = {}

    def get(self, name: str) -> Rep:
        if name not in self._mods:
            try:
                self._mods[name] = builtin_module(self.algebra_id, name, self.A)
            except DocError:
                V = [str(v) for v in self.A.pres.vertices]
                if name in V:
                    self._mods[name] = simple(self.A, V.index(name))
                else:
                    raise InputError(f"unknown module {name!r}") from None
        return self._mods[name]

    def labels(self, M: Rep) -> list:
        """Every pool name stably isomorphic to M."""
        Mm = minimal(M)
        out = []
        for name in self.names:
            X = minimal(self.get(name))
            if list(X.dims) == list(Mm.dims) and is_isomorphic(X, Mm) is not None:
                out.append(name)
        return out


def load_sms(source: str, pool: ModulePool) -> tuple[list, list]:
    """Members from a comma list of pool names or a JSON file ``{name: ModuleDoc}``."""
    if os.path.isfile(source):
        doc = read_json(source)
        if isinstance(doc, dict) and "members" in doc:
            doc = doc["members"]
        if not isinstance(doc, dict):
            raise InputError("SMS file must map member names to module documents")
        names, mods = [], []
        for name, md in doc.items():
            names.append(name)
            mods.append(pool.get(md) if isinstance(md, str) else load_module_doc(md, pool.A))
        return names, mods
    names = [t.strip() for t in source.split(",") if t.strip()]
    if not names:
        raise InputError("empty SMS")
    return names, [pool.get(n) for n in names]


def _subset_tokens(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def resolve_members(tokens: Sequence[str], names: list, members: list, pool: ModulePool) -> list:
    """Indices of the members named (or stably isomorphic to the modules named) by ``tokens``."""
    if list(tokens) == ["all"]:
        return list(range(len(members)))
    idx = []
    for t in tokens:
        if t in names:
            idx.append(names.index(t))
            continue
        X = minimal(pool.get(t))
        for k, M in enumerate(members):
            if list(M.dims) == list(X.dims) and is_isomorphic(M, X) is not None:
                idx.append(k)
                break
        else:
            raise InputError(f"{t!r} is not a member of the system")
    return sorted(set(idx))


def resolve_vertices(text: str, A: BasicAlgebra) -> list:
    toks = _subset_tokens(text)
    V = [str(v) for v in A.pres.vertices]
    if toks == ["all"]:
        return list(range(A.n))
    if toks in ([], ["none"]):
        return []
    out = []
    for t in toks:
        v = t[2:] if t.startswith("S_") else t
        if v not in V:
            raise InputError(f"unknown vertex {t!r}")
        out.append(V.index(v))
    return sorted(set(out))


# -- report pieces


def dimvec(M: Rep) -> list:
    return [int(d) for d in M.dims]


def describe(M: Rep, name: str, pool: ModulePool) -> dict:
    return {"name": name, "dims": dimvec(M), "loewy_layers": [list(l) for l in loewy_layers(M)],
            "iso_labels": pool.labels(M)}


def name_new(M: Rep, pool: ModulePool, taken: Sequence[str]) -> str:
    labels = pool.labels(M)
    for lab in labels:
        if lab not in taken:
            return lab
    return "M" + "".join(str(d) for d in dimvec(minimal(M)))


def node_key(members: Sequence[Rep]) -> str:
    parts = sorted(repr((dimvec(M), loewy_layers(M))) for M in members)
    return hashlib.sha1("|".join(parts).encode()).hexdigest()[:8]


def node_label(members: Sequence[Rep]) -> str:
    dv = sorted(tuple(dimvec(M)) for M in members)
    return " ".join("(" + ",".join(map(str, d)) + ")" for d in dv) + " #" + node_key(members)


# -- commands


def cmd_algebra_check(args, report: dict) -> int:
    A, aid = load_algebra(args.algebra)
    V = [str(v) for v in A.pres.vertices]
    cert = {"algebra": aid, "dim": A.dim, "vertices": V, "cartan": cartan_matrix(A).tolist()}
    try:
        nak = self_injective_check(A)
    except NotSelfInjective as e:
        report["verdict"] = "NotSelfInjective"
        cert["reason"] = str(e)
        report["certificates"] = cert
        return EXIT_NEGATIVE
    cert["nakayama_permutation"] = {V[i]: V[j] for i, j in enumerate(nak.permutation)}
    report["verdict"] = "SelfInjective"
    report["certificates"] = cert
    return EXIT_OK


def _setup_sms(args):
    A, aid = load_algebra(args.algebra)
    self_injective_check(A)
    pool = ModulePool(A, aid)
    names, mods = load_sms(args.sms, pool)
    return A, pool, names, mods


def cmd_sms_verify(args, report: dict) -> int:
    A, pool, names, mods = _setup_sms(args)
    res = se.is_sms(mods, cap=args.cap)
    cert = {"members": [describe(M, n, pool) for M, n in zip(mods, names)]}
    if "reason" in res:
        cert["reason"] = res["reason"]
    else:
        cand = res["candidate"]
        cert["stable_hom_dims"] = cand.orthogonality_certificate.tolist()
        V = [str(v) for v in A.pres.vertices]
        cert["strip_traces"] = [
            {"simple": f"S_{V[i]}", "status": t.status, "length": t.length, "steps": [names[s[0]] for s in t.steps]}
            for i, t in enumerate(res["traces"])
        ]
    report["verdict"] = res["verdict"]
    report["certificates"] = cert
    if res["verdict"] == se.INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    if res["verdict"] == se.NOT_SMS and args.strict:
        return EXIT_NEGATIVE
    return EXIT_OK


def _mutate_once(cand, X: list, direction: str, args):
    fn = se.mu_plus if direction == "plus" else se.mu_minus
    return fn(cand, X, cap=args.cap, seed=args.seed)


def cmd_sms_mutate(args, report: dict) -> int:
    A, pool, names, mods = _setup_sms(args)
    if not args.at:
        raise InputError("mutate needs at least one --at")
    cand = se.verify_orthogonal_bricks(mods)
    steps = []
    for at in args.at:
        X = resolve_members(_subset_tokens(at), names, cand.members, pool)
        new = _mutate_once(cand, X, args.direction, args)
        new_names = []
        for k, M in enumerate(new.members):
            new_names.append(names[k] if k in X else name_new(M, pool, [names[j] for j in X] + new_names))
        tris = []
        for k, tt in sorted(new.triangles.items()):
            tris.append({"member": names[k], "side": tt.side, "first_dims": dimvec(tt.first),
                         "second_dims": dimvec(tt.second), "depth": tt.depth})
        steps.append({"at": [names[k] for k in X], "direction": args.direction,
                      "members": [describe(M, n, pool) for M, n in zip(new.members, new_names)],
                      "triangles": tris})
        cand, names = new, new_names
    report["verdict"] = "Mutated"
    report["certificates"] = {"steps": steps, "result": names}
    return EXIT_OK


def _stable_permutation(members: list) -> list:
    """Index of the member isomorphic to N(member), or None."""
    from .rep_mod import nakayama

    out = []
    for M in members:
        img = minimal(nakayama(M))
        hit = None
        for j, X in enumerate(members):
            if list(X.dims) == list(img.dims) and is_isomorphic(img, X) is not None:
                hit = j
                break
        out.append(hit)
    return out


def stable_subsets(members: list) -> list:
    perm = _stable_permutation(members)
    n = len(members)
    out = []
    for mask in range(1, 1 << n):
        X = [k for k in range(n) if mask >> k & 1]
        if all(perm[k] is not None and perm[k] in X for k in X):
            out.append(X)
    return out


def orbit(cand, names: list, pool: ModulePool, args) -> dict:
    """Breadth-first closure under mutation at every Nakayama-stable subset."""
    nodes = [(cand, names)]
    edges = []
    truncated = False
    head = 0
    while head < len(nodes):
        cur, cur_names = nodes[head]
        for X in stable_subsets(cur.members):
            for direction in ("plus", "minus"):
                new = _mutate_once(cur, X, direction, args)
                target = None
                for j, (other, _) in enumerate(nodes):
                    if se.match_up_to_iso(new.members, other.members) is not None:
                        target = j
                        break
                if target is None:
                    if len(nodes) >= args.max_nodes:
                        truncated = True
                        continue
                    new_names = [cur_names[k] if k in X else name_new(M, pool, []) for k, M in enumerate(new.members)]
                    nodes.append((new, new_names))
                    target = len(nodes) - 1
                edges.append({"from": head, "to": target, "at": [cur_names[k] for k in X],
                              "sign": "+" if direction == "plus" else "-"})
        head += 1
    return {
        "nodes": [{"id": i, "label": node_label(c.members), "members": n} for i, (c, n) in enumerate(nodes)],
        "edges": edges,
        "truncated": truncated,
    }


def orbit_dot(orb: dict) -> str:
    lines = ["digraph sms_orbit {"]
    for nd in orb["nodes"]:
        lines.append(f'  n{nd["id"]} [label="{nd["label"]}"];')
    for e in orb["edges"]:
        lab = "{" + ",".join(e["at"]) + "}" + e["sign"]
        lines.append(f'  n{e["from"]} -> n{e["to"]} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_sms_orbit(args, report: dict) -> int:
    A, pool, names, mods = _setup_sms(args)
    cand = se.verify_orthogonal_bricks(mods)
    orb = orbit(cand, names, pool, args)
    report["verdict"] = "Truncated" if orb["truncated"] else "Closed"
    report["certificates"] = orb
    return EXIT_OK


def _okuyama_setup(args):
    A, aid = load_algebra(args.algebra)
    self_injective_check(A)
    U = resolve_vertices(args.at or "", A)
    return A, aid, U


def cmd_okuyama_build(args, report: dict) -> int:
    A, aid, U = _okuyama_setup(args)
    T = ok.build_okuyama(A, U)
    report["verdict"] = "Built"
    report["certificates"] = {"at": [str(A.pres.vertices[u]) for u in U], "complex": complex_to_doc(T, aid)}
    return EXIT_OK


def cmd_okuyama_check(args, report: dict) -> int:
    A, aid, U = _okuyama_setup(args)
    T = ok.build_okuyama(A, U)
    res = ok.is_tilting(T, seed=args.seed)
    report["verdict"] = res["verdict"]
    report["certificates"] = {"at": [str(A.pres.vertices[u]) for u in U], "complex": complex_to_doc(T, aid),
                              **{k: v for k, v in res.items() if k != "verdict"}}
    return EXIT_OK if res["verdict"] == ok.TILTING else EXIT_NEGATIVE


def cmd_okuyama_mutate_eq(args, report: dict) -> int:
    A, aid, U = _okuyama_setup(args)
    T = ok.build_okuyama(A, U)
    S = ok.silting_mutate_regular(A, U)
    cert = {"at": [str(A.pres.vertices[u]) for u in U], "okuyama": complex_to_doc(T, aid),
            "mutation": complex_to_doc(S, aid), "k0_classes": [list(T.k0_class()), list(S.k0_class())],
            "hom_dims": {"T,S": ok.homotopy_hom(T, S).dim, "S,T": ok.homotopy_hom(S, T).dim,
                         "T,T": ok.homotopy_hom(T, T).dim, "S,S": ok.homotopy_hom(S, S).dim}}
    report["certificates"] = cert
    if T.k0_class() != S.k0_class() or len(set(cert["hom_dims"].values())) > 1:
        report["verdict"] = "NotIsomorphic"
        return EXIT_NEGATIVE
    wit = ok.homotopy_iso(T, S, seed=args.seed)
    if wit is None:
        report["verdict"] = "Inconclusive"
        return EXIT_INCONCLUSIVE
    f, g = wit
    cert["witness"] = {"f": chain_map_to_doc(T, S, f), "g": chain_map_to_doc(S, T, g)}
    report["verdict"] = "HomotopyEquivalent"
    return EXIT_OK


# -- output


def render_text(report: dict) -> str:
    lines = [f"verdict: {report.get('verdict')}"]
    for k, v in sorted(report.get("certificates", {}).items()):
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="algebra JSON file or builtin name")
    common.add_argument("--seed", type=int, default=int(os.environ.get("SMS_FORGE_SEED", "0")))
    common.add_argument("--format", choices=("json", "dot", "text"), default="text")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")

    parser = argparse.ArgumentParser(prog="sms-forge", description="Simple-minded systems and Okuyama tilting.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("algebra-check", parents=[common])

    sms = sub.add_parser("sms").add_subparsers(dest="action", required=True)
    for action in ("verify", "mutate", "orbit"):
        p = sms.add_parser(action, parents=[common])
        p.add_argument("--sms", required=True, help="comma list of module names or a JSON file")
        p.add_argument("--at", action="append", default=[], help="mutation subset; repeat to chain")
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--max-nodes", type=int, default=32)
        p.add_argument("--direction", choices=("plus", "minus"), default="plus")
        p.add_argument("--strict", action="store_true")

    okp = sub.add_parser("okuyama").add_subparsers(dest="action", required=True)
    for action in ("build", "check", "mutate-eq"):
        p = okp.add_parser(action, parents=[common])
        p.add_argument("--at", default="", help="comma list of vertices, 'all' or 'none'")
    return parser


COMMANDS = {
    ("algebra-check", None): cmd_algebra_check,
    ("sms", "verify"): cmd_sms_verify,
    ("sms", "mutate"): cmd_sms_mutate,
    ("sms", "orbit"): cmd_sms_orbit,
    ("okuyama", "build"): cmd_okuyama_build,
    ("okuyama", "check"): cmd_okuyama_check,
    ("okuyama", "mutate-eq"): cmd_okuyama_mutate_eq,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    action = getattr(args, "action", None)
    if args.format == "dot" and (args.command, action) != ("sms", "orbit"):
        print("error: dot output is only available for sms orbit", file=sys.stderr)
        return EXIT_INPUT
    report = {"command": argv, "seed": args.seed}
    t0 = time.perf_counter()
    try:
        code = COMMANDS[(args.command, action)](args, report)
    except (DocError, PresentationError, InputError, NotSelfInjective, se.NotABrick, se.NotOrthogonal) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (se.CapExceeded, se.MinimalizationInconclusive) as e:
        report["verdict"] = se.INCONCLUSIVE
        report["certificates"] = {"reason": f"{type(e).__name__}: {e}"}
        code = EXIT_INCONCLUSIVE
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 3)}
    if args.format == "json":
        out.write(dumps(report) + "\n")
    elif args.format == "dot":
        out.write(orbit_dot(report["certificates"]))
    else:
        out.write(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
