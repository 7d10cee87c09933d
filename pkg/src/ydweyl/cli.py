"""Command-line front end: session files, dispatch, deterministic emission.

Session files are JSON with a group stanza, a cocycle stanza, named module
stanzas (explicit or presets) and named tuples; see README for the schema.
All validations run before any computation.  Output is deterministic: fixed
iteration orders, no timestamps.

Exit codes:
  0  success
  1  golden-file mismatch (or missing golden file)
  2  parse error (bad JSON, bad schema, bad flags)
  3  validation failure (cocycle, group, or module axioms)
  4  undecided at cutoff
  5  resource bound exceeded (vertex bound, truncation degree)
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cyclo import CycScalar, parse_scalar
from .errors import (ResourceBoundError, UndecidedAtCutoff, ValidationError,
                     YDWeylError)
from .groupdata import (Cocycle3, Group, check_3cocycle, group_from_cayley,
                        make_abelian_group, sign_cocycle)
from .nichols import nichols_truncate
from .reflect import ad_power_module, cartan_matrix, reflect
from .weylgraph import (build_cartan_graph, check_axioms,
                        infinite_dim_certificate, is_finite, is_standard,
                        real_roots, to_dot)
from .ydcat import (PRESET_NAMES, ModuleTuple, YDModule, preset_module,
                    yd_axiom_check)

EXIT_OK = 0
EXIT_GOLDEN = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_UNDECIDED = 4
EXIT_RESOURCE = 5


class SessionError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class Session:
    def __init__(self, data: dict):
        self.cutoffs = {"max_degree": 8, "ad_cutoff": 8,
                        "vertex_bound": 64, "root_bound": 50}
        self.cutoffs.update(data.get("cutoffs", {}))
        self.group = self._load_group(data)
        self.cocycle = self._load_cocycle(data)
        self.modules: dict[str, YDModule] = {}
        for name, stanza in sorted(data.get("modules", {}).items()):
            self.modules[name] = self._load_module(name, stanza)
        self.tuples: dict[str, ModuleTuple] = {}
        for name, entries in sorted(data.get("tuples", {}).items()):
            try:
                mods = [self.modules[e] for e in entries]
            except KeyError as exc:
                raise SessionError(f"tuple {name!r} references unknown module "
                                   f"{exc.args[0]!r}", EXIT_PARSE)
            self.tuples[name] = ModuleTuple(mods)

    def _load_group(self, data) -> Group:
        stanza = data.get("group")
        if not isinstance(stanza, dict):
            raise SessionError("missing or malformed 'group' stanza", EXIT_PARSE)
        try:
            if "abelian" in stanza:
                return make_abelian_group(stanza["abelian"])
            if "cayley" in stanza:
                return group_from_cayley(stanza["cayley"])
        except ValidationError as exc:
            raise SessionError(str(exc), EXIT_VALIDATION)
        except (TypeError, ValueError) as exc:
            raise SessionError(f"bad group stanza: {exc}", EXIT_PARSE)
        raise SessionError("group stanza needs 'abelian' or 'cayley'", EXIT_PARSE)

    def _load_cocycle(self, data) -> Cocycle3:
        stanza = data.get("cocycle")
        if not isinstance(stanza, dict):
            raise SessionError("missing or malformed 'cocycle' stanza", EXIT_PARSE)
        try:
            if stanza.get("sign3"):
                return sign_cocycle(self.group)
            if stanza.get("trivial"):
                return Cocycle3.trivial(self.group)
            if "table" in stanza:
                flat = _flatten(stanza["table"])
                values = [_scalar(x) for x in flat]
                return Cocycle3(self.group, values)
        except ValidationError as exc:
            raise SessionError(str(exc), EXIT_VALIDATION)
        except (TypeError, ValueError) as exc:
            raise SessionError(f"bad cocycle stanza: {exc}", EXIT_PARSE)
        raise SessionError("cocycle stanza needs 'sign3', 'trivial' or 'table'",
                           EXIT_PARSE)

    def _load_module(self, name, stanza) -> YDModule:
        try:
            if "preset" in stanza:
                preset = stanza["preset"]
                if preset not in PRESET_NAMES:
                    raise SessionError(f"unknown preset {preset!r}", EXIT_PARSE)
                return preset_module(preset, self.group, self.cocycle)
            degrees = stanza["degrees"]
            action = {int(g): [[_scalar(x) for x in row] for row in mat]
                      for g, mat in stanza["action"].items()}
            return YDModule(self.group, self.cocycle, degrees, action, name=name)
        except SessionError:
            raise
        except ValidationError as exc:
            raise SessionError(f"module {name!r}: {exc}", EXIT_VALIDATION)
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise SessionError(f"malformed module stanza {name!r}: {exc}",
                               EXIT_PARSE)

    def resolve(self, name) -> ModuleTuple:
        if name in self.tuples:
            return self.tuples[name]
        if name in self.modules:
            return ModuleTuple([self.modules[name]])
        raise SessionError(f"unknown module or tuple {name!r}", EXIT_PARSE)

    def validate_all(self) -> list[str]:
        lines = []
        rep = self.group.check()
        lines.append(f"group: order {self.group.order}: {rep.summary()}")
        if not rep.ok:
            raise SessionError("\n".join(lines), EXIT_VALIDATION)
        crep = check_3cocycle(self.cocycle)
        n4 = self.group.order ** 4
        lines.append(f"cocycle: pentagon over {n4} quadruples: {crep.summary()}")
        if not crep.ok:
            raise SessionError("\n".join(lines), EXIT_VALIDATION)
        for name, mod in sorted(self.modules.items()):
            mrep = yd_axiom_check(mod)
            lines.append(f"module {name}: dim {mod.dim}: {mrep.summary()}")
            if not mrep.ok:
                raise SessionError("\n".join(lines), EXIT_VALIDATION)
        return lines


def _flatten(nested):
    out = []
    stack = [nested]
    while stack:
        x = stack.pop()
        if isinstance(x, list):
            stack.extend(reversed(x))
        else:
            out.append(x)
    return out


def _scalar(x) -> CycScalar:
    if isinstance(x, int):
        return CycScalar.from_rational(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise ValueError(f"scalar literals are strings or integers, got {x!r}")


def load_session(path: str) -> Session:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SessionError(f"cannot read session file: {exc}", EXIT_PARSE)
    except json.JSONDecodeError as exc:
        raise SessionError(f"session file is not valid JSON: {exc}", EXIT_PARSE)
    session = Session(data)
    session.validate_all()
    return session


# ---------------------------------------------------------------------------
# Commands.  Each returns the emitted text.
# ---------------------------------------------------------------------------

def cmd_validate(session: Session, args) -> str:
    lines = session.validate_all()
    lines.append("all checks passed")
    return "\n".join(lines) + "\n"


def cmd_nichols(session: Session, args) -> str:
    target = session.resolve(args.name)
    trunc = nichols_truncate(target, args.max_degree)
    trunc.prefetch()
    lines = [f"graded dimensions of B({args.name}) up to degree {args.max_degree}"]
    if args.json:
        payload = {
            "dims": list(trunc.graded_dims()),
            "multidegree_dims": {
                " ".join(map(str, md)): trunc.dim_multidegree(md)
                for n in range(1, args.max_degree + 1)
                for md in trunc.multidegrees(n)
                if trunc.dim_multidegree(md) > 0},
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines.append("degree  dim")
    for n, d in enumerate(trunc.graded_dims()):
        lines.append(f"{n:>6}  {d}")
    if target.theta > 1:
        lines.append("support (multidegree: dim):")
        for n in range(1, args.max_degree + 1):
            for md in trunc.multidegrees(n):
                d = trunc.dim_multidegree(md)
                if d:
                    lines.append(f"  ({', '.join(map(str, md))}): {d}")
    return "\n".join(lines) + "\n"


def cmd_ad(session: Session, args) -> str:
    target = session.resolve(args.tuple)
    i, j = args.i - 1, args.j - 1
    if not (0 <= i < target.theta and 0 <= j < target.theta) or i == j:
        raise SessionError("ad needs distinct 1-based slot indices", EXIT_PARSE)
    levels = ad_power_module(target, i, j, cutoff=session.cutoffs["ad_cutoff"])
    lines = [f"ad levels for slots ({args.i}, {args.j}) of {args.tuple}"]
    for level in levels.levels:
        degs = ", ".join(session.group.element_name(d)
                         for d in level.module.degrees)
        lines.append(f"level {level.n}: dim {len(level.basis)} degrees [{degs}]")
    if levels.undecided:
        lines.append(f"undecided at cutoff {levels.cutoff}")
        raise SessionError("\n".join(lines), EXIT_UNDECIDED)
    lines.append(f"vanishing at level {levels.m + 1}: m = {levels.m}")
    return "\n".join(lines) + "\n"


def cmd_cartan(session: Session, args) -> str:
    target = session.resolve(args.tuple)
    A = cartan_matrix(target, cutoff=session.cutoffs["ad_cutoff"])
    lines = [f"Cartan matrix of {args.tuple}"]
    for row in A:
        lines.append("  [" + ", ".join(f"{x:>2}" for x in row) + "]")
    return "\n".join(lines) + "\n"


def cmd_reflect(session: Session, args) -> str:
    target = session.resolve(args.tuple)
    i = args.i - 1
    if not 0 <= i < target.theta:
        raise SessionError("reflect needs a 1-based slot index", EXIT_PARSE)
    refl = reflect(target, i, cutoff=session.cutoffs["ad_cutoff"])
    payload = {"modules": {}}
    for k, mod in enumerate(refl):
        stanza = {
            "degrees": list(mod.degrees),
            "action": {str(g): [[str(mod.act_matrix(g)[r][c])
                                 for c in range(mod.dim)]
                                for r in range(mod.dim)]
                       for g in session.group.elements()},
        }
        payload["modules"][f"R{args.i}_{args.tuple}_{k + 1}"] = stanza
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _graph_for(session: Session, name: str):
    target = session.resolve(name)
    return build_cartan_graph(
        target,
        ad_cutoff=session.cutoffs["ad_cutoff"],
        max_degree=session.cutoffs["max_degree"],
        vertex_bound=session.cutoffs["vertex_bound"])


def cmd_graph(session: Session, args) -> str:
    graph = _graph_for(session, args.tuple)
    rep = check_axioms(graph)
    out = to_dot(graph)
    out += (f"// vertices: {graph.vertex_count()}\n"
            f"// axioms: {rep.summary()}\n"
            f"// standard: {'yes' if is_standard(graph) else 'no'}\n")
    if not rep.ok:
        raise SessionError(out, EXIT_VALIDATION)
    return out


def cmd_roots(session: Session, args) -> str:
    graph = _graph_for(session, args.tuple)
    bound = args.bound or session.cutoffs["root_bound"]
    lines = [f"real roots of {args.tuple} (coordinate bound {bound})"]
    for v in graph.vertices:
        roots, truncated = real_roots(graph, v.vid, bound)
        label = graph.vertex_label(v.vid)
        if truncated:
            lines.append(f"vertex {v.vid} [{label}]: truncated at bound {bound}")
        else:
            shown = " ".join("(" + ",".join(map(str, r)) + ")" for r in roots)
            lines.append(f"vertex {v.vid} [{label}]: {len(roots)} roots: {shown}")
    result = is_finite(graph, bound)
    lines.append(f"finiteness: {result.status}")
    return "\n".join(lines) + "\n"


def cmd_certify(session: Session, args) -> str:
    target = session.resolve(args.tuple)
    cert = infinite_dim_certificate(
        target,
        ad_cutoff=session.cutoffs["ad_cutoff"],
        max_degree=session.cutoffs["max_degree"],
        vertex_bound=session.cutoffs["vertex_bound"])
    return "\n".join(cert.lines()) + "\n"


COMMANDS = {
    "validate": cmd_validate,
    "nichols": cmd_nichols,
    "ad": cmd_ad,
    "cartan": cmd_cartan,
    "reflect": cmd_reflect,
    "graph": cmd_graph,
    "roots": cmd_roots,
    "certify": cmd_certify,
}


def _golden_name(args) -> str:
    parts = [args.command]
    for attr in ("name", "tuple", "i", "j", "max_degree", "bound"):
        value = getattr(args, attr, None)
        if value is not None:
            parts.append(str(value))
    return "_".join(parts) + ".txt"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ydweyl",
        description="Nichols-algebra reflections and Weyl groupoids over (kG, Phi)")
    parser.add_argument("--session", required=True, help="session JSON file")
    parser.add_argument("--golden", metavar="DIR",
                        help="compare emission against DIR/<command>... and "
                             "exit 1 on mismatch")
    parser.add_argument("--golden-write", metavar="DIR",
                        help="write the emission as the new golden file")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate")
    p = sub.add_parser("nichols")
    p.add_argument("name")
    p.add_argument("--max-degree", type=int, default=4, dest="max_degree")
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("ad")
    p.add_argument("tuple")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p = sub.add_parser("cartan")
    p.add_argument("tuple")
    p = sub.add_parser("reflect")
    p.add_argument("tuple")
    p.add_argument("i", type=int)
    p = sub.add_parser("graph")
    p.add_argument("tuple")
    p = sub.add_parser("roots")
    p.add_argument("tuple")
    p.add_argument("--bound", type=int, default=None)
    p = sub.add_parser("certify")
    p.add_argument("tuple")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        session = load_session(args.session)
        output = COMMANDS[args.command](session, args)
    except SessionError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except UndecidedAtCutoff as exc:
        print(f"undecided at cutoff: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except ResourceBoundError as exc:
        print(f"resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValidationError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except YDWeylError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(output)
    if args.golden_write:
        os.makedirs(args.golden_write, exist_ok=True)
        path = os.path.join(args.golden_write, _golden_name(args))
        with open(path, "w") as fh:
            fh.write(output)
    if args.golden:
        path = os.path.join(args.golden, _golden_name(args))
        try:
            with open(path) as fh:
                expected = fh.read()
        except OSError:
            print(f"golden file missing: {path}", file=sys.stderr)
            return EXIT_GOLDEN
        if expected != output:
            print(f"golden mismatch against {path}", file=sys.stderr)
            return EXIT_GOLDEN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
