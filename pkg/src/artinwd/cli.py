"""Command line front end: ``artinwd <command> FIXTURE [flags]``.

Exit codes: 0 success, 1 validation or parse error, 2 mathematical ambiguity, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .chars import decompose, induce, trivial_character
from .errors import AmbiguityError, ArtinError, InconsistencyError, ValidationError
from .exact.cyclotomic import Cyclotomic
from .exact.finfield import ff_orbit_resolvent
from .exact.poly import UniPoly
from .fixture import Fixture, parse_fixture
from .groups import format_cycles
from .localgal import (
    conductor_exponent,
    discriminant_valuation,
    frobenius_class,
    local_polynomial,
    swan_pairing,
)
from .lseries import (
    SplittingRule,
    dirichlet_coefficients,
    functional_equation_data,
    zeta_identity_check,
)
from .weildeligne import (
    ec_count_extension,
    ec_local_wd,
    ec_point_count_bruteforce,
    wd_conductor,
    wd_local_polynomial,
    wd_tensor,
)

EXIT_OK, EXIT_INVALID, EXIT_AMBIGUOUS, EXIT_IO = 0, 1, 2, 3


class Report:
    """Collects text lines and key=value records; renders one of them."""

    def __init__(self, command: str, fmt: str):
        self.command = command
        self.fmt = fmt
        self.lines = []
        self.records = []

    def add(self, text: str, **record):
        self.lines.append(text)
        self.records.append(record)

    def render(self) -> str:
        if self.fmt == "text":
            return "\n".join(self.lines)
        out = []
        for rec in self.records:
            parts = [self.command] + [f"{k}={_field(v)}" for k, v in sorted(rec.items())]
            out.append(" ".join(parts))
        return "\n".join(out)


def _field(v) -> str:
    if isinstance(v, Cyclotomic):
        s = v.to_literal()
    elif isinstance(v, UniPoly):
        s = v.to_string()
    elif isinstance(v, (list, tuple)):
        s = ",".join(_field(x) for x in v)
    else:
        s = str(v)
    return s.replace(" ", "")


def _lit(values) -> str:
    return "[" + ", ".join(v.to_literal() for v in values) + "]"


def _names(fx: Fixture) -> dict:
    """Character name for each value tuple, preferring user names over chiN."""
    out = {}
    for name, chi in fx.characters.items():
        if chi.values not in out or out[chi.values].startswith("chi"):
            out[chi.values] = name
    return out


def _table_names(fx: Fixture):
    table = fx.character_table()
    names = _names(fx)
    return table, [names.get(r.values, f"chi{i}") for i, r in enumerate(table.rows, 1)]


def _decomposition_text(mult, names) -> str:
    parts = [f"{m}*{n}" if m > 1 else n for m, n in zip(mult, names) if m]
    return " + ".join(parts) or "0"


def _need(value, what):
    if value is None:
        raise ValidationError(f"{what} is required for this command")
    return value


def _ramification(fx: Fixture):
    if fx.ramification is None:
        raise ValidationError("fixture has no [ramification] section")
    return fx.ramification


# -- commands ------------------------------------------------------------


def cmd_validate(fx: Fixture, args, rep: Report):
    G = fx.group
    rep.add(f"group: order {G.order}, class sizes {','.join(map(str, G.classes.sizes))}",
            order=G.order, class_sizes=list(G.classes.sizes))
    if fx.characters:
        table, _ = _table_names(fx)
        for name, chi in fx.characters.items():
            decompose(chi, table)
        rep.add(f"characters: {len(fx.characters)} genuine", characters=len(fx.characters))
    if fx.ramification is not None:
        data = fx.ramification
        for name, chi in fx.characters.items():
            conductor_exponent(chi, data)
            swan_pairing(chi, data)
        rep.add(f"ramification: p={data.p} q={data.q} e={data.inertia.order} f={data.residue_degree}",
                p=data.p, q=data.q, e=data.inertia.order, f=data.residue_degree)
    for name, W in fx.wd.items():
        rep.add(f"wd {name}: dim {W.dim}", wd=name, dim=W.dim)
    if fx.elliptic is not None:
        rep.add(f"elliptic: {fx.elliptic.kind} q={fx.elliptic.q}", elliptic=fx.elliptic.kind, q=fx.elliptic.q)
    if fx.global_config is not None:
        cfg = fx.global_config
        rep.add(f"global: {cfg.kind} dim {cfg.dim}", kind=cfg.kind, dim=cfg.dim)
    rep.add("ok", status="ok")


def cmd_table(fx: Fixture, args, rep: Report):
    table, names = _table_names(fx)
    G = fx.group
    rep.add(f"# class sizes {', '.join(map(str, G.classes.sizes))}; representatives "
            + ", ".join(G.labels[c[0]] for c in G.classes),
            class_sizes=list(G.classes.sizes))
    for name, row in zip(names, table.rows):
        rep.add(f"{name} = {_lit(row.values)}", name=name, values=list(row.values))


def cmd_induce(fx: Fixture, args, rep: Report):
    sub = _need(args.subgroup, "--subgroup")
    H = fx.subgroup(sub)
    rep_name = args.rep[0] if args.rep else None
    if rep_name is None:
        chi_h = trivial_character(H.group)
        rep_name = "one"
    else:
        chars = fx.sub_characters.get(sub, {})
        if rep_name not in chars:
            raise ValidationError(f"no character {rep_name!r} in [characters.{sub}]")
        chi_h = chars[rep_name]
    ind = induce(H, chi_h)
    table, names = _table_names(fx)
    mult = decompose(ind, table)
    rep.add(f"Ind = {_lit(ind.values)}", values=list(ind.values))
    rep.add(f"decomposition: {_decomposition_text(mult, names)}", multiplicities=mult)


def _artin_rep(fx: Fixture, args) -> tuple:
    if not args.rep:
        raise ValidationError("--rep is required for this command")
    return args.rep[0], fx.character(args.rep[0])


def cmd_local_poly(fx: Fixture, args, rep: Report):
    name, chi = _artin_rep(fx, args)
    P = local_polynomial(chi, _ramification(fx))
    rep.add(f"P = {P.to_string()}", rep=name, P=P)


def cmd_conductor(fx: Fixture, args, rep: Report):
    name, chi = _artin_rep(fx, args)
    data = _ramification(fx)
    ce = conductor_exponent(chi, data)
    try:
        swan_pairing(chi, data)
        check = "ok"
    except InconsistencyError:
        check = "mismatch"
    rep.add(f"tame={ce.tame} wild={ce.wild} total={ce.total} swan_check={check}",
            rep=name, tame=ce.tame, wild=ce.wild, total=ce.total, swan_check=check)
    if check != "ok":
        raise InconsistencyError("swan pairing disagrees with the wild sum")


def cmd_disc(fx: Fixture, args, rep: Report):
    sub = _need(args.subgroup, "--subgroup")
    v = discriminant_valuation(_ramification(fx), fx.subgroup(sub))
    rep.add(f"v(disc) = {v}", subgroup=sub, valuation=v)


def _wd_components(W, names):
    out = []
    for c in W.components:
        out.append(c.describe(names))
    return out


def cmd_wd(fx: Fixture, args, rep: Report):
    names = _names(fx)
    if not args.rep:
        raise ValidationError("--rep NAME (a [wd.NAME] section) is required")
    if args.action == "tensor":
        if len(args.rep) != 2:
            raise ValidationError("wd tensor needs two --rep flags")
        A, B = fx.wd_rep(args.rep[0]), fx.wd_rep(args.rep[1])
        T = wd_tensor(A, B, fx.character_table())
        for line in _wd_components(T, names):
            rep.add(line, component=line)
        rep.add(f"dim = {T.dim}", dim=T.dim)
        return
    W = fx.wd_rep(args.rep[0])
    if args.action == "poly":
        P = wd_local_polynomial(W)
        rep.add(f"P = {P.to_string()}", rep=args.rep[0], P=P)
    else:
        n = wd_conductor(W)
        rep.add(f"conductor = {n}", rep=args.rep[0], conductor=n)


def cmd_ec(fx: Fixture, args, rep: Report):
    E = _need(fx.elliptic, "an [elliptic] section")
    if args.action == "count":
        curve = _need(fx.elliptic_curve, "[elliptic] curve")
        q = E.q ** (args.degree or 1)
        n = ec_point_count_bruteforce(curve, q)
        rep.add(f"#E(F_{q}) = {n}", q=q, count=n)
    elif args.action == "extension":
        if E.kind != "good":
            raise ValidationError("point counts over extensions need good reduction")
        n = _need(args.degree, "--degree")
        count = ec_count_extension(E.a, E.q, n)
        rep.add(f"#E(F_{E.q}^{n}) = {count}", a=E.a, q=E.q, degree=n, count=count)
    else:
        W = ec_local_wd(E)
        for line in _wd_components(W, _names(fx)):
            rep.add(line, component=line)
        P = wd_local_polynomial(W)
        n = wd_conductor(W)
        rep.add(f"P = {P.to_string()}", P=P)
        rep.add(f"conductor = {n}", conductor=n)


def cmd_frobenius(fx: Fixture, args, rep: Report):
    cfg = _need(fx.global_config, "a [global] section")
    if not isinstance(cfg.rule, SplittingRule):
        raise ValidationError("frobenius needs a splitting rule")
    p = _need(args.prime, "--prime")
    rule = cfg.rule
    G = rule.group
    res = frobenius_class(rule.coeffs, p, G, rule.roots)
    g = G.classes[res.class_index][0]
    rep.add(
        f"class {res.class_index} ({format_cycles(G.perms[g])}), cycle type "
        f"{','.join(map(str, res.cycle_type))}, order {res.order}, via {res.method}",
        prime=p, class_index=res.class_index, representative=format_cycles(G.perms[g]),
        cycle_type=list(res.cycle_type), order=res.order, method=res.method.replace(" ", "_"),
    )
    if res.resolvents:
        r1, r2, obs = res.resolvents
        rep.add(f"r1 = {r1}, r2 = {r2}, r1 + r2 = {r1 + r2}, orbit resolvent mod {p} = {obs}",
                r1=r1, r2=r2, e2=r1 + r2, observed=obs)
    if args.stride is not None:
        v = ff_orbit_resolvent(rule.coeffs, p, args.stride)
        rep.add(f"orbit resolvent (stride {args.stride}) mod {p} = {v}", stride=args.stride, value=v)


def cmd_lseries(fx: Fixture, args, rep: Report):
    cfg = _need(fx.global_config, "a [global] section")
    series = dirichlet_coefficients(cfg, args.limit or 10)
    coeffs = [c.to_literal().replace(" ", "") for c in series.coeffs]
    rep.add(",".join(coeffs), limit=series.limit, coefficients=coeffs)


def cmd_fe_data(fx: Fixture, args, rep: Report):
    cfg = _need(fx.global_config, "a [global] section")
    fe = functional_equation_data(cfg)
    if fe.kind == "artin":
        rep.add(
            f"A = {fe.A}, conductor = {fe.conductor}, (d+, d-) = ({fe.d_plus}, {fe.d_minus}), "
            f"root number unknown with |w| = 1" + ("" if fe.self_dual else ", not self-dual"),
            A=fe.A, conductor=fe.conductor, d_plus=fe.d_plus, d_minus=fe.d_minus,
            root_number="unknown", self_dual=str(fe.self_dual).lower(),
        )
    else:
        rep.add(
            f"A = {fe.A}, conductor = {fe.conductor}, gamma_C factors = {fe.gamma_C_count}, "
            f"root number unknown with |w| = 1",
            A=fe.A, conductor=fe.conductor, gamma_C=fe.gamma_C_count, root_number="unknown",
        )


def cmd_zeta_identity(fx: Fixture, args, rep: Report):
    zeta = _need(fx.zeta, "a [zeta] section")
    N = args.limit or zeta["limit"]
    report = zeta_identity_check(zeta["lhs"], zeta["rhs"], fx.global_config.rule, N)
    if not report.character_identity:
        rep.add(f"character identity: fails ({report.message})", character_identity="fails")
        raise ValidationError(report.message)
    rep.add("character identity: holds", character_identity="holds")
    if report.coefficients_agree:
        rep.add(f"coefficients: agree for n <= {N}", coefficients="agree", limit=N)
    else:
        rep.add(f"coefficients: differ at n = {report.first_mismatch}", coefficients="differ",
                first_mismatch=report.first_mismatch)
        raise InconsistencyError(report.message)


COMMANDS = {
    "validate": cmd_validate,
    "table": cmd_table,
    "induce": cmd_induce,
    "local-poly": cmd_local_poly,
    "conductor": cmd_conductor,
    "disc": cmd_disc,
    "wd": cmd_wd,
    "ec": cmd_ec,
    "frobenius": cmd_frobenius,
    "lseries": cmd_lseries,
    "fe-data": cmd_fe_data,
    "zeta-identity": cmd_zeta_identity,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fixture", help="fixture file")
    common.add_argument("--rep", action="append", help="character or WD representation name (repeat for wd tensor)")
    common.add_argument("--subgroup", help="subgroup name")
    common.add_argument("--limit", type=int, help="number of Dirichlet coefficients")
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--prime", type=int, help="prime for Frobenius probing")
    common.add_argument("--stride", type=int, help="stride of the orbit resolvent")
    common.add_argument("--degree", type=int, help="extension degree for point counts")

    parser = argparse.ArgumentParser(prog="artinwd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"artinwd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        if name in ("wd", "ec"):
            p = sub.add_parser(name)
            actions = ("poly", "cond", "tensor") if name == "wd" else ("count", "extension", "wd")
            p.add_argument("action", choices=actions)
            _inherit(p, common)
        else:
            sub.add_parser(name, parents=[common])
    return parser


def _inherit(p, common):
    for action in common._actions:
        p._add_action(action)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    name = args.command
    record_name = f"{name}-{args.action}" if name in ("wd", "ec") else name
    rep = Report(record_name, args.format)
    code = EXIT_OK
    try:
        fx = parse_fixture(args.fixture)
        COMMANDS[name](fx, args, rep)
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_IO
    except AmbiguityError as exc:
        print(f"ambiguous: {exc}", file=err)
        code = EXIT_AMBIGUOUS
    except (ArtinError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        code = EXIT_INVALID
    text = rep.render()
    if text:
        print(text, file=out)
    return code


def main(argv=None):
    sys.exit(run(argv))
