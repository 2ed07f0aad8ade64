"""Fixture documents: a small sectioned key/value format and its semantic loader.

Grammar::

    document := (blank | comment | header | entry)*
    header   := "[" name ("." name)* "]"
    entry    := key "=" value
    value    := atom | string | "[" (value ("," value)* ","?)? "]"
              | "{" (key "=" value ("," key "=" value)* ","?)? "}"
    atom     := integer | rational | cyclotomic literal | permutation | identifier | true | false

Arrays and records may span lines; ``#`` starts a comment outside strings.
Permutations use cycle notation on 1-based points, e.g. ``(1 2 3)(4 5)`` or ``()``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .chars import CharacterTable, ClassFunction, character_table, decompose, trivial_character
from .errors import ParseError, ValidationError
from .exact.cyclotomic import Cyclotomic, cyclo_normalize
from .exact.poly import UniPoly, parse_int_poly
from .groups import FiniteGroup, Subgroup, from_permutations, group_validate, parse_cycles
from .localgal import RamificationData, conductor_exponent, local_polynomial, validate_ramification
from .lseries import ClassRule, CurveRule, GlobalConfig, SplittingRule
from .weildeligne import (
    EllipticLocalData,
    UnramifiedTwist,
    WDComponent,
    WDRep,
    ec_point_count_bruteforce,
)

__all__ = [
    "Ident",
    "Perm",
    "Document",
    "Fixture",
    "parse_document",
    "serialize_document",
    "parse_fixture",
    "load_fixture",
]


class Ident(str):
    """Bare identifier value (as opposed to a quoted string)."""

    def __repr__(self):
        return f"Ident({str(self)!r})"


@dataclass(frozen=True)
class Perm:
    """Permutation in cycle notation, 1-based, cycles kept as written minus 1-cycles."""

    cycles: tuple

    @classmethod
    def parse(cls, text: str) -> "Perm":
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", text):
            pts = tuple(int(x) for x in body.split())
            if len(pts) > 1:
                cycles.append(pts)
        return cls(tuple(cycles))

    def text(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles) or "()"

    def to_tuple(self, degree: int) -> tuple:
        return parse_cycles(self.text(), degree)

    @property
    def support(self) -> int:
        return max((max(c) for c in self.cycles), default=0)


_PERM_RE = re.compile(r"(\(\s*\d*(\s+\d+)*\s*\))+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass
class Entry:
    value: object
    line: int


@dataclass
class Document:
    sections: dict = field(default_factory=dict)  # name -> {key: Entry}
    section_lines: dict = field(default_factory=dict)
    source: str = "<fixture>"

    def loc(self, section, key=None) -> str:
        if key is not None and section in self.sections and key in self.sections[section]:
            return f"{self.source}:{self.sections[section][key].line}: [{section}] {key}"
        if section in self.section_lines:
            return f"{self.source}:{self.section_lines[section]}: [{section}]"
        return f"{self.source}: [{section}]"

    def values(self) -> dict:
        return {s: {k: e.value for k, e in kv.items()} for s, kv in self.sections.items()}


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.pos = 0
        self.source = source

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return f"{self.source}:{line}:{col}"

    def line(self, pos=None):
        return self.text.count("\n", 0, self.pos if pos is None else pos) + 1

    def error(self, msg, pos=None):
        return ParseError(msg, self.where(pos))

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_inline(self):
        while self.peek() in (" ", "\t", "\r"):
            self.pos += 1
        if self.peek() == "#":
            while self.peek() not in ("\n", ""):
                self.pos += 1

    def skip_all(self):
        while True:
            self.skip_inline()
            if self.peek() == "\n":
                self.pos += 1
            else:
                return

    def value(self):
        self.skip_inline()
        c = self.peek()
        if c == "[":
            return self.array()
        if c == "{":
            return self.record()
        if c == '"':
            return self.string()
        return self.atom()

    def array(self):
        start = self.pos
        self.pos += 1
        out = []
        while True:
            self.skip_all()
            if self.peek() == "]":
                self.pos += 1
                return out
            if self.peek() == "":
                raise self.error("unterminated array", start)
            out.append(self.value())
            self.skip_all()
            if self.peek() == ",":
                self.pos += 1
            elif self.peek() != "]":
                raise self.error("expected ',' or ']' in array")

    def record(self):
        start = self.pos
        self.pos += 1
        out = {}
        while True:
            self.skip_all()
            if self.peek() == "}":
                self.pos += 1
                return out
            if self.peek() == "":
                raise self.error("unterminated record", start)
            kpos = self.pos
            key = self.key()
            if key in out:
                raise self.error(f"duplicate record key {key!r}", kpos)
            self.skip_inline()
            if self.peek() != "=":
                raise self.error("expected '=' in record")
            self.pos += 1
            out[key] = self.value()
            self.skip_all()
            if self.peek() == ",":
                self.pos += 1
            elif self.peek() != "}":
                raise self.error("expected ',' or '}' in record")

    def key(self):
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected a key")
        self.pos = m.end()
        tok = m.group()
        return int(tok) if tok.isdigit() else tok

    def string(self):
        start = self.pos
        self.pos += 1
        out = []
        while True:
            c = self.peek()
            if c in ("", "\n"):
                raise self.error("unterminated string", start)
            self.pos += 1
            if c == '"':
                return "".join(out)
            if c == "\\":
                e = self.peek()
                self.pos += 1
                if e not in ('"', "\\"):
                    raise self.error(f"unknown escape \\{e}")
                out.append(e)
            else:
                out.append(c)

    def atom(self):
        start = self.pos
        depth = 0
        while True:
            c = self.peek()
            if c == "" or c == "\n" or c == "#":
                break
            if depth == 0 and c in ",]}":
                break
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
                if depth < 0:
                    raise self.error("unbalanced ')'")
            self.pos += 1
        raw = self.text[start : self.pos].strip()
        if depth:
            raise self.error("unbalanced '('", start)
        if not raw:
            raise self.error("expected a value", start)
        return _classify(raw, self.where(start))


def _classify(raw: str, loc: str):
    if raw in ("true", "false"):
        return raw == "true"
    if _INT_RE.fullmatch(raw):
        return int(raw)
    if _PERM_RE.fullmatch(raw):
        perm = Perm.parse(raw)
        pts = [x for c in perm.cycles for x in c]
        if len(pts) != len(set(pts)) or any(x < 1 for x in pts):
            raise ParseError(f"malformed permutation {raw!r}", loc)
        return perm
    if _IDENT_RE.fullmatch(raw) and raw != "z":
        return Ident(raw)
    try:
        return cyclo_normalize(raw)
    except ParseError as exc:
        raise ParseError(f"bad literal {raw!r}: {exc.bare_message}", loc) from None


def parse_document(text: str, source: str = "<fixture>") -> Document:
    r = _Reader(text, source)
    doc = Document(source=source)
    current = None
    while True:
        r.skip_all()
        if r.peek() == "":
            return doc
        if r.peek() == "[":
            start = r.pos
            end = text.find("]", start)
            nl = text.find("\n", start)
            if end < 0 or (0 <= nl < end):
                raise r.error("unterminated section header")
            name = text[start + 1 : end].strip()
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*(\.[A-Za-z_][A-Za-z0-9_]*)*", name):
                raise r.error(f"bad section name {name!r}")
            if name in doc.sections:
                raise r.error(f"duplicate section [{name}]")
            doc.sections[name] = {}
            doc.section_lines[name] = r.line(start)
            current = name
            r.pos = end + 1
            r.skip_inline()
            if r.peek() not in ("\n", ""):
                raise r.error("unexpected text after section header")
            continue
        kpos = r.pos
        m = _IDENT_RE.match(text, r.pos)
        if not m:
            raise r.error("expected a key or a section header")
        key = m.group()
        r.pos = m.end()
        if current is None:
            raise r.error(f"key {key!r} outside any section", kpos)
        if key in doc.sections[current]:
            raise r.error(f"duplicate key {key!r} in [{current}]", kpos)
        r.skip_inline()
        if r.peek() != "=":
            raise r.error(f"expected '=' after {key!r}")
        r.pos += 1
        value = r.value()
        r.skip_inline()
        if r.peek() not in ("\n", ""):
            raise r.error("unexpected text after value")
        doc.sections[current][key] = Entry(value, r.line(kpos))


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Ident):
        return str(v)
    if isinstance(v, str):
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Cyclotomic):
        return v.to_literal()
    if isinstance(v, Perm):
        return v.text()
    if isinstance(v, list):
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k} = {_format_value(x)}" for k, x in v.items()) + "}"
    raise TypeError(f"cannot serialize {v!r}")


def serialize_document(doc: Document) -> str:
    out = []
    for name, entries in doc.sections.items():
        if out:
            out.append("")
        out.append(f"[{name}]")
        for key, e in entries.items():
            out.append(f"{key} = {_format_value(e.value)}")
    return "\n".join(out) + "\n"


# -- semantic layer -----------------------------------------------------

SCHEMA = {
    "group": {"generators", "degree", "table", "labels"},
    "subgroups": None,  # free names
    "characters": None,
    "characters.*": None,
    "ramification": {"p", "q", "frobenius", "chain"},
    "wd.*": {"components"},
    "elliptic": {"kind", "q", "a", "curve", "wd"},
    "global": {
        "kind", "rep", "dim", "rule", "polynomial", "roots", "modulus", "residues",
        "primes", "ramified", "conjugation", "curve", "bad", "trivial_at_bad",
    },
    "zeta": {"lhs", "rhs", "limit"},
    "meta": {"description", "source"},
}
COMPONENT_KEYS = {"rep", "unit", "weight", "sp", "block"}


def _schema_for(name):
    if name in SCHEMA:
        return name, SCHEMA[name]
    head = name.split(".")[0] + ".*"
    if "." in name and head in SCHEMA:
        return head, SCHEMA[head]
    return None, None


@dataclass(eq=False)
class Fixture:
    doc: Document
    group: FiniteGroup
    subgroups: dict
    characters: dict
    sub_characters: dict
    table: CharacterTable | None
    ramification: RamificationData | None
    wd: dict
    elliptic: EllipticLocalData | None
    elliptic_curve: tuple | None
    global_config: GlobalConfig | None
    zeta: dict | None

    def character(self, name: str) -> ClassFunction:
        if name not in self.characters:
            raise ValidationError(f"unknown character {name!r}; known: {', '.join(self.characters) or 'none'}")
        return self.characters[name]

    def subgroup(self, name: str) -> Subgroup:
        if name not in self.subgroups:
            raise ValidationError(f"unknown subgroup {name!r}; known: {', '.join(self.subgroups)}")
        return self.subgroups[name]

    def wd_rep(self, name: str) -> WDRep:
        if name not in self.wd:
            raise ValidationError(f"unknown Weil-Deligne representation {name!r}")
        return self.wd[name]

    def character_table(self) -> CharacterTable:
        if self.table is None:
            self.table = character_table(self.group)
        return self.table


class _Loader:
    def __init__(self, doc: Document):
        self.doc = doc
        self.v = doc.values()

    def err(self, msg, section, key=None):
        return ParseError(msg, self.doc.loc(section, key))

    def get(self, section, key, types, required=True, default=None):
        sec = self.v.get(section, {})
        if key not in sec:
            if required:
                raise self.err(f"missing required field {key!r}", section)
            return default
        val = sec[key]
        if not isinstance(val, types) or (isinstance(val, bool) and bool not in _tuple(types)):
            raise self.err(f"{key!r} has the wrong type ({type(val).__name__})", section, key)
        return val

    def check_keys(self):
        for name, entries in self.v.items():
            pattern, allowed = _schema_for(name)
            if pattern is None:
                raise self.err(f"unknown section [{name}]", name)
            if allowed is None:
                continue
            for key in entries:
                if key not in allowed:
                    raise self.err(f"unknown key {key!r} (allowed: {', '.join(sorted(allowed))})", name, key)

    # group and subgroups

    def group(self):
        if "group" not in self.v:
            return from_permutations([])
        gens = self.get("group", "generators", list, required=False)
        table = self.get("group", "table", list, required=False)
        labels = self.get("group", "labels", list, required=False)
        if (gens is None) == (table is None):
            raise self.err("give exactly one of 'generators' or 'table'", "group")
        if gens is not None:
            if not all(isinstance(g, Perm) for g in gens):
                raise self.err("generators must be permutations", "group", "generators")
            support = max((g.support for g in gens), default=0)
            degree = self.get("group", "degree", int, required=False, default=support)
            if degree < support:
                raise self.err(f"degree {degree} smaller than the points used ({support})", "group", "degree")
            try:
                return from_permutations([g.to_tuple(degree) for g in gens], degree=degree)
            except ValidationError as exc:
                raise self.err(str(exc), "group", "generators") from None
        if not all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in table):
            raise self.err("table must be a list of integer rows", "group", "table")
        try:
            return group_validate(table, labels=[str(x) for x in labels] if labels else None)
        except ValidationError as exc:
            raise self.err(str(exc), "group", "table") from None

    def element(self, G, val, section, key):
        if isinstance(val, Perm):
            if G.perms is None:
                raise self.err("permutation given for a group without permutations", section, key)
            if val.support > G.degree:
                raise self.err(f"{val.text()} moves points beyond the degree {G.degree}", section, key)
            try:
                return G.index_of_perm(val.to_tuple(G.degree))
            except ValidationError as exc:
                raise self.err(str(exc), section, key) from None
        if isinstance(val, int) and not isinstance(val, bool):
            if not 0 <= val < G.order:
                raise self.err(f"element index {val} out of range", section, key)
            return val
        raise self.err(f"expected a group element, got {val!r}", section, key)

    def subgroups(self, G):
        subs = {"G": G.whole, "trivial": G.trivial}
        for name, val in self.v.get("subgroups", {}).items():
            if name in subs:
                raise self.err(f"subgroup name {name!r} is reserved", "subgroups", name)
            if not isinstance(val, list):
                raise self.err("subgroup must be a list of generators", "subgroups", name)
            subs[name] = G.generate([self.element(G, x, "subgroups", name) for x in val])
        return subs

    # characters

    def char_values(self, group, vals, section, key):
        if not isinstance(vals, list) or not all(isinstance(x, (int, Cyclotomic)) and not isinstance(x, bool) for x in vals):
            raise self.err("character must be a list of cyclotomic values", section, key)
        try:
            return ClassFunction(group, vals)
        except ValidationError as exc:
            raise self.err(str(exc), section, key) from None

    def characters(self, G):
        sec = self.v.get("characters", {})
        chars = {}
        table = None
        if sec.get("compute_table") is True:
            table = character_table(G)
            for i, row in enumerate(table.rows, 1):
                chars[f"chi{i}"] = row
        elif "compute_table" in sec and not isinstance(sec["compute_table"], bool):
            raise self.err("compute_table must be true or false", "characters", "compute_table")
        for key, val in sec.items():
            if key in ("compute_table", "table"):
                continue
            chars[key] = self.char_values(G, val, "characters", key)
        if "table" in sec:
            names = sec["table"]
            if not isinstance(names, list) or not all(isinstance(n, Ident) for n in names):
                raise self.err("table must list character names", "characters", "table")
            missing = [n for n in names if n not in chars]
            if missing:
                raise self.err(f"unknown character {missing[0]!r} in table", "characters", "table")
            try:
                table = CharacterTable.from_rows(G, [chars[n] for n in names])
            except ValidationError as exc:
                raise self.err(f"supplied table rejected: {exc}", "characters", "table") from None
        return chars, table

    def sub_characters(self, subs):
        out = {}
        for name in self.v:
            if not name.startswith("characters."):
                continue
            sub = name.split(".", 1)[1]
            if sub not in subs:
                raise self.err(f"unknown subgroup {sub!r}", name)
            H = subs[sub]
            out[sub] = {k: self.char_values(H.group, v, name, k) for k, v in self.v[name].items()}
        return out

    # ramification

    def ramification(self, G, subs):
        if "ramification" not in self.v:
            return None
        s = "ramification"
        p = self.get(s, "p", int)
        q = self.get(s, "q", int, required=False, default=p)
        frob = self.element(G, self.get(s, "frobenius", (Perm, int)), s, "frobenius")
        chain_raw = self.get(s, "chain", list)
        chain = []
        for item in chain_raw:
            if isinstance(item, Ident):
                if item not in subs:
                    raise self.err(f"chain refers to unknown subgroup {item!r}", s, "chain")
                chain.append(subs[item])
            elif isinstance(item, list):
                elems = [self.element(G, x, s, "chain") for x in item]
                H = Subgroup(G, elems)
                try:
                    H.check()
                except ValidationError as exc:
                    raise self.err(f"chain entry {item}: {exc}", s, "chain") from None
                chain.append(H)
            else:
                raise self.err("chain entries must be subgroup names or element lists", s, "chain")
        try:
            return validate_ramification(G, chain, frob, p, q)
        except ValidationError as exc:
            raise self.err(str(exc), s) from None

    # Weil-Deligne

    def wd(self, chars, ram, table):
        out = {}
        for name in self.v:
            if not name.startswith("wd."):
                continue
            if ram is None:
                raise self.err("Weil-Deligne data needs a [ramification] section", name)
            comps = self.get(name, "components", list)
            built = []
            for rec in comps:
                if not isinstance(rec, dict):
                    raise self.err("components must be records", name, "components")
                extra = set(rec) - COMPONENT_KEYS
                if extra:
                    raise self.err(f"unknown component key {sorted(map(str, extra))[0]!r}", name, "components")
                rep = rec.get("rep")
                if rep is None:
                    chi = trivial_character(ram.G)
                elif rep in chars:
                    chi = chars[rep]
                    try:
                        decompose(chi, table or character_table(ram.G))
                    except ValidationError as exc:
                        raise self.err(f"{rep}: {exc}", name, "components") from None
                else:
                    raise self.err(f"component refers to unknown character {rep!r}", name, "components")
                unit = rec.get("unit", 1)
                weight = rec.get("weight", 0)
                sp = rec.get("sp", 1)
                if not isinstance(unit, (int, Cyclotomic)) or not isinstance(weight, int) or not isinstance(sp, int):
                    raise self.err("unit must be cyclotomic, weight and sp integers", name, "components")
                block = None
                if "block" in rec:
                    b = rec["block"]
                    if not isinstance(b, list) or not all(isinstance(x, (int, Cyclotomic)) for x in b):
                        raise self.err("block must list det(1 - Phi T) coefficients", name, "components")
                    block = UniPoly(b)
                try:
                    built.append(WDComponent(chi, UnramifiedTwist(unit, weight), sp, block))
                except ValidationError as exc:
                    raise self.err(str(exc), name, "components") from None
            out[name.split(".", 1)[1]] = WDRep(ram, tuple(built))
        return out

    # elliptic

    def elliptic(self, wd):
        if "elliptic" not in self.v:
            return None, None
        s = "elliptic"
        kind = self.get(s, "kind", Ident)
        q = self.get(s, "q", int)
        curve = self.get(s, "curve", list, required=False)
        if curve is not None and (len(curve) != 5 or not all(isinstance(c, int) for c in curve)):
            raise self.err("curve must list the five integers a1, a2, a3, a4, a6", s, "curve")
        a = self.get(s, "a", int, required=False)
        W = None
        if kind == "good" and a is None:
            if curve is None:
                raise self.err("good reduction needs 'a' or 'curve'", s)
            try:
                a = q + 1 - ec_point_count_bruteforce(tuple(curve), q)
            except ValidationError as exc:
                raise self.err(str(exc), s, "curve") from None
        if kind == "additive":
            ref = self.get(s, "wd", Ident)
            if ref not in wd:
                raise self.err(f"unknown Weil-Deligne representation {ref!r}", s, "wd")
            W = wd[ref]
        try:
            return EllipticLocalData(str(kind), q, a, W), tuple(curve) if curve else None
        except ValidationError as exc:
            raise self.err(str(exc), s) from None

    # global

    def class_index(self, G, val, section, key):
        if isinstance(val, Perm):
            return G.class_of(self.element(G, val, section, key))
        if isinstance(val, int) and not isinstance(val, bool):
            if not 0 <= val < len(G.classes):
                raise self.err(f"class index {val} out of range", section, key)
            return val
        raise self.err("expected a class index or a permutation", section, key)

    def global_config(self, G, chars, ram):
        if "global" not in self.v:
            return None
        s = "global"
        kind = str(self.get(s, "kind", Ident, required=False, default=Ident("artin")))
        rule_name = str(self.get(s, "rule", Ident))
        trivial_bad = self.get(s, "trivial_at_bad", bool, required=False, default=False)
        chi = None
        if kind == "artin":
            rep = self.get(s, "rep", Ident)
            if rep not in chars:
                raise self.err(f"unknown character {rep!r}", s, "rep")
            chi = chars[rep]
            dim = chi.degree()
        else:
            dim = 2
        if rule_name == "splitting":
            text = self.get(s, "polynomial", str)
            try:
                coeffs = tuple(parse_int_poly(text))
            except ValidationError as exc:
                raise self.err(str(exc), s, "polynomial") from None
            if G.degree != len(coeffs) - 1:
                raise self.err(f"group acts on {G.degree} points but the polynomial has degree {len(coeffs) - 1}", s, "polynomial")
            roots = self.get(s, "roots", list, required=False)
            if roots is not None and not all(isinstance(r, (str, int)) for r in roots):
                raise self.err("roots must be quoted approximations", s, "roots")
            rule = SplittingRule(coeffs, G, tuple(str(r) for r in roots) if roots else None)
        elif rule_name in ("residue", "primes"):
            primes = {}
            residues = {}
            modulus = None
            if rule_name == "residue":
                modulus = self.get(s, "modulus", int)
                raw = self.get(s, "residues", dict)
                for k, v in raw.items():
                    if not isinstance(k, int):
                        raise self.err("residue keys must be integers", s, "residues")
                    residues[k % modulus] = self.class_index(G, v, s, "residues")
            raw = self.get(s, "primes", dict, required=rule_name == "primes", default={})
            for k, v in raw.items():
                if not isinstance(k, int):
                    raise self.err("prime keys must be integers", s, "primes")
                primes[k] = self.class_index(G, v, s, "primes")
            rule = ClassRule(G, primes, modulus, residues)
        elif rule_name == "curve":
            curve = self.get(s, "curve", list)
            if len(curve) != 5 or not all(isinstance(c, int) for c in curve):
                raise self.err("curve must list the five integers a1, a2, a3, a4, a6", s, "curve")
            rule = CurveRule(tuple(curve))
        else:
            raise self.err(f"unknown rule {rule_name!r} (splitting, residue, primes, curve)", s, "rule")
        ramified = {}
        for k, v in self.get(s, "ramified", dict, required=False, default={}).items():
            ramified[k] = self.ramified_entry(k, v, chi, ram, s, "ramified")
        for k, v in self.get(s, "bad", dict, required=False, default={}).items():
            ramified[k] = self.bad_entry(k, v, s)
        conj = self.get(s, "conjugation", (Perm, int), required=False)
        conj = self.class_index(G, conj, s, "conjugation") if conj is not None else None
        try:
            return GlobalConfig(dim, rule, chi, ramified, conj, kind, trivial_bad)
        except ValidationError as exc:
            raise self.err(str(exc), s) from None

    def ramified_entry(self, p, v, chi, ram, s, key):
        if not isinstance(p, int):
            raise self.err("ramified keys must be primes", s, key)
        if isinstance(v, Ident) and v == "local":
            if ram is None or ram.p != p or ram.q != p:
                raise self.err(f"'local' at {p} needs [ramification] with p = q = {p}", s, key)
            if ram.G is not chi.group:
                raise self.err("local data must be on the global Galois group", s, key)
            return local_polynomial(chi, ram), int(conductor_exponent(chi, ram).total)
        if isinstance(v, dict) and set(v) <= {"poly", "exponent"} and "poly" in v and "exponent" in v:
            if not isinstance(v["poly"], str) or not isinstance(v["exponent"], int):
                raise self.err("ramified entry needs poly = \"...\" and integer exponent", s, key)
            try:
                return UniPoly(parse_int_poly(v["poly"], "T")), v["exponent"]
            except ValidationError as exc:
                raise self.err(str(exc), s, key) from None
        raise self.err("ramified entries are 'local' or {poly = \"...\", exponent = n}", s, key)

    def bad_entry(self, p, v, s):
        table = {"split_mult": (UniPoly([1, -1]), 1), "nonsplit_mult": (UniPoly([1, 1]), 1)}
        if isinstance(v, Ident) and v in table:
            return table[v]
        if isinstance(v, dict) and v.get("kind") == "additive" and isinstance(v.get("exponent"), int):
            return UniPoly.one(), v["exponent"]
        if isinstance(v, dict) and "poly" in v:
            return self.ramified_entry(p, v, None, None, s, "bad")
        raise self.err("bad entries are split_mult, nonsplit_mult or {kind = additive, exponent = n}", s, "bad")

    def zeta(self, subs, chars):
        if "zeta" not in self.v:
            return None
        out = {}
        for side in ("lhs", "rhs"):
            items = []
            for name in self.get("zeta", side, list):
                if not isinstance(name, Ident):
                    raise self.err("zeta sides list subgroup or character names", "zeta", side)
                if name in subs:
                    items.append(subs[name])
                elif name in chars:
                    items.append(chars[name])
                else:
                    raise self.err(f"unknown subgroup or character {name!r}", "zeta", side)
            out[side] = items
        out["limit"] = self.get("zeta", "limit", int, required=False, default=100)
        return out


def _tuple(t):
    return t if isinstance(t, tuple) else (t,)


def load_fixture(doc: Document) -> Fixture:
    L = _Loader(doc)
    L.check_keys()
    G = L.group()
    subs = L.subgroups(G)
    chars, table = L.characters(G)
    sub_chars = L.sub_characters(subs)
    ram = L.ramification(G, subs)
    wd = L.wd(chars, ram, table)
    ell, curve = L.elliptic(wd)
    cfg = L.global_config(G, chars, ram)
    zeta = L.zeta(subs, chars)
    fx = Fixture(doc, G, subs, chars, sub_chars, table, ram, wd, ell, curve, cfg, zeta)
    if zeta is not None and (cfg is None or not isinstance(cfg.rule, SplittingRule)):
        raise L.err("[zeta] needs a [global] splitting rule", "zeta")
    return fx


def parse_fixture(path) -> Fixture:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return load_fixture(parse_document(text, source=path.name))
