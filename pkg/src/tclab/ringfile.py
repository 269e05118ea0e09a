"""Ring files: a small declarative format describing ``R = K[vars]/I``.

Statements end with ``;`` and ``#`` starts a comment::

    char 7;                      # a prime, 0 for Q, or p for a family
    vars x, y, z;
    order grevlex;               # lex | grevlex | elim(k)
    ideal x^3+y^3+z^3;           # defining ideal
    component x^3+y^3+z^3;       # one claimed minimal prime per statement
    flags assume_reduced;
    poly u = z^2;                # named polynomial
    ideal I = x, y;              # named ideal

A file with ``char p`` is a family; :meth:`RingFile.instantiate` fixes p.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .dimension import PresentedAlgebra
from .field import PrimeField, field_for
from .groebner import Ideal
from .parse import NAME_RE, ParseError, parse_polynomial, split_top_level
from .poly import MonomialOrder, PolyRing

KEYWORDS = {"char", "vars", "order", "ideal", "component", "flags", "poly"}


@dataclass
class RingFile:
    char: int | None  # None for a family
    vars: list
    order: str = "grevlex"
    ideal: list = field(default_factory=list)
    components: list = field(default_factory=list)  # list of lists of strings
    flags: list = field(default_factory=list)
    polys: dict = field(default_factory=dict)  # name -> string
    ideals: dict = field(default_factory=dict)  # name -> list of strings

    @property
    def is_family(self) -> bool:
        return self.char is None

    def ring(self) -> PolyRing:
        if self.char is None:
            raise ParseError("family ring file: instantiate a characteristic first")
        return PolyRing(field_for(self.char), self.vars, self.order)

    def instantiate(self, p: int) -> "RingFile":
        """Fix the characteristic of a family; expressions are re-parsed over F_p."""
        PrimeField(p)
        return _canonicalize(replace(self, char=p), _Pos())

    def algebra(self) -> PresentedAlgebra:
        ring = self.ring()
        return PresentedAlgebra(ring, Ideal(ring, [ring(g) for g in self.ideal]), frozenset(self.flags))

    def component_ideals(self, ring: PolyRing | None = None) -> list:
        ring = ring or self.ring()
        return [Ideal(ring, [ring(g) for g in comp]) for comp in self.components]

    def bindings(self, ring: PolyRing | None = None) -> dict:
        ring = ring or self.ring()
        out = {name: ring(text) for name, text in self.polys.items()}
        return out

    def named_ideal(self, name: str, ring: PolyRing | None = None) -> Ideal:
        ring = ring or self.ring()
        return Ideal(ring, [ring(g) for g in self.ideals[name]])

    def dumps(self) -> str:
        lines = [f"char {'p' if self.char is None else self.char};", f"vars {', '.join(self.vars)};"]
        lines.append(f"order {self.order};")
        if self.ideal:
            lines.append(f"ideal {', '.join(self.ideal)};")
        for comp in self.components:
            lines.append(f"component {', '.join(comp)};")
        if self.flags:
            lines.append(f"flags {', '.join(self.flags)};")
        for name in sorted(self.polys):
            lines.append(f"poly {name} = {self.polys[name]};")
        for name in sorted(self.ideals):
            lines.append(f"ideal {name} = {', '.join(self.ideals[name])};")
        return "\n".join(lines) + "\n"


@dataclass
class _Pos:
    """Source positions of statement bodies, for diagnostics."""

    where: dict = field(default_factory=dict)

    def at(self, key):
        return self.where.get(key, (1, 1))


def _statements(text: str):
    """Yield (keyword, body, line, col_of_body) for each statement."""
    stripped = []
    for line in text.split("\n"):
        cut = line.find("#")
        stripped.append(line if cut < 0 else line[:cut] + " " * (len(line) - cut))
    clean = "\n".join(stripped)
    start = 0
    for i, ch in enumerate(clean + ";"):
        if ch != ";":
            continue
        chunk = clean[start:i]
        offset = start
        start = i + 1
        lead = len(chunk) - len(chunk.lstrip())
        chunk_s = chunk.strip()
        if not chunk_s:
            if i == len(clean):
                break
            continue
        if i == len(clean):
            line, col = _linecol(clean, offset + lead)
            raise ParseError("missing ';' at end of statement", line, col)
        kw_nl = chunk_s.split(None, 1)
        kw = kw_nl[0]
        body = kw_nl[1] if len(kw_nl) > 1 else ""
        body_off = offset + lead + chunk_s.find(body, len(kw)) if body else offset + lead + len(kw)
        line, col = _linecol(clean, offset + lead)
        bline, bcol = _linecol(clean, body_off)
        yield kw, body, (line, col), (bline, bcol)


def _linecol(text: str, pos: int):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _names(body: str, pos) -> list:
    out = []
    for piece, off in split_top_level(body):
        name = piece.strip()
        off += len(piece) - len(piece.lstrip())
        if not name:
            raise ParseError("empty name in list", pos[0], pos[1] + off)
        if "@" in name:
            raise ParseError(f"reserved name {name!r}", pos[0], pos[1] + off)
        if not NAME_RE.fullmatch(name):
            raise ParseError(f"invalid name {name!r}", pos[0], pos[1] + off)
        out.append(name)
    return out


def _exprs(body: str, pos) -> list:
    out = []
    for piece, off in split_top_level(body):
        if not piece.strip():
            raise ParseError("empty expression", pos[0], pos[1] + off)
        lead = len(piece) - len(piece.lstrip())
        out.append((piece.strip(), (pos[0], pos[1] + off + lead)))
    return out


def parse_ring_file(text) -> RingFile:
    """Parse ring-file text (str or UTF-8 bytes); raises ParseError with line:col."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"ring file is not UTF-8: {exc}") from None
    char = "unset"
    names = None
    order = "grevlex"
    ideal = []
    components = []
    flags = []
    polys = {}
    ideals = {}
    pos = _Pos()
    for kw, body, kpos, bpos in _statements(text):
        if kw == "char":
            b = body.strip()
            if b == "p":
                char = None
            elif b.isdigit():
                char = int(b)
                if char != 0:
                    try:
                        PrimeField(char)
                    except Exception as exc:
                        raise ParseError(str(exc), *bpos) from None
            else:
                raise ParseError(f"characteristic must be 0, a prime or p, got {b!r}", *bpos)
        elif kw == "vars":
            names = _names(body, bpos)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", *bpos)
            clash = KEYWORDS & set(names)
            if clash:
                raise ParseError(f"variable name collides with keyword {sorted(clash)[0]!r}", *bpos)
        elif kw == "order":
            order = body.strip()
            try:
                MonomialOrder.from_name(order, len(names or ()))
            except Exception as exc:
                raise ParseError(str(exc), *bpos) from None
        elif kw in ("ideal", "poly") and "=" in body:
            lhs, _, rhs = body.partition("=")
            name = lhs.strip()
            if not NAME_RE.fullmatch(name) or "@" in name:
                raise ParseError(f"invalid name {name!r}", *bpos)
            if names and name in names:
                raise ParseError(f"name {name!r} shadows a variable", *bpos)
            if name in polys or name in ideals:
                raise ParseError(f"name {name!r} defined twice", *bpos)
            rhs_off = bpos[1] + len(lhs) + 1
            exprs = _exprs(rhs, (bpos[0], rhs_off))
            pos.where[(kw, name)] = exprs
            if kw == "poly":
                if len(exprs) != 1:
                    raise ParseError("poly binds exactly one expression", *bpos)
                polys[name] = exprs[0][0]
            else:
                ideals[name] = [e for e, _ in exprs]
        elif kw == "ideal":
            exprs = _exprs(body, bpos)
            pos.where.setdefault("ideal", []).extend(exprs)
            ideal.extend(e for e, _ in exprs)
        elif kw == "component":
            exprs = _exprs(body, bpos)
            pos.where[("component", len(components))] = exprs
            components.append([e for e, _ in exprs])
        elif kw == "flags":
            for name in _names(body, bpos):
                if name not in PresentedAlgebra.KNOWN_FLAGS:
                    raise ParseError(f"unknown flag {name!r}", *bpos)
                if name not in flags:
                    flags.append(name)
        else:
            raise ParseError(f"unknown statement {kw!r}", *kpos)
    if char == "unset":
        raise ParseError("missing 'char' statement")
    if names is None:
        raise ParseError("missing 'vars' statement")
    rf = RingFile(char, names, order, ideal, components, flags, polys, ideals)
    if rf.is_family:
        # syntax and names are still checked, over Q as a stand-in field
        _canonicalize(replace(rf, char=0), pos)
        return rf
    return _canonicalize(rf, pos)


def _canonicalize(rf: RingFile, pos: _Pos) -> RingFile:
    """Parse every expression over the declared ring and store canonical text."""
    ring = rf.ring()
    default = [(1, 1)]

    def canon(text, where):
        return str(parse_polynomial(text, ring, None, *where))

    def locs(key, n):
        got = pos.where.get(key)
        return [w for _, w in got] if got else default * n

    ideal = [canon(t, w) for t, w in zip(rf.ideal, locs("ideal", len(rf.ideal)))]
    components = [
        [canon(t, w) for t, w in zip(comp, locs(("component", i), len(comp)))]
        for i, comp in enumerate(rf.components)
    ]
    polys = {n: canon(t, locs(("poly", n), 1)[0]) for n, t in rf.polys.items()}
    ideals = {
        n: [canon(t, w) for t, w in zip(ts, locs(("ideal", n), len(ts)))] for n, ts in rf.ideals.items()
    }
    return replace(rf, ideal=ideal, components=components, polys=polys, ideals=ideals)


def read_components(text: str, ring: PolyRing) -> list:
    """Parse a file holding only ``component ...;`` statements over ``ring``."""
    out = []
    for kw, body, kpos, bpos in _statements(text):
        if kw != "component":
            raise ParseError(f"only 'component' statements are allowed here, got {kw!r}", *kpos)
        out.append(Ideal(ring, [parse_polynomial(e, ring, None, *w) for e, w in _exprs(body, bpos)]))
    return out
