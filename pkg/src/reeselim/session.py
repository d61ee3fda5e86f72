"""Line-oriented session scripts.

Each non-blank line is one command; ``#`` starts a comment. Commands that
produce an object may end with ``as NAME`` to bind it. See ``SCRIPTS.md`` for
the grammar.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .elimination import (
    ElimChain,
    MAX_DEGREE,
    eliminate,
    eliminate_chain,
    tau_at,
    transversal_candidates,
    transversal_from,
)
from .field import parse_field
from .invariants import (
    INF,
    TValue,
    format_table,
    format_value,
    gamma,
    monomial_case,
    ord_dm,
    stratification_report,
    t_fn,
    tilde,
    w_ord,
)
from .poly import Poly, Ring, linear_change
from .probes import probe_grid
from .rees import (
    ReesAlg,
    diff_closure,
    is_singular_at,
    normalize_weights,
    odot,
    ord_at,
    rel_diff_closure,
    sing_presentation,
    twist,
)
from .transform import BasicObject, Chart, blowup_chart, commute_elimination, pair_transform

__all__ = ["Report", "ScriptError", "run_session", "run_text", "COMMANDS"]


class ScriptError(ValueError):
    pass


@dataclass
class Report:
    lines: list = field(default_factory=list)
    records: list = field(default_factory=list)
    passed: int = 0
    failed: int = 0
    errors: int = 0

    @property
    def exit_code(self):
        return 0 if not (self.failed or self.errors) else 1

    def text(self):
        out = list(self.lines)
        if self.records:
            out.append(f"summary: {self.passed} passed, {self.failed} failed, {self.errors} errors")
        return "\n".join(out) + ("\n" if out else "")

    def dumps_records(self):
        return json.dumps(self.records, indent=2, sort_keys=True) + "\n"


# -- argument helpers ----------------------------------------------------------

_AS = re.compile(r"\s+as\s+([A-Za-z_]\w*(?:\s*,\s*[A-Za-z_]\w*)*)\s*$")
_NAME = re.compile(r"[A-Za-z_]\w*\??$")


def _split_as(rest):
    m = _AS.search(" " + rest)
    if not m:
        return rest.strip(), None
    names = [n.strip() for n in m.group(1).split(",")]
    return (" " + rest)[: m.start()].strip(), names


def _keyword_args(text, keywords):
    """Split ``text`` at keyword boundaries: returns (head, {kw: value})."""
    pattern = r"\b(" + "|".join(re.escape(k) for k in keywords) + r")\b"
    parts = re.split(pattern, text)
    head = parts[0].strip()
    found = {}
    for kw, val in zip(parts[1::2], parts[2::2]):
        if kw in found:
            raise ScriptError(f"keyword {kw!r} given twice")
        found[kw] = val.strip()
    return head, found


def _tuple_items(text):
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise ScriptError(f"expected a parenthesized list, got {text!r}")
    inner = t[1:-1].strip()
    return [s.strip() for s in inner.split(",")] if inner else []


def _number(text):
    t = text.strip()
    if t in ("inf", "∞", "infinity"):
        return INF
    try:
        return Fraction(t)
    except ValueError:
        raise ScriptError(f"not a number: {text!r}") from None


def _point(text, ring):
    items = _tuple_items(text)
    return ring.point([_number(s) for s in items])


def _points(text, ring):
    return [_point(p, ring) for p in text.split(";") if p.strip()]


def _matrix(text):
    rows = re.findall(r"[\[(]([^\[\]()]*)[\])]", text)
    return [[Fraction(v.strip()) for v in r.split(",") if v.strip()] for r in rows]


# -- value formatting -------------------------------------------------------------

def _show(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, TValue):
        return str(v)
    if isinstance(v, (tuple,)) and all(isinstance(a, (Fraction, float, int)) for a in v):
        return format_value(tuple(Fraction(a) if isinstance(a, int) else a for a in v))
    if isinstance(v, (Fraction, float)):
        return format_value(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, ReesAlg):
        return "{" + ", ".join(f"({f}, {format_value(w)})" for f, w in v.gens) + "}"
    if isinstance(v, BasicObject):
        divs = ",".join(f"{d.var}@{d.birth_stage}" for d in v.divisors) or "-"
        return f"chart[{' / '.join(str(c) for c in v.lineage) or 'root'}; divisors {divs}] {_show(v.algebra)}"
    if isinstance(v, ElimChain):
        return f"chain({','.join(v.vars)}) -> {_show(v.final)}"
    if isinstance(v, list):
        return "[" + ", ".join(_show(a) for a in v) + "]"
    return str(v)


# -- interpreter ------------------------------------------------------------------------

class _Session:
    def __init__(self, probe_values=None, max_degree=MAX_DEGREE):
        self.ring = None
        self.env = {}
        self.probe_values = probe_values
        self.max_degree = max_degree

    # lookups
    def get(self, name):
        if name not in self.env:
            raise ScriptError(f"unbound name {name!r}")
        return self.env[name]

    def algebra(self, name):
        v = self.get(name)
        if isinstance(v, ReesAlg):
            return v
        if isinstance(v, BasicObject):
            return v.algebra
        if isinstance(v, ElimChain):
            return v.final
        raise ScriptError(f"{name} is not an algebra")

    def basic(self, name):
        v = self.get(name)
        if isinstance(v, BasicObject):
            return v
        return BasicObject.create(self.algebra(name))

    def need_ring(self):
        if self.ring is None:
            raise ScriptError("no ring declared; start with `ring <field> vars <names>`")
        return self.ring

    def poly_arg(self, text, ring):
        t = text.strip()
        if _NAME.match(t) and t in self.env and isinstance(self.env[t], Poly):
            return self.env[t]
        return ring(t)

    # commands: each returns (value, kind)
    def c_ring(self, rest):
        head, kw = _keyword_args(rest, ["vars"])
        if "vars" not in kw:
            raise ScriptError("ring needs `vars`")
        self.ring = Ring([v.strip() for v in kw["vars"].split(",")], parse_field(head))
        return self.ring

    def c_poly(self, rest):
        return self.need_ring()(rest)

    def c_rees(self, rest):
        ring = self.need_ring()
        chunks = re.split(r"\bgen\b", rest)
        if chunks[0].strip():
            raise ScriptError(f"unexpected text before first gen: {chunks[0].strip()!r}")
        pairs = []
        for c in chunks[1:]:
            w, _, text = c.strip().partition(" ")
            if not text.strip():
                raise ScriptError("each gen needs a weight and a polynomial")
            pairs.append((ring(text), Fraction(w)))
        if not pairs:
            raise ScriptError("rees needs at least one `gen <weight> <poly>`")
        return ReesAlg(ring, pairs)

    def c_diffclose(self, rest):
        return diff_closure(normalize_weights(self.algebra(rest.strip())))

    def c_reldiffclose(self, rest):
        head, kw = _keyword_args(rest, ["var"])
        return rel_diff_closure(normalize_weights(self.algebra(head)), kw["var"])

    def _at(self, rest, extra=()):
        head, kw = _keyword_args(rest, ["at", *extra])
        if "at" not in kw:
            raise ScriptError("missing `at (point)`")
        return head, kw

    def c_ord(self, rest):
        head, kw = self._at(rest)
        G = self.algebra(head)
        return ord_at(G, _point(kw["at"], G.ring))

    def c_orddm(self, rest):
        head, kw = self._at(rest, ["level", "vars"])
        G = self.algebra(head)
        vars_ = _tuple_items(kw["vars"]) if "vars" in kw else None
        return ord_dm(G, _point(kw["at"], G.ring), int(kw.get("level", 1)), vars_)

    def c_sing(self, rest):
        head, kw = self._at(rest)
        G = normalize_weights(self.algebra(head))
        return is_singular_at(G, _point(kw["at"], G.ring))

    def c_singgens(self, rest):
        return sing_presentation(normalize_weights(self.algebra(rest.strip())))

    def c_tau(self, rest):
        head, kw = self._at(rest)
        G = self.algebra(head)
        return tau_at(G, _point(kw["at"], G.ring))[0]

    def c_eliminate(self, rest):
        head, kw = _keyword_args(rest, ["var", "at", "mode"])
        G = normalize_weights(self.algebra(head))
        var = kw.get("var")
        if not var:
            raise ScriptError("eliminate needs `var <name>`")
        if "at" in kw:
            cands = transversal_candidates(G, _point(kw["at"], G.ring), var)
            if not cands:
                raise ScriptError(f"no transversal in {var}")
            t = min(cands, key=lambda c: (c.degree, c.gen_index))
        else:
            t = transversal_from(G, var)
        return eliminate(G, t, kw.get("mode", "passthrough"), self.max_degree)

    def c_chain(self, rest):
        head, kw = self._at(rest, ["vars", "mode"])
        G = self.algebra(head)
        return eliminate_chain(G, _point(kw["at"], G.ring), _tuple_items(kw.get("vars", "()")),
                               kw.get("mode", "passthrough"), self.max_degree)

    def c_twist(self, rest):
        head, kw = _keyword_args(rest, ["by"])
        return twist(self.algebra(head), _number(kw["by"]))

    def c_odot(self, rest):
        names = rest.split()
        if len(names) < 2:
            raise ScriptError("odot needs at least two algebras")
        return odot(*[self.algebra(n) for n in names])

    def c_tilde(self, rest):
        head, kw = self._at(rest, ["level"])
        G = self.algebra(head)
        return tilde(G, _point(kw["at"], G.ring), int(kw.get("level", 0)))

    def c_blowup(self, rest):
        head, kw = _keyword_args(rest, ["center", "chart", "probes"])
        B = self.basic(head)
        probes = _points(kw["probes"], B.ring) if "probes" in kw else None
        return blowup_chart(B, _tuple_items(kw["center"]), kw["chart"], probes)

    def c_commute(self, rest):
        head, kw = _keyword_args(rest, ["with", "center", "chart"])
        chain = self.get(kw["with"])
        if not isinstance(chain, ElimChain):
            raise ScriptError(f"{kw['with']} is not a chain")
        return commute_elimination(self.basic(head), chain, _tuple_items(kw["center"]), kw["chart"])

    def c_pairtransform(self, rest):
        head, kw = _keyword_args(rest, ["weight", "center", "chart"])
        ring = self.need_ring()
        J = self.poly_arg(head, ring)
        return pair_transform(J, int(kw["weight"]), Chart(_tuple_items(kw["center"]), kw["chart"]))

    def c_word(self, rest):
        head, kw = self._at(rest)
        B = self.basic(head)
        return w_ord(B, _point(kw["at"], B.ring))

    def c_tfn(self, rest):
        head, kw = self._at(rest)
        B = self.basic(head)
        return t_fn(B, _point(kw["at"], B.ring))

    def c_gamma(self, rest):
        head, kw = self._at(rest, ["order"])
        G = self.algebra(head)
        order = _tuple_items(kw["order"]) if "order" in kw else None
        return gamma(G, _point(kw["at"], G.ring), order)

    def c_monomial(self, rest):
        head, kw = _keyword_args(rest, ["at"])
        B = self.basic(head)
        probes = _points(kw["at"], B.ring) if "at" in kw else None
        return monomial_case(B, probes)[0]

    def c_probegrid(self, rest):
        head, kw = _keyword_args(rest, ["values"])
        obj = self.get(head)
        G = self.algebra(head)
        values = [_number(v) for v in kw["values"].split(",")] if "values" in kw else self.probe_values
        rows = stratification_report(obj if isinstance(obj, BasicObject) else G,
                                     probe_grid(G.ring, values))
        return rows

    def c_linchange(self, rest):
        head, kw = _keyword_args(rest, ["matrix", "shift"])
        obj = self.get(head)
        ring = obj.ring if isinstance(obj, (Poly, ReesAlg)) else self.algebra(head).ring
        M = _matrix(kw["matrix"])
        shift = _point(kw["shift"], ring) if "shift" in kw else None
        if isinstance(obj, Poly):
            return linear_change(obj, M, shift)
        G = self.algebra(head)
        return ReesAlg(G.ring, [(linear_change(f, M, shift), w) for f, w in G.gens])

    def c_print(self, rest):
        return self.get(rest.strip())


COMMANDS = {
    "ring": "c_ring",
    "poly": "c_poly",
    "rees": "c_rees",
    "diffclose": "c_diffclose",
    "reldiffclose": "c_reldiffclose",
    "ord": "c_ord",
    "orddm": "c_orddm",
    "sing?": "c_sing",
    "singgens": "c_singgens",
    "tau": "c_tau",
    "eliminate": "c_eliminate",
    "chain": "c_chain",
    "twist": "c_twist",
    "odot": "c_odot",
    "tilde": "c_tilde",
    "blowup": "c_blowup",
    "commute": "c_commute",
    "pairtransform": "c_pairtransform",
    "word": "c_word",
    "tfn": "c_tfn",
    "gamma": "c_gamma",
    "monomial?": "c_monomial",
    "probe-grid": "c_probegrid",
    "linchange": "c_linchange",
    "print": "c_print",
}

_OPS = (" == ", " ~= ", " contains ")


def _strip_comment(line):
    return line.split("#", 1)[0].strip()


def _parse(text):
    """(lineno, command, rest) triples; raises ScriptError with the line number."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        cmd, _, rest = line.partition(" ")
        if cmd == "assert":
            inner = rest.strip().split(" ", 1)[0]
            if inner not in COMMANDS:
                raise ScriptError(f"line {n}: unknown command {inner!r} in assert")
            if not any(op in f" {rest} " for op in _OPS):
                raise ScriptError(f"line {n}: assert needs ==, ~= or contains")
        elif cmd not in COMMANDS:
            raise ScriptError(f"line {n}: unknown command {cmd!r}")
        out.append((n, cmd, rest.strip(), line))
    return out


def _compare(value, op, expected_text, session):
    """Return (ok, shown_expected)."""
    e = expected_text.strip()
    if isinstance(value, bool):
        want = e.lower() in ("true", "yes", "1")
        return value == want, "true" if want else "false"
    if isinstance(value, Poly):
        want = session.poly_arg(e, value.ring)
        if op == "~=":
            return (value.monic() == want.monic() and not want.is_zero()) or value == want, str(want)
        return value == want, str(want)
    if isinstance(value, ReesAlg):
        want = session.c_rees(e)
        want = ReesAlg(value.ring, [(value.ring(str(f)), w) for f, w in want.gens]) \
            if want.ring != value.ring else want
        if op == "contains":
            return all((f, w) in value for f, w in want.gens), _show(want)
        return value == want, _show(want)
    if isinstance(value, list) and op == "contains":
        ring = value[0].ring if value else session.need_ring()
        want = session.poly_arg(e, ring).monic()
        return want in [f.monic() for f in value], str(want)
    if isinstance(value, TValue):
        items = _tuple_items(e)
        want = TValue(_number(items[0]), int(items[1]))
        return value == want, str(want)
    if isinstance(value, tuple):
        want = tuple(_number(s) for s in _tuple_items(e))
        return tuple(value) == want, format_value(want)
    if isinstance(value, (int, Fraction, float)):
        want = _number(e)
        return value == want, format_value(want)
    return _show(value) == e, e


def run_text(text, probe_values=None, max_degree=MAX_DEGREE):
    report = Report()
    try:
        commands = _parse(text)
    except ScriptError as exc:
        report.lines.append(f"parse error: {exc}")
        report.records.append({"kind": "parse-error", "message": str(exc)})
        report.errors += 1
        return report
    s = _Session(probe_values, max_degree)
    for n, cmd, rest, line in commands:
        rec = {"line": n, "command": line}
        try:
            if cmd == "assert":
                for op in _OPS:
                    idx = rest.rfind(op)
                    if idx >= 0:
                        break
                lhs, expected = rest[:idx].strip(), rest[idx + len(op):]
                inner, _, inner_rest = lhs.partition(" ")
                value = getattr(s, COMMANDS[inner])(inner_rest)
                if isinstance(value, (BasicObject, ElimChain)):
                    value = value.algebra if isinstance(value, BasicObject) else value.final
                ok, shown = _compare(value, op.strip(), expected, s)
                status = "PASS" if ok else "FAIL"
                report.passed += ok
                report.failed += not ok
                report.lines.append(f"[{n}] {status} {lhs} {op.strip()} {expected.strip()}")
                if not ok:
                    report.lines.append(f"      got {_show(value)}; expected {shown}")
                rec.update(kind="assert", status=status, value=_show(value), expected=shown)
            else:
                body, names = _split_as(rest)
                value = getattr(s, COMMANDS[cmd])(body)
                if cmd == "ring":
                    report.lines.append(f"[{n}] ring {value.field.name} vars {','.join(value.vars)}")
                    rec.update(kind="ring", value=repr(value))
                elif cmd == "probe-grid":
                    table = format_table(value)
                    report.lines.append(f"[{n}] {line}")
                    report.lines.extend("      " + r for r in table.rstrip("\n").split("\n"))
                    rec.update(kind="table", rows=[{k: _show(v) if not isinstance(v, str) else v
                                                    for k, v in r.items()} for r in value])
                elif names:
                    vals = value if len(names) > 1 else (value,)
                    if len(vals) != len(names):
                        raise ScriptError(f"{cmd} yields {len(vals)} values, {len(names)} names given")
                    for name, v in zip(names, vals):
                        s.env[name] = v
                        report.lines.append(f"[{n}] {name} := {_show(v)}")
                    rec.update(kind="binding", names=names, value=[_show(v) for v in vals])
                else:
                    report.lines.append(f"[{n}] {line} => {_show(value)}")
                    rec.update(kind="value", value=_show(value))
        except Exception as exc:  # command errors belong in the report
            report.errors += 1
            report.lines.append(f"[{n}] ERROR {type(exc).__name__}: {exc}")
            rec.update(kind="error", error=type(exc).__name__, message=str(exc))
        report.records.append(rec)
    return report


def run_session(path, probe_values=None, max_degree=MAX_DEGREE):
    with open(path, encoding="utf-8") as fh:
        return run_text(fh.read(), probe_values, max_degree)
