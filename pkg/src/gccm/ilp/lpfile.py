"""CPLEX LP text export/parse and solver solution import."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .model import IlpModel, InfeasibleAssignment, ModelError

TERMS_PER_LINE = 8
_VAR = re.compile(r"^x_(\d+)_(\d+)$")


def var_name(v: int, i: int) -> str:
    return f"x_{v}_{i}"


def _expr(terms) -> list[str]:
    """Format ``[(coef, name), ...]`` as wrapped LP expression lines."""
    parts = []
    for idx, (c, name) in enumerate(terms):
        if idx == 0:
            parts.append(f"{c} {name}" if c >= 0 else f"- {-c} {name}")
        else:
            parts.append(f"+ {c} {name}" if c >= 0 else f"- {-c} {name}")
    lines = []
    for j in range(0, len(parts), TERMS_PER_LINE):
        lines.append(" ".join(parts[j:j + TERMS_PER_LINE]))
    return lines


def _row_lines(label: str, lines: list[str], tail: str = "") -> list[str]:
    out = [f" {label}: {lines[0]}"]
    out += [f"   {ln}" for ln in lines[1:]]
    out[-1] += tail
    return out


def export_lp(model: IlpModel) -> str:
    """LP text; vertices ascending then levels ascending throughout."""
    out = [f"\\ gccm {model.kind} model, k={model.k}", "Minimize"]
    out += _row_lines("obj", _expr([(c, var_name(v, i)) for v, i, c in model.variables()]))
    out.append("Subject To")
    for name, terms, sense, rhs in model.rows():
        items = _ordered_terms(name, terms)
        out += _row_lines(name, _expr([(c, var_name(*var)) for var, c in items]), f" {sense} {rhs}")
    out.append("Binaries")
    names = [var_name(v, i) for v, i, _ in model.variables()]
    for j in range(0, len(names), TERMS_PER_LINE):
        out.append(" " + " ".join(names[j:j + TERMS_PER_LINE]))
    out.append("End")
    return "\n".join(out) + "\n"


def _ordered_terms(name, terms):
    if name.startswith("link_"):
        # the bounded variable first, then the centers in ascending order
        head = [(var, c) for var, c in terms.items() if c > 0]
        rest = sorted(((var, c) for var, c in terms.items() if c <= 0), key=lambda t: t[0])
        return head + rest
    return sorted(terms.items(), key=lambda t: t[0])


@dataclass
class LpProblem:
    objective: dict[str, int] = field(default_factory=dict)
    rows: dict[str, tuple[dict[str, int], str, int]] = field(default_factory=dict)
    binaries: list[str] = field(default_factory=list)
    sense: str = "min"


_TERM = re.compile(r"([+-])?\s*(\d+(?:\.\d+)?)?\s*([A-Za-z_][\w.]*)")


def _parse_expr(text: str) -> dict[str, int]:
    terms: dict[str, int] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ModelError(f"cannot parse LP expression near {text[pos:pos + 20]!r}")
        sign, coef, name = m.groups()
        c = float(coef) if coef is not None else 1.0
        if sign == "-":
            c = -c
        terms[name] = terms.get(name, 0) + int(round(c))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return terms


def parse_lp(text: str) -> LpProblem:
    """Parse the LP subset :func:`export_lp` writes."""
    prob = LpProblem()
    section = None
    statements: dict[str, list[str]] = {"obj": [], "st": [], "bin": []}
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].rstrip()
        key = line.strip().lower()
        if not key:
            continue
        if key in ("minimize", "minimum", "min", "maximize", "maximum", "max"):
            section = "obj"
            prob.sense = "min" if key.startswith("min") else "max"
            continue
        if key in ("subject to", "such that", "st", "s.t."):
            section = "st"
            continue
        if key in ("binaries", "binary", "bin"):
            section = "bin"
            continue
        if key == "end":
            break
        if section is None:
            raise ModelError(f"LP content outside a section: {line!r}")
        if section == "bin":
            prob.binaries += line.split()
            continue
        if raw[:1].isspace() and line.strip() and ":" not in line and statements[section]:
            statements[section][-1] += " " + line.strip()
        else:
            statements[section].append(line.strip())
    for stmt in statements["obj"]:
        label, _, expr = stmt.partition(":")
        prob.objective = _parse_expr(expr)
    for stmt in statements["st"]:
        label, _, body = stmt.partition(":")
        m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+(?:\.\d+)?)\s*$", body)
        if not m:
            raise ModelError(f"cannot parse constraint {stmt!r}")
        prob.rows[label.strip()] = (_parse_expr(m.group(1)), m.group(2), int(round(float(m.group(3)))))
    return prob


def model_from_lp(text: str) -> IlpModel:
    """Rebuild an :class:`IlpModel` (without graph) from exported LP text."""
    prob = parse_lp(text)
    kind = "full"
    m = re.search(r"\\ gccm (\w+) model", text)
    if m:
        kind = m.group(1)
    levels: dict[int, list[int]] = {}
    for name in prob.binaries:
        mm = _VAR.match(name)
        if not mm:
            raise ModelError(f"unexpected variable {name!r}")
        levels.setdefault(int(mm.group(1)), []).append(int(mm.group(2)))
    vertices = sorted(levels)
    caps = {v: max(levels[v]) for v in vertices}
    k_terms, _, k = prob.rows["k_sum"]
    centers = sorted(int(_VAR.match(n).group(1)) for n in k_terms)
    alpha = {}
    for v in vertices:
        d = caps[v]
        coef = prob.objective.get(var_name(v, d), 0)
        alpha[v] = (coef - d) // (d + 1)
    index = {}
    for name, (terms, _, _) in prob.rows.items():
        if not name.startswith("link_"):
            continue
        _, v, i = name.split("_")
        index[(int(v), int(i))] = sorted(int(_VAR.match(n).group(1)) for n, c in terms.items() if c < 0)
    return IlpModel(kind, k, vertices, centers, caps, alpha, index)


def import_solution(text: str, model: IlpModel):
    """Read a ``name value`` listing and re-verify it against ``model``.

    Values within 1e-6 of 0 or 1 are rounded; anything else is an error.
    The objective is recomputed from the assignment.
    """
    from .backends import BackendResult

    names = {var_name(v, i): (v, i) for v, i, _ in model.variables()}
    assignment = {var: 0 for var in names.values()}
    for line in text.splitlines():
        toks = line.split()
        if not toks or toks[0].startswith("#"):
            continue
        for j, tok in enumerate(toks[:-1]):
            if tok in names:
                val = float(toks[j + 1])
                r = round(val)
                if abs(val - r) > 1e-6 or r not in (0, 1):
                    raise InfeasibleAssignment(tok, f"non-binary value {val}")
                assignment[names[tok]] = int(r)
                break
    model.check(assignment)
    return BackendResult(model.objective(assignment), assignment, "optimal")


def write_solution(assignment) -> str:
    return "".join(f"{var_name(v, i)} {val}\n" for (v, i), val in sorted(assignment.items()))


def export_bergamini_lp(model) -> str:
    """Assignment-model LP (``y_v``, ``x_u_v``) for external cross-checks."""
    n = model.g.n
    out = [f"\\ gccm bergamini model, k={model.k}", "Minimize"]
    obj = [(int(model.dist[u, v]), f"x_{u}_{v}") for u in range(n) for v in range(n)]
    out += _row_lines("obj", _expr(obj))
    out.append("Subject To")
    out += _row_lines("k_sum", _expr([(1, f"y_{v}") for v in range(n)]), f" = {model.k}")
    for u in range(n):
        out += _row_lines(f"assign_{u}", _expr([(1, f"x_{u}_{v}") for v in range(n)]), " = 1")
    for u in range(n):
        for v in range(n):
            out.append(f" valid_{u}_{v}: 1 x_{u}_{v} - 1 y_{v} <= 0")
    out.append("Binaries")
    names = [f"y_{v}" for v in range(n)] + [f"x_{u}_{v}" for u in range(n) for v in range(n)]
    for j in range(0, len(names), TERMS_PER_LINE):
        out.append(" " + " ".join(names[j:j + TERMS_PER_LINE]))
    out.append("End")
    return "\n".join(out) + "\n"
