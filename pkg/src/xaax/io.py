"""JSON encodings and problem-file parsing.

Files are line-delimited JSON: one document per non-blank line. Scalars use
the exact text forms of :mod:`xaax.scalar` (``"p/q"`` or ``{"re", "im"}``).
"""

import json
from dataclasses import dataclass

from .errors import ParseError, XaaxError
from .inverse import InverseSpec
from .jordan import JordanStructure
from .matrix import Matrix
from .scalar import scalar_from_json, scalar_to_json
from .series import TaylorSpec

__all__ = [
    "Problem",
    "matrix_to_json",
    "matrix_from_json",
    "structure_to_json",
    "structure_from_json",
    "family_to_json",
    "family_from_json",
    "read_documents",
    "parse_problem",
    "read_problems",
    "read_params",
    "dumps",
]


def dumps(obj):
    return json.dumps(obj, ensure_ascii=False)


def matrix_to_json(M):
    out = {"rows": [[scalar_to_json(x) for x in row] for row in M.rows()]}
    if M.is_square():
        out = {"n": M.n, **out}
    return out


def matrix_from_json(obj):
    rows = obj.get("rows") if isinstance(obj, dict) else obj
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows or {\"n\", \"rows\"}")
    M = Matrix([[scalar_from_json(x) for x in r] for r in rows])
    if isinstance(obj, dict) and "n" in obj and (not M.is_square() or M.n != obj["n"]):
        raise ParseError(f"declared n = {obj['n']} does not match rows of shape {M.shape}")
    return M


def structure_to_json(js):
    return {
        "blocks": [[scalar_to_json(lam), m] for lam, m in js.blocks],
        "P": None if js.P is None else matrix_to_json(js.P),
    }


def structure_from_json(obj):
    blocks = tuple((scalar_from_json(lam), int(m)) for lam, m in obj["blocks"])
    if obj.get("P") is None:
        return JordanStructure(blocks)
    from .linsolve import inverse

    P = matrix_from_json(obj["P"])
    return JordanStructure(blocks, P, inverse(P))


def _form_to_json(form):
    from .critical import CriticalForm
    from .regular import RegularForm

    if isinstance(form, CriticalForm):
        return {"type": "critical", "p": form.p,
                "g": [scalar_to_json(c) for c in form.g_coeffs]}
    if isinstance(form, RegularForm):
        return {"type": "regular", "g": [scalar_to_json(c) for c in form.g_coeffs],
                "scale": scalar_to_json(form.scale)}
    return None


def family_to_json(family):
    return {
        "kind": family.kind,
        "parameter_count": family.parameter_count,
        "alpha": scalar_to_json(family.alpha),
        "A": matrix_to_json(family.A),
        "form": _form_to_json(family.form),
        "slots": [{"block": s.block,
                   "free_entries": [list(p) for p in s.free_entries],
                   "constraints": list(s.constraints)} for s in family.slots],
        "assembly": structure_to_json(family.assembly),
    }


def family_from_json(obj):
    """Rebuild a family by re-running its solver on the recorded data."""
    from .critical import critical_family
    from .inverse import dim3_solution_family
    from .regular import solve_regular

    A = matrix_from_json(obj["A"])
    alpha = scalar_from_json(obj["alpha"])
    assembly = structure_from_json(obj["assembly"])
    eigs = assembly.eigenvalues()
    form = obj.get("form")
    kind = obj["kind"]
    if kind == "inverse-special":
        return dim3_solution_family(*A.diagonal())
    if kind == "regular-chain":
        scale = scalar_from_json(form["scale"])
        coeffs = [scale * scalar_from_json(c) for c in form["g"]]
        return solve_regular(A, TaylorSpec(alpha, coeffs), eigs)
    if form is None:
        return critical_family(A, TaylorSpec(alpha, (0,)), eigs)
    coeffs = [0] * (form["p"] - 1) + [scalar_from_json(c) for c in form["g"]]
    return critical_family(A, TaylorSpec(alpha, coeffs), eigs)


def read_documents(text):
    """``(line_number, document)`` for every non-blank line."""
    docs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            docs.append((lineno, json.loads(line)))
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON ({exc.msg})") from exc
    return docs


@dataclass(frozen=True)
class Problem:
    A: Matrix
    eigenvalues: tuple
    spec: object  # TaylorSpec in direct mode, InverseSpec in inverse mode
    mode: str
    line: int = 1


def _parse_f(f, mode, n):
    order = max(n - 1, 1)
    if not isinstance(f, dict):
        raise ParseError("'f' must be an object")
    if ("preset" in f) == ("coeffs" in f):
        raise ParseError("'f' needs exactly one of 'preset' or 'coeffs'")
    if "coeffs" in f:
        alpha = scalar_from_json(f.get("alpha", 0))
        coeffs = [scalar_from_json(c) for c in f["coeffs"]]
        if not coeffs:
            raise ParseError("'coeffs' must not be empty")
        return TaylorSpec(alpha, coeffs) if mode == "direct" else InverseSpec(alpha, coeffs)
    preset = f["preset"]
    if preset == "log":
        if mode != "direct":
            raise ParseError("the log preset has no expansion at 0; use it in direct mode")
        return TaylorSpec.log(order)
    if preset == "exp":
        if mode != "inverse":
            raise ParseError("exp has no zero; the exp preset is only valid in inverse mode")
        return InverseSpec.exp(order)
    if preset == "monomial":
        p = f.get("p")
        if not isinstance(p, int) or isinstance(p, bool) or p < 1:
            raise ParseError("monomial preset needs an integer 'p' >= 1")
        spec = TaylorSpec.monomial(p)
        return spec if mode == "direct" else InverseSpec(0, spec.coeffs, provenance=f"monomial:{p}")
    raise ParseError(f"unknown preset {preset!r}")


def parse_problem(doc, line=1):
    try:
        if not isinstance(doc, dict):
            raise ParseError("problem must be a JSON object")
        unknown = set(doc) - {"A", "eigenvalues", "f", "mode"}
        if unknown:
            raise ParseError(f"unknown field(s) {sorted(unknown)}")
        if "A" not in doc or "f" not in doc:
            raise ParseError("problem needs 'A' and 'f'")
        A = matrix_from_json(doc["A"])
        if not A.is_square():
            raise ParseError(f"A must be square, got shape {A.shape}")
        mode = doc.get("mode", "inverse" if doc["f"].get("preset") == "exp" else "direct")
        if mode not in ("direct", "inverse"):
            raise ParseError(f"mode must be 'direct' or 'inverse', got {mode!r}")
        eigs = doc.get("eigenvalues")
        if eigs is not None:
            eigs = tuple(scalar_from_json(e) for e in eigs)
        elif not A.is_upper_triangular():
            raise ParseError("'eigenvalues' is required when A is not upper triangular")
        spec = _parse_f(doc["f"], mode, A.n)
    except (XaaxError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"line {line}: {exc}") from exc
    return Problem(A, eigs, spec, mode, line)


def read_problems(path):
    with open(path, encoding="utf-8") as fh:
        return [parse_problem(doc, line) for line, doc in read_documents(fh.read())]


def read_params(path):
    """Parameter values from ``{"values": [...]}``."""
    with open(path, encoding="utf-8") as fh:
        docs = read_documents(fh.read())
    if len(docs) != 1 or not isinstance(docs[0][1], dict) or "values" not in docs[0][1]:
        raise ParseError("params file must hold one {\"values\": [...]} document")
    return [scalar_from_json(v) for v in docs[0][1]["values"]]
