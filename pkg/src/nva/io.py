"""Algebra files, subspace rows and construction recipes.

Algebra file::

    {"format": "nva-algebra/1", "field": {...}, "dim": 4,
     "basis": ["1", "i", "j", "k"], "table": [[i, j, k, "coeff"], ...]}

Coefficients are strings; omitted triples are zero.  Serialization is
canonical: same algebra, same bytes.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from .algebra import Element, StructureAlgebra, Subspace, derived_algebra
from .fields import FieldSpec, Q, format_scalar

FORMAT = "nva-algebra/1"


class FormatError(ValueError):
    pass


def algebra_to_dict(A: StructureAlgebra) -> dict:
    table = []
    for (i, j), row in sorted(A.table.items()):
        for k, c in row:
            table.append([i, j, k, format_scalar(c)])
    return {"format": FORMAT, "field": A.field.to_json(), "dim": A.dim,
            "basis": list(A.basis), "table": table}


def dumps_algebra(A: StructureAlgebra) -> str:
    return json.dumps(algebra_to_dict(A), separators=(",", ":")) + "\n"


def algebra_from_dict(obj: dict) -> StructureAlgebra:
    if obj.get("format") != FORMAT:
        raise FormatError(f"expected format {FORMAT!r}, got {obj.get('format')!r}")
    try:
        field = FieldSpec.from_json(obj["field"])
        dim = int(obj["dim"])
        basis = obj.get("basis")
        table: dict = {}
        for entry in obj["table"]:
            i, j, k, c = entry
            table.setdefault((int(i), int(j)), []).append((int(k), field.parse(str(c))))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed algebra file: {exc}") from exc
    return StructureAlgebra(field, dim, table, basis, {"name": obj.get("name", "algebra")})


def loads_algebra(text: str) -> StructureAlgebra:
    return algebra_from_dict(json.loads(text))


def read_algebra(path) -> StructureAlgebra:
    A = loads_algebra(Path(path).read_text(encoding="utf-8"))
    return A.with_meta(name=Path(path).stem)


def write_algebra(A: StructureAlgebra, path):
    Path(path).write_text(dumps_algebra(A), encoding="utf-8")


def subspace_to_rows(S: Subspace) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in S.dense_rows()]


def subspace_from_rows(A: StructureAlgebra, rows) -> Subspace:
    return Subspace.span(A, [A.element([A.field.parse(str(x)) for x in row]) for row in rows])


def element_to_dict(x: Element) -> dict:
    """Sparse ``{basis name: coeff string}``; the empty dict is zero."""
    return {x.algebra.basis[k]: format_scalar(c) for k, c in sorted(x.sparse().items())}


def element_from_dict(A: StructureAlgebra, obj: dict) -> Element:
    coords = [A.field.zero] * A.dim
    index = {n: k for k, n in enumerate(A.basis)}
    for name, c in obj.items():
        if name not in index:
            raise FormatError(f"unknown basis name {name!r}")
        coords[index[name]] = A.field.parse(str(c))
    return A.element(coords)


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -- recipes -----------------------------------------------------------------


def _field_of(recipe, default: FieldSpec) -> FieldSpec:
    if "field" in recipe:
        f = recipe["field"]
        return FieldSpec.from_flag(f) if isinstance(f, str) else FieldSpec.from_json(f)
    return default


def _scalars(field, xs):
    return [field.parse(str(x)) for x in xs]


def _table_from_entries(field, entries) -> dict:
    table: dict = {}
    for i, j, k, c in entries:
        table.setdefault((int(i), int(j)), []).append((int(k), field.parse(str(c))))
    return table


def build(recipe: dict, default_field: FieldSpec = Q) -> StructureAlgebra:
    """Construct the algebra a recipe describes.

    Recipes are dicts with a ``construct`` key; nested recipes appear under
    ``of`` or ``base``.  An inline algebra file (``format`` key) is accepted
    wherever a recipe is.
    """
    if "format" in recipe:
        return algebra_from_dict(recipe)
    kind = recipe.get("construct")
    field = _field_of(recipe, default_field)

    def sub(key):
        if key not in recipe:
            raise FormatError(f"recipe {kind!r} needs {key!r}")
        return build(recipe[key], field)

    if kind == "cayley-dickson":
        mu = _scalars(field, recipe["mu"])
        base = sub("of") if "of" in recipe else C.field_algebra(field)
        A = base
        for m in mu:
            A = C.cayley_dickson(A, m)
        return A
    if kind == "preset":
        name = recipe["name"]
        presets = {
            "complex": C.complex_numbers, "quaternions": C.quaternions, "octonions": C.octonions,
            "split-octonions": C.split_octonions, "kokoris-example": C.kokoris_example,
            "kokoris-nilpotent": C.kokoris_nilpotent_example, "field": C.field_algebra,
        }
        if name not in presets:
            raise FormatError(f"unknown preset {name!r}")
        return presets[name](field)
    if kind == "matrix":
        return C.matrix_algebra(int(recipe["n"]), field)
    if kind == "jordan-sym":
        return C.jordan_sym(int(recipe["n"]), field)
    if kind == "jordan-plus":
        return C.jordan_plus(int(recipe["n"]), field)
    if kind == "bilinear-form":
        form = [_scalars(field, row) for row in recipe["form"]]
        return C.bilinear_form_jordan(len(form), form, field)
    if kind == "quadratic":
        form = [_scalars(field, row) for row in recipe["form"]]
        cross = _table_from_entries(field, recipe.get("cross", []))
        q = C.QuadraticData(field, len(form), form, cross)
        return C.quadratic_algebra(q, recipe.get("basis"))
    if kind == "kokoris":
        base = sub("base")
        bracket = _table_from_entries(base.field, recipe.get("bracket", []))
        return C.kokoris_from_poisson(C.PoissonData(base, bracket))
    if kind == "poisson-polynomial":
        nv = int(recipe["num_vars"])
        c = {(int(i), int(j)): {tuple(e): field.parse(str(v)) for e, v in terms}
             for i, j, terms in recipe.get("c", [])}
        data = C.poisson_polynomial_truncated(nv, int(recipe["degree_cap"]), c, field)
        return C.kokoris_from_poisson(data)
    if kind == "truncated-polynomial":
        return C.truncated_polynomial_algebra(int(recipe["num_vars"]), int(recipe["degree_cap"]), field)
    if kind == "free-nilpotent":
        return C.free_nilpotent_nonassociative(int(recipe["gens"]), int(recipe["index"]), field)
    if kind == "free-nilpotent-associative":
        return C.free_nilpotent_associative(int(recipe["gens"]), int(recipe["index"]), field)
    if kind in ("plus", "minus", "unital-hull"):
        return derived_algebra(sub("of"), kind.replace("-", "_"))
    if kind == "mutation":
        A = sub("of")
        return derived_algebra(A, "mutation", A.field.parse(str(recipe["lambda"])))
    if kind == "scalar-extension":
        return C.scalar_extension(sub("of"), field)
    if kind == "direct-sum":
        return C.direct_sum([build(r, field) for r in recipe["parts"]])
    raise FormatError(f"unknown construction {kind!r}")


def load_recipe(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))
