"""JSON encodings of the public value types.

Rationals are serialized as "p/q" strings to avoid precision ambiguity.
Polynomials travel as text in the z1..zk grammar (univariate chain
polynomials use the variable t); generator numerators and denominators are
emitted in factored form so that round trips preserve the factor structure
the decomposition relies on.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Any

from .errors import ParseError
from .geometry import (
    HalfSpace,
    Hyperplane,
    LatticeBox,
    MeasureZeroSet,
    PolyhedralRegion,
)
from .oracle import GridReport
from .oresato import Chain, OreSatoForm
from .parsing import (
    format_fraction,
    format_multipoly,
    format_unipoly,
    parse_factored,
    parse_multipoly,
    parse_unipoly,
)
from .structure import (
    FactorialChain,
    FactorialForm,
    Piece,
    PiecewiseStructure,
    PochhammerEntry,
    PochhammerForm,
)
from .termratio import FactoredRational, TermSpec

log = logging.getLogger(__name__)


def fraction_to_json(x: Fraction) -> str:
    return format_fraction(Fraction(x))


def fraction_from_json(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational literal {text!r}") from exc


def factored_to_json(fr: FactoredRational) -> str:
    """Polynomial text preserving the stored factorization."""
    parts = []
    if fr.scalar != 1 or not fr.factors:
        parts.append(format_fraction(fr.scalar))
    for base, exp in fr.factors:
        body = f"({format_multipoly(base)})"
        parts.append(body if exp == 1 else f"{body}^{exp}")
    if len(parts) == 1 and fr.scalar == 1 and fr.factors:
        base, exp = fr.factors[0]
        if exp == 1:
            return format_multipoly(base)
    return " * ".join(parts)


def factored_from_json(text: str, arity: int) -> FactoredRational:
    return FactoredRational.make(arity, 1, parse_factored(text, arity))


# -- geometry ---------------------------------------------------------------


def hyperplane_to_json(h: Hyperplane) -> dict:
    return {"v": list(h.v), "n": h.n}


def hyperplane_from_json(obj: dict) -> Hyperplane:
    return Hyperplane.make(tuple(obj["v"]), int(obj["n"]))


def halfspace_to_json(h: HalfSpace) -> dict:
    return {"v": list(h.v), "gt": h.n}


def halfspace_from_json(obj: dict) -> HalfSpace:
    return HalfSpace.make(tuple(obj["v"]), int(obj["gt"]))


def region_to_json(r: PolyhedralRegion) -> dict:
    return {"k": r.arity, "halfspaces": [halfspace_to_json(h) for h in r.halfspaces]}


def region_from_json(obj: dict) -> PolyhedralRegion:
    return PolyhedralRegion.make(
        int(obj["k"]), [halfspace_from_json(h) for h in obj["halfspaces"]]
    )


def box_to_json(b: LatticeBox) -> dict:
    return {"corner": list(b.corner), "size": b.size}


def box_from_json(obj: dict) -> LatticeBox:
    return LatticeBox(tuple(int(x) for x in obj["corner"]), int(obj["size"]))


# -- term specs ---------------------------------------------------------------


def spec_to_json(spec: TermSpec) -> dict:
    out: dict[str, Any] = {
        "k": spec.arity,
        "generators": [
            {"num": factored_to_json(g.num), "den": factored_to_json(g.den)}
            for g in spec.generators
        ],
    }
    if spec.exceptions.hyperplanes:
        out["exceptions"] = [hyperplane_to_json(h) for h in spec.exceptions.hyperplanes]
    if spec.seed is not None:
        point, value = spec.seed
        out["seed"] = {"point": list(point), "value": fraction_to_json(value)}
    if spec.zero_divisor_witness is not None:
        out["zero_divisor_witness"] = format_multipoly(spec.zero_divisor_witness)
    return out


def spec_from_json(obj: dict) -> TermSpec:
    if "k" not in obj or "generators" not in obj:
        raise ParseError("spec JSON needs 'k' and 'generators'")
    k = int(obj["k"])
    gens = []
    for g in obj["generators"]:
        gens.append(
            (
                factored_from_json(g["num"], k),
                factored_from_json(g["den"], k),
            )
        )
    exceptions = MeasureZeroSet.make(
        [hyperplane_from_json(h) for h in obj.get("exceptions", [])]
    )
    seed = None
    if obj.get("seed") is not None:
        seed = (
            tuple(int(x) for x in obj["seed"]["point"]),
            fraction_from_json(obj["seed"]["value"]),
        )
    witness = None
    if obj.get("zero_divisor_witness") is not None:
        witness = parse_multipoly(obj["zero_divisor_witness"], k)
    spec = TermSpec.make(
        k, gens, exceptions=exceptions, seed=seed, zero_divisor_witness=witness
    )
    # quotients are stated on reduced pairs; unreduced input still works
    # (reduction is applied on use) but is worth flagging
    from .poly import gcd

    for i, g in enumerate(spec.generators):
        if not gcd(g.num.numerator(), g.den.numerator()).is_constant:
            log.warning("generator %d is not reduced; its quotient is reduced on use", i + 1)
    return spec


# -- decomposition forms --------------------------------------------------------


def form_to_json(form: OreSatoForm) -> dict:
    return {
        "C": format_multipoly(form.c_poly),
        "D": format_multipoly(form.d_poly),
        "gamma": [fraction_to_json(g) for g in form.gamma],
        "chains": [
            {
                "v": list(c.direction),
                "a": format_unipoly(c.num),
                "b": format_unipoly(c.den),
            }
            for c in form.chains
        ],
    }


def form_from_json(obj: dict, arity: int) -> OreSatoForm:
    chains = tuple(
        Chain(
            tuple(int(x) for x in c["v"]),
            parse_unipoly(c["a"]),
            parse_unipoly(c["b"]),
        )
        for c in obj["chains"]
    )
    return OreSatoForm(
        arity,
        parse_multipoly(obj["C"], arity),
        parse_multipoly(obj["D"], arity),
        tuple(fraction_from_json(g) for g in obj["gamma"]),
        chains,
    )


def structure_to_json(ps: PiecewiseStructure) -> dict:
    return {
        "form": form_to_json(ps.form),
        "H": [hyperplane_to_json(h) for h in ps.excluded.hyperplanes],
        "pieces": [
            {
                "region": region_to_json(p.region),
                "z0": list(p.base_point),
                "f0": None if p.base_value is None else fraction_to_json(p.base_value),
            }
            for p in ps.pieces
        ],
    }


def structure_from_json(obj: dict) -> PiecewiseStructure:
    pieces = []
    arity = None
    for p in obj["pieces"]:
        region = region_from_json(p["region"])
        arity = region.arity
        pieces.append(
            Piece(
                region,
                tuple(int(x) for x in p["z0"]),
                None if p["f0"] is None else fraction_from_json(p["f0"]),
            )
        )
    if arity is None:
        raise ParseError("structure JSON needs at least one piece")
    return PiecewiseStructure(
        form_from_json(obj["form"], arity),
        tuple(pieces),
        MeasureZeroSet.make([hyperplane_from_json(h) for h in obj["H"]]),
    )


def factorial_to_json(ff: FactorialForm) -> dict:
    return {
        "region": region_to_json(ff.region),
        "gamma": [fraction_to_json(g) for g in ff.gamma],
        "scalar": fraction_to_json(ff.scalar),
        "C": format_multipoly(ff.c_poly),
        "D": format_multipoly(ff.d_poly),
        "chains": [
            {
                "v": list(c.direction),
                "a": format_unipoly(c.num),
                "b": format_unipoly(c.den),
                "n": c.offset,
            }
            for c in ff.chains
        ],
    }


def factorial_from_json(obj: dict) -> FactorialForm:
    region = region_from_json(obj["region"])
    arity = region.arity
    return FactorialForm(
        region,
        tuple(fraction_from_json(g) for g in obj["gamma"]),
        fraction_from_json(obj["scalar"]),
        parse_multipoly(obj["C"], arity),
        parse_multipoly(obj["D"], arity),
        tuple(
            FactorialChain(
                tuple(int(x) for x in c["v"]),
                parse_unipoly(c["a"]),
                parse_unipoly(c["b"]),
                int(c["n"]),
            )
            for c in obj["chains"]
        ),
    )


def pochhammer_to_json(pf: PochhammerForm) -> dict:
    def entries(entries_):
        return [
            {"m": fraction_to_json(e.base), "v": list(e.direction), "r": e.offset}
            for e in entries_
        ]

    return {
        "region": region_to_json(pf.region),
        "gamma": [fraction_to_json(g) for g in pf.gamma],
        "scalar": fraction_to_json(pf.scalar),
        "C": format_multipoly(pf.c_poly),
        "D": format_multipoly(pf.d_poly),
        "numerator": entries(pf.numerator),
        "denominator": entries(pf.denominator),
    }


def pochhammer_from_json(obj: dict) -> PochhammerForm:
    region = region_from_json(obj["region"])
    arity = region.arity

    def entries(items):
        return tuple(
            PochhammerEntry(
                fraction_from_json(e["m"]),
                tuple(int(x) for x in e["v"]),
                int(e["r"]),
            )
            for e in items
        )

    return PochhammerForm(
        region,
        tuple(fraction_from_json(g) for g in obj["gamma"]),
        fraction_from_json(obj["scalar"]),
        parse_multipoly(obj["C"], arity),
        parse_multipoly(obj["D"], arity),
        entries(obj["numerator"]),
        entries(obj["denominator"]),
    )


def report_to_json(report: GridReport) -> dict:
    return {
        "checked": report.checked,
        "equal": report.equal,
        "on_H": report.on_h,
        "d_zero": report.d_zero,
        "blocked": report.blocked,
        "value_unknown": report.value_unknown,
        "mismatches": [
            {
                "z": list(m.z),
                "closed": fraction_to_json(m.closed),
                "oracle": fraction_to_json(m.oracle),
            }
            for m in report.mismatches
        ],
    }
