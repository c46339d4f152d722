"""Command-line reports over the derivation and certification pipelines.

Every subcommand emits a human-readable text block by default and a
canonical JSON block under ``--json`` (sorted keys, two-space indent, so
repeated runs are byte-identical).  Exit codes: 0 for a passing verdict or
a completed computation, 1 for a failing verdict, 2 for input errors.

Input files are JSON.  Torus actions follow the schema::

    {
      "model": {"preset": "E3_generic"}
               | {"product": [{"period": "zeta3"}, ...]}
               | {"cm": {"conductor": 7, "holomorphic_type": [1, 2, 4]}},
      "group": {"family": "D8"},            // optional cross-check
      "generators": [
        {"name": "a",
         "linear": [[1, 0, ...], ...],      // integer lattice matrix
         "translation": ["1/2", "0", ...]}  // rationals as strings
      ]
    }

Surface-times-curve data sets use ``"kind": "type-k"`` with a required
group, per-generator curve translations, one generator marked
``"involution": true``, and ``"fixedCounts"`` keyed by words in the
generator names.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from cycert.chamber import (
    ChamberWalkError,
    NodalOrbitClass,
    QuadLattice,
    chamber_test,
    reflect_into_chamber,
)
from cycert.classify import (
    TypeKSpec,
    check_type_a_action,
    check_type_k_action,
    derive_type_a,
    derive_type_k,
    pi1_criterion,
)
from cycert.groups import (
    alternating,
    are_isomorphic,
    binary_dihedral,
    build_group,
    cyclic,
    dihedral,
    generalized_dihedral,
    product_cyclic,
    symmetric,
)
from cycert.picard import (
    picard_crepant,
    picard_quotient_torus,
    solve_k3_invariants,
    type_k_picard,
)
from cycert.presets import (
    action_preset,
    action_preset_names,
    type_k_preset,
    type_k_preset_names,
)
from cycert.torus import (
    ActionSpec,
    AffineAut,
    affine_closure,
    cm_model,
    fixed_points,
    lefschetz_number,
    product_model,
)

STEP_CAP_VAR = "CYCERT_STEP_CAP"

_MODEL_PRESETS = {
    "E3_generic": ("e1", "e2", "e3"),
    "E3_zeta3": ("zeta3", "zeta3", "zeta3"),
    "E3_zeta4": ("zeta4", "zeta4", "zeta4"),
}

_BUILD_FAMILIES = frozenset({
    "cyclic", "product-cyclic", "dihedral", "binary-dihedral", "symmetric",
    "alternating", "heisenberg27", "c3c3-semidirect-c2",
    "generalized-dihedral", "order24",
})


class SpecLoadError(ValueError):
    """Input rejected; the message names the offending path."""


def _fail(path: str, message: str) -> SpecLoadError:
    return SpecLoadError(f"{path}: {message}")


# -- input parsing -----------------------------------------------------------------


def _parse_fraction(value, path: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise _fail(path, f"cannot parse {value!r} as a rational") from None


def _group_by_name(name: str):
    """Resolve catalog shorthand like D8, Q12, C2xC2, or C3xC3:C2."""
    if name == "A4":
        return alternating(4)
    if name == "S4":
        return symmetric(4)
    base, semidirect, tail = name.partition(":C2")
    if semidirect and not tail:
        return generalized_dihedral(
            [int(part[1:]) for part in base.split("x")])
    if name.startswith("D") and name[1:].isdigit():
        return dihedral(int(name[1:]))
    if name.startswith("Q") and name[1:].isdigit():
        return binary_dihedral(int(name[1:]))
    parts = name.split("x")
    if all(p.startswith("C") and p[1:].isdigit() for p in parts):
        orders = [int(p[1:]) for p in parts]
        return cyclic(orders[0]) if len(orders) == 1 else product_cyclic(orders)
    raise ValueError(f"unknown group name {name!r}")


def _group_from_json(data, path: str):
    if not isinstance(data, dict) or "family" not in data:
        raise _fail(path, "expected an object with a 'family' key")
    family = data["family"]
    try:
        if family in _BUILD_FAMILIES:
            return build_group(data)
        return _group_by_name(str(family))
    except (KeyError, TypeError, ValueError) as exc:
        raise _fail(path, str(exc)) from None


def _model_from_json(data, path: str):
    if not isinstance(data, dict) or len(data) != 1:
        raise _fail(
            path, "expected exactly one of 'preset', 'product', or 'cm'")
    if "preset" in data:
        tags = _MODEL_PRESETS.get(data["preset"])
        if tags is None:
            known = ", ".join(sorted(_MODEL_PRESETS))
            raise _fail(f"{path}.preset",
                        f"unknown model preset {data['preset']!r}; "
                        f"choose from {known}")
        return product_model(tags)
    if "product" in data:
        factors = data["product"]
        if not isinstance(factors, list) or not factors:
            raise _fail(f"{path}.product", "expected a nonempty list")
        tags = []
        for i, factor in enumerate(factors):
            if not isinstance(factor, dict) or "period" not in factor:
                raise _fail(f"{path}.product[{i}]",
                            "expected an object with a 'period' label")
            tags.append(str(factor["period"]))
        return product_model(tuple(tags))
    if "cm" in data:
        cm = data["cm"]
        if not isinstance(cm, dict) or "conductor" not in cm \
                or "holomorphic_type" not in cm:
            raise _fail(f"{path}.cm",
                        "expected 'conductor' and 'holomorphic_type' keys")
        try:
            return cm_model(int(cm["conductor"]),
                            tuple(int(k) for k in cm["holomorphic_type"]))
        except (TypeError, ValueError) as exc:
            raise _fail(f"{path}.cm", str(exc)) from None
    raise _fail(path, "expected exactly one of 'preset', 'product', or 'cm'")


def _linear_from_json(rows, rank: int, path: str):
    if not isinstance(rows, list) or len(rows) != rank:
        raise _fail(path, f"expected {rank} rows for this model")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != rank:
            raise _fail(f"{path}[{i}]", f"expected {rank} integer entries")
        try:
            out.append(tuple(int(v) for v in row))
        except (TypeError, ValueError):
            raise _fail(f"{path}[{i}]", "entries must be integers") from None
    return tuple(out)


def _translation_from_json(values, rank: int, path: str):
    if values is None:
        return (Fraction(0),) * rank
    if not isinstance(values, list) or len(values) != rank:
        raise _fail(path, f"expected {rank} rational entries for this model")
    return tuple(
        _parse_fraction(v, f"{path}[{i}]") for i, v in enumerate(values))


def _generator_entries(data, path: str = "generators"):
    gens = data.get("generators")
    if not isinstance(gens, list) or not gens:
        raise _fail(path, "expected a nonempty list of generator objects")
    names = []
    for i, entry in enumerate(gens):
        if not isinstance(entry, dict):
            raise _fail(f"{path}[{i}]", "expected an object")
        name = entry.get("name", f"g{i}")
        if not isinstance(name, str) or not name:
            raise _fail(f"{path}[{i}].name", "expected a nonempty string")
        if name in names:
            raise _fail(f"{path}[{i}].name", f"duplicate generator {name!r}")
        names.append(name)
    return gens, names


def _load_torus_action(data, default_name: str):
    model = _model_from_json(data.get("model"), "model")
    gens, names = _generator_entries(data)
    auts = []
    for i, entry in enumerate(gens):
        path = f"generators[{i}]"
        linear = _linear_from_json(
            entry.get("linear"), model.rank, f"{path}.linear")
        translation = _translation_from_json(
            entry.get("translation"), model.rank, f"{path}.translation")
        try:
            auts.append(AffineAut(model, linear, translation))
        except ValueError as exc:
            raise _fail(f"{path} ({names[i]})", str(exc)) from None
    try:
        spec = affine_closure(
            model, auts, name=str(data.get("name", default_name)))
    except ValueError as exc:
        raise _fail("generators", str(exc)) from None
    if "group" in data:
        declared = _group_from_json(data["group"], "group")
        if not are_isomorphic(spec.group, declared):
            raise _fail(
                "group",
                f"generators close to a group of order {spec.group.order}, "
                f"not isomorphic to the declared {declared.name}")
    return spec, tuple(names)


def _parse_word(word: str, names: dict, group, path: str = "element") -> int:
    tokens = [t for chunk in str(word).split("*") for t in chunk.split()]
    x = group.identity
    for token in tokens:
        if token == "1":
            continue
        base, _, exponent = token.partition("^")
        if base not in names:
            known = ", ".join(sorted(names))
            raise _fail(path, f"unknown generator {base!r} (have {known})")
        try:
            k = int(exponent) if exponent else 1
        except ValueError:
            raise _fail(
                path, f"bad exponent {exponent!r} on {base!r}") from None
        x = group.mul[x][group.power(names[base], k)]
    return x


def _load_type_k(data, default_name: str) -> TypeKSpec:
    if "group" not in data:
        raise _fail("group", "a surface-times-curve data set declares "
                             "its group up front")
    group = _group_from_json(data["group"], "group")
    gens, names = _generator_entries(data)
    if len(gens) != len(group.generators):
        raise _fail(
            "generators",
            f"this group is generated by {len(group.generators)} elements, "
            f"got {len(gens)} entries")
    model = product_model(("e1",), name="curve factor")
    assignment = {}
    involution = None
    translation_gens = []
    for i, entry in enumerate(gens):
        element = group.generators[i]
        path = f"generators[{i}]"
        translation = _translation_from_json(
            entry.get("translation"), model.rank, f"{path}.translation")
        if entry.get("involution"):
            if involution is not None:
                raise _fail(f"{path}.involution",
                            "only one generator may be marked")
            involution = element
            linear = ((-1, 0), (0, -1))
        else:
            translation_gens.append(element)
            linear = ((1, 0), (0, 1))
        assignment[element] = AffineAut(model, linear, translation)
    if involution is None:
        raise _fail("generators", "mark one generator with involution: true")
    try:
        elliptic = ActionSpec(model, group, assignment)
    except ValueError as exc:
        raise _fail("generators", str(exc)) from None
    name_to_element = dict(zip(names, group.generators))
    counts_data = data.get("fixedCounts")
    if not isinstance(counts_data, dict):
        raise _fail("fixedCounts",
                    "expected an object keyed by generator words")
    counts = {}
    for word, value in counts_data.items():
        element = _parse_word(
            word, name_to_element, group, f"fixedCounts[{word!r}]")
        if not isinstance(value, int) or value < 0:
            raise _fail(f"fixedCounts[{word!r}]",
                        "expected a nonnegative integer")
        counts[element] = value
    return TypeKSpec(
        name=str(data.get("name", default_name)),
        group=group,
        translation_part=group.closure(translation_gens),
        involution=involution,
        elliptic=elliptic,
        fixed_counts=counts,
    )


def _load_file(path: str):
    """Parse a JSON action file; returns (kind, spec, generator names)."""
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise SpecLoadError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecLoadError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise SpecLoadError(f"{path}: top level must be an object")
    default_name = os.path.splitext(os.path.basename(path))[0]
    kind = data.get("kind", "type-a")
    if kind == "type-a":
        spec, names = _load_torus_action(data, default_name)
        return "type-a", spec, names
    if kind == "type-k":
        return "type-k", _load_type_k(data, default_name), None
    raise SpecLoadError(f"kind: expected 'type-a' or 'type-k', got {kind!r}")


def load_spec(path: str):
    """Parse a JSON action file into a validated spec object."""
    return _load_file(path)[1]


def _default_names(group) -> tuple:
    return tuple("abcdefgh"[:len(group.generators)])


def _resolve_subject(subject: str):
    """Map a preset name or file path to (kind, spec, generator names)."""
    if subject in action_preset_names():
        spec = action_preset(subject)
        return "type-a", spec, _default_names(spec.group)
    if subject in type_k_preset_names():
        return "type-k", type_k_preset(subject), None
    if os.path.exists(subject):
        kind, spec, names = _load_file(subject)
        if names is None and kind == "type-a":
            names = _default_names(spec.group)
        return kind, spec, names
    known = ", ".join(action_preset_names() + type_k_preset_names())
    raise SpecLoadError(
        f"{subject!r} is neither a preset nor a readable file; "
        f"presets: {known}")


def _load_json_file(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SpecLoadError(f"cannot read {what} {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecLoadError(
            f"{what} {path} is not valid JSON: {exc}") from None


# -- payload rendering -------------------------------------------------------------


def _matrix_payload(matrix):
    return [
        [str(matrix.entry(i, j)) for j in range(matrix.cols)]
        for i in range(matrix.rows)
    ]


def _reason_payload(reason):
    return {
        "condition": reason.condition,
        "element": reason.element,
        "detail": reason.detail,
    }


def _certificate_payload(cert):
    return {
        "subject": cert.subject,
        "rule": cert.rule,
        "conclusion": cert.conclusion,
        "steps": [
            {"claim": s.claim, "kind": s.kind, "data": s.data}
            for s in cert.steps
        ],
    }


def _trace_payload(trace):
    return [
        {
            "candidate": step.candidate,
            "rule": step.rule,
            "certificate": _certificate_payload(step.certificate),
        }
        for step in trace
    ]


def _trace_text(trace) -> list:
    lines = ["trace:"]
    for step in trace:
        cert = step.certificate
        lines.append(f"  {step.candidate} [{step.rule}]: {cert.conclusion}")
        for s in cert.steps:
            suffix = f" ({s.data})" if s.data else ""
            lines.append(f"    - {s.kind}: {s.claim}{suffix}")
    return lines


def _verdict_payload(verdict):
    return {
        "status": verdict.status,
        "reasons": [_reason_payload(r) for r in verdict.reasons],
        "witness": list(verdict.witness),
    }


def _verdict_text(verdict) -> list:
    lines = []
    for reason in verdict.reasons:
        where = "" if reason.element is None else f" element {reason.element}"
        lines.append(f"  [{reason.condition}]{where}: {reason.detail}")
    for item in verdict.witness:
        lines.append(f"  witness: {item}")
    return lines


def _candidate_status(realized: bool) -> str:
    return "realized" if realized else "candidate (existence open)"


def _type_k_row(candidate):
    return {
        "group": candidate.name,
        "shape": list(candidate.shape),
        "rho": candidate.rho,
        "preset": candidate.preset,
        "status": _candidate_status(candidate.realized),
    }


def _type_k_table_text(rows) -> list:
    lines = ["group      shape   rho  status"]
    for row in rows:
        shape = "({}, {})".format(*row["shape"])
        lines.append(
            f"{row['group']:<10} {shape:<7} {row['rho']:>3}  {row['status']}")
    return lines


# -- subcommand handlers -----------------------------------------------------------


def _cmd_derive(args):
    if args.target == "type-a":
        survivors, trace = derive_type_a()
        payload = {
            "command": "derive",
            "target": "type-a",
            "traceSteps": len(trace),
            "survivors": [
                {
                    "group": c.name,
                    "preset": c.preset,
                    "status": c.verdict.status,
                    "matrices": [_matrix_payload(m) for m in c.matrices],
                }
                for c in survivors
            ],
        }
        lines = [
            "derivation: free torus quotients with trivial canonical class",
            f"candidates examined: {len(trace)}",
            f"survivors: {len(survivors)}",
        ]
        for c in survivors:
            lines.append(f"  {c.name} (preset {c.preset}): {c.verdict.status}")
            for k, matrix in enumerate(c.matrices, start=1):
                rows = "; ".join(
                    ", ".join(row) for row in _matrix_payload(matrix))
                lines.append(f"    generator {k} acts by [{rows}]")
    else:
        candidates, trace = derive_type_k()
        rows = [_type_k_row(c) for c in candidates]
        payload = {
            "command": "derive",
            "target": "type-k",
            "traceSteps": len(trace),
            "candidates": rows,
        }
        lines = [
            "derivation: surface-times-curve quotients by a free involution",
            f"trace steps: {len(trace)}",
        ]
        lines.extend(_type_k_table_text(rows))
    if args.trace:
        payload["trace"] = _trace_payload(trace)
        lines.extend(_trace_text(trace))
    return payload, lines, 0


def _cmd_verify(args):
    kind, spec, _ = _resolve_subject(args.subject)
    if kind == "type-a":
        verdict = check_type_a_action(spec)
        payload = {
            "command": "verify",
            "subject": args.subject,
            "kind": "torus-quotient",
        }
        note = None
    else:
        verdict = check_type_k_action(spec)
        payload = {
            "command": "verify",
            "subject": args.subject,
            "kind": "surface-curve-quotient",
        }
        note = ("realized example" if spec.realized
                else "candidate (existence open)")
        payload["note"] = note
    payload.update(_verdict_payload(verdict))
    lines = [f"verify {args.subject}: {verdict.status}"]
    lines.extend(_verdict_text(verdict))
    if note is not None:
        lines.append(f"  note: {note}")
    return payload, lines, 0 if verdict.passed else 1


def _cmd_picard(args):
    kind, spec, _ = _resolve_subject(args.subject)
    if kind == "type-a":
        invariants = picard_quotient_torus(spec)
        report = picard_crepant(spec)
        payload = {
            "command": "picard",
            "subject": args.subject,
            "kind": "torus-quotient",
            "invariantDimension": invariants.dimension,
            "hodge": list(invariants.hodge),
            "basis": list(invariants.basis),
            "quotientRho": report.quotient_rho,
            "exceptionalContribution": report.exceptional_contribution,
            "totalRho": report.total_rho,
        }
        lines = [
            f"picard {args.subject}",
            f"  invariant square dimension: {invariants.dimension}",
            "  hodge split: ({}, {}, {})".format(*invariants.hodge),
            f"  quotient rho: {report.quotient_rho}",
            f"  exceptional contribution: {report.exceptional_contribution}",
            f"  total rho: {report.total_rho}",
        ]
        for item in invariants.basis:
            lines.append(f"  basis: {item}")
    else:
        rho = type_k_picard(spec.group, spec.fixed_counts)
        multiplicities = solve_k3_invariants(spec.group, spec.fixed_counts)
        payload = {
            "command": "picard",
            "subject": args.subject,
            "kind": "surface-curve-quotient",
            "rho": rho,
            "multiplicities": multiplicities,
        }
        lines = [f"picard {args.subject}", f"  rho: {rho}"]
        for name in sorted(multiplicities):
            lines.append(f"  multiplicity {name}: {multiplicities[name]}")
    return payload, lines, 0


def _cmd_lefschetz(args):
    kind, spec, names = _resolve_subject(args.spec)
    if kind == "type-k":
        raise SpecLoadError(
            "lefschetz needs a torus action, not a surface-times-curve "
            "data set")
    name_to_element = dict(zip(names, spec.group.generators))
    element = _parse_word(args.element, name_to_element, spec.group)
    f = spec.image(element)
    number = lefschetz_number(f)
    fp = fixed_points(f)
    payload = {
        "command": "lefschetz",
        "spec": args.spec,
        "element": args.element,
        "lefschetz": number,
        "fixedPoints": {"kind": fp.kind, "count": fp.count},
    }
    described = fp.kind if fp.count is None else f"{fp.kind} ({fp.count})"
    lines = [
        f"lefschetz number of {args.element!r}: {number}",
        f"fixed points: {described}",
    ]
    return payload, lines, 0


def _chamber_inputs(args):
    gram = _load_json_file(args.gram, "gram file")
    try:
        lattice = QuadLattice(gram)
    except (TypeError, ValueError) as exc:
        raise SpecLoadError(f"gram file {args.gram}: {exc}") from None
    orbit_data = _load_json_file(args.orbits, "orbit file")
    if not isinstance(orbit_data, list) or not orbit_data:
        raise SpecLoadError(
            f"orbit file {args.orbits}: expected a nonempty list of wall "
            f"families")
    orbits = []
    for k, family in enumerate(orbit_data):
        try:
            orbits.append(NodalOrbitClass(lattice, family))
        except (TypeError, ValueError) as exc:
            raise SpecLoadError(
                f"orbit file {args.orbits}, family {k}: {exc}") from None
    try:
        vector = [int(v) for v in args.vector.split(",")]
    except ValueError:
        raise SpecLoadError(
            f"vector: cannot parse {args.vector!r} as comma-separated "
            f"integers") from None
    if len(vector) != lattice.rank:
        raise SpecLoadError(
            f"vector: expected {lattice.rank} entries, got {len(vector)}")
    return lattice, orbits, vector


def _cmd_chamber(args):
    lattice, orbits, vector = _chamber_inputs(args)
    payload = {
        "command": "chamber",
        "vector": list(vector),
        "reduce": bool(args.reduce),
    }
    if args.reduce:
        cap = os.environ.get(STEP_CAP_VAR)
        try:
            reduced, word = reflect_into_chamber(
                lattice, vector, orbits,
                step_cap=None if cap is None else int(cap))
        except ChamberWalkError as exc:
            payload["error"] = str(exc)
            payload["partialWord"] = list(exc.word)
            lines = [f"chamber walk failed: {exc}",
                     f"partial word: {list(exc.word)}"]
            return payload, lines, 1
        payload["reduced"] = list(reduced)
        payload["word"] = list(word)
        lines = [
            f"reduced vector: {list(reduced)}",
            f"reflection word (family indices): {list(word)}",
        ]
        return payload, lines, 0
    inside = chamber_test(lattice, vector, orbits)
    pairings = [
        [lattice.pairing(vector, wall) for wall in orbit] for orbit in orbits
    ]
    payload["inChamber"] = inside
    payload["pairings"] = pairings
    lines = [f"in chamber: {'yes' if inside else 'no'}"]
    for k, row in enumerate(pairings):
        lines.append(f"  family {k} pairings: {row}")
    return payload, lines, 0 if inside else 1


def _cmd_table(args):
    candidates, _ = derive_type_k()
    rows = [_type_k_row(c) for c in candidates]
    payload = {"command": "table", "target": "type-k", "rows": rows}
    return payload, _type_k_table_text(rows), 0


def _cmd_pi1(args):
    try:
        verdict = pi1_criterion(args.rho)
    except ValueError as exc:
        raise SpecLoadError(str(exc)) from None
    payload = {
        "command": "pi1",
        "rho": verdict.rho,
        "status": verdict.status,
        "witness": verdict.witness,
    }
    if verdict.witness is None:
        lines = [f"rho {verdict.rho}: {verdict.status}"]
    else:
        lines = [
            f"rho {verdict.rho}: {verdict.status} "
            f"(witness {verdict.witness})"
        ]
    return payload, lines, 0


# -- entry point -------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--json", action="store_true",
        help="emit the canonical machine block instead of text")
    shared.add_argument(
        "--trace", action="store_true",
        help="include the full elimination trace where one exists")
    parser = argparse.ArgumentParser(
        prog="cycert",
        description="exact derivations and certificates for quotient "
                    "threefold classifications",
        epilog=f"environment: {STEP_CAP_VAR} caps chamber walk length")
    commands = parser.add_subparsers(dest="command", required=True)

    derive = commands.add_parser(
        "derive", parents=[shared],
        help="replay a full classification derivation")
    derive.add_argument("target", choices=["type-a", "type-k"])
    derive.set_defaults(handler=_cmd_derive)

    verify = commands.add_parser(
        "verify", parents=[shared],
        help="check one action against its defining conditions")
    verify.add_argument("subject", help="preset name or JSON file")
    verify.set_defaults(handler=_cmd_verify)

    picard = commands.add_parser(
        "picard", parents=[shared],
        help="invariant cohomology and resolution Picard numbers")
    picard.add_argument("subject", help="preset name or JSON file")
    picard.set_defaults(handler=_cmd_picard)

    lefschetz = commands.add_parser(
        "lefschetz", parents=[shared],
        help="fixed-point count of one group element")
    lefschetz.add_argument("--spec", required=True,
                           help="preset name or JSON file")
    lefschetz.add_argument("--element", required=True,
                           help="word in the generators, e.g. 'a*b^2'")
    lefschetz.set_defaults(handler=_cmd_lefschetz)

    chamber = commands.add_parser(
        "chamber", parents=[shared],
        help="wall-and-chamber tests on a hyperbolic lattice")
    chamber.add_argument("--gram", required=True,
                         help="JSON file with the Gram matrix")
    chamber.add_argument("--orbits", required=True,
                         help="JSON file with wall families")
    chamber.add_argument("--vector", required=True,
                         help="comma-separated integer coordinates")
    chamber.add_argument("--reduce", action="store_true",
                         help="reflect the vector into the chamber")
    chamber.set_defaults(handler=_cmd_chamber)

    table = commands.add_parser(
        "table", parents=[shared], help="print a derived catalog")
    table.add_argument("target", choices=["type-k"])
    table.set_defaults(handler=_cmd_table)

    pi1 = commands.add_parser(
        "pi1", parents=[shared],
        help="fundamental-group finiteness test for a Picard number")
    pi1.add_argument("rho", type=int)
    pi1.set_defaults(handler=_cmd_pi1)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        payload, lines, code = args.handler(args)
    except ValueError as exc:
        # SpecLoadError and structural rejections from the checkers; a
        # failing verdict is exit 1, but malformed input is exit 2.
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
