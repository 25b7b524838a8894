"""
Scheme catalog.

Identifiers name a program and its parameters, e.g. ``ex1:L=2`` or
``l4:v:i=1,j=1``. ``build_program`` returns the declarative schedule,
``load_scheme`` the compiled scheme ready for simulation.
"""
import logging
import re
from pathlib import Path
from typing import Callable, Dict, Tuple

from adt_lab.decomposition import PairingKind, parse_plan
from adt_lab.exceptions import ParameterError, UnknownSchemeError
from adt_lab.schemes.compiler import Scheme, compile_program
from adt_lab.schemes.compose import compose
from adt_lab.schemes.elementary import non_feedback, perfect_feedback_10, perfect_feedback_12
from adt_lab.schemes.example_one import two_way_12_21
from adt_lab.schemes.example_two import two_way_12_10
from adt_lab.schemes.lemma_four import Orientation, lemma4_block, lemma4_i
from adt_lab.schemes.program import Program
from adt_lab.settings import settings

logger = logging.getLogger(__name__)

CATALOG: Tuple[str, ...] = (
    "nf:<m>,<n>",
    "nf~:<m>,<n>",
    "pf:1,2",
    "pf:1,0",
    "ex1:L=<L>",
    "ex2:L=<L>,M=<M>",
    "l4i:L=<L>[,forward-heavy|,backward-heavy]",
    "l4:<i|ii|iii|iv|v>:i=<i>,j=<j>[,L=<L>][,M=<M>]",
    "compose:<plan-file>",
)

_PAIR_RE = re.compile(r"^(\d+),(\d+)$")
_KEY_RE = re.compile(r"^([A-Za-z]+)=(\d+)$")


def _unknown(identifier: str) -> UnknownSchemeError:
    listing = ", ".join(CATALOG)
    return UnknownSchemeError(f"unknown scheme {identifier!r}; known: {listing}")


def _keyed(identifier: str, text: str, required: Tuple[str, ...]) -> Dict[str, int]:
    values: Dict[str, int] = {}
    for item in filter(None, text.split(",")):
        match = _KEY_RE.match(item.strip())
        if match is None:
            raise _unknown(identifier)
        values[match.group(1)] = int(match.group(2))
    for key in required:
        if key not in values:
            raise _unknown(identifier)
    return values


def _non_feedback(identifier: str, rest: str, backward: bool) -> Program:
    match = _PAIR_RE.match(rest)
    if match is None:
        raise _unknown(identifier)
    return non_feedback(int(match.group(1)), int(match.group(2)), backward=backward)


def _perfect(identifier: str, rest: str) -> Program:
    if rest == "1,2":
        return perfect_feedback_12()
    if rest == "1,0":
        return perfect_feedback_10()
    raise _unknown(identifier)


def _ring(identifier: str, rest: str) -> Program:
    orientation = Orientation.FORWARD_HEAVY
    head, _, tail = rest.partition(",")
    if tail:
        try:
            orientation = Orientation(tail)
        except ValueError:
            raise _unknown(identifier) from None
    values = _keyed(identifier, head, ("L",))
    return lemma4_i(values["L"], orientation)


_BLOCK_KINDS = {
    kind.value: kind
    for kind in (PairingKind.I, PairingKind.II, PairingKind.III, PairingKind.IV, PairingKind.V)
}


def _block(identifier: str, rest: str) -> Program:
    kind_text, _, tail = rest.partition(":")
    kind = _BLOCK_KINDS.get(kind_text)
    if kind is None:
        raise _unknown(identifier)
    values = _keyed(identifier, tail, ("i", "j"))
    return lemma4_block(
        kind,
        values["i"],
        values["j"],
        values.get("L", settings.default_stage_length),
        values.get("M", settings.default_layers),
    )


def _composed(identifier: str, rest: str) -> Program:
    path = Path(rest)
    if not path.is_file():
        raise ParameterError(f"plan file {rest!r} not found")
    return compose(parse_plan(path.read_text(encoding="utf-8")))


def _ordered(identifier: str, rest: str) -> Tuple[int, int]:
    values = _keyed(identifier, rest, ("L", "M"))
    return values["L"], values["M"]


_BUILDERS: Dict[str, Callable[[str, str], Program]] = {
    "nf": lambda ident, rest: _non_feedback(ident, rest, backward=False),
    "nf~": lambda ident, rest: _non_feedback(ident, rest, backward=True),
    "pf": _perfect,
    "ex1": lambda ident, rest: two_way_12_21(_keyed(ident, rest, ("L",))["L"]),
    "ex2": lambda ident, rest: two_way_12_10(*_ordered(ident, rest)),
    "l4i": _ring,
    "l4": _block,
    "compose": _composed,
}


def scheme_parameters(identifier: str) -> Dict[str, int]:
    """
    Numeric parameters spelled out in an identifier.

    Level counts of ``nf`` schemes come back as ``m`` and ``n``; keyed
    parameters under their own names. Nothing is built or checked here.

    :param identifier: e.g. "l4:v:i=1,j=3,L=2".
    :return: e.g. {"i": 1, "j": 3, "L": 2}.
    """
    family, _, rest = identifier.strip().partition(":")
    if family in {"nf", "nf~"}:
        match = _PAIR_RE.match(rest)
        if match is None:
            return {}
        return {"m": int(match.group(1)), "n": int(match.group(2))}
    if family == "l4":
        rest = rest.partition(":")[2]
    values: Dict[str, int] = {}
    for item in rest.split(","):
        match = _KEY_RE.match(item.strip())
        if match is not None:
            values[match.group(1)] = int(match.group(2))
    return values


def build_program(identifier: str) -> Program:
    """
    Build the program a catalog identifier names.

    :param identifier: e.g. "ex2:L=2,M=4".
    :raises UnknownSchemeError: if the identifier matches no catalog entry.
    :raises AdtLabError: for parameters the scheme rejects.
    :return: program.
    """
    family, _, rest = identifier.strip().partition(":")
    builder = _BUILDERS.get(family)
    if builder is None:
        raise _unknown(identifier)
    return builder(identifier, rest)


def load_scheme(identifier: str) -> Scheme:
    """
    Build and compile a catalog scheme.

    :param identifier: catalog identifier.
    :raises AdtLabError: on unknown identifiers or bad parameters.
    :return: compiled scheme.
    """
    program = build_program(identifier)
    scheme = compile_program(program)
    logger.info(
        "Loaded %s: N=%d K=%d K~=%d",
        identifier,
        scheme.length,
        scheme.forward_functions,
        scheme.backward_functions,
    )
    return scheme


__all__ = [
    "CATALOG",
    "Scheme",
    "build_program",
    "load_scheme",
    "scheme_parameters",
]
