"""Finite joint probability distributions over named variables.

A :class:`JointDistribution` is an immutable probability mass function over
tuples of symbols, one symbol per named variable.  One variable is flagged as
the prediction target; the rest are the predictors.  All information
quantities are reported in bits (log base 2) and computed in double
precision, with the convention ``0 * log 0 = 0``.

The on-disk format is a small TSV dialect: a header comment declaring the
variable names (and optionally which one is the target), then one outcome per
line, symbols tab-separated, followed by a probability written either as a
decimal or as an exact fraction ``a/b``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "DistributionError",
    "VariableSelector",
    "JointDistribution",
    "parse_distribution",
    "random_distribution",
    "marginalize",
    "entropy",
    "conditional_entropy",
    "mutual_information",
]

#: Outcomes with less mass than this are dropped from the stored support.
MASS_FLOOR = 1e-15

#: Accepted deviation of the raw probability column from 1 before normalizing.
RAW_SUM_SLACK = 1e-6

#: Every constructed distribution sums to 1 within this tolerance.
NORMALIZATION_TOL = 1e-9


class DistributionError(ValueError):
    """A pmf or distribution file violates the format contract."""


@dataclass(frozen=True)
class VariableSelector:
    """Positions of the variables a query refers to (may include the target).

    Positions index into ``JointDistribution.variables`` and are stored
    sorted and deduplicated.
    """

    indices: tuple[int, ...]

    def __init__(self, indices: Iterable[int]):
        object.__setattr__(self, "indices", tuple(sorted(set(indices))))
        if not self.indices:
            raise DistributionError("selector must name at least one variable")
        if any(i < 0 for i in self.indices):
            raise DistributionError(f"negative variable position in {self.indices}")

    def validate(self, d: "JointDistribution") -> None:
        if self.indices[-1] >= len(d.variables):
            raise DistributionError(
                f"selector {self.indices} out of range for {len(d.variables)} variables"
            )

    def overlaps(self, other: "VariableSelector") -> bool:
        return bool(set(self.indices) & set(other.indices))

    def union(self, other: "VariableSelector") -> "VariableSelector":
        return VariableSelector(self.indices + other.indices)


def _parse_probability(token: str) -> float:
    """Parse a probability written as a decimal or an exact fraction ``a/b``."""
    token = token.strip()
    try:
        if "/" in token:
            return float(Fraction(token))
        return float(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise DistributionError(f"cannot parse probability {token!r}") from exc


class JointDistribution:
    """Immutable pmf over named finite variables.

    Parameters
    ----------
    variables:
        Ordered variable names.
    outcomes:
        Mapping or iterable of ``(outcome_tuple, probability)`` pairs.
        Duplicate outcomes are summed.  Probabilities must be nonnegative and
        sum to 1 within :data:`RAW_SUM_SLACK`; the stored pmf is renormalized
        to sum to exactly 1 in double precision.
    target:
        Name of the target variable.  Defaults to the last variable.
        ``None`` is allowed for marginals that dropped the target.
    """

    __slots__ = ("variables", "alphabets", "target", "pmf", "_hash")

    def __init__(
        self,
        variables: Sequence[str],
        outcomes: Mapping[tuple, float] | Iterable[tuple[tuple, float]],
        target: str | None = "__last__",
    ):
        variables = tuple(str(v) for v in variables)
        if len(set(variables)) != len(variables):
            raise DistributionError(f"duplicate variable names in {variables}")
        if not variables:
            raise DistributionError("a distribution needs at least one variable")

        if isinstance(outcomes, Mapping):
            items = outcomes.items()
        else:
            items = outcomes
        accum: dict[tuple, float] = {}
        for outcome, prob in items:
            outcome = tuple(str(s) for s in outcome)
            if len(outcome) != len(variables):
                raise DistributionError(
                    f"outcome {outcome} has arity {len(outcome)}, "
                    f"expected {len(variables)}"
                )
            p = float(prob)
            if not math.isfinite(p) or p < 0:
                raise DistributionError(f"negative or non-finite probability {prob!r}")
            accum[outcome] = accum.get(outcome, 0.0) + p

        total = math.fsum(accum.values())
        if abs(total - 1.0) > RAW_SUM_SLACK:
            raise DistributionError(
                f"probabilities sum to {total!r}, outside [1-{RAW_SUM_SLACK}, 1+{RAW_SUM_SLACK}]"
            )
        pmf = {
            o: p / total for o, p in sorted(accum.items()) if p / total >= MASS_FLOOR
        }
        if not pmf:
            raise DistributionError("distribution has empty support")

        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "pmf", pmf)

        if target == "__last__":
            target = variables[-1]
        if target is not None and target not in variables:
            raise DistributionError(f"target {target!r} not among variables {variables}")
        object.__setattr__(self, "target", target)

        alphabets = tuple(
            tuple(sorted({o[i] for o in pmf})) for i in range(len(variables))
        )
        object.__setattr__(self, "alphabets", alphabets)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("JointDistribution is immutable")

    # -- identity ---------------------------------------------------------

    def key(self) -> tuple:
        """Content key: equal distributions compare and hash equal."""
        return (self.variables, self.target, tuple(self.pmf.items()))

    def __eq__(self, other):
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.key()))
        return self._hash

    def __repr__(self):
        return (
            f"JointDistribution(variables={self.variables}, "
            f"target={self.target!r}, support={len(self.pmf)})"
        )

    # -- structure --------------------------------------------------------

    @property
    def support(self) -> tuple[tuple, ...]:
        return tuple(self.pmf)

    @property
    def target_index(self) -> int:
        if self.target is None:
            raise DistributionError("distribution has no target variable")
        return self.variables.index(self.target)

    @property
    def predictor_indices(self) -> tuple[int, ...]:
        t = self.target_index
        return tuple(i for i in range(len(self.variables)) if i != t)

    @property
    def n_predictors(self) -> int:
        return len(self.variables) - (0 if self.target is None else 1)

    def selector(self, *names: str) -> VariableSelector:
        """Selector for the given variable names."""
        try:
            return VariableSelector(self.variables.index(n) for n in names)
        except ValueError as exc:
            raise DistributionError(f"unknown variable in {names}") from exc

    def whole_selector(self) -> VariableSelector:
        """Selector covering all predictors (the whole)."""
        return VariableSelector(self.predictor_indices)

    def target_selector(self) -> VariableSelector:
        return VariableSelector((self.target_index,))

    # -- queries ----------------------------------------------------------

    def project(self, sel: VariableSelector) -> dict[tuple, float]:
        """Aggregate the pmf onto the selected coordinates (masses sum to 1)."""
        sel.validate(self)
        idx = sel.indices
        out: dict[tuple, float] = {}
        for outcome, p in self.pmf.items():
            k = tuple(outcome[i] for i in idx)
            out[k] = out.get(k, 0.0) + p
        return out

    def marginalize(self, sel: VariableSelector) -> "JointDistribution":
        """Marginal distribution over the selected variables (original order)."""
        sel.validate(self)
        names = tuple(self.variables[i] for i in sel.indices)
        target = self.target if (self.target in names) else None
        return JointDistribution(names, self.project(sel), target=target)

    def entropy(self, sel: VariableSelector | None = None) -> float:
        """Shannon entropy in bits of the selected marginal (all variables if None)."""
        if sel is None:
            masses: Iterable[float] = self.pmf.values()
        else:
            masses = self.project(sel).values()
        return _entropy_bits(masses)

    def conditional_entropy(self, a: VariableSelector, b: VariableSelector) -> float:
        """H(A | B) = H(A ∨ B) − H(B), in bits."""
        a.validate(self)
        b.validate(self)
        return self.entropy(a.union(b)) - self.entropy(b)

    def mutual_information(self, a: VariableSelector, b: VariableSelector) -> float:
        """I(A ; B) = H(A) + H(B) − H(A ∨ B), in bits.  Selectors must be disjoint."""
        a.validate(self)
        b.validate(self)
        if a.overlaps(b):
            raise DistributionError(
                f"mutual information needs disjoint selectors, got {a.indices} and {b.indices}"
            )
        return self.entropy(a) + self.entropy(b) - self.entropy(a.union(b))

    # -- derived ----------------------------------------------------------

    def relabeled(self, variable: str, mapping: Mapping[str, str]) -> "JointDistribution":
        """Copy with one variable's symbols renamed through an injective map."""
        i = self.variables.index(variable)
        symbols = set(self.alphabets[i])
        image = {mapping[s] for s in symbols}
        if len(image) != len(symbols):
            raise DistributionError(f"relabeling of {variable!r} is not injective")
        pmf = {
            outcome[:i] + (mapping[outcome[i]],) + outcome[i + 1 :]: p
            for outcome, p in self.pmf.items()
        }
        return JointDistribution(self.variables, pmf, target=self.target)

    def with_constant_target(self, symbol: str = "*") -> "JointDistribution":
        """Copy whose target is collapsed to a single constant symbol."""
        t = self.target_index
        pmf: dict[tuple, float] = {}
        for outcome, p in self.pmf.items():
            k = outcome[:t] + (symbol,) + outcome[t + 1 :]
            pmf[k] = pmf.get(k, 0.0) + p
        return JointDistribution(self.variables, pmf, target=self.target)

    def to_tsv(self) -> str:
        """Serialize in the TSV format accepted by :func:`parse_distribution`."""
        lines = [f"# vars: {' '.join(self.variables)}  target: {self.target}"]
        for outcome, p in self.pmf.items():
            lines.append("\t".join(outcome) + f"\t{p!r}")
        return "\n".join(lines) + "\n"


def _entropy_bits(masses: Iterable[float]) -> float:
    acc = 0.0
    for p in masses:
        if p > 0.0:
            acc -= p * math.log2(p)
    return max(acc, 0.0)


def parse_distribution(text: str) -> JointDistribution:
    """Parse the TSV distribution format.

    The first non-blank line must read ``# vars: A B ... Z`` and may carry a
    ``target: NAME`` clause (default: the last variable).  Every following
    non-comment line holds one symbol per variable plus a probability,
    whitespace-separated.  Duplicate outcome rows are summed.
    """
    variables: tuple[str, ...] | None = None
    target: str | None = None
    rows: list[tuple[tuple, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if body.startswith("vars:") and variables is None:
                spec = body[len("vars:") :]
                if "target:" in spec:
                    spec, _, tpart = spec.partition("target:")
                    target = tpart.strip().split()[0] if tpart.strip() else None
                names = spec.split()
                if not names:
                    raise DistributionError(f"line {lineno}: empty variable list")
                variables = tuple(names)
            continue
        if variables is None:
            raise DistributionError(
                f"line {lineno}: data before the '# vars:' header"
            )
        fields = line.split()
        if len(fields) != len(variables) + 1:
            raise DistributionError(
                f"line {lineno}: expected {len(variables) + 1} fields "
                f"(symbols + probability), got {len(fields)}"
            )
        rows.append((tuple(fields[:-1]), _parse_probability(fields[-1])))
    if variables is None:
        raise DistributionError("missing '# vars:' header line")
    if not rows:
        raise DistributionError("no outcome rows")
    if target is not None and target not in variables:
        raise DistributionError(f"target {target!r} not among variables {variables}")
    return JointDistribution(variables, rows, target=target or "__last__")


def random_distribution(
    rng,
    n_predictors: int = 3,
    alphabet_size: int = 2,
    zero_fraction: float = 0.0,
    target_name: str = "Y",
) -> JointDistribution:
    """Seeded random pmf over the full product of small alphabets.

    Masses are Dirichlet(1); ``zero_fraction`` optionally knocks out a
    random share of outcomes (keeping at least one) to produce structured
    supports.  ``rng`` is a ``numpy.random.Generator``.
    """
    from itertools import product

    names = tuple(f"X{i + 1}" for i in range(n_predictors)) + (target_name,)
    symbols = tuple(str(k) for k in range(alphabet_size))
    outcomes = list(product(*([symbols] * len(names))))
    masses = rng.dirichlet([1.0] * len(outcomes))
    if zero_fraction > 0.0:
        kill = rng.random(len(outcomes)) < zero_fraction
        if kill.all():
            kill[int(rng.integers(len(outcomes)))] = False
        masses = masses * ~kill
        masses = masses / masses.sum()
    return JointDistribution(names, zip(outcomes, (float(m) for m in masses)))


# Module-level forms of the operations, mirroring the method API.

def marginalize(d: JointDistribution, sel: VariableSelector) -> JointDistribution:
    return d.marginalize(sel)


def entropy(d: JointDistribution, sel: VariableSelector) -> float:
    return d.entropy(sel)


def conditional_entropy(
    d: JointDistribution, a: VariableSelector, b: VariableSelector
) -> float:
    return d.conditional_entropy(a, b)


def mutual_information(
    d: JointDistribution, a: VariableSelector, b: VariableSelector
) -> float:
    return d.mutual_information(a, b)
