"""The query-complexity tetrachotomy.

A language is classified per flattened component by the smallest matching
monoid predicate: degenerate (|phi(Sigma^+)| = 1) -> zero queries, rectangular
band image -> constant, aperiodic -> ~sqrt(n), otherwise -> linear.  The
aggregate class of a language is the maximum over its components.  Linear
components carry a constructive MOD_p witness.
"""

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .automata import Dfa, RegexAst, minimize, regex_to_dfa
from .errors import NotFlatError, StructuralError
from .flattening import check_flat, flatten, length_profile, DEFAULT_BLOCK_CAP
from .monoid import (
    DEFAULT_MONOID_CAP,
    is_aperiodic,
    is_degenerate_image,
    is_rectangular_band_image,
    power_profile,
    syntactic_context,
)


class ComplexityClass(IntEnum):
    ZERO_QUERY = 0
    CONSTANT = 1
    SQRT_N = 2
    LINEAR = 3

    @property
    def label(self):
        return {
            ComplexityClass.ZERO_QUERY: "zero-query",
            ComplexityClass.CONSTANT: "constant",
            ComplexityClass.SQRT_N: "sqrt-n",
            ComplexityClass.LINEAR: "linear",
        }[self]

    def __str__(self):
        return self.label


@dataclass
class ModPWitness:
    """Letters embedding MOD_p: phi(a0) = s^p, phi(a1) = s, phi(b) = s^n0."""

    element: int
    p: int
    n0: int
    a0: str
    a1: str
    b: str


@dataclass
class ComponentReport:
    remainder: tuple
    cls: ComplexityClass
    monoid_size: int
    degenerate: bool
    band: bool
    aperiodic: bool
    violator: int = None
    violator_period: int = None
    epsilon_member: bool = False
    witness: ModPWitness = None
    ctx: object = field(default=None, repr=False)


@dataclass
class ClassificationReport:
    conductor: int
    components: dict  # remainder -> ComponentReport
    aggregate: ComplexityClass
    source_dfa: object = field(default=None, repr=False)
    family: object = field(default=None, repr=False)

    def render(self):
        lines = [f"conductor: {self.conductor}"]
        for rem in sorted(self.components, key=lambda r: (len(r), r)):
            c = self.components[rem]
            rem_text = ".".join(rem) if rem else "%e"
            evidence = (
                f"monoid={c.monoid_size} degenerate={c.degenerate}"
                f" band={c.band} aperiodic={c.aperiodic} eps-member={c.epsilon_member}"
            )
            line = f"component {rem_text}: {c.cls.label} ({evidence})"
            if c.witness is not None:
                w = c.witness
                line += f" witness: p={w.p} n0={w.n0} a0={w.a0!r} a1={w.a1!r} b={w.b!r}"
            lines.append(line)
        lines.append(f"aggregate: {self.aggregate.label}")
        return "\n".join(lines) + "\n"

    def records(self):
        recs = []
        for rem in sorted(self.components, key=lambda r: (len(r), r)):
            c = self.components[rem]
            rec = {
                "component": ".".join(rem) if rem else "%e",
                "class": c.cls.label,
                "monoid": str(c.monoid_size),
                "degenerate": str(c.degenerate).lower(),
                "band": str(c.band).lower(),
                "aperiodic": str(c.aperiodic).lower(),
                "eps_member": str(c.epsilon_member).lower(),
            }
            if c.witness is not None:
                rec.update(
                    witness_p=str(c.witness.p),
                    witness_n0=str(c.witness.n0),
                    witness_a0=c.witness.a0,
                    witness_a1=c.witness.a1,
                    witness_b=c.witness.b,
                )
            recs.append(rec)
        recs.append({"component": "aggregate", "class": self.aggregate.label})
        return recs


def classify_component(ctx):
    """Smallest matching class for one flat component."""
    if not check_flat(ctx):
        raise NotFlatError("component is not flat; flatten the language first")
    if is_degenerate_image(ctx):
        return ComplexityClass.ZERO_QUERY
    if is_rectangular_band_image(ctx):
        return ComplexityClass.CONSTANT
    if is_aperiodic(ctx):
        return ComplexityClass.SQRT_N
    return ComplexityClass.LINEAR


def mod_p_witness(ctx):
    """MOD_p embedding letters for a flat, non-aperiodic component.

    The violator s is the non-aperiodic element with the smallest
    representative; p is the (minimal) eventual period of its powers; n0 the
    smallest cycle exponent whose power has a single-letter preimage."""
    ap = is_aperiodic(ctx)
    if ap:
        raise StructuralError("mod_p_witness requires a non-aperiodic component")
    violators = []
    for x in range(ctx.monoid.size):
        t, p = power_profile(ctx.monoid, x)
        if p > 1:
            violators.append((len(ctx.representatives[x]), x, t, p))
    _, s, threshold, p = min(violators)

    def letter_with_image(element):
        for i, m in enumerate(ctx.letter_image):
            if int(m) == element:
                return ctx.alphabet.symbols[i]
        return None

    a0 = letter_with_image(ctx.monoid.power(s, p))
    a1 = letter_with_image(s)
    n0 = threshold
    b = letter_with_image(ctx.monoid.power(s, n0))
    while b is None:
        n0 += p
        if n0 > threshold + p * ctx.monoid.size:
            raise StructuralError("no letter preimage for any cycle power; component not flat?")
        b = letter_with_image(ctx.monoid.power(s, n0))
    if a0 is None or a1 is None:
        raise StructuralError("missing letter preimage for s or s^p; component not flat?")
    return ModPWitness(element=s, p=p, n0=n0, a0=a0, a1=a1, b=b)


def verify_witness(ctx, witness, m_max=8):
    """Exhaustively check that phi(a_x1 ... a_xm b) is determined by the
    Hamming weight of x mod p, for all bitstrings with |x| <= m_max."""
    w = witness
    if w.p < 2:
        return False
    mul = ctx.monoid.mul
    s = w.element
    img = {sym: int(ctx.letter_image[ctx.alphabet.index(sym)]) for sym in (w.a0, w.a1, w.b)}
    if img[w.a0] != ctx.monoid.power(s, w.p) or img[w.a1] != s:
        return False
    if img[w.b] != ctx.monoid.power(s, w.n0):
        return False
    if ctx.monoid.power(s, w.n0) != ctx.monoid.power(s, w.n0 + w.p):
        return False
    for i in range(1, w.p):
        if ctx.monoid.power(s, w.n0) == ctx.monoid.power(s, w.n0 + i):
            return False
    cycle = [ctx.monoid.power(s, w.n0 + i) for i in range(w.p)]
    for m in range(m_max + 1):
        for bits in range(2**m):
            acc = ctx.monoid.identity
            weight = 0
            for j in range(m):
                bit = (bits >> j) & 1
                weight += bit
                acc = int(mul[acc, img[w.a1] if bit else img[w.a0]])
            acc = int(mul[acc, img[w.b]])
            if acc != cycle[weight % w.p]:
                return False
    return True


def classify(language, monoid_cap=None, block_cap=None):
    """Full pipeline: minimize -> syntactic monoid -> flatten -> classify each
    component over the block alphabet -> aggregate."""
    monoid_cap = DEFAULT_MONOID_CAP if monoid_cap is None else monoid_cap
    block_cap = DEFAULT_BLOCK_CAP if block_cap is None else block_cap
    if isinstance(language, RegexAst):
        dfa = regex_to_dfa(language)
    elif isinstance(language, Dfa):
        dfa = minimize(language)
    else:
        raise TypeError("classify expects a Dfa or RegexAst")
    ctx = syntactic_context(dfa, cap=monoid_cap)
    family = flatten(ctx, block_cap=block_cap, profile=length_profile(ctx))

    components = {}
    for rem, comp_dfa in family.remainders.items():
        comp_ctx = syntactic_context(comp_dfa, cap=monoid_cap)
        cls = classify_component(comp_ctx)
        ap = is_aperiodic(comp_ctx)
        witness = None
        if cls == ComplexityClass.LINEAR:
            witness = mod_p_witness(comp_ctx)
        components[rem] = ComponentReport(
            remainder=rem,
            cls=cls,
            monoid_size=comp_ctx.monoid.size,
            degenerate=is_degenerate_image(comp_ctx),
            band=is_rectangular_band_image(comp_ctx),
            aperiodic=bool(ap),
            violator=ap.violator,
            violator_period=ap.period,
            epsilon_member=comp_ctx.monoid.identity in comp_ctx.accept_set,
            witness=witness,
            ctx=comp_ctx,
        )
    aggregate = max(c.cls for c in components.values())
    return ClassificationReport(
        conductor=family.p,
        components=components,
        aggregate=aggregate,
        source_dfa=dfa,
        family=family,
    )
