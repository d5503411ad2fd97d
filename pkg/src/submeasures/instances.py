"""Concrete vector sequences and streams used by the examples, the demo and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import Submeasure, TableSubmeasure, VectorSeq
from .errors import PreconditionError
from .ideals import ARITH_V1, PartitionScheme, ejemadecuada_generator
from .streams import SetStream


def phi0_table() -> TableSubmeasure:
    """Value 1 on nonempty sets of size at most 2, value 2 on ``{0, 1, 2}``."""
    return TableSubmeasure.from_function(3, lambda F: 0 if not F else (1 if len(F) <= 2 else 2), name="phi0")


def basis() -> VectorSeq:
    """``x_n = e_n``."""
    return VectorSeq(lambda n: {n: 1}, nonneg=True, name="basis")


def basis_moduli(k: int, eps: Fraction) -> int:
    # x_m(k) = 0 for every m > k
    return k + 1


def perturbed_basis() -> VectorSeq:
    """``x_n = e_n + 2^-(n+5) e_0``."""

    def vec(n):
        v = {n: Fraction(1)}
        v[0] = v.get(0, Fraction(0)) + Fraction(1, 2 ** (n + 5))
        return v

    return VectorSeq(vec, nonneg=True, name="perturbed_basis")


def perturbed_basis_moduli(k: int, eps: Fraction) -> int:
    if k > 0:
        return k + 1
    # x_m(0) = 2^-(m+5) for m >= 1
    m = 1
    while Fraction(1, 2 ** (m + 5)) >= eps:
        m += 1
    return m


def block_multiples(scheme: PartitionScheme = ARITH_V1) -> VectorSeq:
    """``x_n = m e_n`` for ``n`` in ``B_m``."""
    return VectorSeq(lambda n: {n: scheme.block_of(n)}, nonneg=True, name="block_multiples")


def diagonal_stream(scheme: PartitionScheme = ARITH_V1) -> SetStream:
    """The least element of each block, ``B_0, B_1, ...`` in turn.

    Under ``arith-v1`` this is ``i (i + 1) / 2``.
    """
    return SetStream.from_function(lambda i: scheme.element(i, 0), name="diagonal")


def level_example(column=lambda j: (j,)) -> VectorSeq:
    """For ``2^i (j+1) <= n < 2^i (j+2)``, coordinates ``C_j`` of ``x_n`` equal ``2^-(i+1)``.

    So level ``i`` of ``x_n`` is ``C_j`` with ``j = n // 2^i - 1`` whenever
    ``2^i <= n``, and empty otherwise. ``column(j)`` lists ``C_j``; the sets
    must be pairwise disjoint.
    """

    def vec(n):
        out = {}
        i = 0
        while (1 << i) <= n:
            j = (n >> i) - 1
            for k in column(j):
                out[k] = Fraction(1, 2 ** (i + 1))
            i += 1
        return out

    return VectorSeq(vec, nonneg=True, name="level_example")


def level_example_witness(n: int) -> int:
    """Every ``m >= 2 (n + 1)`` has color 1 with ``n`` and with all smaller points of a homogeneous set."""
    return 2 * (n + 1)


def norm_null() -> VectorSeq:
    """``x_n = 2^-n e_n``."""
    return VectorSeq(lambda n: {n: Fraction(1, 2**n)}, nonneg=True, name="norm_null")


def mixed() -> VectorSeq:
    """``e_n`` at even ``n`` and ``2^-n e_n`` at odd ``n``."""
    return VectorSeq(lambda n: {n: Fraction(1) if n % 2 == 0 else Fraction(1, 2**n)}, nonneg=True, name="mixed")


def one_per_block(scheme: PartitionScheme = ARITH_V1) -> SetStream:
    """Least element of each block; a partial selector meeting every block."""
    return SetStream.from_function(lambda n: scheme.element(n, 0), name="one_per_block")


def first_blocks(count: int, scheme: PartitionScheme = ARITH_V1) -> SetStream:
    """``B_0 u ... u B_{count-1}`` in increasing order."""
    return SetStream.from_predicate(lambda m: scheme.block_of(m) < count, name=f"first_{count}_blocks")


@dataclass
class Instance:
    """A submeasure with a default stream for selectors."""

    name: str
    spec: Submeasure
    stream_factory: object  # () -> SetStream
    notes: dict = field(default_factory=dict)

    def stream(self) -> SetStream:
        return self.stream_factory()


def _with_moduli(factory, moduli):
    def make():
        s = factory()
        s.modulus = moduli
        return s

    return make


def named_instance(name: str, scheme: PartitionScheme = ARITH_V1) -> Instance:
    if name == "basis":
        return Instance(name, basis(), _with_moduli(SetStream.naturals, basis_moduli))
    if name == "perturbed-basis":
        return Instance(name, perturbed_basis(), _with_moduli(SetStream.naturals, perturbed_basis_moduli))
    if name == "block-multiples":
        return Instance(name, block_multiples(scheme), lambda: diagonal_stream(scheme))
    if name == "level-example":
        return Instance(name, level_example(), SetStream.naturals, {"witness_bound": level_example_witness})
    if name == "norm-null":
        return Instance(name, norm_null(), SetStream.naturals)
    if name == "mixed":
        return Instance(name, mixed(), SetStream.naturals)
    if name in ("subblocks-a", "subblocks-b"):
        con = ejemadecuada_generator(name[-1], scheme)
        return Instance(name, con.spec, lambda: one_per_block(scheme), {"construction": con})
    raise PreconditionError(f"unknown instance {name!r}")


INSTANCE_NAMES = ("basis", "perturbed-basis", "block-multiples", "level-example", "norm-null", "mixed",
                  "subblocks-a", "subblocks-b")
