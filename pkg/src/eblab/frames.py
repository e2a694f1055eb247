"""Possibilistic frames over finite BL-chains and their complex algebras.

A frame is a finite world set with a normalized distribution into a chain;
its complex algebra lives on the pointwise function algebra and carries the
operators ``forall(f) = inf_w (pi(w) -> f(w))`` and
``exists(f) = sup_w (pi(w) * f(w))`` (as constant functions).  Finite means
complete, so inf and sup are meet/join folds.

Tuples are encoded mixed-radix with world 0 most significant, so tuple
indices in files are portable across tools that follow the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT_SIZE_CAP
from .core import FiniteBLAlgebra, TABLE_DTYPE, bl_algebra, mask_of, mv_chain
from .epistemic import EpistemicStructure, epistemic_structure, image_subalgebra
from .errors import (
    EblabError,
    InvalidSizeError,
    MalformedInputError,
    NotAChainError,
    NotApplicableError,
    PreconditionError,
    SizeLimitError,
)


@dataclass(frozen=True, eq=False)
class PossibilisticFrame:
    """Worlds 0..m-1 with a normalized possibility distribution into base."""

    base: FiniteBLAlgebra
    pi: np.ndarray
    name: str = ""

    @property
    def worlds(self) -> int:
        return int(self.pi.shape[0])


@dataclass(frozen=True, eq=False)
class FunctionAlgebra:
    """The pointwise algebra of maps worlds -> base, mixed-radix encoded."""

    algebra: FiniteBLAlgebra
    base: FiniteBLAlgebra
    worlds: int

    @property
    def weights(self) -> np.ndarray:
        n, m = self.base.n, self.worlds
        return np.array([n ** (m - 1 - w) for w in range(m)], dtype=np.int64)

    def encode(self, values) -> int:
        values = np.asarray(values, dtype=np.int64)
        if values.shape != (self.worlds,):
            raise MalformedInputError(f"tuple must have length {self.worlds}")
        return int((values * self.weights).sum())

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        rest = int(index)
        for w in range(self.worlds):
            weight = int(self.weights[w])
            out.append(rest // weight)
            rest %= weight
        return tuple(out)

    def decode_all(self) -> np.ndarray:
        """(N, m) matrix of all tuples in index order."""
        idx = np.arange(self.algebra.n, dtype=np.int64)
        return (idx[:, None] // self.weights[None, :]) % self.base.n

    def constants_mask(self) -> int:
        ratio = int(self.weights.sum())
        return mask_of(v * ratio for v in range(self.base.n))


def possibilistic_frame(
    base: FiniteBLAlgebra, pi, name: str = "", allow_non_chain: bool = False
) -> PossibilisticFrame:
    """Build a frame; requires a chain base and a normalized distribution.

    ``allow_non_chain`` admits any finite (hence complete) base, for which the
    complex construction still yields a valid structure with focal pi; the
    constant-image and coincidence checks stay chain-only.
    """
    if not base.is_chain and not allow_non_chain:
        raise NotAChainError(f"frame base {base.name!r} must be a chain")
    arr = np.asarray(pi, dtype=TABLE_DTYPE)
    if arr.ndim != 1 or arr.shape[0] < 1:
        raise InvalidSizeError("frame needs at least one world")
    if arr.size and (arr.min() < 0 or arr.max() >= base.n):
        raise MalformedInputError(f"pi entries must lie in 0..{base.n - 1}")
    sup = int(arr[0])
    for v in arr[1:]:
        sup = int(base.join[sup, int(v)])
    if sup != base.top:
        raise PreconditionError(
            f"distribution is not normalized: sup pi = {sup} != top {base.top}"
        )
    arr = arr.copy()
    arr.flags.writeable = False
    return PossibilisticFrame(base, arr, name)


def function_algebra(
    base: FiniteBLAlgebra, worlds: int, size_cap: int = DEFAULT_SIZE_CAP
) -> FunctionAlgebra:
    """The algebra of all maps worlds -> base with pointwise operations."""
    if worlds < 1:
        raise InvalidSizeError("function algebra needs at least one world")
    size = base.n**worlds
    if size > size_cap:
        raise SizeLimitError(f"function algebra size {size} exceeds cap {size_cap}")
    weights = np.array([base.n ** (worlds - 1 - w) for w in range(worlds)], dtype=np.int64)
    idx = np.arange(size, dtype=np.int64)
    digits = (idx[:, None] // weights[None, :]) % base.n  # (N, m)

    def pointwise(table):
        acc = np.zeros((size, size), dtype=np.int64)
        for w in range(worlds):
            acc += table[digits[:, w][:, None], digits[:, w][None, :]].astype(np.int64) * int(
                weights[w]
            )
        return acc

    alg = bl_algebra(
        f"{base.name}_pow{worlds}",
        pointwise(base.meet),
        pointwise(base.join),
        pointwise(base.mult),
        pointwise(base.impl),
    )
    return FunctionAlgebra(alg, base, worlds)


def complex_structure(
    frame: PossibilisticFrame,
    fa: Optional[FunctionAlgebra] = None,
    size_cap: int = DEFAULT_SIZE_CAP,
) -> tuple[EpistemicStructure, FunctionAlgebra]:
    """The complex algebra of a frame: a validated structure with focal pi."""
    base = frame.base
    if fa is None:
        fa = function_algebra(base, frame.worlds, size_cap)
    elif fa.base is not base or fa.worlds != frame.worlds:
        raise PreconditionError("function algebra does not match the frame")
    digits = fa.decode_all()
    pi = frame.pi.astype(np.int64)
    inf_acc = base.impl[pi[0], digits[:, 0]].astype(np.int64)
    sup_acc = base.mult[pi[0], digits[:, 0]].astype(np.int64)
    for w in range(1, frame.worlds):
        inf_acc = base.meet[inf_acc, base.impl[pi[w], digits[:, w]]]
        sup_acc = base.join[sup_acc, base.mult[pi[w], digits[:, w]]]
    ratio = int(fa.weights.sum())
    forall = (inf_acc.astype(np.int64) * ratio).astype(np.int64)
    exists = (sup_acc.astype(np.int64) * ratio).astype(np.int64)
    structure = epistemic_structure(fa.algebra, forall, exists, name=frame.name or "complex")
    expected_focal = fa.encode(pi)
    if structure.focal != expected_focal:
        raise EblabError(
            f"internal: complex structure focal {structure.focal} != pi {expected_focal}"
        )
    return structure, fa


def normalization_square(frame: PossibilisticFrame) -> bool:
    """sup_w pi(w)^2 reaches top (a consequence of normalization)."""
    base = frame.base
    acc = int(base.mult[frame.pi[0], frame.pi[0]])
    for w in range(1, frame.worlds):
        acc = int(base.join[acc, base.mult[frame.pi[w], frame.pi[w]]])
    return acc == base.top


def solvability(frame: PossibilisticFrame):
    """For each base element a, a world w and element b with pi(w) -> b = a.

    Returns (True, {a: (w, b)}) with the lexicographically first witnesses, or
    (False, {"a": a}) for the first unsolvable element (never on valid frames).
    """
    base = frame.base
    witnesses = {}
    for a in range(base.n):
        found = None
        for w in range(frame.worlds):
            hits = np.flatnonzero(base.impl[int(frame.pi[w])] == a)
            if hits.size:
                found = (w, int(hits[0]))
                break
        if found is None:
            return False, {"a": a}
        witnesses[a] = found
    return True, witnesses


def constant_image(structure: EpistemicStructure, fa: FunctionAlgebra) -> bool:
    """Is the operator image exactly the constant maps?  (Chain bases only.)"""
    if not fa.base.is_chain:
        raise NotApplicableError("constant-image check requires a chain base")
    return image_subalgebra(structure) == fa.constants_mask()


@dataclass(frozen=True)
class CoincidenceResult:
    """Outcome of rebuilding a structure from its focal distribution.

    The rebuild equality is only asserted when both hypotheses hold:
    the focal tuple is normalized and the image is the constants.
    """

    normalized: bool
    constants: bool
    identical: Optional[bool]

    @property
    def applicable(self) -> bool:
        return self.normalized and self.constants

    @property
    def ok(self) -> bool:
        return not self.applicable or bool(self.identical)


def coincidence(structure: EpistemicStructure, fa: FunctionAlgebra) -> CoincidenceResult:
    """Check the frame/structure coincidence on any structure over a function
    algebra: read the focal tuple as a distribution, rebuild the complex
    operators, compare tables."""
    if structure.algebra is not fa.algebra:
        raise PreconditionError("structure does not live on the given function algebra")
    if not fa.base.is_chain:
        raise NotApplicableError("coincidence check requires a chain base")
    ctup = np.array(fa.decode(structure.focal), dtype=TABLE_DTYPE)
    sup = int(ctup[0])
    for v in ctup[1:]:
        sup = int(fa.base.join[sup, int(v)])
    normalized = sup == fa.base.top
    constants = image_subalgebra(structure) == fa.constants_mask()
    if not (normalized and constants):
        return CoincidenceResult(normalized, constants, None)
    frame = possibilistic_frame(fa.base, ctup, name="rebuild")
    rebuilt, _ = complex_structure(frame, fa)
    return CoincidenceResult(True, True, rebuilt.key() == structure.key())


def frame_coincidence(frame: PossibilisticFrame, fa: Optional[FunctionAlgebra] = None) -> bool:
    """Round trip frame -> complex structure -> focal -> complex structure."""
    structure, fa = complex_structure(frame, fa)
    result = coincidence(structure, fa)
    return result.applicable and bool(result.identical)


# ---------------------------------------------------------------------------
# the two boundary examples on the 4-element Lukasiewicz base


def unnormalized_focal_structure(
    worlds: int, size_cap: int = DEFAULT_SIZE_CAP
) -> tuple[EpistemicStructure, FunctionAlgebra]:
    """A structure over mv4^worlds whose focal tuple is not normalized.

    forall sends f to top iff every component is >= 2/3, exists iff some
    component is; the focal element is the constant-2/3 tuple and the image
    is the two-element {bot, top}, a proper subset of the constants.  Shows
    the normalization hypothesis of the coincidence check is not redundant.
    """
    if worlds < 1:
        raise InvalidSizeError("need at least one world")
    fa = function_algebra(mv_chain(4), worlds, size_cap)
    digits = fa.decode_all()
    top, bot = fa.algebra.top, fa.algebra.bot
    forall = np.where((digits >= 2).all(axis=1), top, bot)
    exists = np.where((digits >= 2).any(axis=1), top, bot)
    structure = epistemic_structure(fa.algebra, forall, exists, name="unnormalized")
    if structure.focal != fa.encode([2] * worlds):
        raise EblabError("internal: threshold structure has unexpected focal element")
    return structure, fa


def pointwise_lift_structure(
    worlds: int, size_cap: int = DEFAULT_SIZE_CAP
) -> tuple[EpistemicStructure, FunctionAlgebra]:
    """The crisp mv4 structure lifted pointwise to mv4^worlds.

    The focal element is the top tuple (normalized), but for two or more
    worlds the image contains non-constant tuples, so the image hypothesis of
    the coincidence check is not redundant either.
    """
    if worlds < 1:
        raise InvalidSizeError("need at least one world")
    fa = function_algebra(mv_chain(4), worlds, size_cap)
    digits = fa.decode_all()
    base_forall = np.array([0, 0, 0, 3], dtype=np.int64)
    base_exists = np.array([0, 3, 3, 3], dtype=np.int64)
    weights = fa.weights
    forall = (base_forall[digits] * weights[None, :]).sum(axis=1)
    exists = (base_exists[digits] * weights[None, :]).sum(axis=1)
    structure = epistemic_structure(fa.algebra, forall, exists, name="pointwise")
    if structure.focal != fa.algebra.top:
        raise EblabError("internal: pointwise lift has unexpected focal element")
    return structure, fa
