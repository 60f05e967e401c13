"""The weighted spherical Fourier transform and multiplier analysis.

Everything here works in coset coordinates: bi-invariant functions are
vectors of length d, operators are d x d matrices, and the transform is the
pairing against the spherical functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateSpectrumError, InputSpecError, NotMultiplierError
from .groups import GroupTable
from .hecke import StructureConstants
from .spherical import SphericalSet
from .weighted import BiInvariantFunction, Weight

DEFAULT_TOL = 1e-9
PROBE_DRAWS = 16


def spherical_transform(
    f: BiInvariantFunction,
    sset: SphericalSet,
    group: GroupTable,
    w: Weight,
) -> np.ndarray:
    """F(f)(phi_s) = sum_x w(x) f(x) w(x^-1) phi_s(x^-1), in SphericalSet order."""
    if f.partition is not sset.partition and f.partition.cosets != sset.partition.cosets:
        raise InputSpecError("function and spherical set use different partitions")
    f_g = f.expand() * w.values
    out = np.empty(len(sset), dtype=complex)
    for s, phi in enumerate(sset.functions):
        out[s] = np.sum(f_g * (phi.expand() * w.values)[group.inv])
    return out


@dataclass(frozen=True)
class FourierTable:
    """Transform values of every indicator basis element: F[i, s]."""

    matrix: np.ndarray
    sset: SphericalSet

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def transform_coords(self, coords: np.ndarray) -> np.ndarray:
        """Transform of sum_i coords[i] delta_i."""
        return np.asarray(coords, dtype=complex) @ self.matrix


def build_fourier_table(
    sset: SphericalSet, group: GroupTable, w: Weight
) -> FourierTable:
    d = sset.partition.num_cosets
    rows = [
        spherical_transform(
            BiInvariantFunction.indicator(i, sset.partition), sset, group, w
        )
        for i in range(d)
    ]
    return FourierTable(matrix=np.array(rows), sset=sset)


def injectivity_check(table: FourierTable, rel_tol: float = 1e-9) -> tuple[int, float]:
    """Numerical rank and condition estimate of the transform matrix."""
    svals = np.linalg.svd(table.matrix, compute_uv=False)
    top = float(svals[0]) if len(svals) else 0.0
    rank = int(np.sum(svals > rel_tol * top)) if top > 0 else 0
    cond = float(top / svals[-1]) if top > 0 and svals[-1] > 0 else np.inf
    return rank, cond


def verify_convolution_theorem(
    f: BiInvariantFunction,
    g: BiInvariantFunction,
    sset: SphericalSet,
    group: GroupTable,
    w: Weight,
) -> float:
    """Residual of F(f *_w g) = F(f) F(g), max over spherical functions."""
    from .weighted import weighted_convolve

    conv = weighted_convolve(f.expand(), g.expand(), group, w)
    conv_bi = BiInvariantFunction.from_gfunction(conv, sset.partition)
    lhs = spherical_transform(conv_bi, sset, group, w)
    rhs = spherical_transform(f, sset, group, w) * spherical_transform(g, sset, group, w)
    return float(np.max(np.abs(lhs - rhs)))


@dataclass(frozen=True)
class MultiplierOperator:
    """A linear operator on coset coordinates, optionally born from a kernel."""

    matrix: np.ndarray
    kernel: Optional[BiInvariantFunction] = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, coords: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(coords, dtype=complex)

    def compose(self, other: "MultiplierOperator") -> "MultiplierOperator":
        return MultiplierOperator(matrix=self.matrix @ other.matrix)

    @classmethod
    def identity(cls, d: int) -> "MultiplierOperator":
        return cls(matrix=np.eye(d, dtype=complex))

    @classmethod
    def scalar(cls, d: int, value: complex) -> "MultiplierOperator":
        return cls(matrix=value * np.eye(d, dtype=complex))


@dataclass(frozen=True)
class MultiplierSymbol:
    """Pointwise spectral action of a multiplier, one value per spherical
    function, in SphericalSet order."""

    values: np.ndarray

    def to_json(self) -> dict:
        return {"symbol": [[z.real, z.imag] for z in self.values]}


def multiplier_from_kernel(
    h: BiInvariantFunction, sc: StructureConstants
) -> MultiplierOperator:
    """Matrix of f -> h *_w f on the indicator basis."""
    d = sc.dim
    # columns: coordinates of h *_w delta_j
    cols = np.array(
        [sc.convolve_coords(h.coset_values, np.eye(d)[j]) for j in range(d)]
    ).T
    return MultiplierOperator(matrix=cols, kernel=h)


def is_multiplier(
    T: MultiplierOperator,
    sc: StructureConstants,
    tol: float = DEFAULT_TOL,
) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check T(delta_i *_w delta_j) = (T delta_i) *_w delta_j on all basis pairs."""
    d = sc.dim
    eye = np.eye(d)
    scale = max(1.0, float(np.max(np.abs(T.matrix))), float(np.max(np.abs(sc.c))))
    for i in range(d):
        Tei = T.apply(eye[i])
        for j in range(d):
            lhs = T.apply(sc.c[i, j])
            rhs = sc.convolve_coords(Tei, eye[j])
            if np.max(np.abs(lhs - rhs)) > tol * scale:
                return False, (i, j)
    return True, None


def extract_symbol(
    T: MultiplierOperator,
    table: FourierTable,
    sc: StructureConstants,
    group: GroupTable,
    w: Weight,
    seed: int = 0xC0FFEE,
    tol: float = DEFAULT_TOL,
) -> MultiplierSymbol:
    """Divide out the transform of a random probe to get the symbol.

    The probe g must have a nowhere-vanishing transform; fresh random basis
    combinations are drawn until one does (up to 16 draws). The symbol is
    verified against every basis element and re-extracted with a second
    independent probe to confirm uniqueness.
    """
    ok, witness = is_multiplier(T, sc, tol=tol)
    if not ok:
        raise NotMultiplierError(f"operator fails defining identity at pair {witness}")
    d = table.dim
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(table.matrix))))

    def one_extraction() -> np.ndarray:
        for _ in range(PROBE_DRAWS):
            g = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            Fg = table.transform_coords(g)
            if np.min(np.abs(Fg)) > 1e-9 * scale:
                return table.transform_coords(T.apply(g)) / Fg
        raise DegenerateSpectrumError(
            f"no probe with nowhere-vanishing transform in {PROBE_DRAWS} draws"
        )

    symbol = one_extraction()
    second = one_extraction()
    if np.max(np.abs(symbol - second)) > max(tol, 1e-8) * max(1.0, np.max(np.abs(symbol))):
        raise NotMultiplierError("symbol is not unique across independent probes")
    # verify on the full basis
    F = table.matrix
    FT = np.array([table.transform_coords(T.apply(np.eye(d)[i])) for i in range(d)])
    residual = float(np.max(np.abs(FT - F * symbol[None, :])))
    if residual > max(tol, 1e-8) * max(1.0, float(np.max(np.abs(FT)))):
        raise NotMultiplierError(
            f"symbol verification failed on the basis (residual {residual:g})"
        )
    return MultiplierSymbol(values=symbol)


def verify_commutation(
    T1: MultiplierOperator,
    T2: MultiplierOperator,
    sc: StructureConstants,
) -> float:
    """Max over basis pairs of || T1 f *_w T2 g  -  T2 f *_w T1 g ||_inf."""
    d = sc.dim
    eye = np.eye(d)
    worst = 0.0
    for i in range(d):
        a1, a2 = T1.apply(eye[i]), T2.apply(eye[i])
        for j in range(d):
            b1, b2 = T2.apply(eye[j]), T1.apply(eye[j])
            gap = sc.convolve_coords(a1, b1) - sc.convolve_coords(a2, b2)
            worst = max(worst, float(np.max(np.abs(gap))))
    return worst


def multiplier_from_spec(
    spec: dict, sc: StructureConstants
) -> MultiplierOperator:
    """Build an operator from {"kind": "kernel"|"matrix"} JSON specs."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InputSpecError('multiplier spec must be an object with a "kind" field')
    kind = spec["kind"]
    d = sc.dim
    if kind == "kernel":
        vals = _complex_list(spec.get("coset_values"), d, "coset_values")
        h = BiInvariantFunction(coset_values=vals, partition=sc.partition)
        return multiplier_from_kernel(h, sc)
    if kind == "matrix":
        rows = spec.get("rows")
        if not isinstance(rows, list) or len(rows) != d:
            raise InputSpecError(f'"rows" must be a {d}x{d} complex matrix')
        matrix = np.array([_complex_list(r, d, "rows") for r in rows])
        return MultiplierOperator(matrix=matrix)
    raise InputSpecError(f"unknown multiplier kind: {kind!r}")


def _complex_list(raw, d: int, field: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != d:
        raise InputSpecError(f'"{field}" must list {d} [re, im] pairs')
    try:
        return np.array([complex(re, im) for re, im in raw])
    except (TypeError, ValueError) as exc:
        raise InputSpecError(f'"{field}" entries must be [re, im] pairs') from exc
