"""Gamma-mixture and transform types for the branch variables Delta_l."""

from dataclasses import dataclass

from ..core.errors import InvalidParameterError


@dataclass(frozen=True)
class GammaTerm:
    """Weighted Gamma(shape, scale) density; the weight may be negative."""

    weight: float
    shape: int
    scale: float

    def __post_init__(self) -> None:
        if self.shape < 1:
            raise InvalidParameterError(f"Gamma shape must be >= 1, got {self.shape}")
        if not self.scale > 0.0:
            raise InvalidParameterError(f"Gamma scale must be > 0, got {self.scale}")


@dataclass(frozen=True)
class GammaMixture:
    """Signed Gamma mixture representing the law of Delta_l.

    Attributes:
        terms: Partial-fraction terms whose weights sum to 1
        source_index: Branch index l (1-based)
        components: Independent (shape, scale) parts whose sum is Delta_l;
            used for the positive-series evaluation near zero
    """

    terms: tuple[GammaTerm, ...]
    source_index: int
    components: tuple[tuple[int, float], ...] = ()

    @property
    def total_shape(self) -> int:
        return sum(shape for shape, _ in self.components)

    @property
    def weight_sum(self) -> float:
        return sum(term.weight for term in self.terms)

    @property
    def max_abs_weight(self) -> float:
        return max(abs(term.weight) for term in self.terms)


@dataclass(frozen=True)
class MgfSpec:
    """Pole structure of the transform (1 - s*b0)^(-m) * prod_k (1 - s*b_k)^(-1)."""

    multiple_pole_scale: float
    multiple_pole_order: int
    simple_pole_scales: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.multiple_pole_order < 1:
            raise InvalidParameterError(
                f"Multiple pole order must be >= 1, got {self.multiple_pole_order}"
            )
        scales = (self.multiple_pole_scale, *self.simple_pole_scales)
        if any(not s > 0.0 for s in scales):
            raise InvalidParameterError(f"All pole scales must be > 0, got {scales}")
        object.__setattr__(self, "simple_pole_scales", tuple(float(s) for s in self.simple_pole_scales))

    @property
    def components(self) -> tuple[tuple[int, float], ...]:
        return ((self.multiple_pole_order, self.multiple_pole_scale),) + tuple(
            (1, s) for s in self.simple_pole_scales
        )
