"""Geometries and media of the five continuum environment models.

Model1  chromophore cavity (a, eps_c) directly in solvent.
Model2  cavity (a, eps_c) in an infinite Debye protein.
Model3  protein sphere of radius b with a constant dielectric, in solvent.
Model4  hollow cavity (a, eps_c) inside a Debye protein sphere of radius b, in solvent.
Model5  constant-dielectric protein sphere (b) coated by a bound-water shell out to c, in solvent.
"""
from dataclasses import dataclass, field
from typing import Tuple, Union

from src.errors import InvalidParameterError
from src.physics.dielectric import (BOUND_WATER, PROTEIN, VACUUM, WATER, DebyeDielectric,
                                    Dielectric, StaticDielectric, relaxation_rates)

# Thickness of the bound-water layer used when c is not given (Angstrom).
BOUND_LAYER_THICKNESS = 4.5


def _positive(name, value):
    if not value > 0:
        raise InvalidParameterError(f"{name} must be positive, got {value} A")


def _ordered(inner_name, inner, outer_name, outer):
    if not inner < outer:
        raise InvalidParameterError(f"need {inner_name} < {outer_name}, got {inner} >= {outer}")


@dataclass(frozen=True)
class Model1:
    a: float
    eps_cavity: StaticDielectric = VACUUM
    solvent: Dielectric = WATER
    number = 1

    def __post_init__(self):
        _positive("a", self.a)

    @property
    def media(self):
        return (self.eps_cavity, self.solvent)


@dataclass(frozen=True)
class Model2:
    a: float
    eps_cavity: StaticDielectric = VACUUM
    protein: Dielectric = PROTEIN
    number = 2

    def __post_init__(self):
        _positive("a", self.a)

    @property
    def media(self):
        return (self.eps_cavity, self.protein)


@dataclass(frozen=True)
class Model3:
    b: float
    protein: StaticDielectric = StaticDielectric(2.0)
    solvent: Dielectric = WATER
    number = 3

    def __post_init__(self):
        _positive("b", self.b)
        if not isinstance(self.protein, StaticDielectric):
            raise InvalidParameterError("Model 3 takes a constant protein dielectric")

    @property
    def media(self):
        return (self.protein, self.solvent)


@dataclass(frozen=True)
class Model4:
    a: float
    b: float
    protein: Dielectric = PROTEIN
    solvent: Dielectric = WATER
    eps_cavity: StaticDielectric = VACUUM
    number = 4

    def __post_init__(self):
        _positive("a", self.a)
        _ordered("a", self.a, "b", self.b)

    @property
    def media(self):
        return (self.eps_cavity, self.protein, self.solvent)


@dataclass(frozen=True)
class Model5:
    b: float
    c: float
    protein: StaticDielectric = StaticDielectric(2.0)
    bound_water: Dielectric = BOUND_WATER
    solvent: Dielectric = WATER
    number = 5

    def __post_init__(self):
        _positive("b", self.b)
        _ordered("b", self.b, "c", self.c)
        if not isinstance(self.protein, StaticDielectric):
            raise InvalidParameterError("Model 5 takes a constant (high-frequency) protein dielectric")

    @property
    def media(self):
        return (self.protein, self.bound_water, self.solvent)


ModelVariant = Union[Model1, Model2, Model3, Model4, Model5]


@dataclass(frozen=True)
class EnvironmentModel:
    variant: ModelVariant
    delta_mu: float = 1.0  # Debye

    def __post_init__(self):
        if self.delta_mu < 0:
            raise InvalidParameterError(f"delta_mu must be >= 0, got {self.delta_mu} D")

    @property
    def number(self):
        return self.variant.number

    @property
    def rates(self) -> Tuple[float, ...]:
        rates = set()
        for medium in self.variant.media:
            rates.update(relaxation_rates(medium))
        return tuple(sorted(rates))


@dataclass(frozen=True)
class ThreeComponentEnvironment:
    """Protein, bound water and bulk solvent around a cavity of radius a.

    a: chromophore cavity, b: protein surface, c: outer edge of the bound water.
    """

    protein: DebyeDielectric = PROTEIN
    bound: DebyeDielectric = BOUND_WATER
    solvent: DebyeDielectric = WATER
    a: float = 3.0
    b: float = 10.0
    c: float = field(default=None)
    delta_mu: float = 1.0

    def __post_init__(self):
        if self.c is None:
            object.__setattr__(self, "c", self.b + BOUND_LAYER_THICKNESS)
        _positive("a", self.a)
        _ordered("a", self.a, "b", self.b)
        if not self.b <= self.c:
            raise InvalidParameterError(f"need b <= c, got {self.b} > {self.c}")
        if self.delta_mu < 0:
            raise InvalidParameterError(f"delta_mu must be >= 0, got {self.delta_mu} D")

    @property
    def shell_fraction(self):
        """(c - b) / b."""
        return (self.c - self.b) / self.b

    @property
    def protein_high_frequency(self):
        return StaticDielectric(self.protein.eps_inf)

    def as_model4(self):
        return EnvironmentModel(Model4(self.a, self.b, self.protein, self.solvent), self.delta_mu)

    def as_model5(self):
        return EnvironmentModel(
            Model5(self.b, self.c, self.protein_high_frequency, self.bound, self.solvent), self.delta_mu)

    def as_model3(self):
        return EnvironmentModel(Model3(self.b, self.protein_high_frequency, self.solvent), self.delta_mu)

    def as_model2(self):
        return EnvironmentModel(Model2(self.a, VACUUM, self.protein), self.delta_mu)

    @property
    def rates(self):
        rates = set()
        for medium in (self.protein, self.bound, self.solvent):
            rates.update(relaxation_rates(medium))
        return tuple(sorted(rates))
