"""Deterministic toy particle world (spheres and boxes in a box)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import HostError
from ..values import Entity, serialize
from .base import World
from .formatters import grid_formatter


@dataclass(frozen=True)
class Particle:
    id: int
    shape: str
    mass: float
    velocity: tuple
    position: tuple

    def as_dict(self):
        return {
            "id": self.id,
            "shape": self.shape,
            "mass": self.mass,
            "velocity": list(self.velocity),
            "position": list(self.position),
        }


class ParticleWorld(World):
    world_id = "particles"

    def __init__(self, seed: int = 0, n: int = 10):
        if n < 0:
            raise ValueError("n must be non-negative")
        self.seed = seed
        rng = np.random.default_rng(seed)
        shapes = rng.choice(["sphere", "box"], size=n)
        masses = rng.uniform(0.5, 10.0, size=n).round(3)
        velocities = rng.normal(0.0, 2.0, size=(n, 3)).round(3)
        positions = rng.uniform(-5.0, 5.0, size=(n, 3)).round(3)
        self.particles = [
            Particle(
                i,
                str(shapes[i]),
                float(masses[i]),
                tuple(float(v) for v in velocities[i]),
                tuple(float(p) for p in positions[i]),
            )
            for i in range(n)
        ]
        self.root = Entity(self.world_id, 0)

    def is_root(self, handle):
        return handle == 0

    def entities(self):
        return [Entity(self.world_id, i + 1) for i in range(len(self.particles))]

    def dump(self) -> list:
        return [p.as_dict() for p in self.particles]

    def particle(self, e) -> Particle:
        if not isinstance(e, Entity) or e.world != self.world_id or not 1 <= e.handle <= len(self.particles):
            raise HostError(f"not a particle: {serialize(e)}")
        return self.particles[e.handle - 1]

    def attach(self, interp):
        super().attach(interp)
        p = self.particle
        functions = {
            "id": lambda e: p(e).id,
            "obj": lambda e: (p(e), e)[1],
            "mass": lambda e: p(e).mass,
            "velocity": lambda e: list(p(e).velocity),
            "linearVelocity": lambda e, axis: p(e).velocity[int(axis)],
            "isSphere": lambda e: p(e).shape == "sphere",
            "hasBody": lambda e: (p(e), True)[1],
            "posX": lambda e: p(e).position[0],
            "posY": lambda e: p(e).position[1],
            "posZ": lambda e: p(e).position[2],
        }
        for name, fn in functions.items():
            interp.add_function(name, fn, pure=True)
        interp.add_formatter("grid", grid_formatter)
        interp.add_variable("space", self.root)


def make_particle_world(seed: int, n: int) -> ParticleWorld:
    return ParticleWorld(seed, n)
