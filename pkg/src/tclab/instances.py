"""Bundled desk-scale instances.

Every entry of ``HARNESS_SUITE`` is a reduced, equiheight algebra in
characteristic p, together with an ideal and candidate elements for the
test-multiplier harness.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .ringfile import RingFile, parse_ring_file


def data_text(name: str) -> str:
    return resources.files("tclab").joinpath("data", name).read_text(encoding="utf-8")


def data_ring(name: str) -> RingFile:
    return parse_ring_file(data_text(name))


@dataclass(frozen=True)
class Instance:
    name: str
    text: str
    ideal: str  # name of the ``ideal NAME = ...`` binding
    candidates: tuple
    e_max: int = 2

    def ring_file(self) -> RingFile:
        return parse_ring_file(self.text)


def _fermat(p: int, e_max: int) -> Instance:
    return Instance(
        f"fermat-cubic-{p}",
        f"char {p}; vars x, y, z; ideal x^3+y^3+z^3; component x^3+y^3+z^3;"
        " flags assume_reduced; ideal I = x, y;",
        "I",
        ("z^2", "z", "1", "x*z", "y*z^2", "z^3", "x+z^2"),
        e_max,
    )


HARNESS_SUITE = (
    _fermat(7, 2),
    _fermat(13, 1),
    _fermat(5, 2),
    Instance(
        "cusp-5",
        "char 5; vars x, y; ideal y^2-x^3; component y^2-x^3; flags assume_reduced; ideal I = x;",
        "I",
        ("y", "y^2", "1", "x+y"),
    ),
    Instance(
        "node-7",
        "char 7; vars x, y; ideal y^2-x^2-x^3; component y^2-x^2-x^3; flags assume_reduced; ideal I = x;",
        "I",
        ("y", "1", "x*y"),
    ),
    Instance(
        "a1-5",
        "char 5; vars x, y, z; ideal x*y-z^2; component x*y-z^2; flags assume_reduced; ideal I = x, z;",
        "I",
        ("y", "z", "1", "y*z"),
    ),
    Instance(
        "a2-7",
        "char 7; vars x, y, z; ideal x*y-z^3; component x*y-z^3; flags assume_reduced; ideal I = x, z;",
        "I",
        ("y", "z^2", "y*z"),
    ),
    Instance(
        "coordinate-axes-3",
        "char 3; vars x, y, z; ideal x*y, y*z, x*z; ideal I = x+y+z;",
        "I",
        ("x", "x^2", "y", "1"),
    ),
    Instance(
        "crossing-lines-5",
        "char 5; vars x, y; ideal x*y; ideal I = x+y;",
        "I",
        ("x", "y", "x^2", "1"),
    ),
    Instance(
        "plane-5",
        "char 5; vars x, y; ideal I = x^2, y^2;",
        "I",
        ("x*y", "x", "1", "x^2*y"),
    ),
    Instance(
        "umbrella-7",
        "char 7; vars x, y, z; ideal x^2-y^2*z; component x^2-y^2*z; flags assume_reduced; ideal I = y;",
        "I",
        ("x", "x*z", "z"),
    ),
    Instance(
        "two-planes-5",
        "char 5; vars x, y, z, w; ideal x*z, x*w, y*z, y*w; ideal I = x+z, y+w;",
        "I",
        ("x", "y", "x*y", "1"),
        1,
    ),
)


TRUNCATION_CASES = (
    # (ring text, delta, u, ideal, maximal ideal, n_max)
    ("char 7; vars x, y, z; ideal x^3+y^3+z^3;", "z^2", "z^2", ["x", "y"], ["x", "y", "z"], 4),
    ("char 7; vars x, y, z; ideal x^3+y^3+z^3;", "1", "z", ["x", "y"], ["x", "y", "z"], 4),
    ("char 7; vars x, y, z; ideal x^3+y^3+z^3;", "x", "x*z", ["x", "y"], ["x", "y", "z"], 4),
)
