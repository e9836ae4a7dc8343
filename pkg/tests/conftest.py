"""Shared test helpers."""

import json
import random
from fractions import Fraction

import pytest

from jordan2.core import JordanLaw, LinearMap, law_to_document
from jordan2.scalars import RATIONAL_MODE


def random_invertible(rng: random.Random, span: int = 3,
                      denominators: bool = False) -> LinearMap:
    """A random invertible 2x2 rational matrix."""
    while True:
        if denominators:
            rows = [[Fraction(rng.randint(-span, span), rng.randint(1, 3))
                     for _ in range(2)] for _ in range(2)]
        else:
            rows = [[Fraction(rng.randint(-span, span)) for _ in range(2)]
                    for _ in range(2)]
        if rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0] != 0:
            return LinearMap(rows, RATIONAL_MODE)


def random_bilinear(rng: random.Random, span: int = 2) -> JordanLaw:
    """A random symmetric bilinear map (not necessarily Jordan)."""
    mat = [[Fraction(rng.randint(-span, span), rng.randint(1, 3))
            for _ in range(2)] for _ in range(3)]
    return JordanLaw.from_matrix2(mat, RATIONAL_MODE)


@pytest.fixture
def law_file(tmp_path):
    """Factory writing a law to a JSON file, returning its path."""

    def write(law, name="law.json"):
        path = tmp_path / name
        path.write_text(json.dumps(law_to_document(law)))
        return str(path)

    return write
