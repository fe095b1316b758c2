"""Named example groups and random generators of finite subgroups of SU(3) and Sp(2)."""

from __future__ import annotations

import random

from .field import CycNumber
from .group import GroupData, close_group
from .linalg import CycMatrix


def z(m: int, k: int = 1) -> CycNumber:
    return CycNumber.zeta(m, k)


def diag_z4() -> list[CycMatrix]:
    """Z_4 generated by (z1, z2, z3) -> (-z1, i z2, i z3)."""
    return [CycMatrix.diag([-1, z(4), z(4)], 4)]


def diag_z2z2() -> list[CycMatrix]:
    return [CycMatrix.diag([1, -1, -1], 2), CycMatrix.diag([-1, 1, -1], 2)]


def _kron_i2(block: list[list]) -> list[list]:
    """block (2x2) tensor Id_2, basis ordered v1e1, v1e2, v2e1, v2e2."""
    out = [[0] * 4 for _ in range(4)]
    for a in range(2):
        for b in range(2):
            for e in range(2):
                out[2 * a + e][2 * b + e] = block[a][b]
    return out


def s3_hilb3() -> list[CycMatrix]:
    """S_3 on {(x, y, z) in (C^2)^3 : x + y + z = 0}: standard rep tensor C^2.

    The standard representation is written in the eigenbasis of the 3-cycle,
    where it is unitary with entries in Q(zeta_3).
    """
    w = z(3)
    cycle = [[w, 0], [0, w * w]]
    swap = [[0, 1], [1, 0]]
    return [CycMatrix.from_rows(_kron_i2(cycle), 3), CycMatrix.from_rows(_kron_i2(swap), 3)]


def free_z5() -> list[CycMatrix]:
    return [CycMatrix.diag([z(5), z(5), z(5, 3)], 5)]


def hilb2_a1() -> list[CycMatrix]:
    """Z_2 semidirect (H x H) with H = {+-1} in SU(2): Hilb^2 of the A_1 ALE surface."""
    flip = CycMatrix.diag([-1, -1, 1, 1], 2)
    swap = CycMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], 2)
    return [flip, swap]


def z3_pair() -> list[CycMatrix]:
    w = z(3)
    return [CycMatrix.diag([w, w * w, 1, 1], 3), CycMatrix.diag([1, 1, w, w * w], 3)]


NAMED_GROUPS = {
    "joyce-9-3-5": diag_z4,
    "z2z2": diag_z2z2,
    "s3-hilb3": s3_hilb3,
    "free-z5": free_z5,
    "hilb2-a1": hilb2_a1,
    "z3-pair": z3_pair,
}


def named_group(name: str) -> GroupData:
    return close_group(NAMED_GROUPS[name]())


# -- random building blocks -------------------------------------------------

def _diag3(m: int, a: int, b: int) -> CycMatrix:
    return CycMatrix.diag([z(m, a), z(m, b), z(m, -a - b)], m)


def _cyclic3(m: int) -> CycMatrix:
    return CycMatrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]], m)


def _neg_transposition(m: int) -> CycMatrix:
    return CycMatrix.from_rows([[0, -1, 0], [-1, 0, 0], [0, 0, -1]], m)


def random_su3_generators(rng: random.Random) -> list[CycMatrix]:
    """Diagonal abelian pieces, optionally extended by a 3-cycle or a signed transposition."""
    m = rng.choice([2, 3, 4, 5, 6, 7, 8])
    kind = rng.choice(["diag", "diag2", "cyclic", "transp"])
    gens = [_diag3(m, rng.randrange(m), rng.randrange(m))]
    if kind == "diag2":
        gens.append(_diag3(m, rng.randrange(m), rng.randrange(m)))
    if kind == "cyclic":
        gens.append(_cyclic3(m))
    if kind == "transp":
        a = rng.randrange(m)
        gens[0] = CycMatrix.diag([z(m, a), z(m, a), z(m, -2 * a)], m)
        gens.append(_neg_transposition(m))
    return gens


def _su2_diag(m: int, a: int) -> list[list]:
    return [[z(m, a), 0], [0, z(m, -a)]]


def _block(b1, b2, m: int) -> CycMatrix:
    rows = [[b1[0][0], b1[0][1], 0, 0], [b1[1][0], b1[1][1], 0, 0],
            [0, 0, b2[0][0], b2[0][1]], [0, 0, b2[1][0], b2[1][1]]]
    return CycMatrix.from_rows(rows, m)


_J2 = [[0, 1], [-1, 0]]
_I2 = [[1, 0], [0, 1]]


def random_sp2_generators(rng: random.Random) -> list[CycMatrix]:
    """Products of binary cyclic/dihedral SU(2) blocks, optionally with the block swap."""
    m = rng.choice([2, 3, 4, 6, 8])
    kind = rng.choice(["diag", "dihedral", "wreath", "s3"])
    if kind == "s3":
        return s3_hilb3()
    a, b = rng.randrange(1, m), rng.randrange(m)
    gens = [_block(_su2_diag(m, a), _su2_diag(m, b), m)]
    if kind == "dihedral":
        gens.append(_block(_J2, rng.choice([_I2, _J2]), m))
    if kind == "wreath":
        gens = [_block(_su2_diag(m, a), _I2, m)]
        gens.append(CycMatrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]], m))
    return gens


def random_group(rng: random.Random, n: int, max_order: int = 400) -> GroupData:
    make = random_su3_generators if n == 3 else random_sp2_generators
    while True:
        gens = make(rng)
        G = close_group(gens, max_order=10_000)
        if len(G) <= max_order:
            return G
