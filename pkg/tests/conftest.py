import math
import random

import numpy as np
import pytest

from slicereg.fixtures import (e1, e1_without_shared_term, e2_truncated,
                               square_all_slices)
from slicereg.quat import ImaginaryUnit, psi


@pytest.fixture(scope="session")
def e1_dom():
    return e1(0.05)


@pytest.fixture(scope="session")
def e1_coarse():
    return e1(0.1)


@pytest.fixture(scope="session")
def e1_bad():
    return e1_without_shared_term(0.05)


@pytest.fixture(scope="session")
def e2_dom():
    return e2_truncated(3)


@pytest.fixture(scope="session")
def square_dom():
    return square_all_slices(2.0)


def random_unit(rng) -> ImaginaryUnit:
    while True:
        v = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        if sum(c * c for c in v) > 1e-6:
            return ImaginaryUnit.of(*v)


def random_domain_points(dom, rng, n, effective_only=True):
    """n random points of the domain, realized on random slices."""
    pts = []
    eff = dom.effective_slices
    while len(pts) < n:
        u = eff[rng.randrange(len(eff))] if effective_only else random_unit(rng)
        zs = dom.pullback(dom.resolve_unit(u)).sample(rng, 1)
        if not zs:
            continue
        q = psi(zs[0], u)
        if dom.contains_q(q):
            pts.append(q)
    return pts


class SigmaBruteOracle:
    """Independent sigma-distance oracle: dense complement sampling.

    The complement of each effective pullback is sampled on a regular grid;
    sigma to the complement is then minimized over same-plane Euclidean
    distance and the cross-plane formula, directly from the definition.
    """

    def __init__(self, dom, pitch=1e-2, pad=1.5):
        self.dom = dom
        self.pitch = pitch
        self.samples = {}
        for u in dom.effective_slices:
            pb = dom.pullback(u)
            ax, bx, ay, by = (float(v) for v in pb.bbox())
            xs = np.arange(ax - pad, bx + pad, pitch)
            ys = np.arange(ay - pad, by + pad, pitch)
            pts = []
            bounds = np.array([[float(r.ax), float(r.bx), float(r.ay), float(r.by)]
                               for r in pb.rects])
            for x in xs:
                mask = (bounds[:, 0] < x) & (x < bounds[:, 1])
                rows = bounds[mask]
                inside = np.zeros(len(ys), dtype=bool)
                for _, _, c, d in rows:
                    inside |= (c < ys) & (ys < d)
                yy = ys[~inside]
                if len(yy):
                    pts.append(np.stack([np.full(len(yy), x), yy], axis=1))
            self.samples[id(u)] = (u, np.concatenate(pts) if pts else np.zeros((0, 2)))

    def sigma(self, q) -> float:
        from slicereg.quat import slice_decompose
        x, y, uq = slice_decompose(q)
        best = math.inf
        for u, arr in self.samples.values():
            if not len(arr):
                continue
            dx = arr[:, 0] - x
            same_plane = uq is None or u.same_plane(uq)
            if same_plane:
                zq = y if (uq is None or u.isclose(uq)) else -y
                d2 = dx * dx + (arr[:, 1] - zq) ** 2
                best = min(best, math.sqrt(float(d2.min())))
            else:
                d2 = dx * dx + arr[:, 1] ** 2 + y * y
                best = min(best, math.sqrt(float(d2.min())))
        return best


@pytest.fixture(scope="session")
def sigma_oracle_e2(e2_dom):
    return SigmaBruteOracle(e2_dom)


@pytest.fixture(scope="session")
def sigma_oracle_e1(e1_coarse):
    return SigmaBruteOracle(e1_coarse)


@pytest.fixture
def rng():
    return random.Random(20240811)
