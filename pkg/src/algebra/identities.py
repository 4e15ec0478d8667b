"""Randomized exact identity testing at sample points."""
import logging
import random
from typing import Any, Dict, Optional

from sympy.polys.rings import PolyElement

from .polys import poly_to_text
from .scalars import random_scalar

logger = logging.getLogger(__name__)


def total_degree(poly: PolyElement) -> int:
    if not poly:
        return -1
    return max(sum(m) for m in poly.monoms())


def identity_at_samples(lhs: PolyElement, rhs: PolyElement, rng: Optional[random.Random] = None,
                        samples: Optional[int] = None) -> Dict[str, Any]:
    """Check lhs == rhs at deg+1 random exact points of the common ring.

    A nonzero polynomial of total degree d vanishes at a random point of a
    set of size S with probability at most d/S, so a single failing sample
    disproves the identity and deg+1 passing samples are strong evidence.
    """
    rng = rng or random.Random(0)
    diff = lhs - rhs
    ring = diff.ring
    count = samples if samples is not None else max(total_degree(diff), 0) + 1
    failures = 0
    for _ in range(count):
        point = [random_scalar(rng, height=97) for _ in range(ring.ngens)]
        value = diff.evaluate(list(zip(ring.gens, point))) if ring.ngens else diff
        if value:
            failures += 1
    status = 'pass' if failures == 0 else 'fail'
    if failures:
        logger.debug("Identity failed at %d of %d samples: %s", failures, count, poly_to_text(diff))
    return {'status': status, 'samples': count, 'failures': failures}
