import random
from concurrent.futures import ThreadPoolExecutor


def derive_rng(seed, *salt):
    """
    Return a :class:`random.Random` determined by ``seed`` and ``salt``.

    String seeds are hashed with SHA-512 by :mod:`random`, so the stream does
    not depend on ``PYTHONHASHSEED`` or the platform.
    """
    return random.Random(":".join(str(part) for part in (seed, *salt)))


def ordered_map(function, items, jobs=1):
    """
    ``map`` that may use a thread pool; results keep the order of ``items``.
    """
    if jobs <= 1:
        return [function(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(function, items))
