from __future__ import annotations

import random

import pytest

from ucvaria.fixtures import (MOBILE_MEDIA, MOBILE_MEDIA_TABLE2, MOBILE_MEDIA_TRUTH,
                              data_path)
from ucvaria.evaluation import GroundTruth
from ucvaria.model import DiagramVariant, UseCase, VariantFamily, load_family

# Stable under stemming and absent from the stopword list.
VERBS = ["view", "add", "delet", "sort", "copi", "send", "play", "edit", "count",
         "store", "print", "scan", "sync", "share", "tag", "rate"]
NOUNS = ["album", "photo", "video", "music", "label", "data", "media", "song",
         "report", "contact", "file", "note", "map", "event", "track", "list"]

# Mobile Media release-by-use-case matrix, in its original attribute order.
TABLE3_ATTRIBUTES = [
    "View Album", "Delete Album", "Add Album", "View Photo", "Delete Photo", "Add Photo",
    "Store Data", "Retrieve Data", "Provide Label", "Remove Data", "Error Handling",
    "Count Photo", "Edit Label", "View Sorted Photos", "View Favourites",
    "Set Favourites", "Copy Photo",
]
_CORE = TABLE3_ATTRIBUTES[:10]
TABLE3_ROWS = {
    "re1": _CORE,
    "re2": _CORE + ["Error Handling"],
    "re3": _CORE + ["Error Handling", "Count Photo", "Edit Label", "View Sorted Photos"],
    "re4": _CORE + ["Error Handling", "View Favourites", "Set Favourites"],
    "re5": _CORE + ["Error Handling", "Copy Photo"],
    "re6": _CORE + ["Error Handling"],
    "re7": _CORE + ["Error Handling", "Count Photo", "View Sorted Photos",
                    "View Favourites", "Set Favourites", "Copy Photo"],
    "re8": TABLE3_ATTRIBUTES,
}


@pytest.fixture(scope="session")
def mobile_media() -> VariantFamily:
    return load_family(data_path(MOBILE_MEDIA))


@pytest.fixture(scope="session")
def mobile_media_path():
    return data_path(MOBILE_MEDIA)


@pytest.fixture(scope="session")
def truth_path():
    return data_path(MOBILE_MEDIA_TRUTH)


@pytest.fixture(scope="session")
def truth() -> GroundTruth:
    return GroundTruth.load(data_path(MOBILE_MEDIA_TRUTH))


@pytest.fixture(scope="session")
def table2_family() -> VariantFamily:
    return load_family(data_path(MOBILE_MEDIA_TABLE2))


def random_family(rng: random.Random, n_variants=(2, 10), n_use_cases=(3, 30),
                  self_matching=True) -> VariantFamily:
    """Random family with distinct two-word names.

    With ``self_matching`` each description is "The user can <name>", which
    reproduces its own name's terms exactly; otherwise it is random words.
    """
    nv = rng.randint(*n_variants)
    nu = rng.randint(*n_use_cases)
    pairs = rng.sample([(v, n) for v in VERBS for n in NOUNS], nu)
    names = [f"{v} {n}" for v, n in pairs]
    vocab = VERBS + NOUNS
    desc = {}
    for name in names:
        if self_matching:
            desc[name] = f"The user can {name}"
        else:
            desc[name] = "The user " + " ".join(rng.sample(vocab, rng.randint(1, 4)))
    members = [set() for _ in range(nv)]
    for name in names:
        for i in range(nv):
            if rng.random() < 0.5:
                members[i].add(name)
        if not any(name in m for m in members):
            members[rng.randrange(nv)].add(name)
    for m in members:
        if not m:
            m.add(rng.choice(names))
    variants = [DiagramVariant(f"v{i + 1}", tuple(UseCase(n, desc[n]) for n in names if n in m))
                for i, m in enumerate(members)]
    return VariantFamily.build("random", variants)
