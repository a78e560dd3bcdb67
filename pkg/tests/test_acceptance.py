"""Exit criteria, one test per criterion, each printing a PASS/FAIL line."""

import filecmp
import json
import random
import time

import numpy as np
import pytest

from ucvaria.blocks import blocks_of_family
from ucvaria.cli import main
from ucvaria.evaluation import GroundTruth, evaluate
from ucvaria.fca import FormalContext, build_aoc_poset
from ucvaria.features import threshold_context
from ucvaria.lsi import (LsiConfig, SimilarityMatrix, build_corpus, lsi_reduce,
                         similarity_matrix)
from ucvaria.model import DiagramVariant, UseCase, VariantFamily, family_universe
from ucvaria.pipeline import analyze

from conftest import NOUNS, VERBS, random_family
from oracles import closure_concepts, gram_singular_values, signature_partition

# Expected Mobile Media features: 10 common, 13 variable.
TABLE6 = [
    ("View album", "mandatory"), ("Add album", "mandatory"), ("Delete album", "mandatory"),
    ("Add photo", "mandatory"), ("Delete photo", "mandatory"), ("View photo", "mandatory"),
    ("Provide label", "mandatory"), ("Store data", "mandatory"), ("Remove data", "mandatory"),
    ("Retrieve data", "mandatory"), ("Error handling", "optional"),
    ("View sorted photos", "optional"), ("Edit label", "optional"), ("Count photo", "optional"),
    ("Set favorites", "optional"), ("View favorites", "optional"), ("Copy photo", "optional"),
    ("Send photo", "optional"), ("Receive photo", "optional"), ("Play music", "optional"),
    ("Access media", "optional"), ("Play video", "optional"), ("Capture media", "optional"),
]


@pytest.fixture
def verdict(capsys):
    def report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        assert ok, f"{label}: {detail}"
    return report


def test_ac1_mobile_media_reproduction(tmp_path, mobile_media_path, truth_path, verdict):
    out = tmp_path / "out"
    start = time.perf_counter()
    status = main(["analyze", str(mobile_media_path), "-o", str(out)])
    elapsed = time.perf_counter() - start
    assert status == 0
    fm = json.loads((out / "fm.json").read_text())
    mandatory = [(n, "mandatory") for n in fm["mandatory"]]
    optional = [(o["name"], "optional") for o in fm["optional"]]
    assert main(["eval", str(out / "fm.json"), str(truth_path)]) == 0
    report = evaluate(fm, GroundTruth.load(truth_path))
    ok = (len(mandatory) == 10 and len(optional) == 13
          and sorted(mandatory + optional) == sorted(TABLE6)
          and report.precision == report.recall == report.f_measure == 1.0
          and elapsed < 1.0)
    verdict("AC1 mobile-media reproduction", ok,
            f"{len(mandatory)} mandatory, {len(optional)} optional, "
            f"P={report.precision} R={report.recall} F={report.f_measure}, {elapsed:.3f}s")


def test_ac2_block_partition_oracle(verdict):
    rng = random.Random(2)
    agree = 0
    n = 250
    for _ in range(n):
        fam = random_family(rng, (2, 10), (3, 30), self_matching=False)
        common, bvs = blocks_of_family(fam)
        sets = {v.id: {uc.name for uc in v.use_cases} for v in fam.variants}
        cb, groups = signature_partition(sets)
        same = (set(common.use_cases if common else ()) == cb
                and sorted(sorted(b.use_cases) for b in bvs) == sorted(sorted(g) for g in groups))
        agree += same
    verdict("AC2 block partition = signature partition", agree == n, f"{agree}/{n} families")


def test_ac3_aoc_poset_oracle(verdict):
    rng = np.random.default_rng(3)
    agree = 0
    n = 250
    for _ in range(n):
        rows, cols = rng.integers(1, 9), rng.integers(1, 16)
        matrix = rng.random((rows, cols)) < rng.uniform(0.1, 0.9)
        ctx = FormalContext([f"o{i}" for i in range(rows)], [f"a{j}" for j in range(cols)], matrix)
        poset = build_aoc_poset(ctx)
        expected = closure_concepts(matrix.tolist())
        got = {c.extent: (c.intent, set(c.reduced_extent), set(c.reduced_intent))
               for c in poset.concepts}
        agree += (got == expected
                  and sum(len(c.reduced_intent) for c in poset.concepts) == cols
                  and sum(len(c.reduced_extent) for c in poset.concepts) == rows)
    verdict("AC3 AOC-poset = closure-of-singletons enumeration", agree == n, f"{agree}/{n} contexts")


def test_ac4_svd_numerics(verdict):
    rng = np.random.default_rng(4)
    worst = dict(recon=0.0, ortho=0.0, oracle=0.0)
    monotone = True
    n = 150
    for _ in range(n):
        t, u = rng.integers(1, 31, size=2)
        a = rng.normal(size=(t, u)) * (rng.random((t, u)) < 0.7)
        if not a.any():
            a[0, 0] = 1.0
        f = lsi_reduce(a)
        k = f.rank
        worst["recon"] = max(worst["recon"], np.linalg.norm(a - f.reconstruct()) / np.linalg.norm(a))
        worst["ortho"] = max(worst["ortho"], np.abs(f.u.T @ f.u - np.eye(k)).max(),
                             np.abs(f.v.T @ f.v - np.eye(k)).max())
        worst["oracle"] = max(worst["oracle"], np.abs(f.s - gram_singular_values(a)[:k]).max())
        monotone &= bool(np.all(np.diff(f.s) <= 0))
    ok = worst["recon"] <= 1e-8 and worst["ortho"] <= 1e-8 and worst["oracle"] <= 1e-6 and monotone
    verdict("AC4 SVD numerics", ok,
            f"recon {worst['recon']:.1e}, ortho {worst['ortho']:.1e}, "
            f"gram oracle {worst['oracle']:.1e}, nonincreasing={monotone}")


def _identity_family(rng):
    pairs = rng.sample([(v, n) for v in VERBS for n in NOUNS], rng.randint(2, 12))
    ucs = tuple(UseCase(f"{v} {n}", f"{v} {n}") for v, n in pairs)
    return VariantFamily.build("id", [DiagramVariant("a", ucs), DiagramVariant("b", ucs)])


def test_ac5_similarity_sanity(mobile_media, verdict):
    cfg = LsiConfig()
    rng = random.Random(5)
    bounded = True
    for fam in [mobile_media] + [random_family(rng, self_matching=False) for _ in range(100)]:
        for b in analyze(fam, cfg).blocks:
            bounded &= bool(np.all(np.abs(b.similarity.values) <= 1.0))

    worst_identity = 0.0
    for _ in range(100):
        fam = _identity_family(rng)
        common, _ = blocks_of_family(fam)
        sim = similarity_matrix(build_corpus(common, fam, cfg), cfg)
        worst_identity = max(worst_identity, np.abs(np.diag(sim.values) - 1.0).max())

    edge = SimilarityMatrix(np.array([[0.70, 0.70 - 1e-6]]), ("q",), ("x", "y"))
    inclusive = threshold_context(edge, 0.70).incidence.tolist() == [[True, False]]

    self_match = True
    for b in analyze(mobile_media, cfg).blocks:
        v = b.similarity.values
        for i in range(len(v)):
            others = np.delete(v[i], i)
            self_match &= bool(v[i, i] >= 0.70 and (others.size == 0 or v[i, i] > others.max()))

    ok = bounded and worst_identity <= 1e-9 and inclusive and self_match
    verdict("AC5 similarity sanity", ok,
            f"bounded={bounded}, identical-vector error {worst_identity:.1e}, "
            f"inclusive={inclusive}, fixture self-match={self_match}")


def test_ac6_conservation(mobile_media, verdict):
    rng = random.Random(6)
    families = [mobile_media] + [random_family(rng, self_matching=bool(i % 2)) for i in range(200)]
    held = 0
    for fam in families:
        analysis = analyze(fam)
        fm = analysis.feature_model
        atoms = [a for b in analysis.blocks for a in b.atoms if not a.unmatched]
        extra = sum(len(a.use_cases) - 1 for a in atoms)
        universe = len(family_universe(fam))
        held += (len(fm.mandatory) + len(fm.optional) + len(fm.unmatched) == universe
                 and len(atoms) + extra + len(fm.unmatched) == universe)
    verdict("AC6 conservation", held == len(families), f"{held}/{len(families)} families")


def test_ac7_determinism(tmp_path, mobile_media_path, truth_path, verdict):
    a, b = tmp_path / "run1", tmp_path / "run2"
    for out in (a, b):
        assert main(["analyze", str(mobile_media_path), "-o", str(out),
                     "--truth", str(truth_path), "--figures"]) == 0
    names = sorted(p.name for p in a.iterdir())
    same = sorted(p.name for p in b.iterdir()) == names
    _, mismatch, errors = filecmp.cmpfiles(a, b, names, shallow=False)
    ok = same and not mismatch and not errors
    verdict("AC7 determinism", ok, f"{len(names)} files, mismatched={mismatch}")
