"""Exit criteria. Each test is one criterion; the terminal summary prints
one PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction
from itertools import product

import pytest

from flowmatch.matchmaker import final_score, match_pair, parsim, rank
from flowmatch.maxflow import (
    BipartiteInstance,
    build_matching_network,
    complete_match_level,
    flow_violations,
    ford_fulkerson,
)
from flowmatch.profile import Registry
from flowmatch.scoring import DataType, case_score

from gen import TYPE_TABLE_VALUES, random_edges, random_profile, random_registry, random_taxonomy, random_weights
from oracles import bottleneck, max_matching

ORDER = ["Thing", "Vehicle", "Car", "SportsCar", "Boat", "Amphibian",
         "Place", "City", "Capital", "Measure", "Temperature", "Price"]

# rows: requester concept, columns: candidate concept, both in ORDER
CASE_TABLE = [
    [10, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
    [10, 10, 3, 3, 3, 3, 0, 0, 0, 0, 0, 0],
    [7, 10, 10, 3, 0, 3, 0, 0, 0, 0, 0, 0],
    [7, 7, 10, 10, 0, 0, 0, 0, 0, 0, 0, 0],
    [7, 10, 0, 0, 10, 3, 0, 0, 0, 0, 0, 0],
    [7, 7, 10, 0, 10, 10, 0, 0, 0, 0, 0, 0],
    [10, 0, 0, 0, 0, 0, 10, 3, 3, 0, 0, 0],
    [7, 0, 0, 0, 0, 0, 10, 10, 3, 0, 0, 0],
    [7, 0, 0, 0, 0, 0, 7, 10, 10, 0, 0, 0],
    [10, 0, 0, 0, 0, 0, 0, 0, 0, 10, 3, 3],
    [7, 0, 0, 0, 0, 0, 0, 0, 0, 10, 10, 0],
    [7, 0, 0, 0, 0, 0, 0, 0, 0, 10, 0, 10],
]

TYPES = ["Integer", "Real", "String", "Date", "Boolean"]
TYPE_TABLE = [
    [10, 5, 3, 1, 1],
    [10, 10, 1, 0, 1],
    [7, 7, 10, 8, 3],
    [1, 0, 1, 10, 0],
    [1, 0, 1, 0, 10],
]

N_UNIT, N_WEIGHTED = 500, 300


def unit_instances():
    rng = random.Random(20240601)
    for _ in range(N_UNIT):
        nl, nr = rng.randint(0, 6), rng.randint(0, 6)
        edges = random_edges(rng, nl, nr, rng.uniform(0.1, 0.9))
        yield nl, nr, edges


def weighted_instances():
    rng = random.Random(20240602)
    for k in range(N_WEIGHTED):
        values = (10, 7, 3, 0) if k % 2 == 0 else TYPE_TABLE_VALUES
        nl, nr = rng.randint(0, 6), rng.randint(0, 6)
        yield nl, nr, values, random_weights(rng, nl, nr, values)


def all_runs():
    """Every Ford-Fulkerson run behind the two oracle criteria."""
    for nl, nr, edges in unit_instances():
        inst = BipartiteInstance(range(nl), range(nr), [(i, j, 10) for i, j in edges])
        yield nl, nr, build_matching_network(inst, 10)
    for nl, nr, values, weights in weighted_instances():
        inst = BipartiteInstance(range(nl), range(nr), [(i, j, w) for (i, j), w in weights.items()])
        for tau in sorted({v for v in values if v}, reverse=True):
            yield nl, nr, build_matching_network(inst, tau)


@pytest.mark.acceptance("CASE truth table: 144 ordered pairs on the 12-concept fixture, < 1 s")
def test_case_truth_table(tax12):
    start = time.perf_counter()
    branches = set()
    mismatches = []
    for i, a in enumerate(ORDER):
        for j, b in enumerate(ORDER):
            got = case_score(tax12, a, b)
            if got != CASE_TABLE[i][j]:
                mismatches.append((a, b, got, CASE_TABLE[i][j]))
            if a == b:
                branches.add("same")
            elif tax12.is_direct_subclass(a, b):
                branches.add("direct")
            else:
                branches.add(int(got))
    elapsed = time.perf_counter() - start
    assert mismatches == []
    assert branches == {"same", "direct", 7, 3, 0}
    assert elapsed < 1.0


@pytest.mark.acceptance("Datatype table reproduction: all 25 type-matrix cells, < 1 s")
def test_type_table(type_table):
    start = time.perf_counter()
    for i, a in enumerate(TYPES):
        for j, b in enumerate(TYPES):
            assert type_table.score(DataType(a), DataType(b)) == TYPE_TABLE[i][j], (a, b)
    assert type_table.score(DataType.INTEGER, DataType.REAL) == 5
    assert type_table.score(DataType.REAL, DataType.INTEGER) == 10
    assert type_table.score(DataType.STRING, DataType.DATE) == 8
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance("Max-flow oracle equivalence: 500 unit bipartite instances <= 6+6, < 30 s")
def test_maxflow_oracle():
    start = time.perf_counter()
    bad = []
    for nl, nr, edges in unit_instances():
        inst = BipartiteInstance(range(nl), range(nr), [(i, j, 10) for i, j in edges])
        _, value = ford_fulkerson(build_matching_network(inst, 10))
        expected = max_matching(nl, nr, edges)
        if value != expected:
            bad.append((nl, nr, sorted(edges), value, expected))
    assert bad == []
    assert time.perf_counter() - start < 30.0


@pytest.mark.acceptance("Bottleneck oracle equivalence: 300 weighted instances, < 30 s")
def test_bottleneck_oracle():
    start = time.perf_counter()
    bad = []
    for nl, nr, values, weights in weighted_instances():
        inst = BipartiteInstance(range(nl), range(nr), [(i, j, w) for (i, j), w in weights.items()])
        levels = sorted({v for v in values if v}, reverse=True)
        got = complete_match_level(inst, levels).level
        expected = bottleneck(nl, nr, weights)
        if got != expected:
            bad.append((nl, nr, weights, got, expected))
    assert bad == []
    assert time.perf_counter() - start < 30.0


@pytest.mark.acceptance("Flow-property invariants after every augmentation: zero violations")
def test_flow_invariants():
    violations = []
    checks = 0

    def check(net, flow):
        nonlocal checks
        checks += 1
        violations.extend(flow_violations(net, flow))

    for _, _, net in all_runs():
        flow, _ = ford_fulkerson(net, check)
        violations.extend(flow_violations(net, flow))
    assert checks > 0
    assert violations == []


@pytest.mark.acceptance("Augmentation count <= min(|V0|, |V1|) on every unit-capacity run")
def test_augmentation_bound():
    over = []
    for nl, nr, net in all_runs():
        flow, value = ford_fulkerson(net)
        if flow.augmentations > min(nl, nr):
            over.append((nl, nr, flow.augmentations))
        assert flow.augmentations == value
    assert over == []


@pytest.mark.acceptance("PARSIM cascade equals min on all 16 pairs; (7, 3) -> 3")
def test_parsim_semantics():
    for o, i in product((0, 3, 7, 10), repeat=2):
        assert parsim(o, i) == min(o, i)
    assert parsim(7, 3) == 3


@pytest.mark.acceptance("Final score anchors: (0, t) -> 0, (10, 10) -> 100, (7, 5) -> 63.33 +- 0.01")
def test_final_anchors():
    assert all(final_score(0, t) == 0 for t in range(11))
    assert final_score(10, 10) == 100
    assert abs(float(final_score(7, 5)) - 63.33) <= 0.01
    assert final_score(7, 5) == Fraction(190, 3)


@pytest.mark.acceptance("Self-substitution: 100 random profiles score 10 / 10 / 100, < 10 s")
def test_self_substitution(type_table):
    rng = random.Random(20240603)
    start = time.perf_counter()
    failures = []
    for k in range(100):
        t, parents = random_taxonomy(rng, 12)
        p = random_profile(rng, sorted(parents), f"svc{k}", nonempty=True)
        rep = match_pair(p, p, t, type_table)
        if (rep.parsim, rep.typesim, rep.final) != (10, 10, 100):
            failures.append((p, rep))
    assert failures == []
    assert time.perf_counter() - start < 10.0


@pytest.mark.acceptance("Ranking determinism: 20-service registry, 10 insertion-order permutations")
def test_ranking_determinism(type_table):
    rng = random.Random(20240604)
    t, parents = random_taxonomy(rng, 12)
    concepts = sorted(parents)
    reg = random_registry(rng, concepts, 20)
    req = random_profile(rng, concepts, "request", nonempty=True)
    # duplicate some services under new ids so ties actually occur
    extra = [type(s)(f"copy{k}", s.inputs, s.outputs) for k, s in enumerate(list(reg)[:5])]
    reg = Registry(list(reg)[:15] + extra)
    assert len(reg) == 20
    baseline = rank(req, reg, t, type_table)
    for _ in range(10):
        services = list(reg)
        rng.shuffle(services)
        assert rank(req, Registry(services), t, type_table) == baseline
