import itertools
import random

from emn.core.families import complete, complete_bipartite, cycle, join_counterexample, petersen, star
from emn.core.graph import Graph, Matching
from emn.core.graph6 import write_graph6
from emn.harness.enumerate import enumerate_connected_graphs
from emn.matching.blossom import has_perfect_matching, matching_number, max_matching
from emn.matching.extendability import (
    REASON_DISCONNECTED,
    REASON_NO_PAIR,
    REASON_ODD,
    REASON_TOO_FEW,
    EmnQuery,
    Outcome,
    Witness,
    brute_force_emn,
    constrained_perfect_matching,
    has_property_emn,
    is_m_extendable,
    iter_queries,
    low_degree_witness,
    matchings_of_size,
    perfect_matchings,
    verify_witness,
)
from tests.oracles import nx_matching_number
from tests.test_utils import ACCEPTANCE, RegressionTest, bench_main


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def test_max_matching():
    print("测试1: 最大匹配示例")
    assert matching_number(cycle(6)) == 3
    assert matching_number(star(4)) == 1
    assert matching_number(petersen()) == 5
    assert has_perfect_matching(petersen())
    assert not has_perfect_matching(cycle(5))
    assert matching_number(Graph(3)) == 0
    print("  ✓ C6=3, K1,4=1, Petersen=5")

    print("\n测试2: 随机图对照 networkx")
    rng = random.Random(2024)
    for trial in range(300):
        g = random_graph(rng, rng.randint(1, 14), rng.choice((0.15, 0.3, 0.5)))
        found = max_matching(g)
        found.check_in(g)
        expected = nx_matching_number(g)
        assert len(found) == expected, f"{write_graph6(g)}: blossom {len(found)} vs networkx {expected}"
    print("  ✓ 300 个随机图一致")


def test_constrained_perfect_matching():
    print("测试3: 带约束的完美匹配")
    c6 = cycle(6)
    found = constrained_perfect_matching(c6, Matching.of([(0, 1)]), [(3, 4)])
    assert found == Matching.of([(0, 1), (2, 3), (4, 5)]), f"得到 {found}"
    k4 = complete(4)
    assert constrained_perfect_matching(k4, Matching.of([(0, 1)]), [(2, 3)]) is None
    free = constrained_perfect_matching(k4, Matching())
    assert free is not None and len(free) == 2
    assert constrained_perfect_matching(cycle(5), Matching()) is None
    print("  ✓ C6 / K4 示例")

    print("\n测试4: 非法约束")
    for forced, forbidden in [
        (Matching.of([(0, 2)]), []),
        (Matching(), [(0, 3)]),
        (Matching.of([(0, 1)]), [(1, 0)]),
    ]:
        try:
            constrained_perfect_matching(c6, forced, forbidden)
        except ValueError as exc:
            print(f"  拒绝: {exc}")
        else:
            raise AssertionError(f"应拒绝 forced={forced} forbidden={forbidden}")


def test_emn_examples():
    print("测试5: E(m,n) 示例")
    v = has_property_emn(complete(4), EmnQuery(0, 0))
    assert v.holds, v
    v = has_property_emn(cycle(6), EmnQuery(2, 0))
    assert v.fails and v.witness == Witness(Matching.of([(0, 1), (3, 4)]), Matching()), v
    assert has_property_emn(cycle(6), EmnQuery(1, 0)).holds
    assert has_property_emn(join_counterexample(2), EmnQuery(1, 1)).holds
    assert has_property_emn(join_counterexample(2), EmnQuery(2, 0)).fails
    assert is_m_extendable(cycle(6), 1).holds
    print("  ✓ K4, C6, join-counterexample(2)")

    print("\n测试6: NotApplicable 原因")
    cases = [
        (Graph.from_edges(4, [(0, 1), (2, 3)]), EmnQuery(0, 0), REASON_DISCONNECTED),
        (complete(4), EmnQuery(1, 1), REASON_TOO_FEW),
        (cycle(7), EmnQuery(0, 0), REASON_ODD),
        (Graph(1), EmnQuery(0, 0), REASON_TOO_FEW),
        (Graph(0), EmnQuery(0, 0), REASON_DISCONNECTED),
    ]
    for g, q, reason in cases:
        v = has_property_emn(g, q)
        assert v.outcome is Outcome.NOT_APPLICABLE and v.reason == reason, f"{q} on {g}: {v}"
        assert v.witness is None
    try:
        EmnQuery(-1, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("m < 0 应被拒绝")
    print("  ✓ disconnected / too few vertices / odd vertex count")

    print("\n测试7: verdict JSON")
    payload = has_property_emn(cycle(6), EmnQuery(2, 0)).to_json()
    assert payload == {"m": 2, "n": 0, "outcome": "Fails", "witness": {"m": [[0, 1], [3, 4]], "n": []}}, payload
    assert Witness.from_json(payload["witness"]) == Witness(Matching.of([(0, 1), (3, 4)]), Matching())
    assert has_property_emn(cycle(7), EmnQuery(0, 0)).to_json()["reason"] == "odd vertex count"


def test_witness_audit():
    print("测试8: verify_witness")
    c6, k4 = cycle(6), complete(4)
    assert verify_witness(c6, Matching.of([(0, 1), (3, 4)]), Matching())
    assert not verify_witness(k4, Matching.of([(0, 1)]), Matching())
    assert verify_witness(k4, Matching.of([(0, 1)]), Matching.of([(2, 3)]))
    assert not verify_witness(k4, Matching.of([(0, 1)]), Matching.of([(1, 2)])), "M 与 N 共享顶点"
    assert sum(1 for _ in perfect_matchings(c6)) == 2
    assert sum(1 for _ in perfect_matchings(complete(6))) == 15
    assert sum(1 for _ in perfect_matchings(complete_bipartite(3, 3))) == 6
    print("  ✓ 审计与完美匹配计数")

    print("\n测试9: 字典序第一个失败见证")
    edges = cycle(6).edges
    pairs = list(matchings_of_size(edges, 2))
    assert pairs[:2] == [((0, 1), (2, 3)), ((0, 1), (3, 4))], pairs[:2]
    assert all(len({v for e in p for v in e}) == 4 for p in pairs)
    assert list(matchings_of_size(edges, 0)) == [()]
    assert [str(q) for q in iter_queries(1, 1)] == ["E(0,0)", "E(0,1)", "E(1,0)", "E(1,1)"]


def test_low_degree_witness():
    print("测试10: 低度数顶点的失败见证")
    w = low_degree_witness(cycle(6), 1)
    assert w == Witness(Matching.of([(4, 5)]), Matching.of([(0, 1)])), w
    assert verify_witness(cycle(6), w.m, w.n)
    assert low_degree_witness(cycle(4), 1) is None, "4 < 2m+4"
    assert low_degree_witness(complete(6), 1) is None, "K6 没有度数 <= 2 的顶点"
    rng = random.Random(5)
    checked = 0
    for _ in range(150):
        g = random_graph(rng, rng.choice((6, 8)), 0.55)
        for m in (1, 2):
            w = low_degree_witness(g, m)
            if w is not None:
                assert len(w.m) == m and len(w.n) == 1
                assert verify_witness(g, w.m, w.n), f"{write_graph6(g)} m={m}: {w}"
                assert not has_property_emn(g, EmnQuery(m, 1)).holds
                checked += 1
    print(f"  ✓ {checked} 个构造见证通过审计")


def test_join_counterexamples():
    print("测试11: join-counterexample(m), m = 2, 3, 4")
    for m in (2, 3, 4):
        g = join_counterexample(m)
        good = has_property_emn(g, EmnQuery(m - 1, 1))
        bad = has_property_emn(g, EmnQuery(m, 0))
        print(f"  m={m}: E({m - 1},1)={good.outcome.value}, E({m},0)={bad.outcome.value}")
        assert good.holds
        assert bad.fails and verify_witness(g, bad.witness.m, bad.witness.n)


def test_no_matching_pair():
    print("测试13: 取不出 (M, N) 时判定为 Fails")
    g = star(5)
    for q in (EmnQuery(0, 0), EmnQuery(1, 0)):
        v = has_property_emn(g, q)
        assert v.fails and v.witness is not None and verify_witness(g, v.witness.m, v.witness.n), f"{q}: {v}"
    for q in (EmnQuery(1, 1), EmnQuery(2, 0), EmnQuery(0, 2)):
        for decide in (has_property_emn, brute_force_emn):
            v = decide(g, q)
            assert v.fails, f"K1,5 {q} 不应成立 ({decide.__name__}): {v}"
            assert v.witness is None and v.reason == REASON_NO_PAIR, v
    assert has_property_emn(g, EmnQuery(1, 1)).to_json() == {
        "m": 1,
        "n": 1,
        "outcome": "Fails",
        "reason": "matching number below m+n",
    }
    assert has_property_emn(complete_bipartite(1, 3), EmnQuery(1, 0)).fails
    print("  ✓ K1,5 上 E(1,1) / E(2,0) / E(0,2) 均为 Fails")

    print("\n测试14: Holds(m,n) 蕴含 E(0,0) 与 E(m,0) 成立 (n <= 6)")
    implied = 0
    for order in range(2, 7, 2):
        for g in enumerate_connected_graphs(order):
            nu = nx_matching_number(g)
            for m in range(3):
                for k in range(3 - m):
                    if not has_property_emn(g, EmnQuery(m, k)).holds:
                        continue
                    g6 = write_graph6(g)
                    assert nu >= m + k, f"{g6} E({m},{k}) 成立但 networkx 匹配数只有 {nu}"
                    assert has_property_emn(g, EmnQuery(0, 0)).holds, f"{g6} E({m},{k}) 成立但没有完美匹配"
                    assert has_property_emn(g, EmnQuery(m, 0)).holds, f"{g6} E({m},{k}) 成立但 E({m},0) 不成立"
                    implied += 1
    print(f"  ✓ {implied} 个成立的查询满足蕴含关系")


def _oracle_equivalence(max_order: int) -> int:
    checked = 0
    for n in range(1, max_order + 1):
        for g in enumerate_connected_graphs(n):
            for m in range(4):
                for k in range(4 - m):
                    q = EmnQuery(m, k)
                    fast = has_property_emn(g, q)
                    slow = brute_force_emn(g, q)
                    assert fast.outcome is slow.outcome, f"{write_graph6(g)} {q}: {fast.outcome} vs {slow.outcome}"
                    assert fast.witness == slow.witness, f"{write_graph6(g)} {q}: 见证不同"
                    assert fast.reason == slow.reason, f"{write_graph6(g)} {q}: {fast.reason} vs {slow.reason}"
                    if fast.fails and fast.witness is not None:
                        assert verify_witness(g, fast.witness.m, fast.witness.n)
                    checked += 1
    return checked


def test_oracle_equivalence_small():
    print("测试12: blossom 判定与穷举判定一致 (n <= 6)")
    print(f"  ✓ {_oracle_equivalence(6)} 个查询一致")


def acceptance_oracle_equivalence():
    print("验收: blossom 判定与穷举判定一致 (n <= 8, m+n <= 3)")
    print(f"  ✓ {_oracle_equivalence(8)} 个查询一致")


def get_tests() -> list[RegressionTest]:
    return [
        RegressionTest(
            key="blossom",
            name="Blossom Maximum Matching",
            description="示例图及 300 个随机图对照 networkx 最大匹配。",
            check=test_max_matching,
            tags=("matching", "networkx"),
        ),
        RegressionTest(
            key="constrained-pm",
            name="Constrained Perfect Matching",
            description="强制边与禁止边下的完美匹配及非法约束。",
            check=test_constrained_perfect_matching,
            tags=("matching",),
        ),
        RegressionTest(
            key="emn-examples",
            name="E(m,n) Decisions",
            description="K4、C6、join-counterexample 的判定、NotApplicable 原因和 JSON 形式。",
            check=test_emn_examples,
            tags=("matching", "emn"),
        ),
        RegressionTest(
            key="witness-audit",
            name="Witness Audit",
            description="verify_witness 与完美匹配穷举、见证的字典序。",
            check=test_witness_audit,
            tags=("matching", "emn"),
        ),
        RegressionTest(
            key="low-degree-witness",
            name="Low-degree Witness",
            description="度数不超过 m+1 的顶点构造出的 E(m,1) 失败见证。",
            check=test_low_degree_witness,
            tags=("matching", "emn"),
        ),
        RegressionTest(
            key="join-counterexample",
            name="Join Counterexample Family",
            description="join-counterexample(m) 满足 E(m-1,1) 但不是 m-extendable。",
            check=test_join_counterexamples,
            tags=("matching", "emn"),
        ),
        RegressionTest(
            key="no-matching-pair",
            name="Graphs Without an (M, N) Pair",
            description="匹配数小于 m+n 时判定为 Fails，以及 Holds 的蕴含关系对照 networkx。",
            check=test_no_matching_pair,
            tags=("matching", "emn", "networkx"),
        ),
        RegressionTest(
            key="emn-oracle-small",
            name="Oracle Equivalence (n <= 6)",
            description="所有 n <= 6 的连通图上与穷举判定逐个比较。",
            check=test_oracle_equivalence_small,
            tags=("matching", "oracle"),
        ),
        RegressionTest(
            key="emn-oracle-acceptance",
            name="Oracle Equivalence (n <= 8)",
            description="所有 n <= 8 的连通图、m+n <= 3 的查询，与穷举判定零分歧。",
            check=acceptance_oracle_equivalence,
            tags=("matching", "oracle", ACCEPTANCE),
        ),
    ]


def main() -> int:
    return bench_main(get_tests())


if __name__ == "__main__":
    raise SystemExit(main())
