import random
from collections import Counter
from fractions import Fraction

from emn.core.families import complete, cycle, hypercube, icosahedron, petersen
from emn.core.graph import Graph
from emn.embedding.euler import contribution, euler_contribution, euler_report, phi_bound, triangular_corner_count
from emn.embedding.rotation import (
    CombinatorialMap,
    is_orientable_map,
    mirror,
    parse_rot,
    random_map,
    switch_vertex,
    trace_faces,
    write_rot,
)
from emn.errors import RotationFormatError
from fixtures.embedded import (
    MapBuilder,
    build_c4_projective,
    build_c4_sphere,
    build_cube_planar,
    build_icosahedron_planar,
    build_k4_planar,
    build_k5_torus,
    embedded_fixtures,
    load_rot_fixture,
)
from tests.test_utils import ACCEPTANCE, RegressionTest, bench_main

FUZZ_GRAPHS = (("K4", complete(4)), ("K5", complete(5)), ("Q3", hypercube(3)), ("Petersen", petersen()))


def expect_rot_error(text: str, line: int) -> RotationFormatError:
    try:
        parse_rot(text)
    except RotationFormatError as exc:
        assert exc.line == line, f"错误应在第 {line} 行, 得到 {exc.line}: {exc}"
        return exc
    raise AssertionError(f"应拒绝:\n{text}")


def test_trace_faces():
    print("测试1: 面追踪示例")
    faces = trace_faces(build_c4_sphere().cmap)
    assert sorted(faces.sizes) == [4, 4], f"C4 应有两个 4-面, 得到 {faces.sizes}"
    faces = trace_faces(build_k4_planar().cmap)
    assert sorted(faces.sizes) == [3, 3, 3, 3], f"K4 平面嵌入应有 4 个三角形, 得到 {faces.sizes}"
    faces = trace_faces(build_k5_torus().cmap)
    assert sorted(faces.sizes) == [4] * 5, f"K5 环面嵌入应有 5 个四边形, 得到 {faces.sizes}"
    assert 5 - 10 + len(faces) == 0
    faces = trace_faces(build_cube_planar().cmap)
    assert sorted(faces.sizes) == [4] * 6
    faces = trace_faces(build_icosahedron_planar().cmap)
    assert sorted(faces.sizes) == [3] * 20
    faces = trace_faces(build_c4_projective().cmap)
    assert faces.sizes == [8], f"射影平面上的 C4 只有一个 8-面, 得到 {faces.sizes}"
    print("  ✓ C4 / K4 / K5 / Q3 / 二十面体 / 射影 C4")

    print("\n测试2: 每个 dart 恰好使用一次")
    for art in embedded_fixtures():
        faces = trace_faces(art.cmap)
        darts = Counter(d for walk in faces.faces for d in walk)
        g = art.graph
        assert sum(faces.sizes) == 2 * g.m, art.name
        assert set(darts.values()) == {1} and len(darts) == 2 * g.m, f"{art.name}: dart 重复或遗漏"
        for v in range(g.n):
            assert len(faces.corners[v]) == g.degree(v), f"{art.name}: 顶点 {v} 的角数 != 度数"
    k4_art = build_k4_planar()
    k4 = trace_faces(k4_art.cmap)
    assert k4_art.graph == complete(4)
    all_darts = sorted(d for a, b in k4_art.graph.edges for d in ((a, b), (b, a)))
    assert sorted(d for walk in k4.faces for d in walk) == all_darts, f"K4 的面: {k4.faces}"
    rng = random.Random(12)
    for i in range(60):
        name, g = FUZZ_GRAPHS[i % len(FUZZ_GRAPHS)]
        faces = trace_faces(random_map(g, rng, signed=False))
        darts = Counter(d for walk in faces.faces for d in walk)
        assert set(darts.values()) == {1} and len(darts) == 2 * g.m, f"{name}: 可定向嵌入上 dart 重复"
    assert mirror((0, 1, 1), -1) == (1, 0, 1)
    assert mirror((2, 5, -1), 1) == (5, 2, 1)

    print("\n测试3: 非法输入")
    for g in (Graph.from_edges(4, [(0, 1), (2, 3)]), Graph(1)):
        cmap = CombinatorialMap.from_rotation(g, [tuple(g.neighbors(v)) for v in range(g.n)])
        try:
            trace_faces(cmap)
        except ValueError as exc:
            print(f"  拒绝: {exc}")
        else:
            raise AssertionError(f"{g} 不应可追踪")
    try:
        CombinatorialMap.from_rotation(cycle(4), [(1, 3), (0, 2), (1, 3), (0, 2)], negative=[(0, 2)])
    except ValueError:
        pass
    else:
        raise AssertionError("负边必须是图中的边")


def test_orientability():
    print("测试4: 可定向性")
    for art in embedded_fixtures():
        assert is_orientable_map(art.cmap) == (art.surface.kind.value == "orientable"), art.name
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    cmap = CombinatorialMap.from_rotation(path, [(1,), (0, 2), (1,)], negative=[(1, 2)])
    assert is_orientable_map(cmap), "树上的负边可以切换掉"
    c4 = build_c4_sphere().cmap
    assert is_orientable_map(switch_vertex(c4, 2)), "切换后仍是全正等价类"
    two_negative = CombinatorialMap.from_rotation(c4.graph, c4.rotation, negative=[(0, 1), (2, 3)])
    assert is_orientable_map(two_negative), "偶数条负边的圈是平衡的"
    print("  ✓ 全正 / 单负边 C4 / 路径")


def test_euler_contribution():
    print("测试5: 欧拉贡献")
    assert contribution(5, (3, 3, 4, 4, 5)) == Fraction(-2, 15)
    k4 = build_k4_planar().cmap
    assert all(euler_contribution(k4, v) == Fraction(1, 2) for v in range(4))
    q3 = build_cube_planar().cmap
    assert all(euler_contribution(q3, v) == Fraction(1, 4) for v in range(8))
    ico = build_icosahedron_planar().cmap
    assert all(euler_contribution(ico, v) == Fraction(1, 6) for v in range(12))
    assert phi_bound(4) == Fraction(-1, 4) and phi_bound(7) == -1
    for bad in ((3, (3, 3)), (2, (4, 4, 4))):
        try:
            contribution(*bad)
        except ValueError:
            pass
        else:
            raise AssertionError(f"contribution{bad} 应拒绝角数不匹配")
    print("  ✓ K4=1/2, Q3=1/4, 二十面体=1/6, 直接求值 -2/15")

    print("\n测试6: 三角角计数")
    assert triangular_corner_count(k4, 0) == (3, 3)
    assert triangular_corner_count(q3, 5) == (0, 3)
    assert triangular_corner_count(build_c4_sphere().cmap, 1) == (0, 2)
    assert triangular_corner_count(ico, 11) == (5, 5)
    try:
        triangular_corner_count(k4, 4)
    except ValueError:
        pass
    else:
        raise AssertionError("越界顶点应被拒绝")


def test_euler_report():
    print("测试7: euler_report 示例")
    r = euler_report(build_k4_planar().cmap)
    assert (r.chi, r.orientable, r.genus) == (2, True, 0)
    assert set(r.phi) == {Fraction(1, 2)} and r.control_points == frozenset(range(4))

    r = euler_report(build_cube_planar().cmap)
    assert r.chi == 2 and set(r.phi) == {Fraction(1, 4)} and len(r.control_points) == 8

    r = euler_report(build_k5_torus().cmap)
    assert (r.chi, r.genus, r.surface.name) == (0, 1, "S1")
    assert r.threshold == 0 and r.control_points and sum(r.phi) == 0

    r = euler_report(build_c4_projective().cmap)
    assert (r.chi, r.orientable, r.surface.name) == (1, False, "N1"), r
    assert set(r.phi) == {Fraction(1, 4)} and r.control_points == frozenset(range(4))

    payload = euler_report(build_k4_planar().cmap).to_json()
    assert payload["surface"] == "S0" and payload["phi"] == ["1/2"] * 4 and payload["faces"] == 4
    print("  ✓ K4 / Q3 / K5 环面 / 射影 C4")


def _check_map(name: str, cmap: CombinatorialMap) -> None:
    g = cmap.graph
    faces = trace_faces(cmap)
    r = euler_report(cmap, faces)
    assert sum(faces.sizes) == 2 * g.m, name
    assert r.chi == g.n - g.m + len(faces), name
    assert sum(r.phi, Fraction(0)) == r.chi, f"{name}: Σφ = {sum(r.phi)} != χ = {r.chi}"
    assert r.control_points, f"{name}: 没有控制点"
    for v in range(g.n):
        x, y = triangular_corner_count(cmap, v, faces)
        assert 0 <= x <= y == g.degree(v)
        assert x == sum(1 for f in faces.corners[v] if f == 3)


def _fuzz(rounds: int, seed: int) -> int:
    rng = random.Random(seed)
    checked = 0
    for i in range(rounds):
        name, g = FUZZ_GRAPHS[i % len(FUZZ_GRAPHS)]
        _check_map(name, random_map(g, rng, signed=rng.random() < 0.7))
        checked += 1
    return checked


def test_euler_fuzz():
    print("测试8: 随机旋转系统与符号上的 Σφ = χ")
    print(f"  ✓ {_fuzz(400, 9)} 个随机嵌入守恒")


def acceptance_euler_fuzz():
    print("验收: 1000 个以上随机嵌入 (K4, K5, Q3, Petersen) 上 Σφ = χ 精确成立")
    print(f"  ✓ {_fuzz(1200, 2025)} 个随机嵌入守恒")


def test_switching():
    print("测试9: 顶点切换不变性")
    rng = random.Random(31)
    for i in range(200):
        name, g = FUZZ_GRAPHS[i % len(FUZZ_GRAPHS)]
        cmap = random_map(g, rng)
        v = rng.randrange(g.n)
        switched = switch_vertex(cmap, v)
        before, after = trace_faces(cmap), trace_faces(switched)
        assert Counter(before.sizes) == Counter(after.sizes), f"{name}: 切换 {v} 改变了面大小"
        assert [sorted(c) for c in before.corners] == [sorted(c) for c in after.corners]
        assert is_orientable_map(cmap) == is_orientable_map(switched)
        assert euler_report(cmap).phi == euler_report(switched).phi
        assert switch_vertex(switched, v) == cmap
    print("  ✓ 200 次切换保持面结构")


def test_rot_format():
    print("测试10: .rot 文件")
    for art in (build_k4_planar(), build_k5_torus(), build_cube_planar(), build_c4_projective()):
        loaded = load_rot_fixture(art.name)
        assert loaded == art.cmap, f"{art.name}.rot 与构造器不一致"
        assert parse_rot(write_rot(art.cmap)) == art.cmap
    text = write_rot(build_c4_projective().cmap)
    assert text.splitlines()[-1] == "sign 0 3 -1", text
    isolated = parse_rot("3 1\n0: 1\n1: 0\n2:\n")
    assert isolated.graph.n == 3 and isolated.rotation[2] == ()
    print("  ✓ 夹具与写出一致")

    print("\n测试11: 格式错误与行号")
    expect_rot_error("", 1)
    expect_rot_error("3\n", 1)
    expect_rot_error("# header next\n2 x\n", 2)
    expect_rot_error("3 2\n0: 1\n1: 0 2\n2: 0\n", 4)
    expect_rot_error("3 3\n0: 1\n1: 0 2\n2: 1\n", 1)
    expect_rot_error("2 1\n0: 1\n0: 1\n", 3)
    expect_rot_error("2 1\n0: 1 1\n1: 0\n", 2)
    expect_rot_error("2 1\n0 1\n1: 0\n", 2)
    expect_rot_error("2 1\n0: 1\n1: 0\nsign 0 1 2\n", 4)
    expect_rot_error("3 2\n0: 1\n1: 0 2\n2: 1\nsign 0 2 -1\n", 5)
    err = expect_rot_error("# c\n2 1\n0: 1\n1: 0\nsign 0 x -1\n", 5)
    print(f"  ✓ 例如: {err}")


def test_map_builder():
    print("测试12: MapBuilder")
    b = MapBuilder()
    b.vertex("a")
    b.vertex("b")
    try:
        b.vertex("a")
    except ValueError:
        pass
    else:
        raise AssertionError("重复顶点应被拒绝")
    b.rotation("a", ["b"])
    b.rotation("b", ["a"])
    cmap = b.finalize()
    assert cmap.graph.edges == ((0, 1),) and b.finalize() is cmap
    assert b.index_of("b") == 1
    try:
        b.vertex("c")
    except RuntimeError:
        pass
    else:
        raise AssertionError("finalize 之后不可修改")

    b = MapBuilder()
    for name in "xyz":
        b.vertex(name)
    b.rotation("x", ["y", "z"])
    b.rotation("y", ["x"])
    b.rotation("z", ["y"])
    try:
        b.finalize()
    except ValueError as exc:
        print(f"  拒绝不对称旋转: {exc}")
    else:
        raise AssertionError("不对称旋转应被拒绝")

    ico = build_icosahedron_planar()
    assert ico.graph == icosahedron(), "夹具与 icosahedron() 同一套标号"
    assert ico.labels == {str(v): v for v in range(12)}
    assert euler_report(ico.cmap).control_points == frozenset(range(12))


def get_tests() -> list[RegressionTest]:
    return [
        RegressionTest(
            key="face-tracing",
            name="Face Tracing",
            description="C4、K4、K5 环面、Q3、二十面体和射影 C4 的面结构，dart 覆盖。",
            check=test_trace_faces,
            tags=("embedding",),
        ),
        RegressionTest(
            key="orientability",
            name="Map Orientability",
            description="符号的切换等价与可定向性判定。",
            check=test_orientability,
            tags=("embedding",),
        ),
        RegressionTest(
            key="euler-contribution",
            name="Euler Contributions",
            description="欧拉贡献的精确有理值和三角角计数。",
            check=test_euler_contribution,
            tags=("embedding", "euler"),
        ),
        RegressionTest(
            key="euler-report",
            name="Euler Report",
            description="χ、亏格、控制点与 JSON 形式。",
            check=test_euler_report,
            tags=("embedding", "euler"),
        ),
        RegressionTest(
            key="euler-fuzz",
            name="Euler Conservation Fuzz",
            description="随机旋转系统与符号上 Σφ = χ 且控制点非空。",
            check=test_euler_fuzz,
            tags=("embedding", "fuzz"),
        ),
        RegressionTest(
            key="euler-fuzz-acceptance",
            name="Euler Conservation (1200 maps)",
            description="K4、K5、Q3、Petersen 上 1200 个随机嵌入的精确守恒。",
            check=acceptance_euler_fuzz,
            tags=("embedding", "fuzz", ACCEPTANCE),
        ),
        RegressionTest(
            key="switching",
            name="Switching Invariance",
            description="切换顶点不改变面大小、角和可定向性。",
            check=test_switching,
            tags=("embedding", "fuzz"),
        ),
        RegressionTest(
            key="rot-format",
            name=".rot Format",
            description="夹具文件、写出和带行号的格式错误。",
            check=test_rot_format,
            tags=("embedding", "io"),
        ),
        RegressionTest(
            key="map-builder",
            name="Map Builder",
            description="命名顶点的构造器、对称性检查和冻结。",
            check=test_map_builder,
            tags=("embedding", "fixtures"),
        ),
    ]


def main() -> int:
    return bench_main(get_tests())


if __name__ == "__main__":
    raise SystemExit(main())
