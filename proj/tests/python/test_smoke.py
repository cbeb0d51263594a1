import pytest

import sigcube

G0_VERTICES = "id,Gender,City\n1,M,NY\n2,F,NY\n3,M,NY\n4,F,LA\n5,M,LA\n6,F,LA\n"
G0_EDGES = "1,2\n1,3\n2,3\n3,4\n4,5\n5,6\n"


@pytest.fixture
def g0():
    return sigcube.parse_graph(G0_VERTICES, G0_EDGES)


def test_graph_basics(g0):
    assert g0.dims == ["Gender", "City"]
    assert g0.vertex_count == 6
    assert g0.edge_count == 6
    assert g0.neighbors(3) == [1, 2, 4]
    assert g0.posting("City", "NY") == [1, 2, 3]
    with pytest.raises(sigcube.LookupError):
        g0.neighbors(99)


def test_load_round_trip(g0, tmp_path):
    g0.write(tmp_path / "v.csv", tmp_path / "e.csv")
    assert sigcube.load_graph(tmp_path / "v.csv", tmp_path / "e.csv") == g0
    with pytest.raises(sigcube.LoadError):
        sigcube.load_graph(tmp_path / "v.csv", tmp_path / "missing.csv")


def test_scores_and_significance(g0):
    s = sigcube.vertex_score(g0, 1)
    assert s == {"alpha": 0.75, "cc": 1.0, "density": 1.0, "score": 1.75}
    rows = {(d, v): (ss, keep) for d, v, ss, _, keep in sigcube.significance(g0)}
    assert rows[("Gender", "M")][0] == pytest.approx(119 / 36, abs=1e-12)
    assert rows[("Gender", "F")][0] == pytest.approx(19 / 6, abs=1e-12)
    assert rows[("Gender", "M")][1] and not rows[("Gender", "F")][1]
    assert all(r[4] for r in sigcube.significance(g0, "support", 3))
    assert sigcube.significance_csv(g0).splitlines()[1] == "Gender,F,3.16666666667,3,false"


def test_cube_query(g0, tmp_path):
    cube = sigcube.build_cube(g0, strategy="level", policy="none")
    assert cube.cuboid_count == 3
    gender = cube.query(["Gender"])
    assert gender["self_edges"] == {"M": 1}
    assert gender["cross_edges"] == {("F", "M"): 5}
    gc = cube.query(["City", "Gender"])
    assert gc["nodes"] == {"M|NY": [1, 3], "F|NY": [2], "M|LA": [5], "F|LA": [4, 6]}
    with pytest.raises(sigcube.QueryError, match="unknown dimension Bogus"):
        cube.query(["Bogus"])

    cube.write(tmp_path / "cube")
    assert sigcube.read_cuboid(tmp_path / "cube", ["Gender", "City"]) == gc

    low = sigcube.build_cube(g0, max_level=1)
    with pytest.raises(sigcube.NotMaterializedError):
        low.query(["Gender", "City"])
    with pytest.raises(sigcube.ParamError):
        sigcube.build_cube(g0, max_level=3)


def test_engine_matches_oracle():
    g = sigcube.generate(80, 200, dims=4, card=3, seed=5)
    truth = sigcube.oracle_cube(g)
    steps = sigcube.build_cube(g, strategy="steps", policy="none", threads=2)
    level = sigcube.build_cube(g, strategy="level", policy="none")
    assert sigcube.diff_size(truth, steps) == 0
    assert sigcube.diff_size(truth, level) == 0
    assert steps.combines_attempted < level.combines_attempted


def test_bench_and_generator():
    g = sigcube.generate(1000, 5000, dims=3, card=10, seed=9, hub=0.05)
    assert len(g.posting("d1", "hub")) == 50
    rows = sigcube.bench(sigcube.generate(60, 120, dims=3, card=3, seed=2), repeats=2)
    assert [r[0] for r in rows] == ["level", "steps", "level", "steps"]
    assert all(r[3] > 0 for r in rows)
    with pytest.raises(sigcube.ParamError):
        sigcube.generate(10, 100)
