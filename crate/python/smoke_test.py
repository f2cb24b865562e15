"""Smoke test for the gradedk extension module."""

import gradedk


def main():
    a = gradedk.Algebra.matrix("Q", [[0], [1], [2], [2], [3]])
    desc, rank, orbits = a.k0()
    assert rank == 1, desc
    assert a.zero_part().k0()[2] == 4
    assert a.forget().k0()[2] == 1
    assert not a.is_strongly_graded()

    qx = gradedk.Algebra.field("Q").poly([1])
    assert gradedk.quillen(qx)["verdict"] == "pass"

    b = gradedk.Algebra.parse("poly(matrix(Q, [0, 1]), deg=[1, 0])")
    p = b.free([[0, 0], [-1, 1]])
    assert gradedk.swan(p, seed=3)["verdict"] == "pass"
    report = gradedk.filtration(p)
    assert report["verdict"] == "pass"
    assert report["data"]["jumps"] == [0, 1]
    assert p.shift([1, 0]).component_dim([-1, 0]) == p.component_dim([0, 0])

    c2 = gradedk.Algebra.matrix("Q", [[0], [1]], "Z2")
    assert gradedk.dade(c2)["verdict"] == "pass"
    assert gradedk.dade(gradedk.Algebra.matrix("Q", [[0], [1]]))["verdict"] == "hypothesis-not-met"

    reports = gradedk.run("A = matrix(Q, [0,1,2,2,3])\nk0(A)\n", field_override="fp:2")
    assert reports[0]["rhs_module"] == "free of rank 1 over Z[Z]"

    try:
        gradedk.run("k0(C)")
    except ValueError as e:
        assert "undefined name" in str(e)
    else:
        raise AssertionError("undefined name accepted")

    print("gradedk", gradedk.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
