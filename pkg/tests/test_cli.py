import json
from importlib import resources

from maxsub.cli import run

G2_RING = str(resources.files("maxsub").joinpath("presets", "g2-rank2.ring"))


def test_count_g2_golden(capsys):
    assert run(["count", "--preset", "g2-rank2"]) == 0
    out = capsys.readouterr()
    assert out.out == "m_2 = (1/48)*n^5 + (1/24)*n^3\n"
    assert out.err == ""


def test_count_jacobian_golden(capsys):
    assert run(["count", "--preset", "jacobian", "--genus", "2"]) == 0
    assert capsys.readouterr().out == "m_1 = n^2\n"
    assert run(["count", "--preset", "jacobian", "--genus", "3"]) == 0
    assert capsys.readouterr().out == "m_1 = n^3\n"


def test_count_is_byte_stable(capsys):
    run(["count", "--preset", "g2-rank2"])
    first = capsys.readouterr().out
    run(["count", "--preset", "g2-rank2"])
    assert capsys.readouterr().out == first


def test_count_verbose(capsys):
    assert run(["count", "--preset", "g2-rank2", "--verbose"]) == 0
    out = capsys.readouterr().out
    assert "covering degree = 16" in out
    assert "integral over base = (1/3)*n^5 + (2/3)*n^3" in out
    assert "ch_4(sections) = -(1/12)*n*alpha^3*theta" in out
    assert out.endswith("m_2 = (1/48)*n^5 + (1/24)*n^3\n")


def test_count_record(capsys):
    assert run(["count", "--preset", "g2-rank2", "--format", "record"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["count"]["terms"] == {"n^5": "1/48", "n^3": "1/24"}
    assert record["preset"] == "g2-rank2"


def test_reduce(capsys):
    assert run(["reduce", "--ring", G2_RING, "xi1^2 + 2*theta*f"]) == 0
    assert capsys.readouterr().out == "0\n"
    assert run(["reduce", "--ring", G2_RING, "(alpha + f)^2"]) == 0
    assert capsys.readouterr().out == "alpha^2 + 2*alpha*f\n"
    assert run(["reduce", "--ring", G2_RING, "1"]) == 0
    assert capsys.readouterr().out == "1\n"


def test_integrate(capsys):
    assert run(["integrate", "--ring", G2_RING, "alpha^3*theta^2"]) == 0
    assert capsys.readouterr().out == "8\n"
    assert run(["integrate", "--ring", G2_RING, "theta*Lambda^2"]) == 0
    assert capsys.readouterr().out == "4\n"


def test_parse_error_exits_2(capsys):
    assert run(["reduce", "--ring", G2_RING, "alpha +* 2"]) == 2
    out = capsys.readouterr()
    assert out.out == ""
    assert "line 1" in out.err


def test_usage_error_exits_2(capsys):
    assert run(["count", "--preset", "not-a-preset"]) == 2
    assert run(["count"]) == 2
    assert run([]) == 2
    capsys.readouterr()


def test_domain_error_exits_1(capsys):
    assert run(["integrate", "--ring", G2_RING, "alpha^2*theta^2*f"]) == 1
    err = capsys.readouterr().err
    assert "pushforward" in err
    assert run(["count", "--preset", "jacobian", "--genus", "1"]) == 1
    capsys.readouterr()


def test_missing_ring_file_exits_1(capsys):
    assert run(["reduce", "--ring", "/does/not/exist.ring", "1"]) == 1
    capsys.readouterr()


def test_unknown_name_exits_1(capsys):
    assert run(["reduce", "--ring", G2_RING, "alpha + sigma"]) == 1
    assert "sigma" in capsys.readouterr().err


def test_formulas_commands(capsys):
    assert run(["formulas", "s-invariant", "--n", "6", "--d", "7", "--n-sub", "3", "--d-sub", "2"]) == 0
    assert capsys.readouterr().out == "9\n"
    assert run(["formulas", "hirschowitz-smax", "--n", "4", "--n-sub", "2", "--d", "4", "--g", "2"]) == 0
    assert capsys.readouterr().out == "4\n"
    assert run(["formulas", "stratum-dim", "--n", "2", "--n-sub", "1", "--d", "3", "--g", "2", "--s", "1"]) == 0
    assert capsys.readouterr().out == "5\n"
    assert run(["formulas", "quot-dim", "--sub-rank", "1", "--sub-deg", "1", "--rank", "2", "--deg", "1", "--g", "2"]) == 0
    assert capsys.readouterr().out == "-2\n"
    assert run(["formulas", "m1", "--n", "3", "--g", "4"]) == 0
    assert capsys.readouterr().out == "81\n"
    assert run(["formulas", "m2", "--n", "4"]) == 0
    assert capsys.readouterr().out == "24\n"
    assert run(["formulas", "m2", "--n", "2"]) == 0
    assert capsys.readouterr().out == "1 (inadmissible: requires even n >= 4)\n"


def test_formulas_domain_error(capsys):
    assert run(["formulas", "stratum-dim", "--n", "4", "--n-sub", "2", "--d", "4", "--g", "2", "--s", "3"]) == 1
    assert "empty stratum" in capsys.readouterr().err


def test_check_command(capsys):
    assert run(["check", "--preset", "g2-rank2"]) == 0
    out = capsys.readouterr().out
    assert out.count("ok:") == 5
    assert "FAIL" not in out
    assert run(["check", "--preset", "jacobian", "--genus", "4"]) == 0
    capsys.readouterr()
