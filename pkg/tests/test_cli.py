"""Document parsing, command output, exit codes, and the golden corpus."""

import json
import os

from gspans.cli import main, parse_document

CORPUS = os.path.join(os.path.dirname(__file__), "..", "corpus")


def doc_path(name):
    return os.path.join(CORPUS, name)


def test_validate_ok(capsys):
    assert main(["validate", doc_path("bz2_identity.json")]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["validate", doc_path("point_span.json")]) == 0


def test_validate_dangling_name(capsys):
    assert main(["validate", doc_path("bad_dangling.json")]) == 2
    err = capsys.readouterr().err
    assert "unresolved name" in err or "nowhere" in err


def test_validate_nonnatural_eps(capsys):
    assert main(["validate", doc_path("bad_eps.json")]) == 2
    err = capsys.readouterr().err
    assert "natural" in err


def test_euler_coset(capsys):
    assert main(["euler", doc_path("coset_z6.json"), "--name", "HG3"]) == 0
    assert capsys.readouterr().out.strip() == "1/3"
    assert main(["euler", doc_path("coset_z6.json"), "--name", "HG2"]) == 0
    assert capsys.readouterr().out.strip() == "1/2"


def test_euler_disjoint_union(capsys):
    # chi is additive: 2 points + BZ6 -> 2 + 1/6
    assert main(["euler", doc_path("coset_z6.json"), "--name", "both"]) == 0
    assert capsys.readouterr().out.strip() == "13/6"


def test_euler_action_builder(capsys):
    # Z2 swaps two of three points: chi = |X|/|G| = 3/2
    assert main(["euler", doc_path("coset_z6.json"), "--name", "swap"]) == 0
    assert capsys.readouterr().out.strip() == "3/2"


def test_euler_builders(capsys):
    assert main(["euler", doc_path("point_span.json"), "--name", "pull"]) == 0
    capsys.readouterr()
    assert main(["euler", doc_path("point_span.json"), "--name", "fib"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_matrix_identity_span(capsys):
    assert main(["matrix", doc_path("bz2_identity.json"), "--span", "ident"]) == 0
    assert capsys.readouterr().out.strip() == "1/2*g(0) + 1/2*g(1)"


def test_matrix_point_span(capsys):
    assert main(["matrix", doc_path("point_span.json"), "--span", "unit"]) == 0
    assert capsys.readouterr().out.strip() == "1*g(1)"
    assert (
        main(
            [
                "matrix",
                doc_path("point_span.json"),
                "--span",
                "unit",
                "--character",
                "rho",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out.strip()
    assert out.startswith("1*z^1")  # zeta_4 = i
    assert "+1.000000000000i" in out


def test_matrix_json(capsys):
    assert (
        main(["matrix", doc_path("bz2_identity.json"), "--span", "ident", "--json"])
        == 0
    )
    data = json.loads(capsys.readouterr().out)
    assert data["entries"] == [["1/2*g(0) + 1/2*g(1)"]]


def test_compose_roundtrip(capsys):
    assert (
        main(
            [
                "compose",
                doc_path("point_span.json"),
                "--left",
                "unit",
                "--right",
                "unit",
                "--out",
                "sq",
            ]
        )
        == 0
    )
    out = capsys.readouterr().out
    doc = parse_document(out)
    assert "sq" in doc.spans
    from gspans.gspan import span_matrix

    m = span_matrix(doc.spans["sq"])
    # (1) * (1) = (2) additively in Z4
    assert m.entries[0][0].support() == [(2,)]


def test_document_roundtrip_serialize():
    with open(doc_path("point_span.json")) as f:
        text = f.read()
    doc = parse_document(text)
    again = parse_document(doc.serialize())
    assert again.data == doc.data
    assert doc.serialize() == again.serialize()


def test_check_passes(capsys):
    assert main(["check", "--which", "main", "--seed", "5", "--trials", "4"]) == 0
    out = capsys.readouterr().out
    assert "pass main" in out


def test_check_all_passes(capsys):
    assert main(["check", "--seed", "3", "--trials", "2"]) == 0
    out = capsys.readouterr().out
    for which in ("main", "restrict", "phi*", "interchange", "lemma-chi"):
        assert "pass %s" % which in out


def test_check_with_doc_spans(capsys):
    assert (
        main(
            [
                "check",
                doc_path("bz2_identity.json"),
                "--which",
                "restrict",
                "--trials",
                "3",
            ]
        )
        == 0
    )
    assert "pass restrict" in capsys.readouterr().out


def test_example_stirling_golden(capsys):
    assert main(["example", "stirling", "--n", "3", "--character", "sign"]) == 0
    out = capsys.readouterr().out
    with open(doc_path("stirling_n3_sign.golden")) as f:
        assert out == f.read()


def test_example_stirling_n4_golden(capsys):
    assert main(["example", "stirling", "--n", "4", "--character", "sign"]) == 0
    out = capsys.readouterr().out
    with open(doc_path("stirling_n4_sign.golden")) as f:
        assert out == f.read()


def test_example_stirling_json(capsys):
    assert (
        main(["example", "stirling", "--n", "2", "--character", "sign", "--json"])
        == 0
    )
    data = json.loads(capsys.readouterr().out)
    assert data["product_is_identity"] is True
    assert data["first"] == [["1", "0", "0"], ["0", "1", "0"], ["0", "-1", "1"]]


def test_example_stirling_groupring(capsys):
    assert main(["example", "stirling", "--n", "2"]) == 0
    out = capsys.readouterr().out
    with open(doc_path("stirling_n2_qg.golden")) as f:
        assert out == f.read()


def test_cell_parses():
    with open(doc_path("point_span.json")) as f:
        doc = parse_document(f.read())
    assert "id_cell" in doc.cells


def test_determinism(capsys):
    main(["matrix", doc_path("bz2_identity.json"), "--span", "ident"])
    first = capsys.readouterr().out
    main(["matrix", doc_path("bz2_identity.json"), "--span", "ident"])
    assert capsys.readouterr().out == first
