"""Document parsing, serialization round-trips, CLI contract, cache."""

import json
import os
import subprocess
import sys

import pytest

from helpers import fixture_path
from hodgepath import (FreeCdga, betti_numbers, build_dga, build_homorphism,
                       build_mhd, check_cdga, dga_doc, element_expr,
                       load_document, parse_document, serialize)
from hodgepath.documents import DocumentError
from hodgepath.exprs import ExprError, parse_expression, tokenize

PKG_ROOT = os.path.join(os.path.dirname(__file__), "..")


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env["PYTHONPATH"] = os.path.join(PKG_ROOT, "src")
    env.pop("HODGEPATH_CACHE", None)
    if env_extra:
        env.update(env_extra)
    out = subprocess.run([sys.executable, "-m", "hodgepath.cli", *args],
                         capture_output=True, text=True, env=env, cwd=PKG_ROOT)
    return out


def read_fixture(name):
    with open(fixture_path(name), "r", encoding="utf-8") as fh:
        return load_document(fh.read())


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------

def test_expression_grammar():
    A = FreeCdga.__new__(FreeCdga)  # not needed; use a real algebra below
    from helpers import ms2
    M = ms2()
    assert M.parse("1/2*e2^2 + e2*e2") == M.parse("3/2*e2*e2")
    assert M.parse("e2 - e2").is_zero
    assert M.parse("2*(e2 + e2)") == M.parse("4*e2")
    with pytest.raises(ExprError):
        M.parse("e2 +")
    with pytest.raises(ExprError):
        M.parse("3/")
    with pytest.raises(ExprError):
        M.parse("e2 ^ x")


def test_element_expr_roundtrip():
    from helpers import ms2
    M = ms2()
    x = M.parse("3/2*e2^2 - e3")
    assert M.parse(element_expr(x)) == x


def test_dga_document_roundtrip():
    doc = read_fixture("ms2_free.json")
    A = build_dga(doc)
    assert check_cdga(A).ok
    again = dga_doc(A, name=doc.get("name"))
    B = build_dga(json.loads(serialize(again)))
    assert betti_numbers(B, 5) == betti_numbers(A, 5)
    # serialize(parse(x)) is canonical: serializing twice is a fixed point
    assert serialize(again) == serialize(json.loads(serialize(again)))


def test_duplicate_generator_rejected():
    doc = read_fixture("ms2_free.json")
    doc["generators"].append(dict(doc["generators"][0]))
    with pytest.raises(DocumentError) as ei:
        build_dga(doc)
    assert "duplicate generator" in str(ei.value)
    assert "generators[2]" in str(ei.value)


def test_unknown_field_rejected_with_path():
    doc = read_fixture("s2.json")
    doc["surprise"] = 1
    with pytest.raises(DocumentError) as ei:
        build_dga(doc)
    assert "surprise" in str(ei.value)


def test_syntax_error_located():
    with pytest.raises(DocumentError) as ei:
        load_document("{\n  \"kind\": oops\n}")
    assert "line 2" in str(ei.value)


def test_parse_document_dispatch():
    assert parse_document(read_fixture("s2.json")).name == "H(S2)"
    assert parse_document(read_fixture("p1toy.json")).diagram.name == "P1-toy"
    f = parse_document(read_fixture("example41.json"))
    assert f.name == "square-up-to-homotopy"
    with pytest.raises(DocumentError):
        parse_document({"schema": 1, "kind": "nope"})


def test_normalized_expression_in_differential():
    doc = read_fixture("ms2_free.json")
    doc["generators"][1]["d"] = "1/2*e2^2 + e2*e2"
    A = build_dga(doc)
    assert A.differential_of("e3") == A.parse("3/2*e2^2")


# ---------------------------------------------------------------------------
# CLI exit codes and determinism
# ---------------------------------------------------------------------------

def test_fixtures_match_shipped_schemas():
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DeprecationWarning)
        _schema_roundtrip()


def _schema_roundtrip():
    import jsonschema
    from jsonschema import RefResolver
    schema_dir = os.path.join(PKG_ROOT, "schemas")

    def load_schema(name):
        with open(os.path.join(schema_dir, name)) as fh:
            return json.load(fh)

    store = {nm: load_schema(nm) for nm in os.listdir(schema_dir)}
    by_kind = {"dga": "dga.json", "diagram": "diagram.json", "mhd": "mhd.json",
               "homorphism": "homorphism.json", "homotopy": "homotopy.json"}
    checked = 0
    from helpers import FIXDIR
    for name in sorted(os.listdir(FIXDIR)):
        if not name.endswith(".json"):
            continue
        doc = read_fixture(name)
        schema_name = by_kind[doc["kind"]]
        schema = load_schema(schema_name)
        resolver = RefResolver(base_uri=schema_name, referrer=schema, store=store)
        jsonschema.validate(doc, schema, resolver=resolver)
        checked += 1
    assert checked >= 10


def test_cli_exit_codes():
    ok = run_cli("check", fixture_path("s2.json"))
    assert ok.returncode == 0
    usage = run_cli("check", fixture_path("does_not_exist.json"))
    assert usage.returncode == 2
    bad_args = run_cli("not-a-command")
    assert bad_args.returncode == 2
    fail = run_cli("mhd-check", fixture_path("p1toy_bad_hodge.json"),
                   "--max-degree", "4")
    assert fail.returncode == 1
    missing_degree = run_cli("minimal-model", fixture_path("s2.json"))
    assert missing_degree.returncode == 2


def test_cli_reports_are_deterministic():
    commands = [
        ("check", fixture_path("s2.json")),
        ("cohomology", fixture_path("ms2_free.json")),
        ("minimal-model", fixture_path("s2.json"), "--max-degree", "6"),
        ("spectral", fixture_path("two_term_w.json"), "--page", "1",
         "--max-degree", "2"),
        ("mhd-check", fixture_path("p1toy.json"), "--max-degree", "4"),
        ("rectify", fixture_path("example41.json")),
    ]
    for cmd in commands:
        a = run_cli(*cmd)
        b = run_cli(*cmd)
        assert a.returncode == b.returncode
        assert a.stdout == b.stdout, f"nondeterministic output for {cmd}"


def test_cli_check_all_kinds():
    for name, code in (("s2.json", 0), ("p1toy.json", 0), ("example41.json", 0),
                       ("homotopy_const.json", 0)):
        out = run_cli("check", fixture_path(name))
        assert out.returncode == code, (name, out.stderr)
    rect = run_cli("rectify", fixture_path("example41.json"))
    tmp = fixture_path("_tmp_rectified.json")
    with open(tmp, "w") as fh:
        fh.write(rect.stdout)
    try:
        out = run_cli("check", tmp)
        assert out.returncode == 0
    finally:
        os.unlink(tmp)


def test_mapping_path_cli():
    out = run_cli("mapping-path", fixture_path("example41.json"))
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["ok"] and doc["contraction_ok"]
    assert doc["vertices"]["0"]["q_endpoint"] == 0
    assert doc["vertices"]["1"]["q_endpoint"] == 1


def test_mapping_path_cli_single_vertex():
    out = run_cli("mapping-path", fixture_path("rho_single_vertex.json"))
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    v = doc["vertices"]["0"]
    assert v["p_surjective"] and v["p_quasi_iso"]
    assert v["f_quasi_iso"] and v["q_quasi_iso"]


def test_cli_table_format():
    out = run_cli("check", fixture_path("s2.json"), "--format", "table")
    assert out.returncode == 0
    assert "ok = True" in out.stdout


def test_minimal_model_output_parses_and_cache_transparent(tmp_path):
    plain = run_cli("minimal-model", fixture_path("s2.json"), "--max-degree", "6")
    assert plain.returncode == 0
    doc = json.loads(plain.stdout)
    M = build_dga(doc)
    assert [g.degree for g in M.gens] == [2, 3]
    assert doc["annotations"]["q_dims"] == {"2": 1, "3": 1}
    cache_dir = str(tmp_path / "cache")
    first = run_cli("minimal-model", fixture_path("s2.json"), "--max-degree", "6",
                    env_extra={"HODGEPATH_CACHE": cache_dir})
    second = run_cli("minimal-model", fixture_path("s2.json"), "--max-degree", "6",
                     env_extra={"HODGEPATH_CACHE": cache_dir})
    assert first.stdout == second.stdout == plain.stdout
    assert os.listdir(cache_dir)  # the cache was actually used


def test_wedge_model_via_cli():
    out = run_cli("minimal-model", fixture_path("s2_wedge_s5.json"),
                  "--max-degree", "6")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["annotations"]["q_dims"] == {"2": 1, "3": 1, "5": 1}
    assert len(doc["generators"]) == 3


def test_cp2_homotopy_groups_cli():
    out = run_cli("homotopy-groups", fixture_path("cp2.json"), "--max-degree", "6")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["dims"] == {"2": 1, "5": 1}


def test_pi_star_cli():
    out = run_cli("pi-star", "--mhd", fixture_path("p1toy.json"),
                  "--model", fixture_path("p1toy_model.json"),
                  "--comparison", fixture_path("p1toy_comparison.json"),
                  "--max-degree", "4")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["degrees"]["2"]["types"] == {"(1,1)": 1}


def test_rectify_cli_revalidates():
    out = run_cli("rectify", fixture_path("example41.json"))
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    from hodgepath import build_diagram, validate_diagram
    D = build_diagram(doc)
    assert validate_diagram(D).ok


def test_compose_ho_cli():
    out = run_cli("compose-ho", fixture_path("example41.json"),
                  fixture_path("example41_g.json"))
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["ok"]
    assert doc["maps"]["0"] == {"a1": "c1"}


def test_homotopy_verify_cli_failure_path():
    with open(fixture_path("homotopy_const.json")) as fh:
        doc = json.load(fh)
    doc["g"] = {"c2": "2*e2"}  # endpoints no longer match
    bad_path = fixture_path("_tmp_bad_homotopy.json")
    with open(bad_path, "w") as fh:
        json.dump(doc, fh)
    try:
        out = run_cli("homotopy-verify", bad_path)
        assert out.returncode == 1
        rep = json.loads(out.stdout)
        assert any("endpoint" in f["check"] for f in rep["failures"])
    finally:
        os.unlink(bad_path)
