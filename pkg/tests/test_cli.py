"""Command-line interface: files written, stdout contracts, exit codes."""
from __future__ import annotations

import pytest

from zfnets.cli import main
from zfnets.constructions import build_g1, build_g1_bar, build_g2_bar
from zfnets.graph import from_edge_list_text, to_edge_list_text
from zfnets.robustness import spectrum


def run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def write_graph(tmp_path, graph, name="g.edges"):
    path = tmp_path / name
    path.write_text(to_edge_list_text(graph))
    return path


def test_construct_writes_all_formats(tmp_path, capsys):
    out = tmp_path / "net"
    code, text = run(
        capsys,
        "construct", "--family", "g1bar", "--nodes", "12", "--leaders", "3",
        "--diameter", "4", "--out", str(out), "--format", "all",
    )
    assert code == 0
    assert "family=g1bar" in text and "edges=30" in text and "diameter=4" in text
    edges = (tmp_path / "net.edges").read_text()
    parsed = from_edge_list_text(edges)
    assert parsed == build_g1_bar(12, 3, 4).graph
    dot = (tmp_path / "net.dot").read_text()
    assert dot.startswith("graph ") and "0 -- 3" in dot
    layout = (tmp_path / "net.layout").read_text()
    assert "0 L1" in layout and "11 u_3,3" in layout


def test_construct_is_byte_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "construct", "--family", "g3bar", "--nodes", "12", "--leaders", "3",
        "--diameter", "3", "--out", str(a), "--format", "all")
    run(capsys, "construct", "--family", "g3bar", "--nodes", "12", "--leaders", "3",
        "--diameter", "3", "--out", str(b), "--format", "all")
    for ext in (".edges", ".dot", ".layout"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()


def test_construct_format_choices(tmp_path, capsys):
    out = tmp_path / "only"
    code, _ = run(capsys, "construct", "--family", "g2bar", "--nodes", "8",
                  "--leaders", "2", "--out", str(out), "--format", "dot")
    assert code == 0
    assert (tmp_path / "only.dot").exists()
    assert not (tmp_path / "only.edges").exists()


def test_construct_from_config_file(tmp_path, capsys):
    cfg = tmp_path / "net.cfg"
    cfg.write_text("family = g2bar\nn = 10\nnl = 2\n")
    out = tmp_path / "net"
    code, text = run(capsys, "construct", "--config", str(cfg), "--out", str(out))
    assert code == 0 and "family=g2bar" in text and "n=10" in text


def test_construct_infeasible_exits_2(tmp_path, capsys):
    code, _ = run(capsys, "construct", "--family", "g1bar", "--nodes", "13",
                  "--leaders", "3", "--diameter", "4", "--out", str(tmp_path / "x"))
    assert code == 2
    err = capsys.readouterr()  # message goes to stderr via the error path
    assert not (tmp_path / "x.edges").exists()


def test_construct_honors_out_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ZFNETS_OUT_DIR", str(tmp_path))
    code, _ = run(capsys, "construct", "--family", "g2bar", "--nodes", "8",
                  "--leaders", "2", "--format", "edgelist")
    assert code == 0
    assert (tmp_path / "g2bar_n8_nl2_d2.edges").exists()


def test_verify_passing_network(tmp_path, capsys):
    path = write_graph(tmp_path, build_g1_bar(12, 3, 4).graph)
    code, text = run(capsys, "verify", "--graph", str(path), "--leaders", "0,1,2")
    assert code == 0
    assert "zfs: yes" in text
    assert "unique-process: yes" in text
    assert "maximal: yes" in text


def test_verify_non_forcing_leaders_exit_3(tmp_path, capsys):
    path = write_graph(tmp_path, from_edge_list_text("0 1\n1 2\n"))
    code, text = run(capsys, "verify", "--graph", str(path), "--leaders", "1")
    assert code == 3
    assert "zfs: no" in text
    assert "maximal: n/a" in text


def test_verify_reports_missing_edges(tmp_path, capsys):
    # the bare layered skeleton forces fine but admits many more edges
    path = write_graph(tmp_path, build_g1(12, 3, 4).graph)
    code, text = run(capsys, "verify", "--graph", str(path), "--leaders", "0,1,2")
    assert code == 3
    assert "zfs: yes" in text and "maximal: no" in text
    assert "violation:" in text


def test_spectrum_matches_library(tmp_path, capsys):
    g = build_g2_bar(12, 3).graph
    path = write_graph(tmp_path, g)
    code, text = run(capsys, "spectrum", "--graph", str(path), "--eigenvalues")
    assert code == 0
    rep = spectrum(g)
    assert f"lambda2: {rep.lambda2:.9g}" in text
    assert f"kirchhoff: {rep.kirchhoff:.9g}" in text
    assert "eigenvalues:" in text and "n: 12" in text and "edges: 30" in text


def test_sweep_writes_csv(tmp_path, capsys):
    out = tmp_path / "table.csv"
    code, text = run(capsys, "sweep", "--nodes", "12", "--leaders", "2-4",
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "family,N,NL,D,edges,lambda2,kirchhoff"
    # nl=4 divides 12; only the g1bar nl=... none are infeasible except none
    rows = [ln.split(",") for ln in lines[1:]]
    assert all(r[1] == "12" for r in rows)
    assert {r[0] for r in rows} == {"g1bar", "g2bar", "g3bar"}
    # infeasible notes (none for 2-4 at N=12, all divide); now check one that skips
    code2, text2 = run(capsys, "sweep", "--nodes", "12", "--leaders", "5",
                       "--out", str(tmp_path / "t2.csv"))
    assert code2 == 0 and "skip" in text2


def test_sweep_default_filename(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ZFNETS_OUT_DIR", str(tmp_path))
    code, _ = run(capsys, "sweep", "--nodes", "12", "--leaders", "2,3")
    assert code == 0
    assert (tmp_path / "sweep_n12.csv").exists()


def test_grammar_run_matches_construction(tmp_path, capsys):
    out = tmp_path / "run"
    frames = tmp_path / "frames"
    code, text = run(
        capsys,
        "grammar", "--rules", "r1", "--nodes", "12", "--leaders", "3",
        "--diameter", "4", "--seed", "7", "--out", str(out),
        "--frames", str(frames),
    )
    assert code == 0
    assert "steps: 34" in text and "edges: 30" in text
    assert "matches construction: yes" in text
    trace = (tmp_path / "run.trace").read_text()
    assert trace.splitlines()[0].startswith("STEP 1 RULE ")
    assert (tmp_path / "run.dot").exists()
    frame_files = sorted(p.name for p in frames.iterdir())
    assert frame_files[0] == "step_0000.dot"
    assert len(frame_files) == 35  # initial frame plus one per step


def test_grammar_r2_and_narrow_variant(tmp_path, capsys):
    code, text = run(capsys, "grammar", "--rules", "r2", "--nodes", "12",
                     "--leaders", "3", "--out", str(tmp_path / "a"))
    assert code == 0 and "matches construction: yes" in text
    code, text = run(capsys, "grammar", "--rules", "r2", "--nodes", "12",
                     "--leaders", "3", "--r6-same-index",
                     "--out", str(tmp_path / "b"))
    assert code == 3
    assert "edges: 14" in text and "matches construction: no" in text


def test_grammar_pi2_priority(tmp_path, capsys):
    code, text = run(capsys, "grammar", "--rules", "r1", "--nodes", "12",
                     "--leaders", "3", "--diameter", "4", "--prefer-pi2",
                     "--out", str(tmp_path / "p"))
    assert code == 0 and "matches construction: yes" in text


def test_grammar_r1_requires_consistent_shape(tmp_path, capsys):
    code, _ = run(capsys, "grammar", "--rules", "r1", "--nodes", "12",
                  "--leaders", "3", "--diameter", "5",
                  "--out", str(tmp_path / "x"))
    assert code == 2


def test_oracle_summary_and_csv(tmp_path, capsys):
    path = write_graph(tmp_path, build_g2_bar(10, 2).graph)
    out = tmp_path / "trials.csv"
    code, text = run(capsys, "oracle", "--graph", str(path), "--leaders", "0,1",
                     "--trials", "20", "--seed", "3", "--out", str(out))
    assert code == 0
    assert "20" in text and "controllable" in text
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "trial,seed,rank,verdict"
    assert len(lines) == 21


def test_no_arguments_shows_usage(capsys):
    code = main([])
    captured = capsys.readouterr()
    assert code == 2
    assert "usage" in (captured.out + captured.err).lower()


def test_leader_list_parsing_errors(tmp_path, capsys):
    path = write_graph(tmp_path, build_g2_bar(8, 2).graph)
    code, _ = run(capsys, "verify", "--graph", str(path), "--leaders", "0,notanid")
    assert code == 2
