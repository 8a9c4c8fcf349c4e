import json
import subprocess

from netgap.cli import EXIT_BUDGET, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_psi_command(capsys):
    code, out, _ = run_cli(["psi", "6"], capsys)
    assert code == EXIT_OK and out.strip() == "7"


def test_psi_json(capsys):
    code, out, _ = run_cli(["psi", "10", "--json"], capsys)
    assert code == EXIT_OK and json.loads(out) == {"psi": 11}


def test_build_comb_and_verify_roundtrip(tmp_path, capsys):
    net_path = tmp_path / "net.json"
    code, _, _ = run_cli(["build", "comb", "2", "3", "2", "-o", str(net_path)], capsys)
    assert code == EXIT_OK
    obj = json.loads(net_path.read_text())
    assert obj["h"] == 2 and len(obj["edges"]) == 9

    cert = tmp_path / "sol.json"
    code, _, _ = run_cli(
        ["solve", "--network", str(net_path), "--q", "2", "--t", "1", "--cert", str(cert)], capsys
    )
    assert code == EXIT_OK
    payload = json.loads(cert.read_text())
    code_path = tmp_path / "code.json"
    code_path.write_text(json.dumps(payload["code"]))
    code, out, _ = run_cli(["verify", "--network", str(net_path), "--code", str(code_path)], capsys)
    assert code == EXIT_OK and "ACCEPT" in out


def test_verify_rejects_broken_code(tmp_path, capsys):
    net_path = tmp_path / "net.json"
    run_cli(["build", "comb", "2", "3", "2", "-o", str(net_path)], capsys)
    net = json.loads(net_path.read_text())
    zero_code = {
        "q": 2, "p": 2, "m": 1, "t": 1, "h": 2,
        "edges": {e["id"]: [[0, 0]] for e in net["edges"]},
    }
    code_path = tmp_path / "zero.json"
    code_path.write_text(json.dumps(zero_code))
    code, out, _ = run_cli(["verify", "--network", str(net_path), "--code", str(code_path)], capsys)
    assert code == EXIT_NEGATIVE and "REJECT" in out


def test_solve_negative_exit_code(tmp_path, capsys):
    net_path = tmp_path / "net.json"
    run_cli(["build", "comb", "2", "4", "2", "-o", str(net_path)], capsys)
    code, out, _ = run_cli(
        ["solve", "--network", str(net_path), "--q", "2", "--cert", str(tmp_path / "c.json")],
        capsys,
    )
    assert code == EXIT_NEGATIVE and "no (2,1)-linear solution" in out


def test_solve_budget_exit_code(tmp_path, capsys):
    net_path = tmp_path / "net.json"
    run_cli(["build", "comb", "2", "4", "2", "-o", str(net_path)], capsys)
    code, _, _ = run_cli(
        ["solve", "--network", str(net_path), "--q", "2", "--budget", "2",
         "--cert", str(tmp_path / "c.json")],
        capsys,
    )
    assert code == EXIT_BUDGET


def test_chi_qkneser_with_certificate(tmp_path, capsys):
    cert = tmp_path / "chi.json"
    code, out, _ = run_cli(["chi", "--qkneser", "2", "4", "2", "--cert", str(cert)], capsys)
    assert code == EXIT_OK and "= 6" in out
    code, out, _ = run_cli(["check-cert", str(cert)], capsys)
    assert code == EXIT_OK and "OK" in out


def test_chi_hypergraph(tmp_path, capsys):
    cert = tmp_path / "chi-h.json"
    code, out, _ = run_cli(["chi", "--qkneser-hyper", "2", "1", "3", "--cert", str(cert)], capsys)
    assert code == EXIT_OK and "= 7" in out
    code, _, _ = run_cli(["check-cert", str(cert)], capsys)
    assert code == EXIT_OK


def test_hom_positive_negative(tmp_path, capsys):
    g_path = tmp_path / "g.json"
    run_cli(["build", "comb", "2", "3", "2", "-o", str(tmp_path / "n.json")], capsys)
    code, _, _ = run_cli(
        ["skeleton", "--network", str(tmp_path / "n.json"), "-o", str(g_path)], capsys
    )
    assert code == EXIT_OK
    cert = tmp_path / "hom.json"
    code, _, _ = run_cli(
        ["hom", "--from", str(g_path), "--to-complete", "3", "--cert", str(cert)], capsys
    )
    assert code == EXIT_OK
    code, _, _ = run_cli(["check-cert", str(cert)], capsys)
    assert code == EXIT_OK
    code, out, _ = run_cli(["hom", "--from", str(g_path), "--to-complete", "2"], capsys)
    assert code == EXIT_NEGATIVE and "no homomorphism" in out


def test_skeleton_command_lists_classes(tmp_path, capsys):
    net_path = tmp_path / "bf.json"
    from netgap.networks import build_butterfly, network_to_json

    net_path.write_text(json.dumps(network_to_json(build_butterfly())))
    code, out, _ = run_cli(["skeleton", "--network", str(net_path)], capsys)
    assert code == EXIT_OK
    assert "e1: {e1, e3, e5}" in out


def test_gap_kneser_command(tmp_path, capsys):
    code, out, _ = run_cli(
        ["gap", "--kneser", "2", "2", "2", "--cert-prefix", str(tmp_path / "gap")], capsys
    )
    assert code == EXIT_OK
    assert "q_v=4" in out and "q_s=5" in out and "gap=1" in out
    for suffix in ("qs", "qv"):
        code, _, _ = run_cli(["check-cert", str(tmp_path / f"gap-{suffix}-cert.json")], capsys)
        assert code == EXIT_OK


def test_qs_qv_commands(tmp_path, capsys):
    code, out, _ = run_cli(
        ["qs", "--comb", "2", "5", "2", "--cert", str(tmp_path / "qs.json")], capsys
    )
    assert code == EXIT_OK and "= 4" in out
    code, out, _ = run_cli(
        ["qv", "--comb", "2", "5", "2", "--cert", str(tmp_path / "qv.json")], capsys
    )
    assert code == EXIT_OK and "= 4" in out
    code, _, _ = run_cli(["check-cert", str(tmp_path / "qv.json")], capsys)
    assert code == EXIT_OK


def test_mds_command(tmp_path, capsys):
    out_path = tmp_path / "rs.json"
    code, out, _ = run_cli(
        ["mds", "--q", "4", "--r", "5", "--h", "2", "-o", str(out_path)], capsys
    )
    assert code == EXIT_OK and "[5,2,4]_4" in out
    assert json.loads(out_path.read_text())["distance"] == 4


def test_ic_commands(tmp_path, capsys):
    code, out, _ = run_cli(["ic", "bound", "--q", "2", "--t", "2", "--h", "2", "--alpha", "2"], capsys)
    assert code == EXIT_OK and "5" in out
    cert = tmp_path / "ic.json"
    code, out, _ = run_cli(
        ["ic", "search", "--q", "2", "--t", "2", "--h", "2", "--alpha", "2", "--cert", str(cert)],
        capsys,
    )
    assert code == EXIT_OK and "max size = 5" in out
    code, _, _ = run_cli(["check-cert", str(cert)], capsys)
    assert code == EXIT_OK
    witness = tmp_path / "witness.json"
    witness.write_text(json.dumps(json.loads(cert.read_text())["ic"]))
    code, out, _ = run_cli(["ic", "check", "--witness", str(witness), "--alpha", "2"], capsys)
    assert code == EXIT_OK and "valid" in out


def test_formula_command(capsys):
    code, out, _ = run_cli(["formula", "kneser-h2", "q=2", "t=2"], capsys)
    assert code == EXIT_OK and "= 1" in out
    code, out, _ = run_cli(["formula", "kneser-h2", "q=2", "t=5"], capsys)
    assert code == EXIT_OK and "outside stated hypotheses" in out


def test_gap_table_csv(tmp_path, capsys):
    out_path = tmp_path / "table.csv"
    code, _, _ = run_cli(
        ["gap-table", "--q", "2", "3", "--t", "1", "2", "--exact-limit", "2", "-o", str(out_path)],
        capsys,
    )
    assert code == EXIT_OK
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "network,q_v,q_s,gap,methods,runtime"
    assert len(lines) == 5
    assert lines[2].startswith("K_{2,2;2},4,5,1")


def test_build_kneser_implicit(capsys):
    code, out, _ = run_cli(["build", "kneser", "2", "2", "3", "--implicit"], capsys)
    assert code == EXIT_OK and "651 middle nodes" in out


def test_usage_error_exit_codes(tmp_path, capsys):
    code, _, err = run_cli(["build", "comb", "2", "2", "3"], capsys)
    assert code == EXIT_USAGE and "error" in err
    code, _, err = run_cli(["verify", "--network", "missing.json", "--code", "x.json"], capsys)
    assert code == EXIT_USAGE


def test_check_cert_rejects_tampered(tmp_path, capsys):
    cert = tmp_path / "chi.json"
    run_cli(["chi", "--qkneser", "2", "2", "1", "--cert", str(cert)], capsys)
    obj = json.loads(cert.read_text())
    first = next(iter(obj["colors"]))
    second = next(k for k in obj["colors"] if obj["colors"][k] != obj["colors"][first])
    obj["colors"][second] = obj["colors"][first]
    cert.write_text(json.dumps(obj))
    code, out, _ = run_cli(["check-cert", str(cert)], capsys)
    assert code == EXIT_NEGATIVE and "FAIL" in out


def test_console_entry_point_subprocess():
    proc = subprocess.run(["netgap", "psi", "5"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "5"


def test_verify_butterfly_xor_code(tmp_path, capsys):
    from netgap.networks import build_butterfly, network_to_json

    net_path = tmp_path / "butterfly.json"
    net_path.write_text(json.dumps(network_to_json(build_butterfly())))
    xor = {
        "q": 2, "p": 2, "m": 1, "t": 1, "h": 2,
        "edges": {
            "e1": [[1, 0]], "e2": [[0, 1]], "e3": [[1, 0]], "e4": [[0, 1]],
            "e5": [[1, 0]], "e6": [[1, 1]], "e7": [[0, 1]], "e8": [[1, 1]],
            "e9": [[1, 1]],
        },
    }
    code_path = tmp_path / "xor.json"
    code_path.write_text(json.dumps(xor))
    code, out, _ = run_cli(["verify", "--network", str(net_path), "--code", str(code_path)], capsys)
    assert code == EXIT_OK and "ACCEPT" in out


def test_build_from_graph_extend_parallelize(tmp_path, capsys):
    triangle = {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]]}
    g_path = tmp_path / "k3.json"
    g_path.write_text(json.dumps(triangle))
    net_path = tmp_path / "net.json"
    code, _, _ = run_cli(["build", "from-graph", "--graph", str(g_path), "-o", str(net_path)], capsys)
    assert code == EXIT_OK
    obj = json.loads(net_path.read_text())
    assert obj["h"] == 2 and len(obj["terminals"]) == 3

    ext_path = tmp_path / "ext.json"
    code, _, _ = run_cli(
        ["build", "extend", "--network", str(net_path), "--messages", "3", "-o", str(ext_path)],
        capsys,
    )
    assert code == EXIT_OK and json.loads(ext_path.read_text())["h"] == 3

    par_path = tmp_path / "par.json"
    code, _, _ = run_cli(
        ["build", "parallelize", "--network", str(net_path), "--factor", "2", "-o", str(par_path)],
        capsys,
    )
    assert code == EXIT_OK
    par = json.loads(par_path.read_text())
    assert par["h"] == 4 and len(par["edges"]) == 2 * len(obj["edges"])


def test_build_prune_repairs_imported_network(tmp_path, capsys):
    from netgap.networks import build_butterfly, network_to_json

    obj = network_to_json(build_butterfly())
    obj["nodes"].append({"id": "dead"})
    obj["edges"].append({"id": "edead", "from": "s", "to": "dead"})
    dirty = tmp_path / "dirty.json"
    dirty.write_text(json.dumps(obj))
    # strict commands refuse the non-essential node
    code, _, err = run_cli(["skeleton", "--network", str(dirty)], capsys)
    assert code == EXIT_USAGE and "non-essential" in err
    clean = tmp_path / "clean.json"
    code, _, _ = run_cli(["build", "prune", "--network", str(dirty), "-o", str(clean)], capsys)
    assert code == EXIT_OK
    cleaned = json.loads(clean.read_text())
    assert all(n["id"] != "dead" for n in cleaned["nodes"])
    assert len(cleaned["edges"]) == 9


def test_build_missing_flags_usage_error(capsys):
    assert run_cli(["build", "extend", "--messages", "3"], capsys)[0] == EXIT_USAGE
    assert run_cli(["build", "from-graph"], capsys)[0] == EXIT_USAGE
    assert run_cli(["build", "comb", "2", "3"], capsys)[0] == EXIT_USAGE
    assert run_cli(["chi"], capsys)[0] == EXIT_USAGE
    assert run_cli(["gap"], capsys)[0] == EXIT_USAGE
