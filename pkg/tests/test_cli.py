import json
import math
import random

from voltafx import (
    build_graph,
    electrode_series_path,
    fit_potentials,
    load_table_file,
    quotes_to_csv,
)
from voltafx.cli import main

from helpers import consistent_quotes_from_table, random_table

SERIES = str(electrode_series_path())


class TestEmfCommand:
    def test_daniell_pair_from_bundled_series(self, capsys):
        assert main(["emf", "--table", SERIES, "--cathode", "CU",
                     "--anode", "ZN"]) == 0
        out = capsys.readouterr().out
        assert abs(float(out) - 1.10) < 1e-9

    def test_unknown_code_exits_one(self, capsys):
        assert main(["emf", "--table", SERIES, "--cathode", "XX",
                     "--anode", "ZN"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "error" in captured.err


class TestCrossCommand:
    def test_unit(self, capsys):
        assert main(["cross", "--a", "1", "--b", "1"]) == 0
        assert float(capsys.readouterr().out) == 1.0

    def test_division(self, capsys):
        assert main(["cross", "--a", "4.97", "--b", "1.08"]) == 0
        assert abs(float(capsys.readouterr().out) - 4.97 / 1.08) < 1e-9

    def test_nonpositive_exits_one(self, capsys):
        assert main(["cross", "--a", "-1", "--b", "2"]) == 1
        assert "error" in capsys.readouterr().err


class TestSeriesCommand:
    def test_bundled_series_table_format(self, capsys):
        assert main(["series", "--table", SERIES]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 26
        assert lines[0].startswith("LI")
        assert lines[-1].startswith("F2")

    def test_csv_format_parses_back(self, capsys):
        assert main(["series", "--table", SERIES, "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "code,potential,polarity"
        rows = [line.split(",") for line in lines[1:]]
        values = [float(r[1]) for r in rows]
        assert values == sorted(values)
        hydrogen = next(r for r in rows if r[0] == "H2")
        assert float(hydrogen[1]) == 0.0 and hydrogen[2] == "reference"

    def test_json_format(self, capsys):
        assert main(["series", "--table", SERIES, "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["code"] == "LI"
        assert payload[-1]["polarity"] == "electropositive"


class TestScoreCommand:
    def test_reference_scores_five(self, capsys):
        assert main(["score", "--table", SERIES, "--code", "H2"]) == 0
        assert float(capsys.readouterr().out) == 5.0

    def test_custom_scale(self, capsys):
        assert main(["score", "--table", SERIES, "--code", "CU",
                     "--midpoint", "50", "--gain", "100",
                     "--lower", "0", "--upper", "100"]) == 0
        assert abs(float(capsys.readouterr().out) - 84.0) < 1e-9


class TestFitCommand:
    def test_round_trip_matches_in_memory_fit(self, tmp_path, capsys):
        rng = random.Random(59)
        table = random_table(rng, 6, reference="USD")
        quotes = consistent_quotes_from_table(rng, table, 8)
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text(quotes_to_csv(quotes))
        out_file = tmp_path / "fitted.json"

        assert main(["fit", "--quotes", str(quotes_file), "--reference", "USD",
                     "--out", str(out_file)]) == 0
        stdout = capsys.readouterr().out
        assert "objective" in stdout and "max_abs_residual" in stdout

        expected = fit_potentials(build_graph(quotes), "USD")
        loaded = load_table_file(out_file)
        for code in table.codes():
            assert abs(loaded.potential(code) - expected.table.potential(code)) < 1e-9

        reported = float(stdout.split("objective", 1)[1].split()[0])
        assert abs(reported - expected.objective) < 1e-9

    def test_document_to_stdout_without_out(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text("base,quote,rate\nEUR,USD,1.08\n")
        assert main(["fit", "--quotes", str(quotes_file),
                     "--reference", "USD"]) == 0
        captured = capsys.readouterr()
        payload = json.loads(captured.out)
        assert payload["reference"] == "USD"
        assert "objective" in captured.err

    def test_bad_csv_lists_rows_on_stderr(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text("base,quote,rate\nEUR,USD,-1\nEUR,EUR,2\n")
        assert main(["fit", "--quotes", str(quotes_file),
                     "--reference", "USD"]) == 1
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "line 2" in captured.err and "line 3" in captured.err

    def test_missing_file_exits_one(self, capsys):
        assert main(["fit", "--quotes", "/nonexistent/q.csv",
                     "--reference", "USD"]) == 1
        assert "error" in capsys.readouterr().err

    def test_disconnected_quotes_exit_one(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text(
            "base,quote,rate\nEUR,USD,1.08\nGBP,JPY,190\n"
        )
        assert main(["fit", "--quotes", str(quotes_file),
                     "--reference", "USD"]) == 1
        assert "error" in capsys.readouterr().err


class TestArbitrageCommand:
    def test_profitable_triangle_reported(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text(
            "base,quote,rate\nAAA,BBB,2\nBBB,CCC,2\nCCC,AAA,0.3\n"
        )
        assert main(["arbitrage", "--quotes", str(quotes_file)]) == 0
        out = capsys.readouterr().out
        assert "AAA->BBB->CCC->AAA" in out
        net = float(out.split("net", 1)[1].split()[0])
        assert abs(net - math.log(1.2)) < 1e-9

    def test_consistent_quotes_find_nothing(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text(
            "base,quote,rate\nEUR,USD,1.08\nUSD,EUR," + repr(1 / 1.08) + "\n"
        )
        assert main(["arbitrage", "--quotes", str(quotes_file)]) == 0
        assert "no profitable cycles" in capsys.readouterr().out

    def test_json_format(self, tmp_path, capsys):
        quotes_file = tmp_path / "quotes.csv"
        quotes_file.write_text(
            "base,quote,rate\nAAA,BBB,2\nBBB,AAA,0.6\n"
        )
        assert main(["arbitrage", "--quotes", str(quotes_file),
                     "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload[0]["path"] == ["AAA", "BBB"]


class TestSimCommands:
    def test_cell_summary_and_ledger(self, tmp_path, capsys):
        ledger_file = tmp_path / "ledger.csv"
        assert main([
            "sim-cell", "--anode", "USD", "--cathode", "EUR",
            "--rate", "2", "--commission", "0.01",
            "--initial-emf", "1.11", "--polarization-delta", "0.001",
            "--quantum", "10", "--anode-stock", "100000",
            "--step-limit", "100000", "--ledger", str(ledger_file),
        ]) == 0
        out = capsys.readouterr().out
        summary = dict(line.split(" ", 1) for line in out.strip().splitlines())
        assert summary["halted"] == "equilibrium"
        lines = ledger_file.read_text().strip().splitlines()
        assert lines[0] == "step,dissolved,deposited,commission,emf_after"
        dissolved = sum(int(line.split(",")[1]) for line in lines[1:])
        assert dissolved == int(summary["dissolved"])
        deposited = sum(int(line.split(",")[2]) for line in lines[1:])
        assert deposited == int(summary["deposited"])

    def test_electrolysis_summary(self, capsys):
        assert main([
            "sim-electrolysis", "--anode", "USD", "--cathode", "EUR",
            "--rate", "3/2", "--commission", "0.01",
            "--initial-emf", "1.11", "--polarization-delta", "0",
            "--anode-stock", "1000", "--generator-stock", "500",
            "--current", "100", "--soluble", "--step-limit", "10000",
        ]) == 0
        out = capsys.readouterr().out
        summary = dict(line.split(" ", 1) for line in out.strip().splitlines())
        assert summary["halted"] == "stock-exhausted"
        assert summary["steps"] == "5"
        assert summary["anode_remaining"] == "1000"
        assert summary["generator_remaining"] == "0"
        assert int(summary["deposited"]) + int(summary["commission"]) == 750

    def test_invalid_rate_exits_one(self, capsys):
        assert main([
            "sim-cell", "--anode", "USD", "--cathode", "EUR",
            "--rate", "zero", "--anode-stock", "10",
        ]) == 1
        assert "error" in capsys.readouterr().err


class TestUsageErrors:
    def test_unknown_subcommand_exits_two(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_unknown_flag_exits_two(self, capsys):
        assert main(["cross", "--a", "1", "--b", "1", "--nope"]) == 2
        assert "usage" in capsys.readouterr().err

    def test_missing_required_flag_exits_two(self, capsys):
        assert main(["emf", "--table", SERIES]) == 2

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "voltafx" in capsys.readouterr().out
