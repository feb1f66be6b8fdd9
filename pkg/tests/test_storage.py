import json

from hyperplant.storage import ResultRepo


def test_save_sorts_keys_and_creates_directories(tmp_path):
    path = tmp_path / "nested" / "report.json"
    ResultRepo(path).save({"b": 1, "a": [1, 2]})
    text = path.read_text(encoding="utf-8")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"a": [1, 2], "b": 1}


def test_sibling_shares_the_stem(tmp_path):
    repo = ResultRepo(tmp_path / "edge.json")
    assert repo.sibling(".trials.csv").file_path == tmp_path / "edge.trials.csv"
    assert ResultRepo(None).sibling(".trials.csv").file_path is None


def test_without_a_path_data_goes_to_stdout(capsys):
    ResultRepo(None).write_csv(["x", "y"], [[1, 2], [3, 4]])
    assert capsys.readouterr().out == "x,y\n1,2\n3,4\n"
