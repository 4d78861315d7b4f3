import json
import sys

import pytest

from jacquetcalc.main import main


def run(monkeypatch, *argv):
    monkeypatch.setattr(sys, 'argv', ['jacquetcalc', '-q', *argv])
    with pytest.raises(SystemExit) as exc:
        main()
    return exc.value.code


def test_no_command(monkeypatch, capsys):
    assert run(monkeypatch) == 2
    assert 'a command is required' in capsys.readouterr().err


def test_verify_triple(monkeypatch, capsys):
    assert run(monkeypatch, 'verify', '--triple', '1/2,3/2,5/2', '--claims', 'sec9-*') == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['kind'] == 'SuiteReport'
    assert [r['claimId'] for r in doc['reports']] == ['sec9-factor-list', 'sec9-kernel-lemma']
    assert doc['summary'] == {'total': 2, 'pass': 2, 'fail': 0, 'inconclusive': 0}
    assert 'elapsedMs' not in doc['reports'][0]


def test_verify_bad_triple(monkeypatch, capsys):
    assert run(monkeypatch, 'verify', '-t', '5/2,3/2,1/2', '--claims', 'sec9-*') == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc['reports'][0]['claimId'] == 'grid'


def test_verify_text_with_timings(monkeypatch, capsys):
    assert run(monkeypatch, 'verify', '-t', '1/2,3/2,5/2', '--claims', 'sec8-mult-L5',
               '--format', 'text', '--timings') == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith('PASS          sec8-mult-L5 (1/2, 3/2, 5/2)')
    assert out[0].endswith('ms')
    assert out[-1] == '1 passed, 0 failed, 0 inconclusive (1 total)'


def test_verify_grid_file(monkeypatch, capsys, tmp_path):
    grid = tmp_path / 'grid.ini'
    grid.write_text(
        '[verify]\n'
        'claims = sec5-*  # discrete series only\n'
        'triples =\n'
        '    1/2,3/2,5/2\n'
        '    3/2,5/2,7/2\n'
        '[engine]\n'
        'jobs = 2\n'
    )
    assert run(monkeypatch, 'verify', '--grid', str(grid)) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r['params'] for r in doc['reports']] == [['1/2', '3/2', '5/2'], ['3/2', '5/2', '7/2']]


def test_verify_grid_command_line_wins(monkeypatch, capsys, tmp_path):
    grid = tmp_path / 'grid.ini'
    grid.write_text('[verify]\nclaims = sec5-*\ntriples = 1/2,3/2,5/2\n')
    assert run(monkeypatch, 'verify', '-g', str(grid), '-t', '1/2,5/2,7/2') == 0
    doc = json.loads(capsys.readouterr().out)
    assert [r['params'] for r in doc['reports']] == [['1/2', '5/2', '7/2']]


def test_verify_missing_grid(monkeypatch, tmp_path):
    assert run(monkeypatch, 'verify', '--grid', str(tmp_path / 'nope.ini')) == 1


def test_verify_bad_inequality(monkeypatch, tmp_path):
    grid = tmp_path / 'grid.ini'
    grid.write_text('[engine]\nrow2_inequality = sometimes\n')
    assert run(monkeypatch, 'verify', '-g', str(grid)) == 2


def test_verify_unknown_format(monkeypatch, capsys):
    assert run(monkeypatch, 'verify', '-f', 'pdf') == 2
    assert 'unknown format' in capsys.readouterr().err


def test_verify_out_file(monkeypatch, capsys, tmp_path):
    dst = tmp_path / 'reports' / 'suite.yaml'
    assert run(monkeypatch, 'verify', '-t', '1/2,3/2,5/2', '--claims', 'sec8-mult-L5',
               '-f', 'yaml', '-o', str(dst)) == 0
    assert capsys.readouterr().out == ''
    text = dst.read_text()
    assert 'kind: SuiteReport' in text
    assert 'claimId: sec8-mult-L5' in text


def test_expand(monkeypatch, capsys):
    assert run(monkeypatch, 'expand', '--expr', 'd(1/2,5/2) |x sigma') == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['kind'] == 'Expansion'
    assert doc['expr'] == 'd(1/2,5/2) |x sigma'
    assert isinstance(doc['decomposition'], list)
    assert doc['muStar']


def test_expand_words(monkeypatch, capsys):
    assert run(monkeypatch, 'expand', '-e', 'd(1/2,5/2) |x sigma', '--to-words') == 0
    doc = json.loads(capsys.readouterr().out)
    assert 'muStar' not in doc
    assert sum(w['count'] for w in doc['words']) == 8
    assert all(len(w['word']) == 3 for w in doc['words'])


def test_expand_no_fact(monkeypatch, capsys):
    assert run(monkeypatch, 'expand', '-e', 'd(1/2,5/2) x d(-1/2,3/2) |x sigma') == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['decomposition'] is None


@pytest.mark.parametrize('expr', ['d(1/2,2) |x sigma', 'd(1/2,5/2 |x sigma', 'rho'])
def test_expand_invalid(monkeypatch, expr):
    assert run(monkeypatch, 'expand', '-e', expr) == 2


def test_candidates(monkeypatch, capsys):
    assert run(monkeypatch, 'candidates', '-t', '1/2,3/2,5/2', '-s', '-') == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['kind'] == 'Candidates'
    assert doc['params'] == ['1/2', '3/2', '5/2', '-']
    assert len(doc['candidates']) == 2
    assert doc['flags'] == []


@pytest.mark.parametrize('argv', [
    ['-t', '1/2,3/2', '-s', '+'],
    ['-t', '1/2,3/2,5/2', '-s', 'plus'],
])
def test_candidates_invalid(monkeypatch, argv):
    assert run(monkeypatch, 'candidates', *argv) == 2
