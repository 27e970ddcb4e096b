import json
from fractions import Fraction

import pytest

from solvers.formatting import render

HEADER = ['g', 'd', 'H', 'match']
ROWS = [[0, 2, Fraction(2, 4), True], [1, 2, Fraction(-3, 1), False]]


def test_csv():
    assert render(HEADER, ROWS, 'csv') == "g,d,H,match\n0,2,1/2,yes\n1,2,-3,no\n"


def test_csv_header_without_rows():
    assert render(HEADER, [], 'csv') == "g,d,H,match\n"


def test_json():
    text = render(HEADER, ROWS, 'json', meta={'gmax': 1})
    document = json.loads(text)
    assert document['gmax'] == 1
    assert document['rows'][0] == {'g': 0, 'd': 2, 'H': '1/2', 'match': True}
    assert text == json.dumps(document, indent=2, sort_keys=True) + "\n"


def test_table_aligns_columns():
    lines = render(HEADER, ROWS, 'table').splitlines()
    assert lines[0].split() == HEADER
    assert set(lines[1].replace(' ', '')) == {'-'}
    assert lines[2].split() == ['0', '2', '1/2', 'yes']
    assert len({len(line) for line in lines[:2]}) == 1


def test_unsupported_format():
    with pytest.raises(ValueError):
        render(HEADER, ROWS, 'xml')
