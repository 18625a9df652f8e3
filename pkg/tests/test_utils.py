import logging

import pytest

from src.config import Config
from src.utils.formatter import OutputFormatter
from src.utils.logger import CalcLogger
from src.utils.validator import InputValidator


def test_default_config_is_valid():
    assert Config.validate_config()
    assert set(Config.as_dict()) == {'max_homogeneity', 'samples', 'seed', 'block_size', 'workers', 'inner_ratio'}


def test_invalid_config(monkeypatch):
    monkeypatch.setattr(Config, 'INNER_RATIO', 1.5)
    assert not Config.validate_config()
    monkeypatch.setattr(Config, 'INNER_RATIO', 1e-3)
    monkeypatch.setattr(Config, 'SAMPLES', 10)
    assert not Config.validate_config()


@pytest.mark.parametrize("ref, valid", [
    ('heisenberg:2', True),
    ('Heisenberg:1', True),
    ('abelian:4', True),
    ('engel', True),
    ('engel:2', False),
    ('heisenberg', False),
    ('heisenberg:0', False),
    ('', False),
    ('no/such/file.txt', False),
])
def test_group_refs(ref, valid):
    assert InputValidator.validate_group_ref(ref) is valid


def test_group_ref_file(tmp_path):
    path = tmp_path / 'h3.txt'
    path.write_text('layers 2 1\n')
    assert InputValidator.validate_group_ref(str(path))


def test_number_lists():
    assert InputValidator.parse_number_list('1, 2.5,4') == [1.0, 2.5, 4.0]
    for bad in ('', '1,,2', 'a,b', '1, x'):
        with pytest.raises(ValueError):
            InputValidator.parse_number_list(bad)


def test_validation_collects_every_error():
    errors = InputValidator.validate_cutoff_experiment(0, [4.0], -1.0, 10, -3)
    assert len(errors) == 5
    assert InputValidator.validate_radii([1.0, 2.0]) == []
    assert InputValidator.validate_radii([1.0, 1.0]) == ["Radii must be distinct"]
    assert InputValidator.validate_ratio('1.01')
    assert not InputValidator.validate_ratio(1)


def test_format_rational():
    assert OutputFormatter.format_rational('4/3') == '4/3'
    assert OutputFormatter.format_rational(2) == '2'
    assert OutputFormatter.format_set([4, 3]) == '{3, 4}'


def test_format_table_aligns_columns():
    text = OutputFormatter.format_table(['k', 'dim'], [[0, 1], [10, 2]])
    assert text.splitlines() == ['k   dim', '--  ---', '0   1', '10  2']


def test_logger_records_structured_data(caplog):
    logger = CalcLogger()
    with caplog.at_level(logging.INFO, logger='RuminCalc'):
        logger.log_experiment('cutoff_norm', 3, 1000, group='engel')
        logger.log_error(ValueError('boom'), {'verb': 'dc'})
    messages = [record.getMessage() for record in caplog.records]
    assert messages[0].startswith('EXPERIMENT: ')
    assert "'seed': 3" in messages[0]
    assert "'type': 'ValueError'" in messages[1]
