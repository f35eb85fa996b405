"""Caché de tablas KL y sumas de integridad."""

import json

import pytest

from Core.coxeter import build_system
from Core.errors import CacheCorrupted
from Sovereignty.hash_validator import HashValidator, canonical_json
from Sovereignty.kl_cache import FORMAT_VERSION, KLCache


@pytest.fixture
def a2():
    return build_system("A", 2)


def test_canonical_json_is_order_independent():
    assert canonical_json({"b": 1, "a": [2, 3]}) == '{"a":[2,3],"b":1}'
    validator = HashValidator()
    assert validator.compute_hash({"b": 1, "a": 2}) == validator.compute_hash({"a": 2, "b": 1})
    assert validator.compute_hash("abc") == validator.compute_hash(b"abc")


def test_validate():
    validator = HashValidator()
    digest = validator.compute_hash({"x": 1})
    assert validator.validate({"x": 1}, digest).is_valid
    result = validator.validate({"x": 2}, digest)
    assert not result.is_valid
    assert result.reason
    assert result.fingerprint == result.computed[:16]
    assert result.to_dict()["fingerprint"] == result.fingerprint


def test_round_trip(tmp_path, engine_a3):
    cache = KLCache(tmp_path)
    path = cache.save(engine_a3.kl)
    assert path.name == "A3.klcache"
    loaded = cache.load(engine_a3.system)
    assert loaded.rows == engine_a3.kl.rows


def test_missing_entry(tmp_path, a2):
    assert KLCache(tmp_path).load(a2) is None


def test_get_or_compute_writes_cache(tmp_path, a2):
    cache = KLCache(tmp_path)
    table = cache.get_or_compute(a2)
    assert cache.path(a2).exists()
    assert cache.load(a2).rows == table.rows


def _rewrite(path, **changes):
    entry = json.loads(path.read_text(encoding="utf-8"))
    entry.update(changes)
    path.write_text(json.dumps(entry), encoding="utf-8")


def test_corrupted_checksum(tmp_path, engine_a3):
    cache = KLCache(tmp_path)
    path = cache.save(engine_a3.kl)
    _rewrite(path, checksum="0" * 64)
    with pytest.raises(CacheCorrupted):
        cache.load(engine_a3.system)
    table = cache.get_or_compute(engine_a3.system)
    assert table.rows == engine_a3.kl.rows
    assert cache.load(engine_a3.system) is not None


def test_corrupted_entries(tmp_path, engine_a3):
    cache = KLCache(tmp_path)
    path = cache.save(engine_a3.kl)
    _rewrite(path, format_version=FORMAT_VERSION + 1)
    with pytest.raises(CacheCorrupted):
        cache.load(engine_a3.system)

    cache.save(engine_a3.kl)
    _rewrite(path, rank=2)
    with pytest.raises(CacheCorrupted):
        cache.load(engine_a3.system)

    path.write_text("{no es json", encoding="utf-8")
    with pytest.raises(CacheCorrupted) as excinfo:
        cache.load(engine_a3.system)
    assert excinfo.value.to_dict()["error"] == "CacheCorrupted"
