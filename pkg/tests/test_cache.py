import io
import os
import threading

from hstab.cache import Cache, cache_key
from hstab.documents import dumps


def _counter():
    calls = []

    def thunk():
        calls.append(1)
        return {"value": len(calls)}
    return calls, thunk


def test_hit_after_miss(tmp_path):
    log = io.StringIO()
    c = Cache(tmp_path, log=log)
    calls, thunk = _counter()
    a = c.get_or_compute("op", {"x": 1}, thunk)
    b = c.get_or_compute("op", {"x": 1}, thunk)
    assert a == b and len(calls) == 1
    assert "cache miss" in log.getvalue() and "cache hit" in log.getvalue()


def test_missing_directory_disables_silently(tmp_path):
    log = io.StringIO()
    c = Cache(tmp_path / "absent", log=log)
    calls, thunk = _counter()
    c.get_or_compute("op", {}, thunk)
    c.get_or_compute("op", {}, thunk)
    assert len(calls) == 2 and log.getvalue() == "" and not (tmp_path / "absent").exists()
    assert not Cache(None).enabled


def test_version_bump_recomputes(tmp_path):
    calls, thunk = _counter()
    Cache(tmp_path, version="1", log=io.StringIO()).get_or_compute("op", {}, thunk)
    Cache(tmp_path, version="2", log=io.StringIO()).get_or_compute("op", {}, thunk)
    assert len(calls) == 2


def test_keys_depend_on_everything():
    base = cache_key("ka build", {"bound": 1})
    assert base != cache_key("ka build", {"bound": 2})
    assert base != cache_key("homology", {"bound": 1})
    assert base != cache_key("ka build", {"bound": 1}, version="other")
    assert base == cache_key("ka build", {"bound": 1})


def test_corrupt_entry_is_recomputed(tmp_path):
    log = io.StringIO()
    c = Cache(tmp_path, log=log)
    calls, thunk = _counter()
    c.get_or_compute("op", {}, thunk)
    (entry,) = [p for p in tmp_path.rglob("*.json")]
    entry.write_text('{"key": "wrong", "value": 0}')
    assert c.get_or_compute("op", {}, thunk) == {"value": 2}
    assert "warning: corrupt cache entry" in log.getvalue()
    assert c.get_or_compute("op", {}, thunk) == {"value": 2} and len(calls) == 2


def test_concurrent_writers_leave_complete_entries(tmp_path):
    def work():
        Cache(tmp_path, log=io.StringIO()).get_or_compute("op", {"big": list(range(2000))}, lambda: {"v": list(range(5000))})

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    entries = list(tmp_path.rglob("*.json"))
    assert len(entries) == 1 and not [p for p in tmp_path.rglob(".tmp-*")]
    assert '"v":[0,1' in entries[0].read_text()


def test_hit_is_byte_identical_to_fresh(tmp_path):
    value = {"b": [1, 2], "a": "x"}
    c = Cache(tmp_path, log=io.StringIO())
    fresh = c.get_or_compute("op", {}, lambda: value)
    hit = c.get_or_compute("op", {}, lambda: None)
    assert dumps(fresh) == dumps(hit) == dumps(value)
    assert os.listdir(tmp_path)
