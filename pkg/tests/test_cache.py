import pytest

from fermatdeg.cache import TraceCache, cache_merge, default_cache_path
from fermatdeg.errors import ConflictingEntry, FormatMismatch
from fermatdeg.frobenius import sweep
from fermatdeg.frobenius.sweep import trace_sweep


def _write(path, text):
    path.write_bytes(text.encode("ascii"))
    return path


def test_round_trip_format(tmp_path):
    c = TraceCache(9, {19: -8, 7: 4, 5: 0}, tmp_path / "c.txt")
    c.save()
    raw = (tmp_path / "c.txt").read_bytes()
    assert raw == b"#fermat-trace-cache v1 m=9\n5 0\n7 4\n19 -8\n"
    again = TraceCache.load(tmp_path / "c.txt", 9)
    assert again.entries == {5: 0, 7: 4, 19: -8} and again.m == 9


def test_append_keeps_sorted(tmp_path):
    path = tmp_path / "c.txt"
    c = TraceCache(9, {5: 0}, path)
    c.save()
    c.update({7: 4, 13: 2})
    assert path.read_text() == "#fermat-trace-cache v1 m=9\n5 0\n7 4\n13 2\n"
    # out-of-order insertion forces a rewrite, still sorted
    c.update({11: 0})
    assert [int(x.split()[0]) for x in path.read_text().splitlines()[1:]] == [5, 7, 11, 13]
    assert TraceCache.load(path).entries == c.entries


def test_update_conflict(tmp_path):
    c = TraceCache(9, {7: 4}, tmp_path / "c.txt")
    c.update({7: 4})
    with pytest.raises(ConflictingEntry) as e:
        c.update({7: 5})
    assert e.value.context["p"] == 7


@pytest.mark.parametrize("text", [
    "#fermat-trace-cache v2 m=9\n5 0\n",
    "#trace m=9\n5 0\n",
    "#fermat-trace-cache v1 m=9\n7 4\n5 0\n",
    "#fermat-trace-cache v1 m=9\n7 4 1\n",
    "",
])
def test_bad_files(tmp_path, text):
    with pytest.raises(FormatMismatch):
        TraceCache.load(_write(tmp_path / "bad.txt", text))


def test_wrong_m(tmp_path):
    p = _write(tmp_path / "c.txt", "#fermat-trace-cache v1 m=9\n5 0\n")
    with pytest.raises(FormatMismatch):
        TraceCache.load(p, 15)


def test_missing_file_starts_empty(tmp_path):
    c = TraceCache.load(tmp_path / "none.txt", 15)
    assert len(c) == 0 and c.m == 15


def test_merge(tmp_path):
    a = _write(tmp_path / "a.txt", "#fermat-trace-cache v1 m=9\n5 0\n19 -8\n")
    b = _write(tmp_path / "b.txt", "#fermat-trace-cache v1 m=9\n7 4\n19 -8\n")
    m = cache_merge([a, b])
    assert m.render() == "#fermat-trace-cache v1 m=9\n5 0\n7 4\n19 -8\n"
    assert cache_merge([a]).entries == TraceCache.load(a).entries
    assert cache_merge([a, a]).entries == TraceCache.load(a).entries


def test_merge_conflict_names_p(tmp_path):
    a = _write(tmp_path / "a.txt", "#fermat-trace-cache v1 m=9\n5 0\n19 -8\n")
    b = _write(tmp_path / "b.txt", "#fermat-trace-cache v1 m=9\n19 -7\n")
    with pytest.raises(ConflictingEntry) as e:
        cache_merge([a, b])
    assert e.value.context["p"] == 19 and "p=19" in str(e.value)


def test_merge_mismatch(tmp_path):
    a = _write(tmp_path / "a.txt", "#fermat-trace-cache v1 m=9\n5 0\n")
    b = _write(tmp_path / "b.txt", "#fermat-trace-cache v1 m=15\n7 0\n")
    with pytest.raises(FormatMismatch):
        cache_merge([a, b])
    with pytest.raises(FormatMismatch):
        cache_merge([])


def test_sweep_resumes_from_cache(tmp_path, monkeypatch):
    path = tmp_path / "c.txt"
    first = trace_sweep(15, 3000, cache=TraceCache.load(path, 15))
    calls = []
    real = sweep.fast_trace

    def counting(m, p):
        calls.append(p)
        return real(m, p)

    monkeypatch.setattr(sweep, "fast_trace", counting)
    cache = TraceCache.load(path, 15)
    assert trace_sweep(15, 3000, cache=cache) == first
    assert calls == []
    trace_sweep(15, 4000, cache=cache)
    assert calls and min(calls) > 3000
    assert TraceCache.load(path, 15).entries == cache.entries


def test_default_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv("FERMAT_CACHE_DIR", str(tmp_path))
    assert default_cache_path(21) == tmp_path / "traces-m21.txt"
