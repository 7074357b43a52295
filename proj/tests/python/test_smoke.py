"""Smoke tests for the foragesim python module."""

import pytest

import foragesim as fs


def make_env(seed=3, pages=150):
    cfg = fs.EnvConfig()
    cfg.initial_pages = pages
    cfg.hub_count = 6
    cfg.hub_update_rate = 2.0
    cfg.duration = 7200.0
    cfg.rng_seed = seed
    return fs.generate_environment(cfg)


def test_config_defaults():
    cfg = fs.EnvConfig()
    assert cfg.k == 50
    assert cfg.initial_pages == 2000
    assert cfg.hub_count == 20
    assert cfg.rng_seed == 1


def test_generate_and_fetch():
    env = make_env()
    assert env.num_urls >= 150
    assert env.num_versions >= env.num_urls
    assert len(env.hubs) == 6
    v = fs.fetch_page(env, env.hubs[0], 7200.0)
    assert v.url == env.hubs[0]
    assert len(v.state) == 50
    assert v.created_at <= 7200.0


def test_fetch_unknown_url_raises_keyerror():
    env = make_env()
    with pytest.raises(KeyError):
        fs.fetch_page(env, 10**6, 0.0)


def test_bad_config_raises_valueerror():
    cfg = fs.EnvConfig()
    cfg.initial_pages = 0
    with pytest.raises(ValueError):
        fs.generate_environment(cfg)


def test_trace_round_trip(tmp_path):
    env = make_env()
    path = tmp_path / "t.jsonl"
    fs.save_trace(env, str(path))
    assert fs.load_trace(str(path)) == env


def test_rewire_changes_wiring_not_size():
    env = make_env()
    rewired = fs.rewire_environment(env, 7)
    assert rewired.num_urls == env.num_urls
    assert rewired != env


def test_graph_stats():
    env = make_env(pages=400)
    stats = fs.graph_stats(env)
    assert 0.0 <= stats.clustering <= 1.0
    assert stats.avg_path_length > 1.0


def test_run_simulation_deterministic_and_sane():
    env = make_env()
    a = fs.run_simulation(env, policy="wl", seed=5, total_time=3600.0)
    b = fs.run_simulation(env, policy="wl", seed=5, total_time=3600.0)
    assert (a.downloaded, a.sent, a.relevant, a.found_urls) == (
        b.downloaded, b.sent, b.relevant, b.found_urls)
    assert a.downloaded > 0
    assert 0 <= a.relevant <= a.sent <= a.downloaded
    assert 0.0 <= a.sent_efficiency <= 1.0
    assert 0.0 <= a.freshness <= 1.0
    assert a.age_hours >= 0.0

    c = fs.run_simulation(env, policy="rl", seed=5, total_time=3600.0)
    assert c.downloaded > 0
    assert (a.downloaded, a.sent) != (c.downloaded, c.sent)
