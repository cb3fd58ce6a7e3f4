import json

import pytest

from llm_ens.errors import (GatewayHTTPError, MalformedResponseError,
                            MissingCredentialError, RetriesExhaustedError,
                            ScriptExhaustedError)
from llm_ens.gateway import (API_KEY_ENV, ChatRequest, GatewayConfig,
                             LLMGateway, MockTransport, ResponseCache,
                             cache_key, load_mock_script, mock_transport)


def no_sleep(seconds):
    pass


@pytest.fixture
def config(tmp_path):
    return GatewayConfig(cache_dir=tmp_path / "cache", max_retries=3)


def request(config, text="hello"):
    return ChatRequest.build(config, [("system", "classify"), ("user", text)])


def gateway(config, *script, **kwargs):
    return LLMGateway(config, mock_transport(list(script)), sleep=no_sleep,
                      **kwargs)


class TestRequests:

    def test_payload(self, config):
        payload = request(config).payload()
        assert payload["model"] == config.model_name
        assert [m["role"] for m in payload["messages"]] == ["system", "user"]

    def test_needs_a_message(self, config):
        with pytest.raises(ValueError):
            ChatRequest.build(config, [])

    def test_cache_key(self, config):
        assert cache_key(request(config)) == cache_key(request(config))
        assert cache_key(request(config)) != cache_key(request(config, "bye"))
        assert len(cache_key(request(config))) == 64


class TestGateway:

    def test_completion(self, config):
        gw = gateway(config, "{1, start}")
        assert gw.complete(request(config)) == "{1, start}"
        assert gw.call_count == 1

    def test_cache_hit(self, config):
        gw = gateway(config, "{1, start}")
        gw.complete(request(config))
        again = gateway(config)
        assert again.complete(request(config)) == "{1, start}"
        assert again.call_count == 0 and again.cache_hits == 1

    def test_cache_disabled(self, tmp_path):
        config = GatewayConfig(cache_enabled=False, cache_dir=tmp_path / "c")
        gw = gateway(config, "a", "b")
        assert gw.complete(request(config)) == "a"
        assert gw.complete(request(config)) == "b"
        assert not (tmp_path / "c").exists()

    def test_retries_transient_errors(self, config):
        slept = []
        gw = LLMGateway(config,
                        mock_transport([{"status": 429}, {"status": 429},
                                        "{2, late}"]),
                        sleep=slept.append)
        assert gw.complete(request(config)) == "{2, late}"
        assert gw.call_count == 3
        assert len(slept) == 2

    def test_retries_timeouts_and_server_errors(self, config):
        gw = gateway(config, {"timeout": True}, {"status": 503}, "ok")
        assert gw.complete(request(config)) == "ok"
        assert gw.call_count == 3

    def test_retries_exhausted(self, config):
        gw = gateway(config, *[{"status": 500}] * 4)
        with pytest.raises(RetriesExhaustedError):
            gw.complete(request(config))
        assert gw.call_count == 4
        assert cache_key(request(config)) not in gw.cache

    def test_client_error_is_not_retried(self, config):
        gw = gateway(config, {"status": 400, "body": "bad request"}, "ok")
        with pytest.raises(GatewayHTTPError) as e:
            gw.complete(request(config))
        assert e.value.status_code == 400
        assert gw.call_count == 1

    @pytest.mark.parametrize("body", ["not json", '{"choices": []}',
                                      '{"choices": [{"message": {"content": 3}}]}'])
    def test_malformed_response(self, config, body):
        gw = gateway(config, {"status": 200, "body": body})
        with pytest.raises(MalformedResponseError):
            gw.complete(request(config))
        assert cache_key(request(config)) not in gw.cache

    def test_missing_credential(self, config):
        transport = MockTransport(["ok"], requires_credentials=True)
        with pytest.raises(MissingCredentialError):
            LLMGateway(config, transport).complete(request(config))
        assert transport.call_count == 0

    def test_credential_in_header_only(self, config, monkeypatch):
        monkeypatch.setenv(API_KEY_ENV, "sk-test")
        transport = MockTransport(["ok"], requires_credentials=True)
        LLMGateway(config, transport).complete(request(config))
        sent = transport.requests[0]
        assert sent.headers["Authorization"] == "Bearer sk-test"
        assert "sk-test" not in json.dumps(sent.payload)

    def test_script_exhausted(self, config):
        gw = gateway(config)
        with pytest.raises(ScriptExhaustedError):
            gw.complete(request(config))

    def test_load_mock_script(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text(json.dumps(["{1, a}", {"status": 429}]))
        transport = load_mock_script(path)
        assert transport.script == ["{1, a}", {"status": 429}]

    def test_load_mock_script_rejects_objects(self, tmp_path):
        path = tmp_path / "script.json"
        path.write_text("{}")
        with pytest.raises(ValueError):
            load_mock_script(path)


class TestResponseCache:

    def test_first_writer_wins(self, tmp_path):
        cache = ResponseCache(tmp_path)
        cache.put("k", "first")
        cache.put("k", "second")
        assert cache.get("k") == "first"
        assert [p.name for p in tmp_path.iterdir()] == ["k"]

    def test_miss(self, tmp_path):
        assert ResponseCache(tmp_path).get("missing") is None
