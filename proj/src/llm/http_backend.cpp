// Copyright 2026 The CODS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cmath>
#include <cstdlib>

#include "cods/llm/backend.hpp"
#include "httplib.h"

namespace cods::llm {

namespace {

LlmConfig parse_llm_object(const Json& llm, const std::filesystem::path& base_dir) {
  LlmConfig config;
  if (!llm.is_object()) throw ValidationError("/llm", "expected an object");
  for (const auto& [key, value] : llm.items()) {
    std::string path = "/llm/" + key;
    if (key == "endpoint" || key == "model" || key == "api_key_env" || key == "templates") {
      if (!value.is_string()) throw ValidationError(path, "expected a string");
      std::string s = value.get<std::string>();
      if (key == "endpoint") config.endpoint = s;
      else if (key == "model") config.model = s;
      else if (key == "api_key_env") config.api_key_env = s;
      else config.templates = base_dir.empty() ? std::filesystem::path(s) : base_dir / s;
    } else if (key == "temperature" || key == "timeout_seconds") {
      if (!value.is_number()) throw ValidationError(path, "expected a number");
      double v = value.get<double>();
      if (!std::isfinite(v) || v < 0) throw ValidationError(path, "must be a non-negative number");
      (key == "temperature" ? config.temperature : config.timeout_seconds) = v;
    } else if (key == "max_retries") {
      if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw ValidationError(path, "expected a non-negative integer");
      }
      config.max_retries = value.get<int>();
    } else {
      throw ValidationError(path, "unknown llm setting");
    }
  }
  return config;
}

std::string api_key_from_env(const std::string& name) {
  const char* key = std::getenv(name.c_str());
  if (key == nullptr || *key == '\0') {
    throw BackendUnavailable("environment variable " + name +
                             " is not set; the live backend needs an API key");
  }
  return key;
}

}  // namespace

LlmConfig load_llm_config(const Json& doc) {
  if (!doc.is_object()) throw ValidationError("/", "config must be an object");
  if (!doc.contains("llm")) return LlmConfig{};
  return parse_llm_object(doc["llm"], {});
}

LlmConfig load_llm_config_file(const std::filesystem::path& path) {
  Json doc = parse_json(read_file(path), "config");
  if (!doc.is_object()) throw ValidationError("/", "config must be an object");
  if (!doc.contains("llm")) return LlmConfig{};
  return parse_llm_object(doc["llm"], path.parent_path());
}

HttpBackend::HttpBackend(LlmConfig config)
    : HttpBackend(config, api_key_from_env(config.api_key_env)) {}

HttpBackend::HttpBackend(LlmConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  const std::string& url = config_.endpoint;
  std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("/llm/endpoint", "expected an absolute http(s) URL");
  }
  std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ValidationError("/llm/endpoint", "unsupported scheme \"" + scheme + "\"");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") throw BackendUnavailable("this build has no HTTPS support");
#endif
  std::size_t path_start = url.find('/', scheme_end + 3);
  base_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpBackend::complete(const std::string& prompt) {
  httplib::Client client(base_);
  auto timeout = std::chrono::milliseconds(static_cast<long long>(config_.timeout_seconds * 1000));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_bearer_token_auth(api_key_);

  Json body = Json::object();
  body["model"] = config_.model;
  body["temperature"] = config_.temperature;
  body["messages"] = Json::array({{{"role", "user"}, {"content", prompt}}});

  auto res = client.Post(path_, body.dump(), "application/json");
  if (!res) {
    throw BackendUnavailable("request to " + config_.endpoint +
                             " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw BackendUnavailable("endpoint returned HTTP " + std::to_string(res->status));
  }
  try {
    Json reply = Json::parse(res->body);
    return reply.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const std::exception&) {
    throw BackendUnavailable("endpoint reply is not a chat-completions response");
  }
}

}  // namespace cods::llm
