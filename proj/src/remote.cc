// Copyright 2026 The Accord Authors.
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

#include "accord/remote.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "accord/error.h"
#include "httplib.h"

namespace accord {

namespace {

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string &url) {
  const auto scheme = url.find("://");
  const auto host_start = scheme == std::string::npos ? 0 : scheme + 3;
  const auto slash = url.find('/', host_start);
  if (slash == std::string::npos) return {url, "/"};
  return {url.substr(0, slash), url.substr(slash)};
}

}  // namespace

nlohmann::json post_json(const RemoteSettings &settings, const nlohmann::json &body,
                         const std::string &key) {
  if (settings.endpoint.empty()) {
    throw ConfigError("remote endpoint is not configured");
  }
  const auto ep = split_endpoint(settings.endpoint);
  httplib::Headers headers;
  if (!settings.token_env.empty()) {
    if (const char *token = std::getenv(settings.token_env.c_str());
        token != nullptr && *token != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + token);
    }
  }
  const std::string payload = body.dump();
  const int attempts = std::max(1, settings.max_attempts);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1 && settings.backoff_ms > 0) {
      std::this_thread::sleep_for(
          std::chrono::milliseconds(settings.backoff_ms * (attempt - 1)));
    }
    httplib::Client client(ep.base);
    const auto timeout = std::chrono::milliseconds(settings.timeout_ms);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    auto res = client.Post(ep.path, headers, payload, "application/json");
    if (!res) {
      last_error = "request to " + settings.endpoint + " failed: " +
                   httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "endpoint " + settings.endpoint + " answered HTTP " +
                   std::to_string(res->status);
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw ProtocolError(key, "[" + key + "] endpoint answered HTTP " +
                                   std::to_string(res->status));
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception &e) {
      throw ProtocolError(key, "[" + key + "] malformed JSON reply: " + e.what());
    }
  }
  throw TransportError(key, "[" + key + "] " + last_error + " (after " +
                                std::to_string(attempts) + " attempts)");
}

}  // namespace accord
