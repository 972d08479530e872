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

#ifndef ACCORD_REMOTE_H_
#define ACCORD_REMOTE_H_

#include <string>

#include "accord/extraction.h"
#include "json.hpp"

namespace accord {

// POSTs `body` as JSON to settings.endpoint and returns the parsed JSON
// reply. Connection failures, timeouts, 429 and 5xx answers are retried up
// to settings.max_attempts times with linear backoff, then surface as
// TransportError. Other non-2xx answers and unparseable bodies raise
// ProtocolError. `key` identifies the work item in error messages. The
// bearer token, when settings.token_env names a set variable, goes in the
// Authorization header.
nlohmann::json post_json(const RemoteSettings &settings, const nlohmann::json &body,
                         const std::string &key);

}  // namespace accord

#endif  // ACCORD_REMOTE_H_
