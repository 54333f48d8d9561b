// Copyright 2026 The docnav Authors.
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

#ifndef DOCNAV_API_H_
#define DOCNAV_API_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "json.hpp"

#include "docnav/store.h"

namespace docnav {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

using QueryParams = std::multimap<std::string, std::string>;

inline constexpr size_t kDefaultPageSize = 50;
inline constexpr size_t kMaxPageSize = 1000;

// Routes one read-only request. Errors come back as {"error": message}
// with 400 (bad parameters), 404 (unknown path or id) or 405.
ApiResponse handle_request(const Store &store, std::string_view method, std::string_view path,
                           const QueryParams &params);

// Clusters grouped by facet similarity: each group starts at the largest
// remaining cluster and repeatedly absorbs the remaining cluster most
// similar to any member, while that similarity reaches the threshold.
std::vector<nlohmann::json> related_order(std::vector<nlohmann::json> clusters,
                                          double threshold = kDefaultLinkThreshold);

// HTTP front end. Requests are served from the committed store generation;
// a newer commit is picked up on the next request.
class ApiServer {
 public:
  explicit ApiServer(std::filesystem::path store_root);
  ~ApiServer();

  ApiServer(const ApiServer &) = delete;
  ApiServer &operator=(const ApiServer &) = delete;

  // Binds and returns the port; port 0 picks a free one.
  int bind(const std::string &host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  std::shared_ptr<const Store> snapshot();

  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::filesystem::path root_;
  std::mutex mutex_;
  std::shared_ptr<const Store> store_;
};

}  // namespace docnav

#endif  // DOCNAV_API_H_
