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

#include "httplib.h"

#include <cstdio>
#include <fstream>

#include "docnav/entities.h"

namespace docnav {

std::optional<ProbeStatus> EncyclopediaCache::get(const std::string &url) const {
  auto it = entries_.find(url);
  if (it == entries_.end()) return std::nullopt;
  return it->second ? ProbeStatus::kExists : ProbeStatus::kAbsent;
}

void EncyclopediaCache::put(const std::string &url, ProbeStatus status) {
  if (status == ProbeStatus::kUnknown) return;
  entries_[url] = status == ProbeStatus::kExists;
}

nlohmann::json EncyclopediaCache::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[url, exists] : entries_) j[url] = exists;
  return j;
}

EncyclopediaCache EncyclopediaCache::from_json(const nlohmann::json &j) {
  EncyclopediaCache c;
  for (const auto &[url, exists] : j.items()) c.entries_[url] = exists.get<bool>();
  return c;
}

std::string encyclopedia_slug(std::string_view name) {
  std::string out;
  for (unsigned char c : name) {
    if (c == ' ') {
      out += '_';
    } else if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
               c == '-' || c == '_' || c == '.' || c == '~' || c == '(' || c == ')' ||
               c == '\'' || c == ',') {
      out += static_cast<char>(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof(buf), "%%%02X", c);
      out += buf;
    }
  }
  return out;
}

std::string expand_endpoint(const EncyclopediaEndpoint &endpoint, std::string_view name) {
  std::string url = endpoint.url_template;
  const std::string slug = encyclopedia_slug(name);
  for (size_t pos = url.find("{slug}"); pos != std::string::npos;
       pos = url.find("{slug}", pos + slug.size()))
    url.replace(pos, 6, slug);
  return url;
}

std::vector<EncyclopediaEndpoint> load_endpoints(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read endpoint config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    throw Error(path.string() + ": " + e.what());
  }
  std::vector<EncyclopediaEndpoint> out;
  for (const auto &e : j) {
    EncyclopediaEndpoint ep{e.value("language", std::string()), e.value("url", std::string())};
    if (ep.url_template.find("{slug}") == std::string::npos)
      throw Error(path.string() + ": endpoint URL without {slug}: " + ep.url_template);
    out.push_back(std::move(ep));
  }
  return out;
}

Prober http_prober(int timeout_seconds) {
  return [timeout_seconds](const std::string &url) {
    const size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) return ProbeStatus::kUnknown;
    const size_t path_start = url.find('/', scheme_end + 3);
    const std::string base = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    try {
      httplib::Client client(base);
      client.set_connection_timeout(timeout_seconds);
      client.set_read_timeout(timeout_seconds);
      client.set_follow_location(true);
      auto res = client.Head(path);
      if (!res) return ProbeStatus::kUnknown;
      if (res->status >= 200 && res->status < 300) return ProbeStatus::kExists;
      if (res->status == 404 || res->status == 410) return ProbeStatus::kAbsent;
    } catch (const std::exception &) {
    }
    return ProbeStatus::kUnknown;
  };
}

std::vector<std::string> encyclopedia_lookup(const PersonRecord &person,
                                             const std::vector<EncyclopediaEndpoint> &endpoints,
                                             EncyclopediaCache &cache, const Prober &prober,
                                             const LookupOptions &options) {
  std::vector<std::string> names;
  if (!person.canonical.empty()) names.push_back(person.canonical);
  for (const auto &v : person.variants) {
    if (v != person.canonical) names.push_back(v);
  }

  std::vector<std::string> found;
  for (const auto &endpoint : endpoints) {
    for (const auto &name : names) {
      const std::string url = expand_endpoint(endpoint, name);
      std::optional<ProbeStatus> status = cache.get(url);
      if (!status) {
        if (options.offline) continue;
        status = prober(url);
        cache.put(url, *status);
      }
      if (*status == ProbeStatus::kExists) {
        found.push_back(url);
        break;
      }
    }
  }
  return found;
}

}  // namespace docnav
