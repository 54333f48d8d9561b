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

// docnav: command line front end. Stage commands read and update a run
// directory; persist, report, query, persons and serve work on a store.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "docnav/api.h"
#include "docnav/pipeline.h"
#include "docnav/report.h"
#include "docnav/serialize.h"
#include "docnav/store.h"

namespace fs = std::filesystem;
using namespace docnav;

namespace {

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// The resources config used at ingest is remembered in the run directory.
fs::path resources_path(const fs::path &run_dir, const std::string &flag) {
  if (!flag.empty()) return flag;
  const fs::path meta = run_dir / "meta.json";
  if (fs::exists(meta)) {
    const json j = read_json(meta);
    if (j.contains("resources")) return j["resources"].get<std::string>();
  }
  throw Error("no resources config; pass --resources");
}

// Prints the warnings from index `from` on.
void report(const Diagnostics &d, size_t from = 0) {
  for (size_t i = from; i < d.warnings.size(); ++i)
    std::cerr << "warning: " << d.warnings[i] << '\n';
}

void print(const json &j) { std::cout << j.dump(2) << '\n'; }

kernels::ExecPolicy policy_of(bool serial) {
  return serial ? kernels::ExecPolicy::kSerial : kernels::ExecPolicy::kParallel;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Multilingual document navigation toolkit"};
  app.require_subcommand(1);

  // ingest
  std::string format = "txt", in_path, out_dir, language, run_id, timestamp, resources_flag;
  auto *ingest = app.add_subcommand("ingest", "Load a collection into a new run directory");
  ingest->add_option("--format", format, "txt or rss")->check(CLI::IsMember({"txt", "rss"}));
  ingest->add_option("--in", in_path, "Plaintext directory or RSS file")->required();
  ingest->add_option("--out", out_dir, "Run directory to create")->required();
  ingest->add_option("--language", language, "Keep only this language (forces RSS items)");
  ingest->add_option("--run-id", run_id, "Run identifier (default: run directory name)");
  ingest->add_option("--timestamp", timestamp, "ISO 8601 run time (default: now)");
  ingest->add_option("--resources", resources_flag, "Resources config JSON");

  // dedup
  std::string run_dir;
  double dup_threshold = kDefaultDuplicateThreshold;
  bool remove = false, serial = false;
  auto *dedup = app.add_subcommand("dedup", "Find near-duplicate documents");
  dedup->add_option("RUN_DIR", run_dir)->required();
  dedup->add_option("--threshold", dup_threshold)->check(CLI::Range(0.0, 1.0));
  dedup->add_flag("--remove", remove, "Drop the later member of every pair");
  dedup->add_flag("--serial", serial, "Use the serial kernel");

  // keywords
  std::string model_path, stop_path;
  size_t top = 100;
  auto *keywords = app.add_subcommand("keywords", "Extract keywords by log-likelihood keyness");
  keywords->add_option("RUN_DIR", run_dir)->required();
  keywords->add_option("--model", model_path, "Reference frequency TSV");
  keywords->add_option("--stoplist", stop_path, "Stop word list");
  keywords->add_option("--top", top);
  keywords->add_option("--resources", resources_flag);

  auto *geotag = app.add_subcommand("geotag", "Spot and resolve place names");
  geotag->add_option("RUN_DIR", run_dir)->required();
  geotag->add_option("--resources", resources_flag);

  double name_threshold = kDefaultNameThreshold;
  std::string store_dir;
  auto *names = app.add_subcommand("names", "Recognise person and organisation names");
  names->add_option("RUN_DIR", run_dir)->required();
  names->add_option("--resources", resources_flag);
  names->add_option("--threshold", name_threshold)->check(CLI::Range(0.0, 1.0));
  names->add_option("--store", store_dir, "Resolve against this store's identities");

  double cluster_threshold = kDefaultClusterThreshold, country_factor = 1.0;
  auto *cluster = app.add_subcommand("cluster", "Group documents by cosine similarity");
  cluster->add_option("RUN_DIR", run_dir)->required();
  cluster->add_option("--threshold", cluster_threshold)->check(CLI::Range(0.0, 1.0));
  cluster->add_option("--country-factor", country_factor);
  cluster->add_flag("--serial", serial);

  std::string term_list;
  auto *terms = app.add_subcommand("terms", "Match a specialist term list against clusters");
  terms->add_option("RUN_DIR", run_dir)->required();
  terms->add_option("--list", term_list, "Term list TSV");
  terms->add_option("--resources", resources_flag);

  std::string run_a, run_b;
  double link_threshold = kDefaultLinkThreshold;
  auto *xlink = app.add_subcommand("xlink", "Link clusters of two runs in different languages");
  xlink->add_option("RUN_A", run_a)->required();
  xlink->add_option("RUN_B", run_b)->required();
  xlink->add_option("--threshold", link_threshold)->check(CLI::Range(0.0, 1.0));
  xlink->add_option("--resources", resources_flag);

  auto *persist = app.add_subcommand("persist", "Commit a finished run directory to a store");
  persist->add_option("RUN_DIR", run_dir)->required();
  persist->add_option("--store", store_dir)->required();
  persist->add_option("--resources", resources_flag);

  std::string report_format = "html", report_out;
  std::vector<std::string> run_ids;
  auto *report_cmd = app.add_subcommand("report", "Render stored runs as JSON or HTML");
  report_cmd->add_option("RUN_ID", run_ids, "Runs to render (default: all)");
  report_cmd->add_option("--format", report_format)->check(CLI::IsMember({"json", "html"}));
  report_cmd->add_option("--store", store_dir)->required();
  report_cmd->add_option("--out", report_out)->required();

  std::string query_kind, query_key;
  auto *query = app.add_subcommand("query", "Look up postings in the store");
  query->add_option("KIND", query_kind)->required()->check(
      CLI::IsMember({"person", "keyword", "country", "date"}));
  query->add_option("KEY", query_key)->required();
  query->add_option("--store", store_dir)->required();

  std::string addr = "127.0.0.1:8080";
  auto *serve = app.add_subcommand("serve", "Serve the read-only JSON API");
  serve->add_option("STORE_DIR", store_dir)->required();
  serve->add_option("--addr", addr, "HOST:PORT");

  int64_t person_id = 0;
  std::string mode = "specific", corrections_path, endpoints_path;
  bool offline = false;
  auto *persons = app.add_subcommand("persons", "Inspect and curate person identities");
  persons->require_subcommand(1);
  auto *show = persons->add_subcommand("show", "Print a person record");
  show->add_option("ID", person_id)->required();
  show->add_option("--store", store_dir)->required();
  auto *related = persons->add_subcommand("related", "Rank related persons");
  related->add_option("ID", person_id)->required();
  related->add_option("--mode", mode)->check(CLI::IsMember({"specific", "frequent"}));
  related->add_option("--store", store_dir)->required();
  auto *correct = persons->add_subcommand("correct", "Apply merge/split corrections");
  correct->add_option("FILE", corrections_path)->required();
  correct->add_option("--store", store_dir)->required();
  auto *link = persons->add_subcommand("link", "Look up encyclopedia pages for all persons");
  link->add_option("--endpoints", endpoints_path, "Endpoint list JSON")->required();
  link->add_option("--store", store_dir)->required();
  link->add_flag("--offline", offline, "Use cached answers only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      LoadOptions options;
      if (!language.empty()) options.language = language;
      LoadResult loaded = load_collection(
          in_path, format == "rss" ? InputFormat::kRss : InputFormat::kPlaintextDir, options);
      report(loaded.diagnostics);
      if (!language.empty()) {
        std::erase_if(loaded.documents, [&](const Document &d) { return d.language != language; });
      }
      if (run_id.empty()) run_id = fs::path(out_dir).filename().string();
      RunArtifacts run = start_run(run_id, timestamp.empty() ? now_utc() : timestamp,
                                   std::move(loaded.documents), language);
      if (!resources_flag.empty()) {
        run.record.resource_versions = load_resources(resources_flag).versions;
        fs::create_directories(out_dir);
        write_json(fs::path(out_dir) / "meta.json",
                   json{{"resources", fs::absolute(resources_flag).string()}});
      }
      save_run_dir(out_dir, run);
      std::cout << run.documents.size() << " documents in run " << run.record.run_id << '\n';
    } else if (*dedup) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      run_dedup(run, {dup_threshold, remove, policy_of(serial)});
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      print(*run.duplicates);
    } else if (*keywords) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      Resources resources;
      if (!model_path.empty()) {
        resources.frequency.emplace(run.record.language,
                                    load_frequency_model(model_path, run.record.language));
        if (!stop_path.empty()) resources.stop_lists.emplace(run.record.language, load_stop_list(stop_path));
      } else {
        resources = load_resources(resources_path(run_dir, resources_flag));
      }
      KeywordOptions options;
      options.top_k = top;
      run_keywords(run, resources, options);
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      std::cout << run.keywords->size() << " keyword vectors\n";
    } else if (*geotag) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      run_geotag(run, load_resources(resources_path(run_dir, resources_flag)));
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      std::cout << run.places->size() << " place mentions\n";
    } else if (*names) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      IdentityRegistry registry;
      if (!store_dir.empty()) registry = Store(store_dir).registry();
      run_names(run, load_resources(resources_path(run_dir, resources_flag)), registry,
                name_threshold);
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      std::cout << run.names->size() << " name mentions\n";
    } else if (*cluster) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      ClusterStageOptions options;
      options.vectors.country_factor = country_factor;
      options.clustering.threshold = cluster_threshold;
      options.clustering.policy = policy_of(serial);
      run_cluster(run, options);
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      json out = json::array();
      for (const auto &c : *run.clusters)
        out.push_back({{"clusterId", c.cluster_id}, {"title", c.title}, {"members", c.members}});
      print(out);
    } else if (*terms) {
      RunArtifacts run = load_run_dir(run_dir);
      const size_t seen = run.diagnostics.warnings.size();
      Resources resources;
      if (!term_list.empty())
        resources.terms.emplace(load_term_list(term_list));
      else
        resources = load_resources(resources_path(run_dir, resources_flag));
      run_terms(run, resources);
      save_run_dir(run_dir, run);
      report(run.diagnostics, seen);
      print(*run.terms);
    } else if (*xlink) {
      RunArtifacts a = load_run_dir(run_a);
      RunArtifacts b = load_run_dir(run_b);
      // Both runs need ids from one registry for the name facet to match.
      const Resources resources = load_resources(resources_path(run_a, resources_flag));
      IdentityRegistry registry;
      reassign_identities(a, resources.known_names, registry);
      reassign_identities(b, resources.known_names, registry);
      LinkOptions options;
      options.threshold = link_threshold;
      auto links = run_xlink(a, b, options);
      save_run_dir(run_a, a);
      save_run_dir(run_b, b);
      print(links);
    } else if (*persist) {
      const RunArtifacts run = load_run_dir(run_dir);
      Store store(store_dir);
      const bool existed = store.has_run(run.record.run_id);
      store.persist_run(run, load_resources(resources_path(run_dir, resources_flag)));
      std::cout << (existed ? "already persisted " : "persisted ") << run.record.run_id
                << " (state " << store.state_hash() << ")\n";
    } else if (*report_cmd) {
      Store store(store_dir);
      auto files = render_report(store, run_ids, report_format_from(report_format), report_out);
      std::cout << files.size() << " files written to " << report_out << '\n';
    } else if (*query) {
      Store store(store_dir);
      json out = json::array();
      for (const auto &p : store.query(query_kind_from(query_kind), query_key)) out.push_back(p);
      print(out);
    } else if (*serve) {
      const auto colon = addr.rfind(':');
      if (colon == std::string::npos) throw Error("--addr must be HOST:PORT");
      ApiServer server(store_dir);
      const int port = server.bind(addr.substr(0, colon), std::stoi(addr.substr(colon + 1)));
      std::cout << "serving " << store_dir << " on " << addr.substr(0, colon) << ':' << port
                << std::endl;
      server.listen();
    } else if (*show || *related) {
      Store store(store_dir);
      std::string path = "/persons/" + std::to_string(person_id);
      QueryParams params;
      if (*related) {
        path += "/related";
        params.emplace("mode", mode);
      }
      ApiResponse r = handle_request(store, "GET", path, params);
      print(r.body);
      return r.status == 200 ? 0 : 1;
    } else if (*correct) {
      Store store(store_dir);
      store.apply(load_corrections(corrections_path));
      std::cout << "corrections applied\n";
    } else if (*link) {
      Store store(store_dir);
      LookupOptions options;
      options.offline = offline;
      store.link_encyclopedias(load_endpoints(endpoints_path), http_prober(), options);
      std::cout << "encyclopedia links updated\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
