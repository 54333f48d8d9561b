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

#include "docnav/report.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "docnav/serialize.h"
#include "docnav/text.h"

namespace docnav {

namespace fs = std::filesystem;

ReportFormat report_format_from(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "html") return ReportFormat::kHtml;
  throw Error("unknown report format '" + std::string(s) + "'");
}

std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string cluster_page(std::string_view id) { return "cluster-" + text::safe_file_name(id) + ".html"; }
std::string person_page(int64_t id) { return "person-" + std::to_string(id) + ".html"; }
std::string article_page(std::string_view run, std::string_view doc) {
  return "article-" + text::safe_file_name(std::string(run) + "/" + std::string(doc)) + ".html";
}
std::string anchor(std::string_view prefix, std::string_view id) {
  return std::string(prefix) + "-" + text::safe_file_name(id);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

class Page {
 public:
  explicit Page(std::string_view title) {
    out_ << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>" << html_escape(title)
         << "</title></head>\n<body>\n<p><a href=\"index.html\">All clusters</a></p>\n<h1>"
         << html_escape(title) << "</h1>\n";
  }
  Page &operator<<(std::string_view s) {
    out_ << s;
    return *this;
  }
  void save(const fs::path &path) {
    out_ << "</body></html>\n";
    std::ofstream f(path, std::ios::trunc);
    f << out_.str();
    if (!f) throw Error("cannot write " + path.string());
  }

 private:
  std::ostringstream out_;
};

std::string link(std::string_view href, std::string_view label) {
  return "<a href=\"" + html_escape(href) + "\">" + html_escape(label) + "</a>";
}

struct Site {
  std::set<std::string> clusters;
  std::set<int64_t> persons;
  std::map<int64_t, std::string> person_names;
  // article page -> byte offsets to anchor
  std::map<std::string, std::set<size_t>> anchors;
};

std::string cluster_ref(const Site &site, std::string_view id, std::string_view label) {
  if (site.clusters.count(std::string(id))) return link(cluster_page(id), label);
  return html_escape(label);
}

std::string person_ref(const Site &site, int64_t id, std::string_view label) {
  if (site.persons.count(id)) return link(person_page(id), label);
  return html_escape(label);
}

std::string kwic_line(const json &hit, std::string_view run_id) {
  const std::string doc = hit.at("docId");
  const std::string href =
      article_page(run_id, doc) + "#pos-" + std::to_string(hit.at("offset").get<size_t>());
  return "<li>" + html_escape(hit.at("left").get<std::string>()) + "<a href=\"" +
         html_escape(href) + "\"><b>" + html_escape(hit.at("matchedForm").get<std::string>()) +
         "</b></a>" + html_escape(hit.at("right").get<std::string>()) + "</li>\n";
}

void write_cluster(const Site &site, const json &c, const fs::path &path) {
  const std::string run_id = c.at("runId");
  Page page(c.at("title").get<std::string>());
  page << "<p>Cluster " << html_escape(c.at("clusterId").get<std::string>()) << ", "
       << std::to_string(c.at("size").get<size_t>()) << " articles, language "
       << html_escape(c.at("language").get<std::string>()) << "</p>\n";

  page << "<h2>Keywords</h2>\n<ol>\n";
  for (const auto &k : c.at("keywords"))
    page << "<li>" << html_escape(k.at("term").get<std::string>()) << " ("
         << fmt(k.at("keyness")) << ")</li>\n";
  page << "</ol>\n";

  page << "<h2>Names</h2>\n<ul>\n";
  std::map<int64_t, std::pair<std::string, std::set<std::string>>> names;
  for (const auto &n : c.at("names")) {
    if (n.at("personId").is_null()) continue;
    auto &entry = names[n["personId"].get<int64_t>()];
    if (entry.first.empty()) entry.first = n.at("surface");
    if (!n.at("trigger").is_null()) entry.second.insert(n["trigger"].get<std::string>());
  }
  for (const auto &[id, entry] : names) {
    const auto it = site.person_names.find(id);
    page << "<li>" << person_ref(site, id, it == site.person_names.end() ? entry.first : it->second);
    if (!entry.second.empty()) {
      std::string titles;
      for (const auto &t : entry.second) titles += (titles.empty() ? "" : "; ") + t;
      page << " <i>" << html_escape(titles) << "</i>";
    }
    page << "</li>\n";
  }
  page << "</ul>\n";

  page << "<h2>Terms</h2>\n<ul>\n";
  for (const auto &t : c.at("terms")) {
    const std::string id = t.at("termId");
    std::string forms;
    for (const auto &f : t.at("forms")) forms += (forms.empty() ? "" : "|") + f.get<std::string>();
    page << "<li><a href=\"#" << anchor("kwic", id) << "\">"
         << html_escape(t.value("displayForm", id)) << "</a> ["
         << std::to_string(t.at("count").get<size_t>()) << "] (" << html_escape(forms) << ")";
    if (t.contains("gloss") && !t["gloss"].get<std::string>().empty())
      page << " [" << html_escape(t["gloss"].get<std::string>()) << "]";
    page << "</li>\n";
  }
  page << "</ul>\n";

  page << "<h2>Places</h2>\n<ul>\n";
  std::map<int64_t, std::pair<json, size_t>> places;
  for (const auto &p : c.at("places")) {
    auto &entry = places[p.at("placeId").get<int64_t>()];
    if (entry.second++ == 0) entry.first = p;
  }
  for (const auto &[id, entry] : places) {
    page << "<li><a href=\"#" << anchor("place", std::to_string(id)) << "\">"
         << html_escape(entry.first.at("surface").get<std::string>()) << "</a> ["
         << html_escape(entry.first.value("gloss", "")) << ", "
         << html_escape(entry.first.at("countryCode").get<std::string>()) << "] x"
         << std::to_string(entry.second) << "</li>\n";
  }
  page << "</ul>\n<h2>Countries</h2>\n<table>\n<tr><th>Country</th><th>References</th><th>Keyness</th></tr>\n";
  for (const auto &k : c.at("countries"))
    page << "<tr><td>" << html_escape(k.value("name", k.at("code").get<std::string>()))
         << "</td><td>" << std::to_string(k.at("rawCount").get<size_t>()) << "</td><td>"
         << fmt(k.at("keyness")) << "</td></tr>\n";
  page << "</table>\n<h2>Map</h2>\n<script type=\"application/geo+json\" id=\"map\">\n"
       << html_escape(c.at("map").dump()) << "\n</script>\n";

  page << "<h2>Articles</h2>\n<ul>\n";
  for (const auto &a : c.at("articles"))
    page << "<li>" << link(article_page(run_id, a.at("docId").get<std::string>()),
                           a.value("title", a.at("docId").get<std::string>()))
         << "</li>\n";
  page << "</ul>\n";

  page << "<h2>Related clusters</h2>\n<ul>\n";
  for (const auto &l : c.at("links")) {
    const std::string target = l.at("cluster");
    page << "<li>" << cluster_ref(site, target, target) << " (" << fmt(l.at("score")) << ")</li>\n";
  }
  page << "</ul>\n";

  page << "<h2>Contexts</h2>\n";
  for (const auto &[term, hits] : c.at("kwic").items()) {
    page << "<h3 id=\"" << anchor("kwic", term) << "\">" << html_escape(term) << "</h3>\n<ul>\n";
    for (const auto &h : hits) page << kwic_line(h, run_id);
    page << "</ul>\n";
  }
  for (const auto &[id, entry] : places) {
    page << "<h3 id=\"" << anchor("place", std::to_string(id)) << "\">"
         << html_escape(entry.first.at("surface").get<std::string>()) << "</h3>\n<ul>\n";
    for (const auto &h : c.at("placeContexts"))
      if (h.at("placeId").get<int64_t>() == id) page << kwic_line(h, run_id);
    page << "</ul>\n";
  }
  page.save(path);
}

void write_article(const Document &doc, const std::set<size_t> &anchors, const fs::path &path) {
  Page page(doc.title.empty() ? doc.id : doc.title);
  page << "<p>" << html_escape(doc.source);
  if (doc.published) page << ", " << html_escape(*doc.published);
  page << "</p>\n<p>";
  size_t at = 0;
  for (size_t offset : anchors) {
    if (offset > doc.body.size()) continue;
    page << html_escape(std::string_view(doc.body).substr(at, offset - at)) << "<span id=\"pos-"
         << std::to_string(offset) << "\"></span>";
    at = offset;
  }
  page << html_escape(std::string_view(doc.body).substr(at)) << "</p>\n";
  page.save(path);
}

void write_person(const Store &store, const Site &site, const PersonRecord &p,
                  const fs::path &path) {
  Page page(p.canonical);
  page << "<p>Kind: " << html_escape(to_string(p.kind)) << "</p>\n<h2>Spellings</h2>\n<ul>\n";
  for (const auto &v : p.variants) page << "<li>" << html_escape(v) << "</li>\n";
  page << "</ul>\n<h2>Titles</h2>\n<ul>\n";
  for (const auto &t : p.titles) page << "<li>" << html_escape(t) << "</li>\n";
  page << "</ul>\n<h2>Encyclopedia</h2>\n<ul>\n";
  for (const auto &u : p.encyclopedia_urls) page << "<li>" << link(u, u) << "</li>\n";
  page << "</ul>\n";
  for (RelatedMode mode : {RelatedMode::kFrequent, RelatedMode::kSpecific}) {
    page << "<h2>Related persons ("
         << (mode == RelatedMode::kFrequent ? "most frequent" : "most specific") << ")</h2>\n<ol>\n";
    for (const auto &r : related_persons(p.person_id, store.cooccurrence(), store.registry(), mode)) {
      const PersonRecord *other = store.registry().find(r.person_id);
      page << "<li>" << person_ref(site, r.person_id, other ? other->canonical : std::to_string(r.person_id))
           << " (" << std::to_string(r.count) << ", " << fmt(r.score) << ")</li>\n";
    }
    page << "</ol>\n";
  }
  page << "<h2>Clusters</h2>\n<ul>\n";
  std::set<std::string> seen;
  for (const auto &posting : store.query(QueryKind::kPerson, std::to_string(p.person_id))) {
    if (posting.cluster_id.empty() || !seen.insert(posting.cluster_id).second) continue;
    page << "<li>" << cluster_ref(site, posting.cluster_id, posting.cluster_id) << "</li>\n";
  }
  page << "</ul>\n";
  page.save(path);
}

}  // namespace

std::vector<fs::path> render_report(const Store &store, std::vector<std::string> run_ids,
                                    ReportFormat format, const fs::path &out_dir) {
  if (run_ids.empty()) {
    for (const auto &r : store.runs()) run_ids.push_back(r.run_id);
  }
  std::vector<json> runs;
  for (const auto &id : run_ids) runs.push_back(store.run_json(id));
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  if (format == ReportFormat::kJson) {
    for (const auto &run : runs) {
      const std::string id = run["run"]["runId"];
      const fs::path dir = out_dir / text::safe_file_name(id);
      fs::create_directories(dir / "clusters");
      write_json(dir / "run.json", run);
      written.push_back(dir / "run.json");
      for (const auto &c : run["clusters"]) {
        auto file = dir / "clusters" / (text::safe_file_name(c["clusterId"].get<std::string>()) + ".json");
        write_json(file, c);
        written.push_back(file);
      }
    }
    return written;
  }

  Site site;
  std::vector<const json *> clusters;
  for (const auto &run : runs) {
    for (const auto &c : run["clusters"]) {
      clusters.push_back(&c);
      site.clusters.insert(c["clusterId"]);
      const std::string run_id = c["runId"];
      for (const auto &n : c["names"]) {
        if (n["personId"].is_null()) continue;
        const int64_t id = store.registry().canonical_id(n["personId"].get<int64_t>());
        if (const PersonRecord *p = store.registry().find(id)) {
          site.persons.insert(id);
          site.person_names[id] = p->canonical;
        }
      }
      for (const auto &[term, hits] : c["kwic"].items())
        for (const auto &h : hits)
          site.anchors[article_page(run_id, h["docId"].get<std::string>())].insert(h["offset"].get<size_t>());
      for (const auto &h : c["placeContexts"])
        site.anchors[article_page(run_id, h["docId"].get<std::string>())].insert(h["offset"].get<size_t>());
    }
  }
  std::stable_sort(clusters.begin(), clusters.end(), [](const json *a, const json *b) {
    const size_t sa = (*a)["size"], sb = (*b)["size"];
    if (sa != sb) return sa > sb;
    return (*a)["clusterId"].get<std::string>() < (*b)["clusterId"].get<std::string>();
  });

  Page index("Clusters");
  index << "<ol>\n";
  for (const json *c : clusters) {
    const std::string id = (*c)["clusterId"];
    index << "<li>" << link(cluster_page(id), (*c)["title"].get<std::string>()) << " ("
          << std::to_string((*c)["size"].get<size_t>()) << ", "
          << html_escape((*c)["language"].get<std::string>()) << ")</li>\n";
  }
  index << "</ol>\n";
  index.save(out_dir / "index.html");
  written.push_back(out_dir / "index.html");

  for (const json *c : clusters) {
    json local = *c;
    // Name links resolve through merges to the surviving identity.
    for (auto &n : local["names"])
      if (!n["personId"].is_null())
        n["personId"] = store.registry().canonical_id(n["personId"].get<int64_t>());
    auto path = out_dir / cluster_page((*c)["clusterId"].get<std::string>());
    write_cluster(site, local, path);
    written.push_back(path);
  }
  for (const auto &run : runs) {
    const std::string run_id = run["run"]["runId"];
    for (const auto &doc : store.documents(run_id)) {
      const std::string page = article_page(run_id, doc.id);
      auto it = site.anchors.find(page);
      write_article(doc, it == site.anchors.end() ? std::set<size_t>{} : it->second, out_dir / page);
      written.push_back(out_dir / page);
    }
  }
  for (int64_t id : site.persons) {
    auto path = out_dir / person_page(id);
    write_person(store, site, *store.registry().find(id), path);
    written.push_back(path);
  }
  return written;
}

}  // namespace docnav
