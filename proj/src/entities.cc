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

#include "docnav/entities.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "docnav/keyness.h"
#include "docnav/text.h"

namespace docnav {

namespace {

std::string token_key(std::string_view surface) {
  std::string key;
  for (const auto &t : tokenize(surface)) {
    if (!key.empty()) key += ' ';
    key += t.lowercase;
  }
  return key;
}

// Name tokens may be joined by whitespace or a single hyphen ("al-Baradei").
bool name_joined(const Document &doc, size_t left, size_t right) {
  const Token &a = doc.tokens[left];
  const Token &b = doc.tokens[right];
  const size_t from = a.offset + a.length;
  if (b.offset <= from) return false;
  std::string_view gap = std::string_view(doc.body).substr(from, b.offset - from);
  if (gap == "-" || gap == "‐" || gap == "‑") return true;
  return text::trim(gap).empty();
}

std::optional<int64_t> parse_id(std::string_view s) {
  s = text::trim(s);
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::string normalized_key(std::string_view name) {
  return text::encode(normalize_name(name));
}

}  // namespace

void KnownNames::add(KnownName name) {
  std::string key = token_key(name.variant);
  if (key.empty()) throw Error("empty known name");
  if (index_.count(key)) return;
  index_.emplace(std::move(key), names_.size());
  names_.push_back(std::move(name));
}

const KnownName *KnownNames::find(std::string_view surface) const {
  auto it = index_.find(token_key(surface));
  return it == index_.end() ? nullptr : &names_[it->second];
}

KnownNames load_known_names(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read known names " + path.string());
  KnownNames known;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto cols = text::split(line, '\t');
    if (cols.size() != 3)
      throw ParseError(path.string(), line_no, "expected personId, kind, variant");
    auto id = parse_id(cols[0]);
    if (!id || *id <= 0) throw ParseError(path.string(), line_no, "invalid personId");
    KnownName name;
    name.person_id = *id;
    try {
      name.kind = entity_kind_from(text::trim(cols[1]));
    } catch (const Error &e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    name.variant = std::string(text::trim(cols[2]));
    if (name.variant.empty()) throw ParseError(path.string(), line_no, "empty variant");
    known.add(std::move(name));
  }
  return known;
}

std::vector<NameMention> recognize_names(const Document &doc, const KnownNames &known,
                                         const TriggerSet &triggers,
                                         const RecognizeOptions &options) {
  std::vector<NameMention> mentions;
  const size_t n = doc.tokens.size();
  if (n == 0) return mentions;

  const auto trigger_matches = triggers.find_all(doc);
  std::vector<int> trigger_at(n, -1);
  for (size_t t = 0; t < trigger_matches.size(); ++t) {
    for (size_t i = trigger_matches[t].begin; i < trigger_matches[t].end; ++i)
      trigger_at[i] = static_cast<int>(t);
  }
  auto upper = [&](size_t i) {
    return trigger_at[i] < 0 && text::is_upper_initial(doc.tokens[i].surface);
  };

  auto emit = [&](size_t begin, size_t end, EntityKind kind,
                  std::optional<std::string> trigger) {
    NameMention m;
    m.doc_id = doc.id;
    m.offset = doc.tokens[begin].offset;
    const Token &last = doc.tokens[end - 1];
    m.length = last.offset + last.length - m.offset;
    m.surface = doc.body.substr(m.offset, m.length);
    m.kind = kind;
    m.trigger = std::move(trigger);
    mentions.push_back(std::move(m));
  };
  auto trigger_text = [&](const TriggerMatch &t) {
    const size_t from = doc.tokens[t.begin].offset;
    const Token &last = doc.tokens[t.end - 1];
    return doc.body.substr(from, last.offset + last.length - from);
  };

  size_t i = 0;
  while (i < n) {
    if (!upper(i)) {
      ++i;
      continue;
    }
    size_t end = i + 1;
    while (end < n && name_joined(doc, end - 1, end)) {
      if (upper(end)) {
        ++end;
      } else {
        // A run of particles counts only when a capitalised token follows.
        size_t k = end;
        while (k < n && trigger_at[k] < 0 && options.infixes.count(doc.tokens[k].lowercase) &&
               name_joined(doc, k - 1, k))
          ++k;
        if (k == end || k >= n || !upper(k) || !name_joined(doc, k - 1, k)) break;
        end = k + 1;
      }
    }
    const size_t begin = i;
    i = end;

    const std::string surface =
        doc.body.substr(doc.tokens[begin].offset,
                        doc.tokens[end - 1].offset + doc.tokens[end - 1].length -
                            doc.tokens[begin].offset);
    const KnownName *k = known.find(surface);

    std::optional<TriggerMatch> licence;
    if (begin > 0 && trigger_at[begin - 1] >= 0) {
      const TriggerMatch &t = trigger_matches[trigger_at[begin - 1]];
      if (t.end == begin && t.pattern->position == TriggerPosition::kBefore &&
          space_separated(doc, begin - 1, begin))
        licence = t;
    }
    if (!licence && end < n && trigger_at[end] >= 0) {
      const TriggerMatch &t = trigger_matches[trigger_at[end]];
      if (t.begin == end && t.pattern->position == TriggerPosition::kAfter &&
          space_separated(doc, end - 1, end))
        licence = t;
    }

    if (k || licence) {
      EntityKind kind = k ? k->kind : licence->pattern->entity;
      emit(begin, end, kind, licence ? std::optional(trigger_text(*licence)) : std::nullopt);
      continue;
    }

    // Longest known name inside an unlicensed run.
    bool found = false;
    for (size_t len = end - begin - 1; len >= 1 && !found; --len) {
      for (size_t s = begin; s + len <= end; ++s) {
        const std::string part = doc.body.substr(
            doc.tokens[s].offset,
            doc.tokens[s + len - 1].offset + doc.tokens[s + len - 1].length -
                doc.tokens[s].offset);
        if (const KnownName *sub = known.find(part);
            sub && upper(s) && upper(s + len - 1)) {
          emit(s, s + len, sub->kind, std::nullopt);
          found = true;
          break;
        }
      }
    }
  }
  return mentions;
}

std::u32string normalize_name(std::string_view surface) {
  const std::u32string chars =
      text::decode(text::strip_diacritics(text::fold_case(surface)));
  std::u32string out;
  bool pending_separator = false;
  for (char32_t c : chars) {
    if (text::is_word_char(c)) {
      if (pending_separator && !out.empty()) out.push_back(U'_');
      pending_separator = false;
      out.push_back(c);
    } else {
      pending_separator = true;
    }
  }
  if (out.empty()) return out;
  return U"_" + out + U"_";
}

std::map<std::string, int> name_ngrams(std::string_view surface) {
  std::map<std::string, int> grams;
  const std::u32string norm = normalize_name(surface);
  for (size_t n : {2, 3}) {
    if (norm.size() < n) continue;
    for (size_t i = 0; i + n <= norm.size(); ++i)
      ++grams[text::encode(std::u32string_view(norm).substr(i, n))];
  }
  return grams;
}

double name_similarity(std::string_view a, std::string_view b) {
  const auto ga = name_ngrams(a);
  const auto gb = name_ngrams(b);
  if (ga.empty() || gb.empty()) throw Error("name similarity of an empty name");
  if (text::script_of(a) != text::script_of(b)) return 0.0;
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (const auto &[g, c] : ga) {
    na += static_cast<double>(c) * c;
    if (auto it = gb.find(g); it != gb.end()) dot += static_cast<double>(c) * it->second;
  }
  for (const auto &[g, c] : gb) nb += static_cast<double>(c) * c;
  return std::clamp(dot / std::sqrt(na * nb), 0.0, 1.0);
}

namespace {

struct UnionFind {
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  size_t find(size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<size_t> parent;
};

}  // namespace

std::vector<std::vector<std::string>> merge_variants(const std::vector<std::string> &names,
                                                     double threshold) {
  std::vector<std::string> unique(names);
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  UnionFind uf(unique.size());
  for (size_t i = 0; i < unique.size(); ++i) {
    for (size_t j = i + 1; j < unique.size(); ++j) {
      if (name_similarity(unique[i], unique[j]) >= threshold) uf.join(i, j);
    }
  }
  std::map<size_t, std::vector<std::string>> groups;
  for (size_t i = 0; i < unique.size(); ++i) groups[uf.find(i)].push_back(unique[i]);
  std::vector<std::vector<std::string>> out;
  for (auto &[root, members] : groups) out.push_back(std::move(members));
  return out;
}

std::string choose_canonical(const std::set<std::string> &variants) {
  std::string best;
  size_t best_len = 0;
  for (const auto &v : variants) {
    const size_t len = text::char_count(v);
    if (best.empty() || len > best_len) {
      best = v;
      best_len = len;
    }
  }
  return best;
}

const PersonRecord *IdentityRegistry::find(int64_t id) const {
  auto it = persons_.find(canonical_id(id));
  return it == persons_.end() ? nullptr : &it->second;
}

PersonRecord *IdentityRegistry::find(int64_t id) {
  auto it = persons_.find(canonical_id(id));
  return it == persons_.end() ? nullptr : &it->second;
}

int64_t IdentityRegistry::canonical_id(int64_t id) const {
  for (auto it = aliases_.find(id); it != aliases_.end(); it = aliases_.find(id))
    id = it->second;
  return id;
}

int64_t IdentityRegistry::mint(EntityKind kind) {
  const int64_t id = next_id_++;
  PersonRecord &p = persons_[id];
  p.person_id = id;
  p.kind = kind;
  return id;
}

void IdentityRegistry::add_variant(int64_t id, const std::string &variant) {
  PersonRecord &p = persons_.at(id);
  p.variants.insert(variant);
  p.canonical = choose_canonical(p.variants);
  variant_owner_.emplace(normalized_key(variant), id);
}

void IdentityRegistry::seed(const KnownNames &known) {
  for (const auto &k : known.all()) {
    PersonRecord &p = persons_[k.person_id];
    p.person_id = k.person_id;
    p.kind = k.kind;
    add_variant(k.person_id, k.variant);
    next_id_ = std::max(next_id_, k.person_id + 1);
  }
}

std::map<std::string, int64_t> IdentityRegistry::assign(const std::vector<std::string> &names,
                                                        double threshold, EntityKind kind) {
  std::vector<std::string> fresh;
  std::map<std::string, int64_t> out;
  for (const auto &name : names) {
    if (normalize_name(name).empty() || out.count(name)) continue;
    if (auto it = variant_owner_.find(normalized_key(name)); it != variant_owner_.end()) {
      out[name] = canonical_id(it->second);
      continue;
    }
    if (std::find(fresh.begin(), fresh.end(), name) == fresh.end()) fresh.push_back(name);
  }
  std::sort(fresh.begin(), fresh.end());

  // Existing variants, one entry per live identity variant.
  std::vector<std::pair<std::string, int64_t>> existing;
  for (const auto &[id, p] : persons_) {
    for (const auto &v : p.variants) existing.emplace_back(v, id);
  }

  UnionFind uf(fresh.size());
  for (size_t i = 0; i < fresh.size(); ++i) {
    for (size_t j = i + 1; j < fresh.size(); ++j) {
      if (name_similarity(fresh[i], fresh[j]) >= threshold) uf.join(i, j);
    }
  }
  // Best existing match of each new name.
  std::vector<std::optional<std::pair<double, int64_t>>> nearest(fresh.size());
  for (size_t i = 0; i < fresh.size(); ++i) {
    for (const auto &[variant, id] : existing) {
      const double s = name_similarity(fresh[i], variant);
      if (s < threshold) continue;
      if (!nearest[i] || s > nearest[i]->first ||
          (s == nearest[i]->first && id < nearest[i]->second))
        nearest[i] = std::pair(s, id);
    }
  }

  std::map<size_t, std::vector<size_t>> components;
  for (size_t i = 0; i < fresh.size(); ++i) components[uf.find(i)].push_back(i);
  for (const auto &[root, members] : components) {
    std::optional<std::pair<double, int64_t>> component_best;
    for (size_t i : members) {
      if (!nearest[i]) continue;
      if (!component_best || nearest[i]->first > component_best->first ||
          (nearest[i]->first == component_best->first &&
           nearest[i]->second < component_best->second))
        component_best = nearest[i];
    }
    const int64_t fallback = component_best ? component_best->second : mint(kind);
    for (size_t i : members) {
      const int64_t id = nearest[i] ? nearest[i]->second : fallback;
      add_variant(id, fresh[i]);
      out[fresh[i]] = id;
    }
  }
  return out;
}

std::optional<int64_t> IdentityRegistry::resolve(std::string_view name, double threshold) const {
  if (normalize_name(name).empty()) return std::nullopt;
  if (auto it = variant_owner_.find(normalized_key(name)); it != variant_owner_.end())
    return canonical_id(it->second);
  std::optional<std::pair<double, int64_t>> best;
  for (const auto &[id, p] : persons_) {
    for (const auto &v : p.variants) {
      const double s = name_similarity(name, v);
      if (s >= threshold && (!best || s > best->first)) best = std::pair(s, id);
    }
  }
  if (!best) return std::nullopt;
  return best->second;
}

void IdentityRegistry::add_title(int64_t id, const std::string &title) {
  if (PersonRecord *p = find(id)) p->titles.insert(title);
}

namespace {

void insert_sorted(std::vector<std::string> &v, const std::string &value) {
  auto it = std::lower_bound(v.begin(), v.end(), value);
  if (it == v.end() || *it != value) v.insert(it, value);
}

}  // namespace

void IdentityRegistry::add_posting(int64_t id, const std::string &article_id,
                                   const std::string &cluster_id) {
  PersonRecord *p = find(id);
  if (!p) throw NotFound("unknown person " + std::to_string(id));
  if (!article_id.empty()) insert_sorted(p->article_ids, article_id);
  if (!cluster_id.empty()) insert_sorted(p->cluster_ids, cluster_id);
}

void IdentityRegistry::merge(int64_t into, int64_t from) {
  into = canonical_id(into);
  from = canonical_id(from);
  if (into == from) return;
  PersonRecord *target = find(into);
  PersonRecord *source = find(from);
  if (!target || !source)
    throw NotFound("merge of unknown person " + std::to_string(target ? from : into));
  for (const auto &v : source->variants) {
    target->variants.insert(v);
    variant_owner_[normalized_key(v)] = into;
  }
  target->canonical = choose_canonical(target->variants);
  target->titles.insert(source->titles.begin(), source->titles.end());
  for (const auto &u : source->encyclopedia_urls) {
    if (std::find(target->encyclopedia_urls.begin(), target->encyclopedia_urls.end(), u) ==
        target->encyclopedia_urls.end())
      target->encyclopedia_urls.push_back(u);
  }
  for (const auto &a : source->article_ids) insert_sorted(target->article_ids, a);
  for (const auto &c : source->cluster_ids) insert_sorted(target->cluster_ids, c);
  persons_.erase(from);
  aliases_[from] = into;
}

int64_t IdentityRegistry::split(int64_t id, const std::vector<std::string> &variants) {
  id = canonical_id(id);
  PersonRecord *source = find(id);
  if (!source) throw NotFound("split of unknown person " + std::to_string(id));
  for (const auto &v : variants) {
    if (!source->variants.count(v))
      throw Error("person " + std::to_string(id) + " has no variant '" + v + "'");
  }
  if (variants.size() >= source->variants.size())
    throw Error("split would leave person " + std::to_string(id) + " without variants");
  const int64_t fresh = mint(source->kind);
  source = find(id);
  for (const auto &v : variants) {
    source->variants.erase(v);
    variant_owner_.erase(normalized_key(v));
    add_variant(fresh, v);
  }
  source->canonical = choose_canonical(source->variants);
  return fresh;
}

nlohmann::json IdentityRegistry::to_json() const {
  nlohmann::json persons = nlohmann::json::array();
  for (const auto &[id, p] : persons_) {
    persons.push_back({{"personId", id},
                       {"kind", to_string(p.kind)},
                       {"canonical", p.canonical},
                       {"variants", p.variants},
                       {"titles", p.titles},
                       {"encyclopediaUrls", p.encyclopedia_urls},
                       {"articleIds", p.article_ids},
                       {"clusterIds", p.cluster_ids}});
  }
  nlohmann::json aliases = nlohmann::json::array();
  for (const auto &[from, into] : aliases_) aliases.push_back({from, into});
  return {{"nextId", next_id_}, {"persons", persons}, {"aliases", aliases}};
}

IdentityRegistry IdentityRegistry::from_json(const nlohmann::json &j) {
  IdentityRegistry r;
  r.next_id_ = j.value("nextId", int64_t{1});
  for (const auto &p : j.value("persons", nlohmann::json::array())) {
    PersonRecord rec;
    rec.person_id = p.at("personId").get<int64_t>();
    rec.kind = entity_kind_from(p.value("kind", std::string("person")));
    rec.canonical = p.value("canonical", std::string());
    rec.variants = p.value("variants", std::set<std::string>());
    rec.titles = p.value("titles", std::set<std::string>());
    rec.encyclopedia_urls = p.value("encyclopediaUrls", std::vector<std::string>());
    rec.article_ids = p.value("articleIds", std::vector<std::string>());
    rec.cluster_ids = p.value("clusterIds", std::vector<std::string>());
    for (const auto &v : rec.variants) r.variant_owner_.emplace(normalized_key(v), rec.person_id);
    r.next_id_ = std::max(r.next_id_, rec.person_id + 1);
    r.persons_.emplace(rec.person_id, std::move(rec));
  }
  for (const auto &a : j.value("aliases", nlohmann::json::array()))
    r.aliases_[a.at(0).get<int64_t>()] = a.at(1).get<int64_t>();
  return r;
}

std::vector<Correction> load_corrections(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read corrections " + path.string());
  std::vector<Correction> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    std::istringstream ss{std::string(trimmed)};
    std::string verb, first;
    ss >> verb >> first;
    Correction c;
    auto id = parse_id(first);
    if (!id) throw ParseError(path.string(), line_no, "expected a person id");
    c.first = *id;
    std::string rest;
    std::getline(ss, rest);
    if (verb == "merge") {
      auto second = parse_id(rest);
      if (!second) throw ParseError(path.string(), line_no, "merge needs two person ids");
      c.kind = Correction::Kind::kMerge;
      c.second = *second;
    } else if (verb == "split") {
      c.kind = Correction::Kind::kSplit;
      for (const auto &v : text::split(rest, '|')) {
        if (!text::trim(v).empty()) c.variants.emplace_back(text::trim(v));
      }
      if (c.variants.empty()) throw ParseError(path.string(), line_no, "split needs variants");
    } else {
      throw ParseError(path.string(), line_no, "unknown directive '" + verb + "'");
    }
    out.push_back(std::move(c));
  }
  return out;
}

void apply_corrections(IdentityRegistry &registry, const std::vector<Correction> &corrections) {
  for (const auto &c : corrections) {
    if (c.kind == Correction::Kind::kMerge) {
      registry.merge(c.first, c.second);
    } else {
      registry.split(c.first, c.variants);
    }
  }
}

size_t CoOccurrenceStore::add_cluster(const std::string &run_id, const std::string &cluster_id,
                                      const std::set<int64_t> &persons) {
  if (!processed_.insert(run_id + "\x1f" + cluster_id).second) return 0;
  ++total_;
  for (int64_t p : persons) ++marginals_[p];
  size_t added = 0;
  for (auto a = persons.begin(); a != persons.end(); ++a) {
    for (auto b = std::next(a); b != persons.end(); ++b) {
      ++pairs_[{*a, *b}];
      ++added;
    }
  }
  return added;
}

size_t CoOccurrenceStore::count(int64_t a, int64_t b) const {
  if (a == b) return 0;
  auto it = pairs_.find({std::min(a, b), std::max(a, b)});
  return it == pairs_.end() ? 0 : it->second;
}

size_t CoOccurrenceStore::clusters_with(int64_t person) const {
  auto it = marginals_.find(person);
  return it == marginals_.end() ? 0 : it->second;
}

std::vector<std::pair<int64_t, size_t>> CoOccurrenceStore::partners(int64_t person) const {
  std::vector<std::pair<int64_t, size_t>> out;
  for (const auto &[pair, n] : pairs_) {
    if (pair.first == person) out.emplace_back(pair.second, n);
    if (pair.second == person) out.emplace_back(pair.first, n);
  }
  return out;
}

nlohmann::json CoOccurrenceStore::to_json() const {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto &[p, n] : pairs_) pairs.push_back({p.first, p.second, n});
  nlohmann::json marginals = nlohmann::json::array();
  for (const auto &[p, n] : marginals_) marginals.push_back({p, n});
  return {{"processed", processed_}, {"pairs", pairs}, {"marginals", marginals},
          {"totalClusters", total_}};
}

CoOccurrenceStore CoOccurrenceStore::from_json(const nlohmann::json &j) {
  CoOccurrenceStore s;
  s.processed_ = j.value("processed", std::set<std::string>());
  for (const auto &p : j.value("pairs", nlohmann::json::array()))
    s.pairs_[{p.at(0).get<int64_t>(), p.at(1).get<int64_t>()}] = p.at(2).get<size_t>();
  for (const auto &m : j.value("marginals", nlohmann::json::array()))
    s.marginals_[m.at(0).get<int64_t>()] = m.at(1).get<size_t>();
  s.total_ = j.value("totalClusters", size_t{0});
  return s;
}

size_t update_cooccurrence(CoOccurrenceStore &store, const std::string &run_id,
                           const std::vector<ClusterPersons> &clusters) {
  size_t added = 0;
  for (const auto &c : clusters) added += store.add_cluster(run_id, c.cluster_id, c.persons);
  return added;
}

std::vector<RelatedPerson> related_persons(int64_t person_id, const CoOccurrenceStore &store,
                                           const IdentityRegistry &registry,
                                           RelatedMode mode) {
  const int64_t id = registry.canonical_id(person_id);
  if (!registry.find(id) && store.clusters_with(id) == 0)
    throw NotFound("unknown person " + std::to_string(person_id));

  const double total = static_cast<double>(store.total_clusters());
  const double with_person = static_cast<double>(store.clusters_with(id));
  std::vector<RelatedPerson> out;
  for (const auto &[other, shared] : store.partners(id)) {
    RelatedPerson r{other, shared, static_cast<double>(shared)};
    if (mode == RelatedMode::kSpecific) {
      const double with_other = static_cast<double>(store.clusters_with(other));
      r.score = log_likelihood(static_cast<double>(shared), with_person,
                               with_other - static_cast<double>(shared), total - with_person);
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const RelatedPerson &a, const RelatedPerson &b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.count != b.count) return a.count > b.count;
    return a.person_id < b.person_id;
  });
  return out;
}

}  // namespace docnav
