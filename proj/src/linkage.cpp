// Copyright 2026 The progeval Authors.
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

#include "progeval/linkage.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>

#include "progeval/delimited.hpp"
#include "progeval/text.hpp"

namespace progeval {
namespace {

bool is_particle(std::string_view token) {
  static const std::set<std::string_view> kParticles = {
      "de", "del", "la", "las", "los", "da", "das", "do", "dos", "di", "du",
      "van", "von", "der", "den", "le", "lo", "st", "san", "mac"};
  return kParticles.count(token) > 0;
}

bool is_conjunction(std::string_view token) {
  return token == "y" || token == "i" || token == "e";
}

// First UTF-8 character of a non-empty token.
std::string first_char(std::string_view token) {
  const auto lead = static_cast<unsigned char>(token.front());
  std::size_t length = 1;
  if ((lead & 0xE0) == 0xC0) length = 2;
  else if ((lead & 0xF0) == 0xE0) length = 3;
  else if ((lead & 0xF8) == 0xF0) length = 4;
  return std::string(token.substr(0, std::min(length, token.size())));
}

std::vector<std::string> tokens_of(std::string_view normalized, bool split_hyphens) {
  std::vector<std::string> out;
  std::string current;
  for (char c : normalized) {
    if (c == ' ' || (split_hyphens && c == '-')) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// "de la fuente garcia" -> {"de la fuente", "garcia"}; "ramon y cajal" -> {"ramon", "cajal"}.
std::vector<std::string> surname_components(std::string_view surname) {
  std::vector<std::string> components;
  std::string prefix;
  for (const auto& token : tokens_of(surname, /*split_hyphens=*/false)) {
    if (is_conjunction(token)) continue;
    if (is_particle(token)) {
      prefix += token;
      prefix += ' ';
      continue;
    }
    components.push_back(prefix + token);
    prefix.clear();
  }
  if (!prefix.empty()) {
    prefix.pop_back();
    if (components.empty()) {
      components.push_back(prefix);
    } else {
      components.back() += ' ' + prefix;
    }
  }
  return components;
}

class VariantCollector {
 public:
  explicit VariantCollector(std::string researcher_id) : researcher_id_(std::move(researcher_id)) {}

  void add(std::string variant, VariantKind kind) {
    if (variant.empty()) return;
    auto [it, inserted] = kinds_.emplace(std::move(variant), kind);
    if (!inserted && kind < it->second) it->second = kind;
  }

  std::vector<NameVariant> finish() && {
    std::vector<NameVariant> out;
    out.reserve(kinds_.size());
    for (auto& [variant, kind] : kinds_) out.push_back({variant, researcher_id_, kind});
    return out;
  }

 private:
  std::string researcher_id_;
  std::map<std::string, VariantKind> kinds_;
};

bool contains_any(std::span<const std::string> haystacks, std::span<const std::string> needles) {
  for (const auto& hay : haystacks) {
    for (const auto& needle : needles) {
      if (hay.find(needle) != std::string::npos) return true;
    }
  }
  return false;
}

bool intersects(std::span<const std::string> sorted_a, std::span<const std::string> sorted_b) {
  auto a = sorted_a.begin();
  auto b = sorted_b.begin();
  while (a != sorted_a.end() && b != sorted_b.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a;
    else ++b;
  }
  return false;
}

std::vector<std::string> sorted_unique(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

bool parse_bool(std::string_view text) { return text == "1" || text == "true"; }

}  // namespace

std::string_view to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::FullForm: return "FullForm";
    case VariantKind::InitialedForm: return "InitialedForm";
    case VariantKind::SingleSurnameForm: return "SingleSurnameForm";
    case VariantKind::HyphenSplitForm: return "HyphenSplitForm";
  }
  return "FullForm";
}

std::optional<VariantKind> parse_variant_kind(std::string_view text) {
  for (auto kind : {VariantKind::FullForm, VariantKind::InitialedForm,
                    VariantKind::SingleSurnameForm, VariantKind::HyphenSplitForm}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(Provenance provenance) {
  return provenance == Provenance::Automatic ? "Automatic" : "ManualAdd";
}

std::vector<NameVariant> generate_name_variants(const Researcher& researcher) {
  const auto comma = researcher.full_name.find(',');
  if (comma == std::string::npos) {
    throw NameVariantError(researcher.researcher_id, researcher.full_name);
  }
  const auto surname = normalize_text(std::string_view(researcher.full_name).substr(0, comma));
  const auto given = normalize_text(std::string_view(researcher.full_name).substr(comma + 1));
  if (surname.empty() || given.empty()) {
    throw NameVariantError(researcher.researcher_id, researcher.full_name);
  }

  const auto given_tokens = tokens_of(given, /*split_hyphens=*/true);
  std::string initials;
  std::string spaced_initials;
  for (const auto& token : given_tokens) {
    const auto initial = first_char(token);
    initials += initial;
    if (!spaced_initials.empty()) spaced_initials += ' ';
    spaced_initials += initial;
  }
  const std::string first_initial = first_char(given_tokens.front());

  VariantCollector collector(researcher.researcher_id);
  const auto emit = [&](const std::string& form, VariantKind full_kind, VariantKind initial_kind) {
    collector.add(form + ' ' + given, full_kind);
    collector.add(form + ' ' + initials, initial_kind);
    collector.add(form + ' ' + spaced_initials, initial_kind);
    collector.add(form + ' ' + first_initial, initial_kind);
  };

  emit(surname, VariantKind::FullForm, VariantKind::InitialedForm);

  const auto components = surname_components(surname);
  if (components.size() >= 2) {
    for (const auto& component : components) {
      emit(component, VariantKind::SingleSurnameForm, VariantKind::SingleSurnameForm);
    }
  }

  if (surname.find('-') != std::string::npos) {
    std::string joined = surname;
    std::replace(joined.begin(), joined.end(), '-', ' ');
    emit(joined, VariantKind::HyphenSplitForm, VariantKind::HyphenSplitForm);
    for (const auto& part : tokens_of(surname, /*split_hyphens=*/true)) {
      if (is_particle(part) || is_conjunction(part)) continue;
      emit(part, VariantKind::HyphenSplitForm, VariantKind::HyphenSplitForm);
    }
  }

  return std::move(collector).finish();
}

// ---------------------------------------------------------------------------

LinkSet::LinkSet(std::vector<Link> links, const Corpus& corpus, const Roster& roster,
                 std::vector<Ambiguity> ambiguities)
    : links_(std::move(links)),
      ambiguities_(std::move(ambiguities)),
      corpus_(&corpus),
      roster_(&roster) {
  std::sort(links_.begin(), links_.end(), [](const Link& a, const Link& b) {
    return std::tie(a.pub_id, a.researcher_id) < std::tie(b.pub_id, b.researcher_id);
  });
  std::sort(ambiguities_.begin(), ambiguities_.end(), [](const Ambiguity& a, const Ambiguity& b) {
    return std::tie(a.pub_id, a.author) < std::tie(b.pub_id, b.author);
  });

  pub_groups_.assign(corpus.size(), {});
  group_pubs_.assign(roster.groups().size(), {});
  resolved_.reserve(links_.size());
  for (std::size_t i = 0; i < links_.size(); ++i) {
    const auto& link = links_[i];
    if (i > 0 && links_[i - 1].pub_id == link.pub_id &&
        links_[i - 1].researcher_id == link.researcher_id) {
      throw ValidationError("duplicate link (" + link.researcher_id + ", " + link.pub_id + ")");
    }
    const auto pub = corpus.find(link.pub_id);
    if (!pub) throw ReferentialError("pub_id", link.pub_id);
    const auto researcher = roster.researcher_index(link.researcher_id);
    if (!researcher) throw ReferentialError("researcher_id", link.researcher_id);
    const auto group = roster.group_of_researcher(*researcher);
    resolved_.push_back({*pub, *researcher, group, roster.centre_of_group(group)});
    pub_groups_[*pub].push_back(group);
    group_pubs_[group].push_back(*pub);
  }
  for (auto& groups : pub_groups_) {
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  }
  for (auto& pubs : group_pubs_) {
    std::sort(pubs.begin(), pubs.end());
    pubs.erase(std::unique(pubs.begin(), pubs.end()), pubs.end());
  }
  for (std::size_t pub = 0; pub < pub_groups_.size(); ++pub) {
    if (!pub_groups_[pub].empty()) linked_pubs_.push_back(pub);
  }
}

const Link* LinkSet::find(std::string_view researcher_id, std::string_view pub_id) const {
  const auto it = std::lower_bound(
      links_.begin(), links_.end(), std::pair(pub_id, researcher_id),
      [](const Link& link, const std::pair<std::string_view, std::string_view>& key) {
        return std::pair<std::string_view, std::string_view>(link.pub_id, link.researcher_id) < key;
      });
  if (it == links_.end() || it->pub_id != pub_id || it->researcher_id != researcher_id) {
    return nullptr;
  }
  return &*it;
}

bool LinkSet::contains(std::string_view researcher_id, std::string_view pub_id) const {
  return find(researcher_id, pub_id) != nullptr;
}

std::vector<const Link*> LinkSet::by_researcher(std::string_view researcher_id) const {
  std::vector<const Link*> out;
  for (const auto& link : links_) {
    if (link.researcher_id == researcher_id) out.push_back(&link);
  }
  return out;
}

std::vector<const Link*> LinkSet::by_publication(std::string_view pub_id) const {
  std::vector<const Link*> out;
  auto it = std::lower_bound(links_.begin(), links_.end(), pub_id,
                             [](const Link& link, std::string_view key) { return link.pub_id < key; });
  for (; it != links_.end() && it->pub_id == pub_id; ++it) out.push_back(&*it);
  return out;
}

std::vector<const Link*> LinkSet::by_group(std::string_view group_id) const {
  std::vector<const Link*> out;
  if (!roster_) return out;
  const auto group = roster_->group_index(group_id);
  if (!group) return out;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (resolved_[i].group == *group) out.push_back(&links_[i]);
  }
  return out;
}

std::vector<const Link*> LinkSet::by_centre(std::string_view centre_id) const {
  std::vector<const Link*> out;
  if (!roster_) return out;
  const auto centre = roster_->centre_index(centre_id);
  if (!centre) return out;
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (resolved_[i].centre == *centre) out.push_back(&links_[i]);
  }
  return out;
}

std::span<const std::size_t> LinkSet::groups_of_publication(std::size_t pub_index) const {
  if (pub_index >= pub_groups_.size()) return {};
  return pub_groups_[pub_index];
}

std::span<const std::size_t> LinkSet::publications_of_group(std::size_t group_index) const {
  if (group_index >= group_pubs_.size()) return {};
  return group_pubs_[group_index];
}

// ---------------------------------------------------------------------------

LinkSet match(const Corpus& corpus, const Roster& roster, const MatchOptions& options) {
  struct Candidate {
    std::size_t researcher;
    std::size_t variant;
  };
  const auto researchers = roster.researchers();
  std::vector<std::vector<NameVariant>> variants(researchers.size());
  std::unordered_map<std::string, std::vector<Candidate>> by_variant;
  std::vector<std::vector<std::string>> subjects(researchers.size());
  for (std::size_t r = 0; r < researchers.size(); ++r) {
    variants[r] = generate_name_variants(researchers[r]);
    for (std::size_t v = 0; v < variants[r].size(); ++v) {
      by_variant[variants[r][v].variant].push_back({r, v});
    }
    subjects[r] = sorted_unique(researchers[r].subject_areas);
  }

  const auto groups = roster.groups();
  std::vector<std::vector<std::string>> affiliation_forms(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto add = [&](std::string_view name) {
      auto form = normalize_text(name);
      if (!form.empty()) affiliation_forms[g].push_back(std::move(form));
    };
    add(groups[g].institution);
    for (const auto& alias : groups[g].institution_aliases) add(alias);
  }

  std::vector<Link> links;
  std::vector<Ambiguity> ambiguities;
  for (const auto& record : corpus.records()) {
    std::vector<std::string> addresses;
    addresses.reserve(record.addresses.size());
    for (const auto& address : record.addresses) addresses.push_back(normalize_text(address));
    const auto categories = sorted_unique(record.categories);

    std::map<std::size_t, Link> accepted;  // researcher -> link, first match wins
    for (const auto& author : record.authors) {
      const auto it = by_variant.find(normalize_text(author));
      if (it == by_variant.end()) continue;
      std::set<std::size_t> passing;
      for (const auto& candidate : it->second) {
        const auto group = roster.group_of_researcher(candidate.researcher);
        const bool affiliation = contains_any(addresses, affiliation_forms[group]);
        const bool subject = intersects(categories, subjects[candidate.researcher]);
        if (options.require_affiliation && !affiliation) continue;
        if (options.require_subject && !subject) continue;
        passing.insert(candidate.researcher);
        accepted.try_emplace(candidate.researcher,
                             Link{researchers[candidate.researcher].researcher_id, record.pub_id,
                                  Provenance::Automatic,
                                  variants[candidate.researcher][candidate.variant], affiliation,
                                  subject});
      }
      if (passing.size() >= 2) {
        Ambiguity ambiguity{record.pub_id, author, {}};
        for (auto r : passing) ambiguity.researcher_ids.push_back(researchers[r].researcher_id);
        std::sort(ambiguity.researcher_ids.begin(), ambiguity.researcher_ids.end());
        ambiguities.push_back(std::move(ambiguity));
      }
    }
    for (auto& [researcher, link] : accepted) links.push_back(std::move(link));
  }
  return LinkSet(std::move(links), corpus, roster, std::move(ambiguities));
}

// ---------------------------------------------------------------------------

std::vector<OverrideRow> parse_overrides(std::istream& in, std::string_view source_name) {
  HeaderedTable table(in, std::string(source_name), {"action", "researcher_id", "pub_id"});
  std::vector<OverrideRow> rows;
  while (auto row = table.next()) {
    OverrideRow out;
    const auto action = to_lower_ascii(table.field(*row, "action"));
    if (action == "add") {
      out.action = OverrideAction::Add;
    } else if (action == "remove") {
      out.action = OverrideAction::Remove;
    } else {
      throw ParseError(table.source(), row->line, "unknown override action '" + action + "'");
    }
    out.researcher_id = std::string(table.field(*row, "researcher_id"));
    out.pub_id = std::string(table.field(*row, "pub_id"));
    out.comment = std::string(table.optional_field(*row, "comment"));
    out.line = row->line;
    rows.push_back(std::move(out));
  }
  return rows;
}

OverrideOutcome apply_overrides(const LinkSet& links, std::span<const OverrideRow> overrides,
                                const Corpus& corpus, const Roster& roster) {
  using Key = std::pair<std::string, std::string>;  // (pub_id, researcher_id)
  std::map<Key, Link> working;
  for (const auto& link : links.links()) working.emplace(Key{link.pub_id, link.researcher_id}, link);

  OverrideOutcome outcome;
  for (const auto& row : overrides) {
    const auto where = "overrides line " + std::to_string(row.line);
    if (!roster.researcher_index(row.researcher_id)) {
      throw ReferentialError("overrides", row.line, "researcher_id", row.researcher_id);
    }
    if (!corpus.find(row.pub_id)) {
      throw ReferentialError("overrides", row.line, "pub_id", row.pub_id);
    }
    const Key key{row.pub_id, row.researcher_id};
    if (row.action == OverrideAction::Add) {
      Link link{row.researcher_id, row.pub_id, Provenance::ManualAdd, std::nullopt, false, false};
      if (working.emplace(key, std::move(link)).second) {
        ++outcome.added;
      } else {
        ++outcome.redundant_adds;
      }
    } else if (working.erase(key) > 0) {
      ++outcome.removed;
    } else {
      ++outcome.missing_removals;
      outcome.warnings.push_back(where + ": remove (" + row.researcher_id + ", " + row.pub_id +
                                 ") matches no link");
    }
  }

  std::vector<Link> result;
  result.reserve(working.size());
  for (auto& [key, link] : working) result.push_back(std::move(link));
  std::vector<Ambiguity> ambiguities(links.ambiguities().begin(), links.ambiguities().end());
  outcome.links = LinkSet(std::move(result), corpus, roster, std::move(ambiguities));
  return outcome;
}

// ---------------------------------------------------------------------------

void write_links(std::ostream& out, const LinkSet& links) {
  DelimitedWriter writer(out, {"researcher_id", "pub_id", "provenance", "matched_variant",
                               "variant_kind", "affiliation_matched", "subject_compatible"});
  for (const auto& link : links.links()) {
    writer.row({link.researcher_id, link.pub_id, std::string(to_string(link.provenance)),
                link.matched_variant ? link.matched_variant->variant : std::string(),
                link.matched_variant ? std::string(to_string(link.matched_variant->kind))
                                     : std::string(),
                link.affiliation_matched ? "1" : "0", link.subject_compatible ? "1" : "0"});
  }
}

LinkSet read_links(std::istream& in, const Corpus& corpus, const Roster& roster,
                   std::string_view source_name) {
  HeaderedTable table(in, std::string(source_name),
                      {"researcher_id", "pub_id", "provenance", "matched_variant", "variant_kind",
                       "affiliation_matched", "subject_compatible"});
  std::vector<Link> links;
  while (auto row = table.next()) {
    Link link;
    link.researcher_id = std::string(table.field(*row, "researcher_id"));
    link.pub_id = std::string(table.field(*row, "pub_id"));
    const auto provenance = table.field(*row, "provenance");
    if (provenance == "Automatic") {
      link.provenance = Provenance::Automatic;
    } else if (provenance == "ManualAdd") {
      link.provenance = Provenance::ManualAdd;
    } else {
      throw ParseError(table.source(), row->line,
                       "unknown provenance '" + std::string(provenance) + "'");
    }
    const auto variant = table.optional_field(*row, "matched_variant");
    if (!variant.empty()) {
      const auto kind = parse_variant_kind(table.field(*row, "variant_kind"));
      if (!kind) throw ParseError(table.source(), row->line, "unknown variant_kind");
      link.matched_variant = NameVariant{std::string(variant), link.researcher_id, *kind};
    }
    link.affiliation_matched = parse_bool(table.field(*row, "affiliation_matched"));
    link.subject_compatible = parse_bool(table.field(*row, "subject_compatible"));
    links.push_back(std::move(link));
  }
  return LinkSet(std::move(links), corpus, roster);
}

void write_ambiguities(std::ostream& out, std::span<const Ambiguity> ambiguities) {
  DelimitedWriter writer(out, {"pub_id", "author", "researcher_ids"});
  for (const auto& ambiguity : ambiguities) {
    writer.row({ambiguity.pub_id, ambiguity.author, join(ambiguity.researcher_ids, ";")});
  }
}

}  // namespace progeval
