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

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "progeval/corpus.hpp"
#include "progeval/errors.hpp"

namespace progeval {

// ---------------------------------------------------------------------------
// Name variants
//
// The generated forms are a documented superset of what a bibliographic
// author field usually carries for a "Surname(s), Given name(s)" roster entry:
//
//   FullForm           "garcia-lopez juan manuel"
//   InitialedForm      "garcia-lopez jm", "garcia-lopez j m", "garcia-lopez j"
//   SingleSurnameForm  each surname of a multi-surname name, with full given
//                      names and with initials ("garcia jm", "lopez j", ...)
//   HyphenSplitForm    each part of a hyphenated surname and the space-joined
//                      surname ("robinson n", "robinson garcia n", ...)
//
// Surname particles (de, del, la, van, ...) stay attached to the surname that
// follows them and the conjunctions "y"/"i"/"e" only separate surnames.

enum class VariantKind { FullForm, InitialedForm, SingleSurnameForm, HyphenSplitForm };

std::string_view to_string(VariantKind kind);
std::optional<VariantKind> parse_variant_kind(std::string_view text);

struct NameVariant {
  std::string variant;  // normalized
  std::string source_researcher_id;
  VariantKind kind = VariantKind::FullForm;

  friend bool operator==(const NameVariant&, const NameVariant&) = default;
};

class NameVariantError : public Error {
 public:
  NameVariantError(const std::string& researcher_id, const std::string& full_name)
      : Error("cannot derive name variants for researcher '" + researcher_id + "' from '" +
              full_name + "': expected 'Surname(s), Given name(s)'") {}
};

/// Variants sorted by string, one entry per distinct string (the first kind
/// in enum order wins). Throws NameVariantError when the name has no
/// separable surname and given part.
std::vector<NameVariant> generate_name_variants(const Researcher& researcher);

// ---------------------------------------------------------------------------
// Links

enum class Provenance { Automatic, ManualAdd };

std::string_view to_string(Provenance provenance);

struct Link {
  std::string researcher_id;
  std::string pub_id;
  Provenance provenance = Provenance::Automatic;
  std::optional<NameVariant> matched_variant;
  bool affiliation_matched = false;
  bool subject_compatible = false;

  friend bool operator==(const Link&, const Link&) = default;
};

/// An author string of a publication that matched more than one rostered
/// researcher who passed every filter. All such links are kept; this record
/// flags them for the override file.
struct Ambiguity {
  std::string pub_id;
  std::string author;
  std::vector<std::string> researcher_ids;  // sorted

  friend bool operator==(const Ambiguity&, const Ambiguity&) = default;
};

/// Validated researcher-publication links with lookup indexes.
///
/// The set stores positions into the Corpus and Roster it was built against;
/// index-based accessors are only meaningful for that pair.
class LinkSet {
 public:
  LinkSet() = default;

  /// Sorts links by (pub_id, researcher_id). Throws ReferentialError for keys
  /// that do not resolve and ValidationError on a repeated pair.
  LinkSet(std::vector<Link> links, const Corpus& corpus, const Roster& roster,
          std::vector<Ambiguity> ambiguities = {});

  std::span<const Link> links() const noexcept { return links_; }
  std::size_t size() const noexcept { return links_.size(); }
  std::span<const Ambiguity> ambiguities() const noexcept { return ambiguities_; }

  bool contains(std::string_view researcher_id, std::string_view pub_id) const;
  const Link* find(std::string_view researcher_id, std::string_view pub_id) const;

  std::vector<const Link*> by_researcher(std::string_view researcher_id) const;
  std::vector<const Link*> by_publication(std::string_view pub_id) const;
  std::vector<const Link*> by_group(std::string_view group_id) const;
  std::vector<const Link*> by_centre(std::string_view centre_id) const;

  /// Distinct group indices linked to a publication, ascending.
  std::span<const std::size_t> groups_of_publication(std::size_t pub_index) const;
  /// Distinct publication indices linked to a group, ascending.
  std::span<const std::size_t> publications_of_group(std::size_t group_index) const;
  /// Publication indices with at least one link, ascending.
  std::span<const std::size_t> linked_publications() const noexcept { return linked_pubs_; }

 private:
  struct Resolved {
    std::size_t pub;
    std::size_t researcher;
    std::size_t group;
    std::size_t centre;
  };

  std::vector<Link> links_;
  std::vector<Resolved> resolved_;
  std::vector<Ambiguity> ambiguities_;
  std::vector<std::vector<std::size_t>> pub_groups_;
  std::vector<std::vector<std::size_t>> group_pubs_;
  std::vector<std::size_t> linked_pubs_;
  const Corpus* corpus_ = nullptr;
  const Roster* roster_ = nullptr;
};

struct MatchOptions {
  bool require_affiliation = true;
  bool require_subject = true;
};

/// Automatic linkage. A researcher is linked to a publication iff one of the
/// researcher's name variants equals a normalized author string, one of the
/// publication's addresses contains the group's institution (or an alias)
/// after normalization, and the publication shares a subject category with
/// the researcher. Disabling a filter in `options` is for diagnostics only.
LinkSet match(const Corpus& corpus, const Roster& roster, const MatchOptions& options = {});

// ---------------------------------------------------------------------------
// Manual overrides

enum class OverrideAction { Add, Remove };

struct OverrideRow {
  OverrideAction action = OverrideAction::Add;
  std::string researcher_id;
  std::string pub_id;
  std::string comment;
  std::size_t line = 0;
};

/// Headered table: action (add|remove), researcher_id, pub_id [, comment].
std::vector<OverrideRow> parse_overrides(std::istream& in,
                                         std::string_view source_name = "overrides");

struct OverrideOutcome {
  LinkSet links;
  std::size_t added = 0;
  std::size_t removed = 0;
  std::size_t redundant_adds = 0;     // add of a pair that was already linked
  std::size_t missing_removals = 0;   // remove of a pair that was not linked
  std::vector<std::string> warnings;
};

/// Applies rows in file order. Rows naming an unknown researcher or
/// publication throw ReferentialError.
OverrideOutcome apply_overrides(const LinkSet& links, std::span<const OverrideRow> overrides,
                                const Corpus& corpus, const Roster& roster);

// ---------------------------------------------------------------------------
// Persistence

void write_links(std::ostream& out, const LinkSet& links);
LinkSet read_links(std::istream& in, const Corpus& corpus, const Roster& roster,
                   std::string_view source_name = "links");
void write_ambiguities(std::ostream& out, std::span<const Ambiguity> ambiguities);

}  // namespace progeval
