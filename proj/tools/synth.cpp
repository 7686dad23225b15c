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

#include "synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include "json.hpp"
#include "progeval/delimited.hpp"
#include "progeval/errors.hpp"
#include "progeval/text.hpp"

namespace progeval::synth {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t Rng::below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

constexpr const char* kSyllables[] = {"ba", "ce", "di", "fo", "gu", "la", "me", "ni", "po", "ru",
                                      "sa", "te", "vi", "zo", "ca", "de", "li", "mo", "na", "re"};
constexpr std::size_t kSyllableCount = std::size(kSyllables);

constexpr const char* kGivenNames[] = {"Juan",  "Maria", "Jose",   "Ana",   "Carlos",      "Elena",
                                       "Pedro", "Lucia", "Javier", "Marta", "Jose Manuel", "Maria Jesus"};

constexpr const char* kBiomedical[] = {
    "Biomaterials",        "Nanoscience",        "Epidemiology",      "Public Health",
    "Nutrition",           "Endocrinology",      "Gastroenterology",  "Hepatology",
    "Neurosciences",       "Clinical Neurology", "Respiratory System", "Critical Care",
    "Genetics",            "Pediatrics",         "Diabetes",          "Metabolism",
    "Psychiatry",          "Psychology Clinical"};
constexpr const char* kOtherFields[] = {"Physics Applied", "Materials Science", "Economics",
                                        "Computer Science"};

constexpr const char* kCities[] = {"Madrid", "Barcelona", "Valencia", "Sevilla", "Zaragoza", "Bilbao"};

/// Capitalised four-syllable token, unique per index below 20^4.
std::string unique_token(std::size_t index) {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    out += kSyllables[index % kSyllableCount];
    index /= kSyllableCount;
  }
  out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

std::string padded(char prefix, std::size_t n, int width = 4) {
  std::string digits = std::to_string(n);
  if (static_cast<int>(digits.size()) < width) digits.insert(0, width - digits.size(), '0');
  return std::string(1, prefix) + digits;
}

std::string initials_of(const std::string& given) {
  std::string out;
  bool start = true;
  for (char c : given) {
    if (c == ' ') {
      start = true;
    } else if (start) {
      out += c;
      start = false;
    }
  }
  return out;
}

/// An author string for "Surname, Given" in one of the forms seen in
/// bibliographic records.
std::string author_form(const std::string& surname, const std::string& given, Rng& rng) {
  switch (rng.below(3)) {
    case 0: return surname + ", " + given;
    case 1: return surname + " " + initials_of(given);
    default: return surname + ", " + initials_of(given).substr(0, 1) + ".";
  }
}

struct Journal {
  std::string id;
  std::vector<std::string> categories;
  double impact = 0;
};

struct JournalPool {
  std::vector<Journal> journals;
  std::map<std::string, std::vector<std::size_t>> by_category;
};

JournalPool make_journals(std::size_t count, const std::vector<std::string>& categories, Rng& rng) {
  JournalPool pool;
  for (std::size_t j = 0; j < count; ++j) {
    Journal journal;
    journal.id = padded('J', j + 1);
    journal.impact = rng.unit();
    // Cycle the primary category so every category has journals.
    journal.categories.push_back(categories[j % categories.size()]);
    if (rng.chance(0.3)) {
      const auto& second = categories[rng.below(categories.size())];
      if (second != journal.categories.front()) journal.categories.push_back(second);
    }
    for (const auto& category : journal.categories) pool.by_category[category].push_back(j);
    pool.journals.push_back(std::move(journal));
  }
  return pool;
}

std::vector<MetricRow> make_metrics(const JournalPool& pool, int first_year, int last_year, double missing_rate,
                                    Rng& rng) {
  std::vector<MetricRow> rows;
  for (int year = first_year; year <= last_year; ++year) {
    std::set<std::size_t> missing;
    for (std::size_t j = 0; j < pool.journals.size(); ++j) {
      if (rng.chance(missing_rate)) missing.insert(j);
    }
    for (const auto& [category, members] : pool.by_category) {
      std::vector<std::pair<double, std::size_t>> scored;
      for (auto j : members) scored.emplace_back(pool.journals[j].impact + 0.05 * rng.unit(), j);
      std::sort(scored.begin(), scored.end(), [&](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
      });
      const int size = static_cast<int>(scored.size());
      for (int r = 0; r < size; ++r) {
        const auto j = scored[r].second;
        if (missing.count(j)) continue;
        rows.push_back({pool.journals[j].id, year, {category, r + 1, size}});
      }
    }
  }
  return rows;
}

std::int64_t draw_citations(double mean, Rng& rng) {
  return static_cast<std::int64_t>(std::floor(-std::log(1.0 - rng.unit()) * mean));
}

int draw_year(int first, int last, Rng& rng) {
  // Output grows a few percent a year.
  std::vector<double> weights;
  double total = 0;
  for (int y = first; y <= last; ++y) total += weights.emplace_back(1.0 + 0.06 * (y - first));
  double u = rng.unit() * total;
  for (int y = first; y <= last; ++y) {
    u -= weights[y - first];
    if (u < 0) return y;
  }
  return last;
}

struct CentreSize {
  int researchers;
  int groups;
  int launch_year;
};

constexpr CentreSize kCentreSizes[] = {{647, 47, 2006}, {474, 47, 2006}, {484, 27, 2006},
                                       {555, 49, 2006}, {808, 60, 2006}, {464, 32, 2006},
                                       {873, 59, 2006}, {376, 29, 2007}, {354, 26, 2007}};

}  // namespace

Dataset programme_corpus(const ProgrammeCorpusOptions& options) {
  Rng rng(options.seed);
  Dataset data;
  constexpr int kFirstYear = 2005;
  constexpr int kLastYear = 2011;

  for (const auto* name : kBiomedical) data.national_categories.emplace_back(name);
  std::vector<std::string> all_categories = data.national_categories;
  for (const auto* name : kOtherFields) all_categories.emplace_back(name);

  // Roster.
  std::vector<std::vector<std::size_t>> centre_groups(std::size(kCentreSizes));
  std::vector<std::vector<std::size_t>> group_members;
  std::vector<bool> dormant;
  std::vector<std::pair<std::string, std::string>> names;  // surname, given per researcher
  std::vector<std::size_t> researcher_group;
  std::vector<std::size_t> researcher_centre;
  std::size_t next_institution = 0;
  std::size_t name_index = 0;
  for (std::size_t c = 0; c < std::size(kCentreSizes); ++c) {
    const auto& sizes = kCentreSizes[c];
    Centre centre;
    centre.centre_id = "C" + std::to_string(c + 1);
    centre.acronym = "CIBER " + std::to_string(c + 1);
    centre.launch_year = sizes.launch_year;
    for (int y = sizes.launch_year; y <= kLastYear; ++y) centre.annual_budget[y] = 1.0e6 + 2.5e5 * c;
    data.centres.push_back(centre);

    const std::size_t group_count = options.full_roster ? sizes.groups : options.groups_per_centre;
    const std::size_t researcher_count =
        options.full_roster ? sizes.researchers : group_count * options.researchers_per_group;
    const std::vector<std::string> subjects = {kBiomedical[2 * c], kBiomedical[2 * c + 1]};
    for (std::size_t g = 0; g < group_count; ++g) {
      ResearchGroup group;
      group.group_id = centre.centre_id + "-" + padded('G', g + 1, 3);
      group.centre_id = centre.centre_id;
      switch (next_institution % 4) {
        case 0:
          group.institution = "Universidad " + padded('U', next_institution);
          group.institutional_category = InstitutionalCategory::University;
          break;
        case 1:
          group.institution = "Hospital " + padded('H', next_institution);
          group.institutional_category = InstitutionalCategory::Hospital;
          break;
        case 2:
          group.institution = "Instituto " + padded('I', next_institution);
          group.institutional_category = InstitutionalCategory::PublicResearchOrg;
          break;
        default:
          group.institution = "Fundacion " + padded('F', next_institution);
          group.institutional_category = InstitutionalCategory::Foundation;
          break;
      }
      ++next_institution;
      group.region = kCities[rng.below(std::size(kCities))];
      centre_groups[c].push_back(data.groups.size());
      group_members.emplace_back();
      dormant.push_back(rng.chance(options.dormant_group_rate));
      data.groups.push_back(std::move(group));
    }
    // At least one group per centre stays active.
    if (std::all_of(centre_groups[c].begin(), centre_groups[c].end(), [&](auto g) { return dormant[g]; })) {
      dormant[centre_groups[c].front()] = false;
    }
    for (std::size_t r = 0; r < researcher_count; ++r) {
      const auto g = centre_groups[c][r % group_count];
      Researcher researcher;
      researcher.researcher_id = padded('R', data.researchers.size() + 1, 5);
      const auto surname = unique_token(name_index++);
      const std::string given = kGivenNames[rng.below(std::size(kGivenNames))];
      researcher.full_name = surname + ", " + given;
      researcher.group_id = data.groups[g].group_id;
      researcher.subject_areas = subjects;
      if (r < group_count) data.groups[g].lead_researcher_id = researcher.researcher_id;
      group_members[g].push_back(data.researchers.size());
      names.emplace_back(surname, given);
      researcher_group.push_back(g);
      researcher_centre.push_back(c);
      data.researchers.push_back(std::move(researcher));
    }
  }

  std::vector<std::size_t> active_groups;
  for (std::size_t g = 0; g < data.groups.size(); ++g) {
    if (!dormant[g]) active_groups.push_back(g);
  }

  const auto pool = make_journals(std::max<std::size_t>(330, options.publications / 8), all_categories, rng);
  data.metrics = make_metrics(pool, kFirstYear - 1, kLastYear + 1, 0.02, rng);

  const auto pick_journal = [&](const std::vector<std::string>& categories, bool favour_impact) {
    const auto& members = pool.by_category.at(categories[rng.below(categories.size())]);
    auto j = members[rng.below(members.size())];
    if (favour_impact && rng.chance(0.6)) {
      const auto other = members[rng.below(members.size())];
      if (pool.journals[other].impact > pool.journals[j].impact) j = other;
    }
    return j;
  };
  const auto institution_address = [&](std::size_t g) {
    return "Dept " + std::to_string(1 + rng.below(9)) + ", " + data.groups[g].institution + ", " +
           data.groups[g].region + ", Spain";
  };

  // Researchers produce in proportion to group size.
  std::vector<std::size_t> author_pool;
  for (std::size_t r = 0; r < data.researchers.size(); ++r) author_pool.push_back(r);

  std::size_t external_index = 100000;  // disjoint from roster surnames
  const auto external_author = [&] {
    return unique_token(external_index++ % 160000) + " " + std::string(1, static_cast<char>('A' + rng.below(26)));
  };

  for (std::size_t p = 0; p < options.publications; ++p) {
    PublicationRecord record;
    record.pub_id = padded('P', p + 1, 6);
    record.year = draw_year(kFirstYear, kLastYear, rng);
    record.doc_type = rng.chance(0.85) ? DocType::Article : rng.chance(0.6) ? DocType::Review : DocType::Letter;

    if (rng.chance(options.programme_share)) {
      const auto lead = author_pool[rng.below(author_pool.size())];
      const auto group = researcher_group[lead];
      const auto c = researcher_centre[lead];
      const auto journal = pick_journal(data.researchers[lead].subject_areas, true);
      record.journal_id = pool.journals[journal].id;
      record.categories = pool.journals[journal].categories;

      std::set<std::size_t> authors = {lead};
      const auto& members = group_members[group];
      for (std::size_t extra = rng.below(3); extra > 0; --extra) authors.insert(members[rng.below(members.size())]);
      std::vector<std::size_t> involved = {group};
      if (!dormant[group] && rng.chance(options.collaboration_rate)) {
        std::size_t partner = group;
        for (int attempt = 0; attempt < 8 && partner == group; ++attempt) {
          if (rng.chance(0.8)) {
            const auto& same = centre_groups[c];
            partner = same[rng.below(same.size())];
          } else {
            partner = active_groups[rng.below(active_groups.size())];
          }
          if (dormant[partner]) partner = group;
        }
        if (partner != group) {
          involved.push_back(partner);
          const auto& other = group_members[partner];
          authors.insert(other[rng.below(other.size())]);
          // Partner author must be subject-compatible to link.
          const auto& partner_subjects = data.researchers[other.front()].subject_areas;
          if (std::find(record.categories.begin(), record.categories.end(), partner_subjects.front()) ==
              record.categories.end()) {
            record.categories.push_back(partner_subjects.front());
          }
        }
      }
      for (auto r : authors) record.authors.push_back(author_form(names[r].first, names[r].second, rng));
      for (std::size_t e = rng.below(4); e > 0; --e) record.authors.push_back(external_author());

      const double sign_probability = 0.12 + 0.11 * (record.year - kFirstYear);
      const bool is_signed = !dormant[group] && rng.chance(sign_probability);
      for (std::size_t i = 0; i < involved.size(); ++i) {
        auto address = institution_address(involved[i]);
        if (is_signed && i == 0) address = "CIBER " + std::to_string(c + 1) + ", " + address;
        record.addresses.push_back(std::move(address));
      }
      record.citations = draw_citations(3.0 + 16.0 * pool.journals[journal].impact, rng);
    } else {
      const bool biomedical = rng.chance(0.8);
      const auto journal =
          biomedical ? pick_journal(data.national_categories, false)
                     : pick_journal({kOtherFields[0], kOtherFields[1], kOtherFields[2], kOtherFields[3]}, false);
      record.journal_id = pool.journals[journal].id;
      record.categories = pool.journals[journal].categories;
      for (std::size_t a = 2 + rng.below(5); a > 0; --a) record.authors.push_back(external_author());
      record.addresses.push_back("Centro " + padded('E', rng.below(400)) + ", " + kCities[rng.below(std::size(kCities))] +
                                 ", Spain");
      record.citations = draw_citations(2.5 + 14.0 * pool.journals[journal].impact, rng);
    }
    data.publications.push_back(std::move(record));
  }

  // Out-of-window records and non-admitted document types.
  const std::size_t noise = std::max<std::size_t>(4, options.publications / 50);
  for (std::size_t n = 0; n < noise; ++n) {
    const auto id = padded('X', n + 1, 6);
    if (n % 2 == 0) {
      PublicationRecord record;
      record.pub_id = id;
      record.year = n % 4 == 0 ? kFirstYear - 1 : kLastYear + 1;
      record.authors = {external_author()};
      record.addresses = {"Centro E9999, Madrid, Spain"};
      record.journal_id = pool.journals[rng.below(pool.journals.size())].id;
      record.categories = {kBiomedical[0]};
      data.publications.push_back(std::move(record));
    } else {
      data.skipped_lines.push_back(id + "\t2008\tMeeting Abstract\t" + external_author() +
                                   "\tCentro E9999, Madrid, Spain\t" + pool.journals[0].id + "\t" + kBiomedical[0] +
                                   "\t0");
    }
  }

  data.patterns = {{"*", "ciber"}};
  for (const auto& centre : data.centres) data.patterns.push_back({centre.centre_id, normalize_text(centre.acronym)});

  // One manual add (a non-programme paper) and one removal of an existing
  // automatic link.
  const auto first_programme = std::find_if(data.publications.begin(), data.publications.end(), [&](const auto& p) {
    return !p.addresses.empty() && p.addresses.front().rfind("Centro", 0) != 0 && p.pub_id[0] == 'P';
  });
  const auto first_external = std::find_if(data.publications.begin(), data.publications.end(), [&](const auto& p) {
    return p.pub_id[0] == 'P' && p.addresses.front().rfind("Centro", 0) == 0;
  });
  if (first_external != data.publications.end()) {
    data.overrides.push_back({OverrideAction::Add, data.researchers.front().researcher_id, first_external->pub_id,
                              "author confirmed by group leader", 0});
  }
  if (first_programme != data.publications.end()) {
    for (std::size_t r = 0; r < data.researchers.size(); ++r) {
      const auto& [surname, given] = names[r];
      const bool listed = std::any_of(first_programme->authors.begin(), first_programme->authors.end(),
                                      [&](const auto& a) { return a.rfind(surname, 0) == 0; });
      if (listed) {
        data.overrides.push_back({OverrideAction::Remove, data.researchers[r].researcher_id,
                                  first_programme->pub_id, "namesake outside the group", 0});
        break;
      }
    }
  }
  return data;
}

Dataset linkage_fixture(std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  struct Institution {
    const char* name;
    const char* alias;
    InstitutionalCategory category;
    const char* city;
  };
  constexpr Institution kInstitutions[] = {
      {"Universidad de Zaragoza", "Univ Zaragoza", InstitutionalCategory::University, "Zaragoza"},
      {"Hospital Clinic de Barcelona", "Hosp Clin Barcelona", InstitutionalCategory::Hospital, "Barcelona"},
      {"Universidad Autonoma de Madrid", "Univ Autonoma Madrid", InstitutionalCategory::University, "Madrid"},
      {"Hospital Universitario La Paz", "Hosp Univ La Paz", InstitutionalCategory::Hospital, "Madrid"},
      {"Instituto de Salud Carlos III", "Inst Salud Carlos III", InstitutionalCategory::PublicResearchOrg, "Madrid"},
  };
  const std::vector<std::vector<std::string>> fields = {
      {"Neurosciences", "Clinical Neurology"}, {"Hepatology", "Gastroenterology"},
      {"Genetics", "Pediatrics"},              {"Epidemiology", "Public Health"},
      {"Psychiatry", "Psychology Clinical"}};
  const std::vector<std::string> foreign_field = {"Physics Applied", "Materials Science"};

  data.national_categories.clear();
  for (const auto& f : fields) data.national_categories.insert(data.national_categories.end(), f.begin(), f.end());

  for (int c = 0; c < 2; ++c) {
    Centre centre;
    centre.centre_id = "C" + std::to_string(c + 1);
    centre.acronym = "CIBER " + std::to_string(c + 1);
    centre.launch_year = 2006;
    data.centres.push_back(centre);
  }

  // Ten groups, two per institution; group g works in field g % 5.
  for (int g = 0; g < 10; ++g) {
    const auto& inst = kInstitutions[g / 2];
    ResearchGroup group;
    group.group_id = "G" + std::to_string(g + 1);
    group.centre_id = g < 5 ? "C1" : "C2";
    group.institution = inst.name;
    group.institution_aliases = {inst.alias};
    group.institutional_category = inst.category;
    group.region = inst.city;
    data.groups.push_back(group);
  }

  struct Person {
    std::string surname;
    std::string given;
    std::size_t group;
  };
  std::vector<Person> people;
  for (int r = 0; r < 50; ++r) {
    Person person;
    person.group = static_cast<std::size_t>(r % 10);
    person.given = kGivenNames[(r * 7) % std::size(kGivenNames)];
    const auto token = unique_token(1000 + 37 * r);
    switch (r % 5) {
      case 0: person.surname = token + "-" + unique_token(50000 + 11 * r); break;  // hyphenated
      case 1: person.surname = "de la " + token; break;                            // particles
      case 2: person.surname = token + " " + unique_token(60000 + 13 * r); break;  // two surnames
      default: person.surname = token; break;
    }
    Researcher researcher;
    researcher.researcher_id = "R" + std::to_string(101 + r);
    researcher.full_name = person.surname + ", " + person.given;
    researcher.group_id = data.groups[person.group].group_id;
    researcher.subject_areas = fields[person.group % 5];
    if (r < 10) data.groups[person.group].lead_researcher_id = researcher.researcher_id;
    data.researchers.push_back(std::move(researcher));
    people.push_back(std::move(person));
  }

  // Journals: three per category.
  std::map<std::string, std::vector<std::string>> journals_of;
  std::size_t journal_count = 0;
  std::vector<std::string> categories = data.national_categories;
  categories.insert(categories.end(), foreign_field.begin(), foreign_field.end());
  for (const auto& category : categories) {
    for (int k = 0; k < 3; ++k) {
      const auto id = padded('J', ++journal_count);
      journals_of[category].push_back(id);
      for (int year = 2005; year <= 2011; ++year) data.metrics.push_back({id, year, {category, k + 1, 3}});
    }
  }

  // Forms an author string may take for a rostered name.
  const auto written_as = [&](const Person& p) -> std::string {
    const auto initials = initials_of(p.given);
    const auto hyphen = p.surname.find('-');
    const auto space = p.surname.rfind(' ');
    switch (rng.below(5)) {
      case 0: return p.surname + ", " + p.given;
      case 1: return p.surname + " " + initials;
      case 2: {
        std::string spaced;
        for (char ch : initials) spaced += std::string(spaced.empty() ? "" : " ") + ch + ".";
        return p.surname + ", " + spaced;
      }
      case 3:
        if (hyphen != std::string::npos) return p.surname.substr(hyphen + 1) + " " + initials;
        if (space != std::string::npos && p.surname.rfind("de la ", 0) != 0) {
          return p.surname.substr(0, space) + " " + initials;
        }
        return p.surname + " " + initials.substr(0, 1);
      default: return p.surname + " " + initials.substr(0, 1);
    }
  };
  const auto address_of = [&](std::size_t group) {
    const auto& inst = kInstitutions[group / 2];
    return std::string("Serv Med, ") + (rng.chance(0.5) ? inst.name : inst.alias) + ", " + inst.city + ", Spain";
  };
  const auto journal_in = [&](const std::vector<std::string>& field) {
    const auto& category = field[rng.below(field.size())];
    const auto& js = journals_of.at(category);
    return std::make_pair(js[rng.below(js.size())], category);
  };

  std::size_t pub_counter = 0;
  std::size_t external = 90000;
  const auto new_record = [&](int year) {
    PublicationRecord record;
    record.pub_id = padded('L', ++pub_counter, 5);
    record.year = year;
    record.citations = static_cast<std::int64_t>(rng.below(40));
    return record;
  };
  const auto add_external_authors = [&](PublicationRecord& record) {
    for (std::size_t e = 1 + rng.below(3); e > 0; --e) {
      record.authors.push_back(unique_token(external++) + " " + std::string(1, static_cast<char>('A' + rng.below(26))));
    }
  };

  // True papers: four per researcher, sometimes with a same-field colleague.
  for (std::size_t r = 0; r < people.size(); ++r) {
    for (int k = 0; k < 4; ++k) {
      auto record = new_record(2005 + static_cast<int>(rng.below(7)));
      const auto [journal, category] = journal_in(data.researchers[r].subject_areas);
      record.journal_id = journal;
      record.categories = {category};
      record.authors.push_back(written_as(people[r]));
      data.truth.emplace_back(data.researchers[r].researcher_id, record.pub_id);
      if (k == 3) {
        // Colleague from the other group of the same institution and field.
        const std::size_t partner = (r + 5) % people.size();
        if (people[partner].group % 5 == people[r].group % 5) {
          record.authors.push_back(written_as(people[partner]));
          data.truth.emplace_back(data.researchers[partner].researcher_id, record.pub_id);
          if (people[partner].group / 2 != people[r].group / 2) record.addresses.push_back(address_of(people[partner].group));
        }
      }
      add_external_authors(record);
      record.addresses.insert(record.addresses.begin(), address_of(people[r].group));
      data.publications.push_back(std::move(record));
    }
  }

  // Adversarial namesakes. Same name, same institution, unrelated field:
  // only the subject filter rejects these.
  for (std::size_t r = 0; r < people.size(); r += 5) {
    for (int k = 0; k < 2; ++k) {
      auto record = new_record(2005 + static_cast<int>(rng.below(7)));
      const auto [journal, category] = journal_in(foreign_field);
      record.journal_id = journal;
      record.categories = {category};
      record.authors.push_back(written_as(people[r]));
      add_external_authors(record);
      record.addresses.push_back(address_of(people[r].group));
      data.publications.push_back(std::move(record));
    }
  }
  // Same name and field at an unrelated institution: the affiliation
  // filter rejects these.
  for (std::size_t r = 2; r < people.size(); r += 5) {
    auto record = new_record(2005 + static_cast<int>(rng.below(7)));
    const auto [journal, category] = journal_in(data.researchers[r].subject_areas);
    record.journal_id = journal;
    record.categories = {category};
    record.authors.push_back(written_as(people[r]));
    add_external_authors(record);
    record.addresses.push_back("Universidad de Oviedo, Oviedo, Spain");
    data.publications.push_back(std::move(record));
  }
  // Background papers with no rostered authors.
  for (int k = 0; k < 40; ++k) {
    auto record = new_record(2005 + static_cast<int>(rng.below(7)));
    const auto [journal, category] = journal_in(fields[rng.below(fields.size())]);
    record.journal_id = journal;
    record.categories = {category};
    add_external_authors(record);
    record.addresses.push_back(address_of(rng.below(10)));
    data.publications.push_back(std::move(record));
  }

  data.patterns = {{"*", "ciber"}};
  std::sort(data.truth.begin(), data.truth.end());
  data.truth.erase(std::unique(data.truth.begin(), data.truth.end()), data.truth.end());
  return data;
}

Dataset exclusion_fixture() {
  Dataset data;
  data.centres.push_back({"C1", "CIBER 1", 2006, {}});
  const char* ids[] = {"NONE", "SIGNED", "COLLAB", "BOTH"};
  const char* institutions[] = {"Hospital Alfa", "Hospital Beta", "Universidad Gamma", "Universidad Delta"};
  for (int g = 0; g < 4; ++g) {
    ResearchGroup group;
    group.group_id = ids[g];
    group.centre_id = "C1";
    group.institution = institutions[g];
    group.institutional_category = g < 2 ? InstitutionalCategory::Hospital : InstitutionalCategory::University;
    group.region = "Madrid";
    group.lead_researcher_id = "R" + std::to_string(g + 1);
    data.groups.push_back(group);
    data.researchers.push_back({"R" + std::to_string(g + 1), unique_token(g) + ", Ana", ids[g], {"Genetics"}});
  }
  const auto surname = [](int g) { return unique_token(static_cast<std::size_t>(g)); };
  const auto record = [&](std::string id, std::vector<int> groups, bool is_signed) {
    PublicationRecord p;
    p.pub_id = std::move(id);
    p.year = 2008;
    p.journal_id = "J1";
    p.categories = {"Genetics"};
    p.citations = 3;
    for (int g : groups) {
      p.authors.push_back(surname(g) + " A");
      p.addresses.push_back((is_signed && p.addresses.empty() ? std::string("CIBER 1, ") : std::string()) +
                            institutions[g] + ", Madrid, Spain");
    }
    return p;
  };
  data.publications = {
      record("E1", {0}, false),     // NONE: alone, unsigned
      record("E2", {1}, true),      // SIGNED: alone, signed
      record("E3", {2, 3}, false),  // COLLAB + BOTH: shared, unsigned
      record("E4", {3}, true),      // BOTH: signed
  };
  data.metrics.push_back({"J1", 2008, {"Genetics", 1, 10}});
  data.patterns = {{"*", "ciber"}};
  return data;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + (dir / name).string() + "'");
    return out;
  };

  {
    auto out = open("publications.tsv");
    write_publications(out, dataset.publications);
    for (const auto& line : dataset.skipped_lines) out << line << '\n';
  }
  {
    const Roster roster(dataset.centres, dataset.groups, dataset.researchers);
    auto centres = open("centres.tsv");
    auto groups = open("groups.tsv");
    auto researchers = open("researchers.tsv");
    write_roster(centres, groups, researchers, roster);
  }
  {
    auto out = open("journal_metrics.tsv");
    DelimitedWriter writer(out, {"journal_id", "year", "category", "rank", "category_size"});
    for (const auto& m : dataset.metrics) {
      writer.row({m.journal_id, std::to_string(m.year), m.entry.category, std::to_string(m.entry.rank),
                  std::to_string(m.entry.category_size)});
    }
  }
  {
    auto out = open("patterns.tsv");
    DelimitedWriter writer(out, {"centre_id", "pattern"});
    for (const auto& p : dataset.patterns) writer.row({p.centre_id, p.pattern});
  }
  {
    auto out = open("overrides.tsv");
    DelimitedWriter writer(out, {"action", "researcher_id", "pub_id", "comment"});
    for (const auto& o : dataset.overrides) {
      writer.row({o.action == OverrideAction::Add ? "add" : "remove", o.researcher_id, o.pub_id, o.comment});
    }
  }
  if (!dataset.truth.empty()) {
    auto out = open("truth.tsv");
    DelimitedWriter writer(out, {"researcher_id", "pub_id"});
    for (const auto& [researcher, pub] : dataset.truth) writer.row({researcher, pub});
  }
  {
    nlohmann::json config;
    config["inputs"] = {{"publications", "publications.tsv"},   {"centres", "centres.tsv"},
                        {"groups", "groups.tsv"},               {"researchers", "researchers.tsv"},
                        {"journal_metrics", "journal_metrics.tsv"}, {"overrides", "overrides.tsv"},
                        {"patterns", "patterns.tsv"}};
    config["study_window"] = {2005, 2011};
    config["national_categories"] = dataset.national_categories;
    config["periods"] = {{"second", {2010, 2011}}, {"first_default", "launch"}};
    config["stabilization"] = {{"epsilon", 2.0}, {"window", 3}};
    config["output_dir"] = "out";
    config["rounding"] = {{"percent_decimals", 1}, {"cpp_decimals", 2}};
    auto out = open("config.json");
    out << config.dump(2) << '\n';
  }
}

}  // namespace progeval::synth
