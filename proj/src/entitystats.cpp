#include "storyflux/entitystats.h"

#include <algorithm>
#include <map>
#include <set>

#include "storyflux/csv.h"
#include "storyflux/error.h"

namespace storyflux {

AnnotationLoad load_annotations(std::istream& in) {
  if (!in) throw Error(ErrorKind::UnreadableInput, "annotations stream is not readable");
  AnnotationLoad load;
  if (in.peek() == std::char_traits<char>::eof()) return load;
  if (!csv::read_header(in, {"doc_id", "entity", "label"})) {
    throw Error(ErrorKind::UnreadableInput,
                "annotations file must start with header doc_id,entity,label");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    ++load.records;
    auto fields = csv::split_line(line);
    if (!fields || fields->size() != 3 || (*fields)[0].empty() || (*fields)[1].empty()) {
      ++load.dropped_malformed;
      continue;
    }
    load.annotations.push_back(
        {std::move((*fields)[0]), std::move((*fields)[1]), std::move((*fields)[2])});
  }
  if (in.bad()) throw Error(ErrorKind::UnreadableInput, "error while reading annotations");
  return load;
}

std::vector<EntityShareRow> entity_doc_shares(const std::vector<EntityAnnotation>& annotations,
                                              std::size_t total_docs) {
  std::set<std::pair<std::string_view, std::string_view>> pairs;
  std::set<std::string_view> docs;
  for (const auto& a : annotations) {
    pairs.emplace(a.entity, a.doc_id);
    docs.insert(a.doc_id);
  }
  if (total_docs < docs.size()) {
    throw Error(ErrorKind::InconsistentTotal,
                "total_docs " + std::to_string(total_docs) + " < " +
                    std::to_string(docs.size()) + " annotated documents");
  }
  std::map<std::string_view, std::size_t> counts;
  for (const auto& [entity, doc] : pairs) ++counts[entity];

  std::vector<EntityShareRow> rows;
  rows.reserve(counts.size());
  for (const auto& [entity, n] : counts) {
    rows.push_back({std::string(entity), double(n) / double(total_docs), n});
  }
  // n_docs orders identically to doc_share and avoids float ties.
  std::sort(rows.begin(), rows.end(), [](const EntityShareRow& a, const EntityShareRow& b) {
    if (a.n_docs != b.n_docs) return a.n_docs > b.n_docs;
    return a.entity < b.entity;
  });
  return rows;
}

std::vector<EntityShareRow> top_entities(const std::vector<EntityShareRow>& rows, std::size_t n) {
  return {rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(std::min(n, rows.size()))};
}

}  // namespace storyflux
