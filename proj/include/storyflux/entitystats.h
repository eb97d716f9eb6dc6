#pragma once

#include <istream>
#include <string>
#include <vector>

namespace storyflux {

struct EntityAnnotation {
  std::string doc_id;
  std::string entity;
  std::string label;
};

struct EntityShareRow {
  std::string entity;
  double doc_share = 0;
  std::size_t n_docs = 0;
};

struct AnnotationLoad {
  std::vector<EntityAnnotation> annotations;
  std::size_t records = 0;
  std::size_t dropped_malformed = 0;
};

// "doc_id,entity,label" CSV; rows with an empty doc_id or entity are dropped.
AnnotationLoad load_annotations(std::istream& in);

// Fraction of the `total_docs` documents mentioning each entity, counting a
// document once per entity. Entities compare as exact strings. Rows are sorted
// by share descending, then entity ascending. Throws Error(InconsistentTotal)
// when total_docs is below the number of distinct annotated documents.
std::vector<EntityShareRow> entity_doc_shares(const std::vector<EntityAnnotation>& annotations,
                                              std::size_t total_docs);

std::vector<EntityShareRow> top_entities(const std::vector<EntityShareRow>& rows, std::size_t n);

}  // namespace storyflux
