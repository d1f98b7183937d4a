#pragma once

#include <memory>
#include <sstream>
#include <string>

#include "animacy/corpus.hpp"
#include "animacy/taxonomy.hpp"

namespace fixtures {

inline std::string data(const std::string& name) { return std::string(ANIMACY_DATA_DIR) + "/" + name; }

inline std::shared_ptr<const animacy::Taxonomy> toy() {
  static auto t = std::make_shared<const animacy::Taxonomy>(animacy::Taxonomy::load_file(data("toy.tax")));
  return t;
}

inline const animacy::Corpus& mini() {
  static const animacy::Corpus c = animacy::load_corpus_file(data("mini.tsv"));
  return c;
}

inline animacy::Taxonomy taxonomy(const std::string& text) {
  std::istringstream in(text);
  return animacy::Taxonomy::load(in, "test");
}

inline animacy::Corpus corpus(const std::string& text) {
  std::istringstream in(text);
  return animacy::load_corpus(in, "test");
}

}  // namespace fixtures
