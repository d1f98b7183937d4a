#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "animacy/label.hpp"

namespace animacy {

enum class Pos { Noun, Verb };

constexpr char pos_code(Pos p) noexcept { return p == Pos::Noun ? 'n' : 'v'; }

using SynsetId = std::string;

struct Synset {
  SynsetId id;
  Pos pos = Pos::Noun;
  // Lexicographer file number. Required on roots; other synsets inherit
  // from their first hypernym when it is absent.
  std::optional<int> lexfile;
  std::vector<std::string> lemmas;
  std::vector<SynsetId> hypernyms;

  bool operator==(const Synset&) const = default;
};

/// Which unique beginners (lexicographer files) count as animate.
struct BeginnerClass {
  std::set<int> animate_noun_lexfiles{5, 18, 24};
  std::set<int> animate_verb_lexfiles{31, 32, 37, 41};

  bool is_animate(int lexfile, Pos pos) const {
    const auto& s = pos == Pos::Noun ? animate_noun_lexfiles : animate_verb_lexfiles;
    return s.contains(lexfile);
  }
};

/// Animate or Inanimate, never Unknown.
Label beginner_animacy(int lexfile, Pos pos, const BeginnerClass& c);

/// Immutable, validated DAG of noun and verb synsets.
///
/// Synsets are addressed either by id or by their position in file
/// order; the index form is what the rest of the library uses in hot
/// loops. Construction checks every invariant (unique ids, resolvable
/// hypernyms, consistent part of speech, acyclicity, lexfile on roots)
/// and throws animacy::Error on the first violation.
class Taxonomy {
 public:
  Taxonomy() = default;
  explicit Taxonomy(std::vector<Synset> synsets);

  static Taxonomy load(std::istream& in, const std::string& source = "<stream>");
  static Taxonomy load_file(const std::filesystem::path& path);
  void save(std::ostream& out) const;

  std::size_t size() const noexcept { return synsets_.size(); }
  bool empty() const noexcept { return synsets_.empty(); }
  std::span<const Synset> synsets() const noexcept { return synsets_; }
  const Synset& operator[](std::size_t i) const { return synsets_[i]; }

  std::optional<std::size_t> index_of(std::string_view id) const;
  /// Throws animacy::Error for an unknown id.
  std::size_t require(std::string_view id) const;
  const Synset& at(std::string_view id) const { return synsets_[require(id)]; }

  std::span<const std::size_t> parents(std::size_t i) const { return parents_[i]; }
  std::span<const std::size_t> children(std::size_t i) const { return children_[i]; }

  /// Senses of a lemma in file order; empty when the lemma is unknown.
  std::span<const std::size_t> sense_indices(std::string_view lemma, Pos pos) const;
  std::vector<SynsetId> senses(std::string_view lemma, Pos pos) const;

  int beginner_of(std::size_t i) const { return beginner_[i]; }
  int beginner_of(std::string_view id) const { return beginner_[require(id)]; }

  /// Proper ancestors of i, each once, in ascending index order.
  std::vector<std::size_t> ancestors(std::size_t i) const;
  /// Proper descendants of i, each once, in ascending index order.
  std::vector<std::size_t> descendants(std::size_t i) const;
  std::vector<std::size_t> roots() const;
  /// Every synset after all of its hypernyms.
  std::span<const std::size_t> topological_order() const noexcept { return topo_; }

  bool operator==(const Taxonomy& other) const { return synsets_ == other.synsets_; }

 private:
  struct LemmaKey {
    std::string lemma;
    Pos pos;
    auto operator<=>(const LemmaKey&) const = default;
  };

  std::vector<Synset> synsets_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::map<LemmaKey, std::vector<std::size_t>, std::less<>> lemma_index_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> topo_;
  std::vector<int> beginner_;
};

/// Reads WordNet `data.noun` / `data.verb` files (and optionally the
/// matching `index.*` files, which restrict the lemma lists to the
/// lemma/synset pairs they list) and builds a Taxonomy. Hypernym and
/// instance-hypernym pointers become hypernym edges. Either data stream
/// may be null.
Taxonomy import_wndb(std::istream* data_noun, std::istream* data_verb,
                     std::istream* index_noun = nullptr, std::istream* index_verb = nullptr);

}  // namespace animacy
