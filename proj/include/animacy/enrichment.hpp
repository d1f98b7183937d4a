#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "animacy/chi_square.hpp"
#include "animacy/corpus.hpp"
#include "animacy/taxonomy.hpp"

namespace animacy {

enum class SynsetStatus { Animate, Inanimate, Undecided };

constexpr char status_code(SynsetStatus s) noexcept {
  return s == SynsetStatus::Animate ? 'A' : s == SynsetStatus::Inanimate ? 'I' : 'U';
}

struct SynsetTally {
  long ani = 0;
  long inani = 0;
  long total() const { return ani + inani; }
  bool operator==(const SynsetTally&) const = default;
};

/// Animacy annotation counts per synset (indexed like the taxonomy).
/// `total` includes occurrences of every hyponym; each occurrence reaches
/// an ancestor once even when several hypernym paths lead to it.
struct SynsetCounts {
  std::vector<SynsetTally> total;
  std::vector<SynsetTally> direct;
  std::size_t noun_occurrences = 0;
  std::size_t verb_occurrences = 0;
  std::size_t skipped = 0;  // unresolvable sense keys
  std::vector<std::string> warnings;
};

/// Noun occurrences come from NPs carrying both a gold label and a sense
/// key. Verb occurrences come from gold-labelled subject NPs: the subject's
/// label is credited to every sense of its verb.
SynsetCounts accumulate_counts(const Corpus& corpus, const Taxonomy& taxonomy);

/// Contingency table for a node under one hypothesis: one cell per hyponym
/// with observed occurrences, plus one for the node's own direct
/// occurrences when it has any.
std::vector<ContingencyCell> node_table(std::size_t node, const SynsetCounts& counts,
                                        const Taxonomy& taxonomy, Label hypothesis);

struct NodeDecision {
  SynsetStatus status = SynsetStatus::Undecided;
  bool unambiguous = false;  // every observed occurrence had the same label
  std::optional<ChiSquareResult> animate_test;
  std::optional<ChiSquareResult> inanimate_test;
  bool animate_pass = false;
  bool inanimate_pass = false;
};

NodeDecision decide_node(std::size_t node, const SynsetCounts& counts, const Taxonomy& taxonomy,
                         double alpha = 0.05);

inline SynsetStatus classify_node(std::size_t node, const SynsetCounts& counts,
                                  const Taxonomy& taxonomy, double alpha = 0.05) {
  return decide_node(node, counts, taxonomy, alpha).status;
}

/// Taxonomy plus one animacy status per synset.
class EnrichedTaxonomy {
 public:
  EnrichedTaxonomy(std::shared_ptr<const Taxonomy> base, std::vector<SynsetStatus> status);

  const Taxonomy& base() const noexcept { return *base_; }
  const std::shared_ptr<const Taxonomy>& base_ptr() const noexcept { return base_; }
  SynsetStatus status(std::size_t i) const { return status_[i]; }
  SynsetStatus status(std::string_view id) const { return status_[base_->require(id)]; }
  std::span<const SynsetStatus> statuses() const noexcept { return status_; }

  /// `STATUS<TAB>id<TAB>A|I|U`, one line per synset in taxonomy order.
  void save(std::ostream& out) const;
  /// SYNSET lines are skipped, so a taxonomy file with appended STATUS
  /// lines loads too. Every synset must receive exactly one status.
  static EnrichedTaxonomy load(std::istream& in, std::shared_ptr<const Taxonomy> base,
                               const std::string& source = "<stream>");
  static EnrichedTaxonomy load_file(const std::filesystem::path& path,
                                    std::shared_ptr<const Taxonomy> base);

 private:
  std::shared_ptr<const Taxonomy> base_;
  std::vector<SynsetStatus> status_;
};

EnrichedTaxonomy enrich(std::shared_ptr<const Taxonomy> taxonomy, const Corpus& corpus,
                        double alpha = 0.05, SynsetCounts* counts_out = nullptr);

/// Fraction of synsets whose status is not Undecided.
double coverage(const EnrichedTaxonomy& e);

/// Animacy of a sense after the fallback chain: its own status, else the
/// nearest decided hypernym (breadth-first, hypernym order), else the
/// unique-beginner class. Never returns Unknown.
Label resolve_animacy(const EnrichedTaxonomy& e, std::size_t synset, const BeginnerClass& beginners);

}  // namespace animacy
