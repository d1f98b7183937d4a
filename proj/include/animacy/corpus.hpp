#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "animacy/label.hpp"
#include "animacy/taxonomy.hpp"

namespace animacy {

/// Position of an NP inside its document.
struct NpKey {
  int sent = 0;
  int np = 0;
  auto operator<=>(const NpKey&) const = default;
};

/// One noun-phrase occurrence. `head_lemma` is already lowercased and
/// singularized by whatever produced the corpus.
struct NpRecord {
  std::string doc_id;
  int sent_id = 0;
  int np_id = 0;
  std::string head_lemma;
  bool is_subject = false;
  std::optional<std::string> verb_lemma;  // only for subjects
  bool has_who_complementizer = false;
  bool has_animate_reflexive = false;
  std::optional<Label> gold;  // never Unknown
  std::optional<SynsetId> sense_key;
  std::string surface;

  NpKey key() const { return {sent_id, np_id}; }
  bool operator==(const NpRecord&) const = default;
};

/// Third person singular pronoun occurrence.
struct PronounRecord {
  int sent_id = 0;
  std::string surface;
  bool animate = false;
  std::optional<NpKey> gold_antecedent;
  // Number of the document's NPs that precede the pronoun in text order.
  std::size_t position = 0;

  bool operator==(const PronounRecord&) const = default;
};

struct Document {
  std::string doc_id;
  int animate_pronoun_count = 0;
  int inanimate_pronoun_count = 0;
  std::vector<NpRecord> nps;  // text order
  std::vector<PronounRecord> pronouns;

  std::optional<std::size_t> find_np(NpKey key) const;
  bool operator==(const Document&) const = default;
};

using Corpus = std::vector<Document>;

/// Parses the tab-separated DOC / NP / PRON format and validates
/// cross-references. Throws ParseError or Error.
Corpus load_corpus(std::istream& in, const std::string& source = "<stream>");
Corpus load_corpus_file(const std::filesystem::path& path);
void save_corpus(std::ostream& out, const Corpus& corpus);
void save_corpus_file(const std::filesystem::path& path, const Corpus& corpus);

enum class PronounCounting {
  Tokens,  // the DOC record's pronoun counts
  Types,   // distinct pronoun surfaces among the PRON records
};

/// Animate share of singular pronouns; 0 when there are none.
double pronoun_ratio(const Document& doc, PronounCounting counting = PronounCounting::Tokens);

/// A label attached to one NP, as read from or written to a prediction file.
struct LabeledNp {
  std::string doc_id;
  NpKey key;
  Label label = Label::Unknown;
  bool operator==(const LabeledNp&) const = default;
};

using LabelStream = std::vector<LabeledNp>;

/// Gold labels of every annotated NP, in corpus order.
LabelStream gold_labels(const Corpus& corpus);

/// Prediction TSV: `doc_id sent_id np_id A|I|U`.
void write_labels(std::ostream& out, const LabelStream& labels);
/// Reads a prediction TSV, or the gold labels of a corpus file when the
/// first record is a DOC line.
LabelStream read_labels(std::istream& in, const std::string& source = "<stream>");
LabelStream read_labels_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Interactive annotation

struct AnnotationResult {
  std::size_t pending = 0;   // NPs without gold at session start
  std::size_t labeled = 0;   // NPs carrying a new label at session end
  bool completed = false;    // every pending NP was labeled
};

/// Runs the keystroke annotation loop over every NP without a gold label:
/// `a` animate, `i` inanimate, `u` undo, `q` (or Ctrl-C / Ctrl-D) quit.
/// End of input also ends the session. NPs that already carry gold are
/// never touched. The caller saves the corpus afterwards.
AnnotationResult annotate_interactive(Corpus& corpus, std::istream& keys, std::ostream& display);

}  // namespace animacy
