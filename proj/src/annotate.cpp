#include <istream>
#include <ostream>
#include <vector>

#include "animacy/corpus.hpp"

namespace animacy {
namespace {

constexpr const char* kBanner =
    "Animacy annotation: a = animate, i = inanimate, u = undo, q = save and quit.\n"
    "Reminder: an NP is animate when it can be referred to by he/she/him/her/his/hers/himself/"
    "herself.\nCollective nouns (people, government, jury, folk) are inanimate.\n";

void show(std::ostream& out, const Document& doc, std::size_t target, std::size_t done,
          std::size_t total) {
  const auto& np = doc.nps[target];
  out << "\n[" << done + 1 << "/" << total << "] " << doc.doc_id << " sentence " << np.sent_id
      << ":\n  ";
  for (std::size_t i = 0; i < doc.nps.size(); ++i) {
    if (doc.nps[i].sent_id != np.sent_id) continue;
    const auto& s = doc.nps[i].surface.empty() ? doc.nps[i].head_lemma : doc.nps[i].surface;
    if (i == target)
      out << ">>" << s << "<< ";
    else
      out << s << ' ';
  }
  out << "\nNP: " << (np.surface.empty() ? np.head_lemma : np.surface) << "  [a/i/u/q] "
      << std::flush;
}

}  // namespace

AnnotationResult annotate_interactive(Corpus& corpus, std::istream& keys, std::ostream& display) {
  struct Slot {
    std::size_t doc, np;
  };
  std::vector<Slot> pending;
  for (std::size_t d = 0; d < corpus.size(); ++d)
    for (std::size_t i = 0; i < corpus[d].nps.size(); ++i)
      if (!corpus[d].nps[i].gold) pending.push_back({d, i});

  AnnotationResult result;
  result.pending = pending.size();
  if (pending.empty()) {
    result.completed = true;
    display << "Nothing to annotate.\n";
    return result;
  }

  display << kBanner;
  std::size_t cursor = 0;  // labels are assigned to pending[0..cursor)
  auto prompt = [&] {
    if (cursor < pending.size())
      show(display, corpus[pending[cursor].doc], pending[cursor].np, cursor, pending.size());
    else
      display << "\nAll NPs labeled. u = undo, q = save and quit. " << std::flush;
  };

  prompt();
  char c;
  while (keys.get(c)) {
    if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    if (c == 'q' || c == 'Q' || c == 0x03 || c == 0x04) break;
    if (c == 'u' || c == 'U') {
      if (cursor == 0) {
        display << "\nNothing to undo.";
      } else {
        --cursor;
        corpus[pending[cursor].doc].nps[pending[cursor].np].gold.reset();
      }
    } else if (c == 'a' || c == 'A' || c == 'i' || c == 'I') {
      if (cursor == pending.size()) {
        display << "\nAll NPs labeled.";
      } else {
        corpus[pending[cursor].doc].nps[pending[cursor].np].gold =
            (c == 'a' || c == 'A') ? Label::Animate : Label::Inanimate;
        ++cursor;
      }
    } else {
      display << "\nUnknown key '" << c << "'.";
    }
    prompt();
  }
  display << '\n';
  result.labeled = cursor;
  result.completed = cursor == pending.size();
  return result;
}

}  // namespace animacy
