#include "animacy/corpus.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "animacy/error.hpp"
#include "animacy/text.hpp"

namespace animacy {

std::optional<std::size_t> Document::find_np(NpKey key) const {
  for (std::size_t i = 0; i < nps.size(); ++i)
    if (nps[i].key() == key) return i;
  return std::nullopt;
}

namespace {

struct LineReader {
  const std::string& source;
  std::size_t line;

  [[noreturn]] void fail(const std::string& why) const { throw ParseError(source, line, why); }

  int non_negative(std::string_view s, const char* what) const {
    auto v = text::parse_int<int>(s);
    if (!v || *v < 0) fail(std::string("bad ") + what + " '" + std::string(s) + "'");
    return *v;
  }

  bool flag(std::string_view s, const char* what) const {
    if (s == "0") return false;
    if (s == "1") return true;
    fail(std::string(what) + " must be 0 or 1");
  }
};

}  // namespace

Corpus load_corpus(std::istream& in, const std::string& source) {
  Corpus corpus;
  std::map<std::string, std::size_t> doc_index;
  std::vector<std::set<NpKey>> keys;
  std::string raw;
  LineReader r{source, 0};

  auto doc_for = [&](std::string_view id) -> std::size_t {
    auto it = doc_index.find(std::string(id));
    if (it == doc_index.end()) r.fail("record refers to undeclared document '" + std::string(id) + "'");
    return it->second;
  };

  while (std::getline(in, raw)) {
    ++r.line;
    std::string_view line = text::strip_cr(raw);
    if (text::is_blank_or_comment(line)) continue;
    auto f = text::split(line, '\t');
    if (f[0] == "DOC") {
      if (f.size() != 4) r.fail("DOC record needs 4 fields");
      Document d;
      d.doc_id = std::string(f[1]);
      if (d.doc_id.empty()) r.fail("empty document id");
      d.animate_pronoun_count = r.non_negative(f[2], "animate pronoun count");
      d.inanimate_pronoun_count = r.non_negative(f[3], "inanimate pronoun count");
      if (!doc_index.emplace(d.doc_id, corpus.size()).second) r.fail("duplicate document " + d.doc_id);
      corpus.push_back(std::move(d));
      keys.emplace_back();
    } else if (f[0] == "NP") {
      if (f.size() < 12) r.fail("NP record needs 12 fields");
      auto di = doc_for(f[1]);
      NpRecord np;
      np.doc_id = std::string(f[1]);
      np.sent_id = r.non_negative(f[2], "sentence id");
      np.np_id = r.non_negative(f[3], "NP id");
      if (f[4].empty()) r.fail("empty head lemma");
      np.head_lemma = text::lower(f[4]);
      np.is_subject = r.flag(f[5], "subject flag");
      if (f[6] != "-") {
        if (!np.is_subject) r.fail("verb lemma given for a non-subject NP");
        if (f[6].empty()) r.fail("empty verb lemma");
        np.verb_lemma = text::lower(f[6]);
      }
      np.has_who_complementizer = r.flag(f[7], "who flag");
      np.has_animate_reflexive = r.flag(f[8], "reflexive flag");
      if (f[9] == "A")
        np.gold = Label::Animate;
      else if (f[9] == "I")
        np.gold = Label::Inanimate;
      else if (f[9] != "-")
        r.fail("gold label must be A, I or -");
      if (f[10] != "-") {
        if (f[10].empty()) r.fail("empty sense key");
        np.sense_key = std::string(f[10]);
      }
      // Surface text is the remainder of the line.
      auto surface_start = static_cast<std::size_t>(f[11].data() - line.data());
      np.surface = std::string(line.substr(surface_start));
      auto& doc = corpus[di];
      if (!doc.nps.empty() && doc.nps.back().sent_id > np.sent_id)
        r.fail("NP records of a document must follow sentence order");
      if (!keys[di].insert(np.key()).second)
        r.fail("duplicate NP key (" + np.doc_id + ", " + std::to_string(np.sent_id) + ", " +
               std::to_string(np.np_id) + ")");
      doc.nps.push_back(std::move(np));
    } else if (f[0] == "PRON") {
      if (f.size() != 7) r.fail("PRON record needs 7 fields");
      auto di = doc_for(f[1]);
      auto& doc = corpus[di];
      PronounRecord p;
      p.sent_id = r.non_negative(f[2], "sentence id");
      p.surface = std::string(f[3]);
      if (p.surface.empty()) r.fail("empty pronoun surface");
      p.animate = r.flag(f[4], "animate flag");
      const bool s_dash = f[5] == "-", n_dash = f[6] == "-";
      if (s_dash != n_dash) r.fail("antecedent needs both sentence and NP id, or neither");
      if (!s_dash) p.gold_antecedent = NpKey{r.non_negative(f[5], "antecedent sentence"),
                                             r.non_negative(f[6], "antecedent NP")};
      if (!doc.nps.empty() && doc.nps.back().sent_id > p.sent_id)
        r.fail("PRON record appears after NPs of a later sentence");
      p.position = doc.nps.size();
      doc.pronouns.push_back(std::move(p));
    } else {
      r.fail("unknown record type '" + std::string(f[0]) + "'");
    }
  }

  for (const auto& doc : corpus)
    for (const auto& p : doc.pronouns)
      if (p.gold_antecedent && !doc.find_np(*p.gold_antecedent))
        throw Error(source + ": pronoun '" + p.surface + "' in " + doc.doc_id + " sentence " +
                    std::to_string(p.sent_id) + " has dangling antecedent (" +
                    std::to_string(p.gold_antecedent->sent) + ", " +
                    std::to_string(p.gold_antecedent->np) + ")");
  return corpus;
}

Corpus load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file " + path.string());
  return load_corpus(in, path.string());
}

namespace {

void write_np(std::ostream& out, const NpRecord& np) {
  out << "NP\t" << np.doc_id << '\t' << np.sent_id << '\t' << np.np_id << '\t' << np.head_lemma
      << '\t' << (np.is_subject ? 1 : 0) << '\t' << (np.verb_lemma ? *np.verb_lemma : "-") << '\t'
      << (np.has_who_complementizer ? 1 : 0) << '\t' << (np.has_animate_reflexive ? 1 : 0)
      << '\t' << (np.gold ? std::string(1, label_code(*np.gold)) : "-") << '\t'
      << (np.sense_key ? *np.sense_key : "-") << '\t' << np.surface << '\n';
}

void write_pronoun(std::ostream& out, const std::string& doc_id, const PronounRecord& p) {
  out << "PRON\t" << doc_id << '\t' << p.sent_id << '\t' << p.surface << '\t' << (p.animate ? 1 : 0)
      << '\t';
  if (p.gold_antecedent)
    out << p.gold_antecedent->sent << '\t' << p.gold_antecedent->np;
  else
    out << "-\t-";
  out << '\n';
}

}  // namespace

void save_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& doc : corpus) {
    out << "DOC\t" << doc.doc_id << '\t' << doc.animate_pronoun_count << '\t'
        << doc.inanimate_pronoun_count << '\n';
    for (std::size_t i = 0; i <= doc.nps.size(); ++i) {
      for (std::size_t j = 0; j < doc.pronouns.size(); ++j)
        if (doc.pronouns[j].position == i) write_pronoun(out, doc.doc_id, doc.pronouns[j]);
      if (i < doc.nps.size()) write_np(out, doc.nps[i]);
    }
  }
}

void save_corpus_file(const std::filesystem::path& path, const Corpus& corpus) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file " + path.string());
  save_corpus(out, corpus);
  if (!out) throw Error("write failed for " + path.string());
}

double pronoun_ratio(const Document& doc, PronounCounting counting) {
  double animate = 0, inanimate = 0;
  if (counting == PronounCounting::Tokens) {
    animate = doc.animate_pronoun_count;
    inanimate = doc.inanimate_pronoun_count;
  } else {
    std::set<std::string> a, i;
    for (const auto& p : doc.pronouns) (p.animate ? a : i).insert(text::lower(p.surface));
    animate = static_cast<double>(a.size());
    inanimate = static_cast<double>(i.size());
  }
  if (animate + inanimate == 0) return 0.0;
  return animate / (animate + inanimate);
}

LabelStream gold_labels(const Corpus& corpus) {
  LabelStream out;
  for (const auto& doc : corpus)
    for (const auto& np : doc.nps)
      if (np.gold) out.push_back({doc.doc_id, np.key(), *np.gold});
  return out;
}

void write_labels(std::ostream& out, const LabelStream& labels) {
  for (const auto& l : labels)
    out << l.doc_id << '\t' << l.key.sent << '\t' << l.key.np << '\t' << label_code(l.label) << '\n';
}

LabelStream read_labels(std::istream& in, const std::string& source) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  std::istringstream lines(content);
  std::string raw;
  LabelStream out;
  LineReader r{source, 0};
  bool first = true;
  while (std::getline(lines, raw)) {
    ++r.line;
    std::string_view line = text::strip_cr(raw);
    if (text::is_blank_or_comment(line)) continue;
    auto f = text::split(line, '\t');
    if (first && (f[0] == "DOC" || f[0] == "NP" || f[0] == "PRON")) {
      std::istringstream again(content);
      return gold_labels(load_corpus(again, source));
    }
    first = false;
    if (f.size() != 4) r.fail("label record needs 4 fields");
    auto label = parse_label(f[3]);
    if (!label) r.fail("label must be A, I or U");
    out.push_back({std::string(f[0]),
                   NpKey{r.non_negative(f[1], "sentence id"), r.non_negative(f[2], "NP id")},
                   *label});
  }
  return out;
}

LabelStream read_labels_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open label file " + path.string());
  return read_labels(in, path.string());
}

}  // namespace animacy
