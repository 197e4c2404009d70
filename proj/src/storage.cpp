#include <fstream>
#include <set>
#include <sstream>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"
#include "cnlwiki/wiki.hpp"

namespace cnlwiki {

namespace fs = std::filesystem;

std::string status_code(const Statement& s) {
  switch (s.status) {
    case Status::Blue: return "ok";
    case Status::NonLogic: return "nonowl:" + std::string(to_string(*s.reason));
    case Status::Conflict: return "conflict";
    case Status::Comment: return "comment";
  }
  return "?";
}

Ontology committed_ontology(const WikiState& state) {
  Ontology o;
  for (const auto& [id, s] : state.statements) {
    if (s.status == Status::Blue) {
      for (const auto& a : s.axioms) o.add(a);
    }
  }
  return o;
}

std::string export_text(const WikiState& state) {
  std::string out =
      "# cnlwiki ontology export\n"
      "# Unique name assumption: distinct individual names denote distinct individuals.\n";
  std::set<Axiom> seen;
  for (const auto& [id, s] : state.statements) {
    if (s.status != Status::Blue) continue;
    for (const auto& a : s.axioms) {
      if (seen.insert(a).second) out += to_functional(a) + "\n";
    }
  }
  for (const auto& [id, s] : state.statements) {
    if (s.status == Status::NonLogic) out += "# red(" + std::string(to_string(*s.reason)) + "): " + s.text + "\n";
    if (s.status == Status::Conflict) out += "# red(conflict): " + s.text + "\n";
  }
  return out;
}

namespace {

constexpr const char* kVocabulary = "vocabulary.tsv";
constexpr const char* kMeta = "wiki.meta";
constexpr const char* kArticles = "articles";
constexpr const char* kArticleSuffix = ".article";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("load-failure", "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("storage-failure", "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error("storage-failure", "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) throw Error("storage-failure", "cannot replace " + p.string() + ": " + ec.message());
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

long parse_id(const std::string& s) {
  if (s.empty() || s.size() > 15 || s.find_first_not_of("0123456789") != std::string::npos || s[0] == '0') {
    throw Error("load-failure", "bad statement id '" + s + "'");
  }
  return std::stol(s);
}

Statement load_statement(const WikiState& state, const std::string& article, const std::string& line) {
  const auto tab1 = line.find('\t');
  const auto tab2 = tab1 == std::string::npos ? tab1 : line.find('\t', tab1 + 1);
  if (tab2 == std::string::npos) throw Error("load-failure", "expected id, status and payload");
  Statement s;
  s.id = parse_id(line.substr(0, tab1));
  s.article = article;
  const std::string status = line.substr(tab1 + 1, tab2 - tab1 - 1);
  const std::string payload = line.substr(tab2 + 1);
  s.text = payload;

  if (status == "comment") {
    s.kind = StatementKind::Comment;
    s.status = Status::Comment;
    if (payload.empty()) throw Error("load-failure", "empty comment");
    return s;
  }

  s.kind = StatementKind::Sentence;
  s.tokens = state.lexicon.tokenize(payload);
  if (detokenize(s.tokens) != payload) throw Error("load-failure", "sentence is not in canonical form");
  s.ast = parse(s.tokens);
  const TranslationResult t = translate(*s.ast, s.id);
  const auto* blue = std::get_if<Blue>(&t);
  if (status == "ok" || status == "conflict") {
    if (!blue) throw Error("load-failure", "status " + status + " on a sentence outside the fragment");
    s.status = status == "ok" ? Status::Blue : Status::Conflict;
    if (s.status == Status::Blue) s.axioms = blue->axioms;
  } else if (status.starts_with("nonowl:")) {
    auto reason = red_reason_from_string(status.substr(7));
    if (!reason) throw Error("load-failure", "unknown reason in status " + status);
    if (blue || std::get<Red>(t).reason != *reason) throw Error("load-failure", "status " + status + " does not match");
    s.status = Status::NonLogic;
    s.reason = reason;
  } else {
    throw Error("load-failure", "unknown status '" + status + "'");
  }
  return s;
}

}  // namespace

WikiState load_state(const fs::path& dir) {
  WikiState state;
  if (!fs::exists(dir / kVocabulary)) return state;
  state.lexicon = parse_vocabulary(read_file(dir / kVocabulary));
  for (const auto& [lemma, entry] : state.lexicon.entries()) state.articles[lemma] = Article{lemma, {}};

  std::vector<fs::path> files;
  if (fs::is_directory(dir / kArticles)) {
    for (const auto& e : fs::directory_iterator(dir / kArticles)) {
      if (e.path().extension() == kArticleSuffix) files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());

  long max_id = 0;
  for (const auto& file : files) {
    const std::string lemma = file.stem().string();
    auto article = state.articles.find(lemma);
    if (article == state.articles.end()) throw Error("load-failure", file.string() + ": no such word '" + lemma + "'");
    const auto lines = lines_of(read_file(file));
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        Statement s = load_statement(state, lemma, lines[i]);
        if (state.statements.count(s.id)) throw Error("load-failure", "duplicate statement id " + std::to_string(s.id));
        max_id = std::max(max_id, s.id);
        article->second.statements.push_back(s.id);
        state.statements.emplace(s.id, std::move(s));
      } catch (const Error& e) {
        throw Error("load-failure", file.string() + ":" + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }

  state.next_id = max_id + 1;
  if (fs::exists(dir / kMeta)) {
    const auto lines = lines_of(read_file(dir / kMeta));
    if (lines.size() != 1 || !lines[0].starts_with("next-id\t")) throw Error("load-failure", "malformed wiki.meta");
    try {
      state.next_id = parse_id(lines[0].substr(8));
    } catch (const Error& e) {
      throw Error("load-failure", std::string("wiki.meta: ") + e.what());
    }
    if (state.next_id <= max_id) throw Error("load-failure", "wiki.meta: next-id not above the largest statement id");
  }

  state.ontology = committed_ontology(state);
  if (!is_consistent(state.ontology)) throw Error("load-failure", "committed statements are inconsistent");
  return state;
}

void save_state(const WikiState& state, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir / kArticles, ec);
  if (ec) throw Error("storage-failure", "cannot create " + (dir / kArticles).string() + ": " + ec.message());

  write_file(dir / kVocabulary, format_vocabulary(state.lexicon));
  write_file(dir / kMeta, "next-id\t" + std::to_string(state.next_id) + "\n");
  for (const auto& [lemma, article] : state.articles) {
    std::string content;
    for (long id : article.statements) {
      const Statement& s = state.statements.at(id);
      content += std::to_string(id) + "\t" + status_code(s) + "\t" + s.text + "\n";
    }
    write_file(dir / kArticles / (lemma + kArticleSuffix), content);
  }
  for (const auto& e : fs::directory_iterator(dir / kArticles)) {
    if (e.path().extension() == kArticleSuffix && !state.articles.count(e.path().stem().string())) {
      fs::remove(e.path(), ec);
    }
  }
}

}  // namespace cnlwiki
