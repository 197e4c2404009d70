#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnlwiki/ast.hpp"
#include "cnlwiki/axiom.hpp"
#include "cnlwiki/lexicon.hpp"
#include "cnlwiki/prediction.hpp"
#include "cnlwiki/reasoner.hpp"
#include "cnlwiki/translator.hpp"

namespace cnlwiki {

enum class StatementKind { Sentence, Comment };

enum class Status { Blue, NonLogic, Conflict, Comment };

struct Statement {
  long id = 0;
  std::string article;
  StatementKind kind = StatementKind::Sentence;
  TokenSequence tokens;
  std::string text;  // detokenized sentence, or the comment text
  std::optional<SentenceAst> ast;
  Status status = Status::Comment;
  std::optional<RedReason> reason;  // NonLogic only
  std::vector<Axiom> axioms;        // Blue only

  friend bool operator==(const Statement&, const Statement&) = default;
};

/// Storage code: "ok", "nonowl:<reason>", "conflict" or "comment".
std::string status_code(const Statement& s);

struct Article {
  std::string word;
  std::vector<long> statements;

  friend bool operator==(const Article&, const Article&) = default;
};

struct WikiState {
  Lexicon lexicon;
  std::map<std::string, Article> articles;
  std::map<long, Statement> statements;
  Ontology ontology;  // axioms of all blue statements
  long next_id = 1;

  friend bool operator==(const WikiState&, const WikiState&) = default;
};

/// Recomputes the committed ontology from the statements' statuses.
Ontology committed_ontology(const WikiState& state);

/// Reads a data directory. A missing directory or vocabulary.tsv gives an
/// empty wiki. Errors: load-failure (including a violated gate invariant).
WikiState load_state(const std::filesystem::path& dir);

/// Writes every file of the data directory. Errors: storage-failure.
void save_state(const WikiState& state, const std::filesystem::path& dir);

/// Deterministic export: notice comments, axioms in statement order, then one
/// comment line per red sentence.
std::string export_text(const WikiState& state);

struct MembershipView {
  std::string individual;
  std::vector<std::string> classes;
  std::vector<std::string> sentences;
};

struct Views {
  Hierarchy hierarchy;
  std::vector<std::string> hierarchy_sentences;  // direct edges and equivalences
  std::vector<MembershipView> memberships;        // one per proper name
};

struct AskResult {
  enum class Kind { Individuals, Verdict, Red };
  Kind kind = Kind::Verdict;
  std::vector<std::string> individuals;
  std::vector<std::string> sentences;
  Answer answer = Answer::Unknown;
  std::optional<RedReason> reason;
};

std::string_view to_string(Answer a);

/// The wiki: all mutations go through one writer and publish a fresh
/// immutable snapshot; readers work on snapshots and never block writers.
class Wiki {
 public:
  Wiki();
  /// Loads `dir` and writes every later mutation back to it.
  explicit Wiki(const std::filesystem::path& dir);

  Wiki(const Wiki&) = delete;
  Wiki& operator=(const Wiki&) = delete;

  std::shared_ptr<const WikiState> snapshot() const;

  /// Errors: the lexicon's add_word errors.
  void add_word(const WordEntry& entry);
  /// Errors: unknown-word; word-in-use; article-not-empty.
  void remove_word(const std::string& lemma);

  /// Runs the consistency gate. Errors: unknown-article; unknown-word;
  /// syntax-error; not-declarative; reasoner errors.
  Statement add_statement(const std::string& article, const TokenSequence& tokens);
  Statement add_statement(const std::string& article, std::string_view text);
  /// Errors: unknown-article; malformed-comment.
  Statement add_comment(const std::string& article, std::string_view text);
  /// Errors: unknown-statement.
  void remove_statement(long id);
  /// Errors: unknown-statement; not-reassertable.
  Statement reassert_statement(long id);

  std::string export_ontology() const;
  Views snapshot_views() const;
  /// Errors: unknown-word when `individual` is not a proper name.
  MembershipView classes_of(const std::string& individual) const;
  /// Errors: unknown-word; syntax-error; not-a-question.
  AskResult ask(const TokenSequence& tokens) const;
  AskResult ask(std::string_view text) const;
  /// Errors: unknown-word.
  Prediction predict(std::string_view prefix) const;

 private:
  template <typename F>
  auto mutate(F&& f);

  mutable std::mutex writer_;
  mutable std::mutex publish_;
  std::shared_ptr<const WikiState> state_;
  std::optional<std::filesystem::path> storage_;
};

}  // namespace cnlwiki
