#include "cnlwiki/wiki.hpp"

#include <algorithm>

#include "cnlwiki/error.hpp"
#include "cnlwiki/grammar.hpp"
#include "cnlwiki/overloaded.hpp"

namespace cnlwiki {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

Article& article_of(WikiState& state, const std::string& lemma) {
  auto it = state.articles.find(lemma);
  if (it == state.articles.end()) throw Error("unknown-article", "no article '" + lemma + "'");
  return it->second;
}

Statement& statement_of(WikiState& state, long id) {
  auto it = state.statements.find(id);
  if (it == state.statements.end()) throw Error("unknown-statement", "no statement " + std::to_string(id));
  return it->second;
}

bool uses_word(const Statement& s, const std::string& lemma) {
  return std::any_of(s.tokens.begin(), s.tokens.end(), [&](const Token& t) {
    const auto* w = std::get_if<LexicalWord>(&t.kind);
    return w && w->lemma == lemma;
  });
}

// The gate: red sentences stay out, blue ones enter only if the ontology stays
// consistent.
void gate(const WikiState& state, Statement& s) {
  const TranslationResult t = translate(*s.ast, s.id);
  s.axioms.clear();
  s.reason.reset();
  if (const auto* red = std::get_if<Red>(&t)) {
    s.status = Status::NonLogic;
    s.reason = red->reason;
    return;
  }
  const auto& axioms = std::get<Blue>(t).axioms;
  Ontology extended = state.ontology;
  for (const auto& a : axioms) extended.add(a);
  if (is_consistent(extended)) {
    s.status = Status::Blue;
    s.axioms = axioms;
  } else {
    s.status = Status::Conflict;
  }
}

std::string sentence_text(const TokenSequence& tokens) { return detokenize(tokens); }

MembershipView membership_view(const WikiState& state, const std::string& individual) {
  MembershipView view;
  view.individual = individual;
  for (const auto& cls : memberships(state.ontology, individual)) {
    view.classes.push_back(cls);
    view.sentences.push_back(
        sentence_text(verbalize_atomic(Axiom::class_assertion(ClassExpr::atomic(cls), individual), state.lexicon)));
  }
  return view;
}

std::string subclass_sentence(const WikiState& state, const std::string& sub, const std::string& super) {
  return sentence_text(
      verbalize_atomic(Axiom::sub_class_of(ClassExpr::atomic(sub), ClassExpr::atomic(super)), state.lexicon));
}

}  // namespace

Wiki::Wiki() : state_(std::make_shared<const WikiState>()) {}

Wiki::Wiki(const std::filesystem::path& dir)
    : state_(std::make_shared<const WikiState>(load_state(dir))), storage_(dir) {}

std::shared_ptr<const WikiState> Wiki::snapshot() const {
  std::lock_guard lock(publish_);
  return state_;
}

template <typename F>
auto Wiki::mutate(F&& f) {
  std::lock_guard lock(writer_);
  auto next = std::make_shared<WikiState>(*snapshot());
  auto result = f(*next);
  if (storage_) save_state(*next, *storage_);
  std::lock_guard publish(publish_);
  state_ = std::move(next);
  return result;
}

void Wiki::add_word(const WordEntry& entry) {
  mutate([&](WikiState& s) {
    s.lexicon.add_word(entry);
    s.articles[entry.lemma] = Article{entry.lemma, {}};
    return true;
  });
}

void Wiki::remove_word(const std::string& lemma) {
  mutate([&](WikiState& s) {
    if (!s.lexicon.contains(lemma)) throw Error("unknown-word", "no word '" + lemma + "'");
    for (const auto& [id, st] : s.statements) {
      if (uses_word(st, lemma)) {
        throw Error("word-in-use", "'" + lemma + "' is used by statement " + std::to_string(id));
      }
    }
    if (!s.articles.at(lemma).statements.empty()) {
      throw Error("article-not-empty", "the article of '" + lemma + "' still has statements");
    }
    s.lexicon.remove_word(lemma);
    s.articles.erase(lemma);
    return true;
  });
}

Statement Wiki::add_statement(const std::string& article, const TokenSequence& tokens) {
  return mutate([&](WikiState& s) {
    Article& target = article_of(s, article);
    Statement st;
    st.kind = StatementKind::Sentence;
    st.article = article;
    // Re-resolve against the current lexicon so stale tokens are rejected.
    st.tokens = s.lexicon.tokenize(detokenize(tokens));
    st.text = sentence_text(st.tokens);
    st.ast = parse(st.tokens);
    if (is_question(*st.ast)) throw Error("not-declarative", "questions cannot be added to an article");
    st.id = s.next_id;
    gate(s, st);
    ++s.next_id;
    if (st.status == Status::Blue) {
      for (const auto& a : st.axioms) s.ontology.add(a);
    }
    target.statements.push_back(st.id);
    s.statements.emplace(st.id, st);
    return st;
  });
}

Statement Wiki::add_statement(const std::string& article, std::string_view text) {
  return add_statement(article, snapshot()->lexicon.tokenize(text));
}

Statement Wiki::add_comment(const std::string& article, std::string_view text) {
  return mutate([&](WikiState& s) {
    Article& target = article_of(s, article);
    if (text.empty() || text.find_first_of("\t\r\n") != std::string_view::npos) {
      throw Error("malformed-comment", "comments are one non-empty line without tabs");
    }
    Statement st;
    st.id = s.next_id++;
    st.article = article;
    st.kind = StatementKind::Comment;
    st.status = Status::Comment;
    st.text = std::string(text);
    target.statements.push_back(st.id);
    s.statements.emplace(st.id, st);
    return st;
  });
}

void Wiki::remove_statement(long id) {
  mutate([&](WikiState& s) {
    const Statement& st = statement_of(s, id);
    auto& list = s.articles.at(st.article).statements;
    list.erase(std::remove(list.begin(), list.end(), id), list.end());
    const bool blue = st.status == Status::Blue;
    s.statements.erase(id);
    if (blue) s.ontology = committed_ontology(s);
    return true;
  });
}

Statement Wiki::reassert_statement(long id) {
  return mutate([&](WikiState& s) {
    Statement& st = statement_of(s, id);
    if (st.status != Status::Conflict) {
      throw Error("not-reassertable", "statement " + std::to_string(id) + " has status " + status_code(st));
    }
    gate(s, st);
    if (st.status == Status::Blue) {
      for (const auto& a : st.axioms) s.ontology.add(a);
    }
    return st;
  });
}

std::string Wiki::export_ontology() const { return export_text(*snapshot()); }

Views Wiki::snapshot_views() const {
  const auto state = snapshot();
  Views v;
  v.hierarchy = classify(state->ontology);
  const auto& groups = v.hierarchy.groups;
  for (const auto& group : groups) {
    for (const auto& a : group) {
      for (const auto& b : group) {
        if (a != b) v.hierarchy_sentences.push_back(subclass_sentence(*state, a, b));
      }
    }
  }
  for (const auto& [from, to] : v.hierarchy.edges) {
    for (const auto& a : groups[from]) {
      for (const auto& b : groups[to]) v.hierarchy_sentences.push_back(subclass_sentence(*state, a, b));
    }
  }
  for (const auto& [lemma, entry] : state->lexicon.entries()) {
    if (entry.word_class == WordClass::ProperName) v.memberships.push_back(membership_view(*state, lemma));
  }
  return v;
}

MembershipView Wiki::classes_of(const std::string& individual) const {
  const auto state = snapshot();
  const WordEntry* entry = state->lexicon.find(individual);
  if (!entry || entry->word_class != WordClass::ProperName) {
    throw Error("unknown-word", "no proper name '" + individual + "'");
  }
  return membership_view(*state, individual);
}

AskResult Wiki::ask(const TokenSequence& tokens) const {
  const auto state = snapshot();
  const TokenSequence resolved = state->lexicon.tokenize(detokenize(tokens));
  const SentenceAst ast = parse(resolved);
  const QueryTranslation q = translate_question(ast);
  AskResult result;
  std::visit(Overloaded{
                 [&](const RetrievalQuery& r) {
                   result.kind = AskResult::Kind::Individuals;
                   const auto& wh = std::get<WhQuestion>(ast);
                   for (const auto& p : retrieve(state->ontology, r.query)) {
                     result.individuals.push_back(p);
                     const Declarative is_a{IndividualSubject{p}, VpAst{IsAVp{false, wh.term}}};
                     const Declarative does{IndividualSubject{p}, wh.vp};
                     result.sentences.push_back(detokenize(realize(is_a, state->lexicon)));
                     result.sentences.push_back(detokenize(realize(does, state->lexicon)));
                   }
                 },
                 [&](const EntailmentQuery& e) {
                   result.kind = AskResult::Kind::Verdict;
                   result.answer = entails_membership(state->ontology, e.cls, e.individual);
                 },
                 [&](const Red& red) {
                   result.kind = AskResult::Kind::Red;
                   result.reason = red.reason;
                 },
             },
             q);
  return result;
}

AskResult Wiki::ask(std::string_view text) const { return ask(snapshot()->lexicon.tokenize(text)); }

Prediction Wiki::predict(std::string_view prefix) const { return predict_next(snapshot()->lexicon.tokenize(prefix)); }

}  // namespace cnlwiki
