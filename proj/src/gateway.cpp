#include "cnlwiki/gateway.hpp"

#include <algorithm>
#include <regex>

namespace cnlwiki {

Json to_json(const Prediction& p) {
  Json j;
  j["function_words"] = Json::array();
  for (const auto& w : p.function_words) j["function_words"].push_back(w);
  j["categories"] = Json::array();
  for (Category c : p.categories) j["categories"].push_back(to_string(c));
  if (p.categories.count(Category::Number)) j["number_min"] = p.number_min;
  return j;
}

Json to_json(const Statement& s) {
  Json j;
  j["id"] = s.id;
  j["article"] = s.article;
  j["kind"] = s.kind == StatementKind::Sentence ? "sentence" : "comment";
  j["text"] = s.text;
  j["status"] = status_code(s);
  if (s.reason) j["reason"] = to_string(*s.reason);
  if (s.kind == StatementKind::Sentence) {
    j["axioms"] = Json::array();
    for (const auto& a : s.axioms) j["axioms"].push_back(to_functional(a));
  }
  return j;
}

Json to_json(const WordEntry& e) {
  Json j;
  j["lemma"] = e.lemma;
  j["class"] = to_string(e.word_class);
  j["forms"] = Json::object();
  for (FormKey k : required_forms(e.word_class)) j["forms"][std::string(to_string(k))] = e.form(k);
  return j;
}

Json to_json(const AskResult& r) {
  Json j;
  switch (r.kind) {
    case AskResult::Kind::Individuals:
      j["kind"] = "individuals";
      j["individuals"] = r.individuals;
      j["sentences"] = r.sentences;
      break;
    case AskResult::Kind::Verdict:
      j["kind"] = "verdict";
      j["answer"] = to_string(r.answer);
      break;
    case AskResult::Kind::Red:
      j["kind"] = "red";
      j["reason"] = to_string(*r.reason);
      break;
  }
  return j;
}

Json to_json(const MembershipView& v) {
  Json j;
  j["individual"] = v.individual;
  j["classes"] = v.classes;
  j["sentences"] = v.sentences;
  return j;
}

Json to_json(const Error& e) {
  Json j;
  j["code"] = e.code();
  j["message"] = e.what();
  if (e.position()) j["position"] = *e.position();
  if (e.prediction()) j["prediction"] = to_json(*e.prediction());
  return j;
}

WordEntry word_from_json(const Json& j) {
  try {
    const auto cls = word_class_from_string(j.at("class").get<std::string>());
    if (!cls) throw Error("malformed-request", "unknown word class");
    WordEntry e;
    e.lemma = j.at("lemma").get<std::string>();
    e.word_class = *cls;
    const Json& forms = j.at("forms");
    for (FormKey k : required_forms(*cls)) {
      auto it = forms.find(std::string(to_string(k)));
      e.forms[k] = it == forms.end() ? "" : it->get<std::string>();
    }
    return e;
  } catch (const Json::exception& ex) {
    throw Error("malformed-request", std::string("bad word: ") + ex.what());
  }
}

namespace {

ApiResponse json_response(int status, const Json& j) { return {status, "application/json", j.dump()}; }

ApiResponse error_response(int status, const Error& e) { return json_response(status, to_json(e)); }

Json parse_body(const std::string& body) {
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw Error("malformed-request", "request body must be a JSON object");
    return j;
  } catch (const Json::exception& ex) {
    throw Error("malformed-request", std::string("invalid JSON: ") + ex.what());
  }
}

std::string string_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw Error("malformed-request", std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

long parse_statement_id(const std::string& s) {
  if (s.empty() || s.size() > 15 || !std::all_of(s.begin(), s.end(), ::isdigit)) {
    throw Error("unknown-statement", "no statement '" + s + "'");
  }
  return std::stol(s);
}

void require_article(const WikiState& state, const std::string& lemma) {
  if (!state.articles.count(lemma)) throw Error("unknown-article", "no article '" + lemma + "'");
}

void require_statement_in(const WikiState& state, const std::string& lemma, long id) {
  require_article(state, lemma);
  auto it = state.statements.find(id);
  if (it == state.statements.end() || it->second.article != lemma) {
    throw Error("unknown-statement", "no statement " + std::to_string(id) + " in '" + lemma + "'");
  }
}

// Codes that name a resource missing from the request path.
bool is_not_found(const std::string& code) {
  return code == "unknown-article" || code == "unknown-statement" || code == "unknown-route";
}

int status_for(const std::string& code) {
  if (is_not_found(code)) return 404;
  if (code == "reasoner-limit" || code == "storage-failure" || code == "inconsistent-ontology") return 500;
  return 400;
}

}  // namespace

ApiResponse Api::handle(const ApiRequest& req) const {
  static const std::regex article_re("/api/articles/([^/]+)");
  static const std::regex statements_re("/api/articles/([^/]+)/statements");
  static const std::regex statement_re("/api/articles/([^/]+)/statements/([^/]+)");
  static const std::regex reassert_re("/api/articles/([^/]+)/statements/([^/]+)/reassert");
  static const std::regex word_re("/api/words/([^/]+)");
  static const std::regex classes_re("/api/individuals/([^/]+)/classes");

  const std::string& m = req.method;
  const std::string& path = req.path;
  std::smatch match;
  try {
    if (path == "/api/words") {
      if (m == "GET") {
        Json j;
        j["words"] = Json::array();
        for (const auto& [lemma, entry] : wiki_.snapshot()->lexicon.entries()) j["words"].push_back(to_json(entry));
        return json_response(200, j);
      }
      if (m == "POST") {
        const WordEntry entry = word_from_json(parse_body(req.body));
        wiki_.add_word(entry);
        return json_response(201, to_json(entry));
      }
    } else if (std::regex_match(path, match, word_re)) {
      if (m == "DELETE") {
        const std::string lemma = match[1];
        if (!wiki_.snapshot()->lexicon.contains(lemma)) {
          return error_response(404, Error("unknown-word", "no word '" + lemma + "'"));
        }
        wiki_.remove_word(lemma);
        return json_response(200, Json{{"removed", lemma}});
      }
    } else if (std::regex_match(path, match, reassert_re)) {
      if (m == "POST") {
        const long id = parse_statement_id(match[2]);
        require_statement_in(*wiki_.snapshot(), match[1], id);
        return json_response(200, to_json(wiki_.reassert_statement(id)));
      }
    } else if (std::regex_match(path, match, statement_re)) {
      if (m == "DELETE") {
        const long id = parse_statement_id(match[2]);
        require_statement_in(*wiki_.snapshot(), match[1], id);
        wiki_.remove_statement(id);
        return json_response(200, Json{{"removed", id}});
      }
    } else if (std::regex_match(path, match, statements_re)) {
      if (m == "POST") {
        const std::string lemma = match[1];
        require_article(*wiki_.snapshot(), lemma);
        const Json body = parse_body(req.body);
        if (body.contains("comment")) return json_response(200, to_json(wiki_.add_comment(lemma, string_field(body, "comment"))));
        return json_response(200, to_json(wiki_.add_statement(lemma, std::string_view(string_field(body, "text")))));
      }
    } else if (std::regex_match(path, match, article_re)) {
      if (m == "GET") {
        const auto state = wiki_.snapshot();
        const std::string lemma = match[1];
        require_article(*state, lemma);
        Json j;
        j["word"] = to_json(*state->lexicon.find(lemma));
        j["statements"] = Json::array();
        for (long id : state->articles.at(lemma).statements) j["statements"].push_back(to_json(state->statements.at(id)));
        return json_response(200, j);
      }
    } else if (path == "/api/predict") {
      if (m == "GET") {
        auto it = req.query.find("prefix");
        std::string prefix = it == req.query.end() ? "" : it->second;
        std::replace(prefix.begin(), prefix.end(), '+', ' ');
        return json_response(200, to_json(wiki_.predict(prefix)));
      }
    } else if (path == "/api/hierarchy") {
      if (m == "GET") {
        const Views v = wiki_.snapshot_views();
        Json j;
        j["groups"] = v.hierarchy.groups;
        j["edges"] = Json::array();
        for (const auto& [from, to] : v.hierarchy.edges) j["edges"].push_back({from, to});
        j["sentences"] = v.hierarchy_sentences;
        return json_response(200, j);
      }
    } else if (std::regex_match(path, match, classes_re)) {
      if (m == "GET") {
        const std::string lemma = match[1];
        const WordEntry* entry = wiki_.snapshot()->lexicon.find(lemma);
        if (!entry || entry->word_class != WordClass::ProperName) {
          return error_response(404, Error("unknown-word", "no proper name '" + lemma + "'"));
        }
        return json_response(200, to_json(wiki_.classes_of(lemma)));
      }
    } else if (path == "/api/ask") {
      if (m == "POST") {
        const Json body = parse_body(req.body);
        return json_response(200, to_json(wiki_.ask(std::string_view(string_field(body, "question")))));
      }
    } else if (path == "/api/export") {
      if (m == "GET") return {200, "text/plain; charset=utf-8", wiki_.export_ontology()};
    } else {
      return error_response(404, Error("unknown-route", "no route " + path));
    }
    return error_response(405, Error("method-not-allowed", m + " not allowed on " + path));
  } catch (const Error& e) {
    return error_response(status_for(e.code()), e);
  }
}

}  // namespace cnlwiki
