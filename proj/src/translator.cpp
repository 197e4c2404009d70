#include "cnlwiki/translator.hpp"

#include "cnlwiki/error.hpp"
#include "cnlwiki/overloaded.hpp"

namespace cnlwiki {

std::string_view to_string(RedReason r) {
  switch (r) {
    case RedReason::Modality: return "modality";
    case RedReason::PassiveClassAgentUnsupported: return "passive-class-agent-unsupported";
  }
  return "?";
}

std::optional<RedReason> red_reason_from_string(std::string_view s) {
  for (auto r : {RedReason::Modality, RedReason::PassiveClassAgentUnsupported}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

namespace {

// Red detection. Modality anywhere wins over passive placement.
bool has_modality(const VpAst& vp);

bool has_modality(const ClassTerm& t) { return t.relative && has_modality(**t.relative); }

bool has_modality(const ObjectAst& o) {
  return std::visit(Overloaded{
                        [](const IndividualObject&) { return false; },
                        [](const auto& x) { return has_modality(x.term); },
                    },
                    o);
}

bool has_modality(const VpAst& vp) {
  return std::visit(Overloaded{
                        [](const IsAVp& v) { return has_modality(v.term); },
                        [](const VerbVp& v) { return has_modality(v.object); },
                        [](const PassiveVp&) { return false; },
                        [](const ModalVp&) { return true; },
                    },
                    vp.node);
}

bool has_passive(const VpAst& vp);

bool has_passive(const ClassTerm& t) { return t.relative && has_passive(**t.relative); }

bool has_passive(const ObjectAst& o) {
  return std::visit(Overloaded{
                        [](const IndividualObject&) { return false; },
                        [](const auto& x) { return has_passive(x.term); },
                    },
                    o);
}

bool has_passive(const VpAst& vp) {
  return std::visit(Overloaded{
                        [](const IsAVp& v) { return has_passive(v.term); },
                        [](const VerbVp& v) { return has_passive(v.object); },
                        [](const PassiveVp&) { return true; },
                        [](const ModalVp& v) { return has_passive(v.object); },
                    },
                    vp.node);
}

ClassExpr class_term(const ClassTerm& t);

ClassExpr count_restriction(const CountObject& o, const std::string& role) {
  ClassExpr filler = class_term(o.term);
  auto at_least = [&](int n) { return n <= 0 ? ClassExpr::top() : ClassExpr::at_least(n, role, filler); };
  switch (o.kind) {
    case CountKind::AtMost: return ClassExpr::at_most(o.n, role, filler);
    case CountKind::AtLeast: return at_least(o.n);
    case CountKind::Exactly:
      if (o.n == 0) return ClassExpr::at_most(0, role, filler);
      return ClassExpr::conjunction(at_least(o.n), ClassExpr::at_most(o.n, role, filler));
    case CountKind::MoreThan: return at_least(o.n + 1);
    case CountKind::LessThan: return ClassExpr::at_most(o.n - 1, role, filler);
  }
  return ClassExpr::top();
}

ClassExpr positive_verb(const std::string& role, const ObjectAst& object) {
  return std::visit(
      Overloaded{
          [&](const ExistsObject& o) { return ClassExpr::some(role, class_term(o.term)); },
          [&](const NoneObject& o) { return ClassExpr::negation(ClassExpr::some(role, class_term(o.term))); },
          [&](const IndividualObject& o) { return ClassExpr::has_value(role, o.name); },
          [&](const CountObject& o) { return count_restriction(o, role); },
      },
      object);
}

ClassExpr verb_phrase(const VpAst& vp) {
  return std::visit(
      Overloaded{
          [](const IsAVp& v) {
            ClassExpr c = class_term(v.term);
            return v.negated ? ClassExpr::negation(std::move(c)) : c;
          },
          [](const VerbVp& v) {
            ClassExpr c = positive_verb(v.verb, v.object);
            return v.negated ? ClassExpr::negation(std::move(c)) : c;
          },
          [](const PassiveVp&) -> ClassExpr { throw std::logic_error("passive reached class translation"); },
          [](const ModalVp&) -> ClassExpr { throw std::logic_error("modality reached class translation"); },
      },
      vp.node);
}

ClassExpr class_term(const ClassTerm& t) {
  ClassExpr noun = ClassExpr::atomic(t.noun);
  if (!t.relative) return noun;
  return ClassExpr::conjunction(std::move(noun), verb_phrase(**t.relative));
}

}  // namespace

TranslationResult translate(const SentenceAst& ast, long statement_id) {
  const auto* decl = std::get_if<Declarative>(&ast);
  if (!decl) throw Error("not-declarative", "questions are not statements");
  if (has_modality(decl->vp)) return Red{RedReason::Modality};
  if (const auto* q = std::get_if<QuantifiedSubject>(&decl->subject); q && has_modality(q->term)) {
    return Red{RedReason::Modality};
  }

  if (const auto* name = std::get_if<IndividualSubject>(&decl->subject)) {
    if (const auto* passive = std::get_if<PassiveVp>(&decl->vp.node)) {
      return Blue{{Axiom::role_assertion(passive->verb, passive->agent, name->name)}};
    }
    if (has_passive(decl->vp)) return Red{RedReason::PassiveClassAgentUnsupported};
    if (const auto* verb = std::get_if<VerbVp>(&decl->vp.node); verb && !verb->negated) {
      if (const auto* obj = std::get_if<IndividualObject>(&verb->object)) {
        return Blue{{Axiom::role_assertion(verb->verb, name->name, obj->name)}};
      }
    }
    return Blue{{Axiom::class_assertion(verb_phrase(decl->vp), name->name)}};
  }

  const auto& subject = std::get<QuantifiedSubject>(decl->subject);
  if (has_passive(decl->vp) || has_passive(subject.term)) return Red{RedReason::PassiveClassAgentUnsupported};
  ClassExpr head = class_term(subject.term);
  ClassExpr body = verb_phrase(decl->vp);
  switch (subject.quantifier) {
    case Quantifier::Every: return Blue{{Axiom::sub_class_of(std::move(head), std::move(body))}};
    case Quantifier::No:
      return Blue{{Axiom::sub_class_of(std::move(head), ClassExpr::negation(std::move(body)))}};
    case Quantifier::Some:
      return Blue{{Axiom::class_assertion(ClassExpr::conjunction(std::move(head), std::move(body)),
                                          anonymous_individual(statement_id))}};
  }
  return Red{RedReason::Modality};
}

QueryTranslation translate_question(const SentenceAst& ast) {
  if (const auto* wh = std::get_if<WhQuestion>(&ast)) {
    if (has_modality(wh->term) || has_modality(wh->vp)) return Red{RedReason::Modality};
    if (has_passive(wh->term) || has_passive(wh->vp)) return Red{RedReason::PassiveClassAgentUnsupported};
    return RetrievalQuery{ClassExpr::conjunction(class_term(wh->term), verb_phrase(wh->vp))};
  }
  if (const auto* yn = std::get_if<YnQuestion>(&ast)) {
    if (has_modality(yn->term)) return Red{RedReason::Modality};
    if (has_passive(yn->term)) return Red{RedReason::PassiveClassAgentUnsupported};
    return EntailmentQuery{class_term(yn->term), yn->individual};
  }
  throw Error("not-a-question", "statements are not questions");
}

namespace {

const WordEntry& word(const Lexicon& lexicon, const std::string& lemma, WordClass expected) {
  const WordEntry* entry = lexicon.find(lemma);
  if (!entry || entry->word_class != expected) {
    throw Error("unknown-word", "no " + std::string(to_string(expected)) + " '" + lemma + "'");
  }
  return *entry;
}

Token lexical(const WordEntry& entry, FormKey key) {
  return Token{entry.form(key), LexicalWord{entry.word_class, entry.lemma, key}};
}

Token article_for(const std::string& noun_form) {
  const char c = noun_form.empty() ? 'x' : noun_form.front();
  const bool vowel = c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  return Token::function_word(vowel ? "an" : "a");
}

bool named(const std::string& individual) { return !individual.empty() && !is_anonymous(individual); }

}  // namespace

TokenSequence verbalize_atomic(const Axiom& axiom, const Lexicon& lexicon) {
  switch (axiom.kind) {
    case AxiomKind::SubClassOf:
      if (axiom.sub.kind == ExprKind::Atomic && axiom.super.kind == ExprKind::Atomic) {
        const auto& sub = word(lexicon, axiom.sub.name, WordClass::Noun);
        const auto& super = word(lexicon, axiom.super.name, WordClass::Noun);
        return {Token::function_word("every"), lexical(sub, FormKey::Singular), Token::function_word("is"),
                article_for(super.form(FormKey::Singular)), lexical(super, FormKey::Singular),
                Token::function_word(".")};
      }
      break;
    case AxiomKind::ClassAssertion:
      if (axiom.sub.kind == ExprKind::Atomic && named(axiom.individual)) {
        const auto& name = word(lexicon, axiom.individual, WordClass::ProperName);
        const auto& cls = word(lexicon, axiom.sub.name, WordClass::Noun);
        return {lexical(name, FormKey::Name), Token::function_word("is"), article_for(cls.form(FormKey::Singular)),
                lexical(cls, FormKey::Singular), Token::function_word(".")};
      }
      break;
    case AxiomKind::RoleAssertion:
      if (named(axiom.individual) && named(axiom.target)) {
        const auto& subject = word(lexicon, axiom.individual, WordClass::ProperName);
        const auto& verb = word(lexicon, axiom.role, WordClass::TransitiveVerb);
        const auto& object = word(lexicon, axiom.target, WordClass::ProperName);
        return {lexical(subject, FormKey::Name), lexical(verb, FormKey::ThirdSingular),
                lexical(object, FormKey::Name), Token::function_word(".")};
      }
      break;
  }
  throw Error("not-atomic", "cannot verbalize " + to_functional(axiom));
}

namespace {

bool fragment_expr(const ClassExpr& c) {
  switch (c.kind) {
    case ExprKind::Atomic:
    case ExprKind::Top:
    case ExprKind::HasValue: return true;
    case ExprKind::Or: return false;
    case ExprKind::AtLeast:
      if (c.n < 1) return false;
      break;
    case ExprKind::AtMost:
      if (c.n < 0) return false;
      break;
    default: break;
  }
  for (const auto& op : c.operands) {
    if (!fragment_expr(op)) return false;
  }
  return true;
}

}  // namespace

bool in_translation_fragment(const Axiom& axiom) {
  switch (axiom.kind) {
    case AxiomKind::SubClassOf: return fragment_expr(axiom.sub) && fragment_expr(axiom.super);
    case AxiomKind::ClassAssertion: return fragment_expr(axiom.sub) && !axiom.individual.empty();
    case AxiomKind::RoleAssertion: return !axiom.individual.empty() && !axiom.target.empty();
  }
  return false;
}

}  // namespace cnlwiki

namespace cnlwiki {

namespace {

class Realizer {
 public:
  explicit Realizer(const Lexicon& lexicon) : lexicon_(lexicon) {}

  TokenSequence sentence(const SentenceAst& ast) {
    std::visit(Overloaded{
                   [&](const Declarative& d) {
                     std::visit(Overloaded{
                                    [&](const QuantifiedSubject& q) {
                                      switch (q.quantifier) {
                                        case Quantifier::Every: fw("every"); break;
                                        case Quantifier::No: fw("no"); break;
                                        case Quantifier::Some: article(q.term.noun); break;
                                      }
                                      term(q.term, false);
                                    },
                                    [&](const IndividualSubject& s) { name(s.name); },
                                },
                                d.subject);
                     vp(d.vp, false);
                     fw(".");
                   },
                   [&](const WhQuestion& q) {
                     fw("which");
                     term(q.term, true);
                     vp(q.vp, true);
                     fw("?");
                   },
                   [&](const YnQuestion& q) {
                     fw("is");
                     name(q.individual);
                     article(q.term.noun);
                     term(q.term, false);
                     fw("?");
                   },
               },
               ast);
    return std::move(out_);
  }

 private:
  void fw(const char* w) { out_.push_back(Token::function_word(w)); }

  void push_word(const std::string& lemma, WordClass cls, FormKey key) {
    out_.push_back(lexical(word(lexicon_, lemma, cls), key));
  }

  void name(const std::string& lemma) { push_word(lemma, WordClass::ProperName, FormKey::Name); }

  void article(const std::string& noun) {
    out_.push_back(article_for(word(lexicon_, noun, WordClass::Noun).form(FormKey::Singular)));
  }

  void term(const ClassTerm& t, bool plural) {
    push_word(t.noun, WordClass::Noun, plural ? FormKey::Plural : FormKey::Singular);
    if (t.relative) {
      fw("that");
      vp(**t.relative, plural);
    }
  }

  void vp(const VpAst& v, bool plural) {
    std::visit(Overloaded{
                   [&](const IsAVp& x) {
                     fw(plural ? "are" : "is");
                     if (x.negated) fw("not");
                     if (!plural) article(x.term.noun);
                     term(x.term, plural);
                   },
                   [&](const VerbVp& x) {
                     if (x.negated) {
                       fw(plural ? "do" : "does");
                       fw("not");
                     }
                     const bool base = plural || x.negated;
                     push_word(x.verb, WordClass::TransitiveVerb, base ? FormKey::VerbPlural : FormKey::ThirdSingular);
                     object(x.object);
                   },
                   [&](const PassiveVp& x) {
                     fw(plural ? "are" : "is");
                     push_word(x.verb, WordClass::TransitiveVerb, FormKey::PastParticiple);
                     fw("by");
                     name(x.agent);
                   },
                   [&](const ModalVp& x) {
                     fw(x.modality == Modality::Can ? "can" : "must");
                     push_word(x.verb, WordClass::TransitiveVerb, FormKey::VerbPlural);
                     object(x.object);
                   },
               },
               v.node);
  }

  void object(const ObjectAst& o) {
    std::visit(Overloaded{
                   [&](const ExistsObject& x) {
                     article(x.term.noun);
                     term(x.term, false);
                   },
                   [&](const NoneObject& x) {
                     fw("no");
                     term(x.term, false);
                   },
                   [&](const IndividualObject& x) { name(x.name); },
                   [&](const CountObject& x) {
                     switch (x.kind) {
                       case CountKind::AtMost: fw("at"); fw("most"); break;
                       case CountKind::AtLeast: fw("at"); fw("least"); break;
                       case CountKind::Exactly: fw("exactly"); break;
                       case CountKind::MoreThan: fw("more"); fw("than"); break;
                       case CountKind::LessThan: fw("less"); fw("than"); break;
                     }
                     out_.push_back(Token::number(x.n));
                     term(x.term, x.n != 1);
                   },
               },
               o);
  }

  const Lexicon& lexicon_;
  TokenSequence out_;
};

}  // namespace

TokenSequence realize(const SentenceAst& ast, const Lexicon& lexicon) { return Realizer(lexicon).sentence(ast); }

}  // namespace cnlwiki
