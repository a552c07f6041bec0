#include "recmon/parse.hpp"

#include <cctype>

#include "recmon/errors.hpp"

namespace recmon {

namespace {

struct Lexer {
  const std::string &text;
  size_t pos = 0;

  explicit Lexer(const std::string &t) : text(t) { skip(); }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void error(const std::string &msg) const {
    fail(Errc::syntax, msg + " at position " + std::to_string(pos));
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return eof() ? '\0' : text[pos]; }

  bool try_punct(const std::string &p) {
    if (text.compare(pos, p.size(), p) == 0) {
      pos += p.size();
      skip();
      return true;
    }
    return false;
  }

  void expect_punct(const std::string &p) {
    if (!try_punct(p)) error("expected '" + p + "'");
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Peeks the identifier at the cursor without consuming.
  std::string peek_ident() const {
    if (eof() || !ident_start(text[pos])) return {};
    size_t end = pos;
    while (end < text.size() && ident_char(text[end])) ++end;
    return text.substr(pos, end - pos);
  }

  std::string ident() {
    auto id = peek_ident();
    if (id.empty()) error("expected identifier");
    pos += id.size();
    skip();
    return id;
  }

  bool try_keyword(const std::string &kw) {
    if (peek_ident() == kw) {
      pos += kw.size();
      skip();
      return true;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Formulas

struct FormulaParser {
  Lexer lx;
  const Alphabet &alpha;
  int fresh_counter = 0;

  FormulaParser(const std::string &t, const Alphabet &a) : lx(t), alpha(a) {}

  ActionSet acts() {
    if (lx.try_punct("*")) return alpha.all();
    if (lx.try_punct("~")) {
      lx.expect_punct("{");
      ActionSet s = action_list("}");
      ActionSet c = alpha.complement(s);
      if (c == 0) lx.error("complement denotes the empty action set");
      return c;
    }
    if (lx.try_punct("{")) return action_list("}");
    return action_list("");
  }

  ActionSet action_list(const std::string &closer) {
    ActionSet s = 0;
    for (;;) {
      std::string name = lx.ident();
      if (name == "tau") lx.error("'tau' cannot appear in a formula modality");
      s |= set_of(alpha.require(name));
      if (!lx.try_punct(",")) break;
    }
    if (!closer.empty()) lx.expect_punct(closer);
    return s;
  }

  std::string fresh_var() { return "_U" + std::to_string(fresh_counter++); }

  FormulaPtr primary() {
    if (lx.try_punct("(")) {
      auto f = disjunction();
      lx.expect_punct(")");
      return f;
    }
    if (lx.try_punct("[")) {
      ActionSet s = acts();
      lx.expect_punct("]");
      return f_box(s, primary());
    }
    if (lx.try_punct("<")) {
      ActionSet s = acts();
      lx.expect_punct(">");
      return f_dia(s, primary());
    }
    std::string id = lx.peek_ident();
    if (id.empty()) lx.error("expected formula");
    if (id == "tt") {
      lx.ident();
      return f_tt();
    }
    if (id == "ff") {
      lx.ident();
      return f_ff();
    }
    if (id == "max" || id == "min") {
      lx.ident();
      std::string x = lx.ident();
      lx.expect_punct(".");
      auto body = disjunction();  // fixpoint body extends maximally right
      return id == "max" ? f_max(x, body) : f_min(x, body);
    }
    if (id == "tau") lx.error("'tau' cannot appear in a formula");
    if (id == "X") {
      // LTL next when a formula follows; bare variable otherwise.
      size_t save = lx.pos;
      lx.ident();
      if (starts_formula()) return f_dia(alpha.all(), primary());
      lx.pos = save;
      lx.skip();
    }
    lx.ident();
    return f_var(id);
  }

  bool starts_formula() {
    char c = lx.peek();
    if (c == '(' || c == '[' || c == '<') return true;
    auto id = lx.peek_ident();
    if (id.empty()) return false;
    return id != "U" && id != "R";
  }

  // f U g / f R g, right associative, between modal prefix and "&".
  FormulaPtr until_release() {
    auto l = primary();
    if (lx.try_keyword("U")) {
      auto r = until_release();
      // f U g = min Y.(g | (f & <*>Y))
      std::string y = fresh_var();
      return f_min(y, f_or(r, f_and(l, f_dia(alpha.all(), f_var(y)))));
    }
    if (lx.try_keyword("R")) {
      auto r = until_release();
      // f R g = max Y.((g & f) | (g & <*>Y))
      std::string y = fresh_var();
      return f_max(y, f_or(f_and(r, l), f_and(r, f_dia(alpha.all(), f_var(y)))));
    }
    return l;
  }

  FormulaPtr conjunction() {
    auto l = until_release();
    while (lx.try_punct("&")) {
      auto r = until_release();
      l = f_and(l, r);
    }
    return l;
  }

  FormulaPtr disjunction() {
    auto l = conjunction();
    while (!lx.eof() && lx.peek() == '|' &&
           (lx.pos + 1 >= lx.text.size() || lx.text[lx.pos + 1] != '|')) {
      lx.expect_punct("|");
      auto r = conjunction();
      l = f_or(l, r);
    }
    return l;
  }

  FormulaPtr parse() {
    auto f = disjunction();
    if (!lx.eof()) lx.error("unexpected trailing input");
    return uniquify_binders(f);
  }
};

// ---------------------------------------------------------------------------
// Monitors

struct MonitorParser {
  Lexer lx;
  const Alphabet &alpha;

  MonitorParser(const std::string &t, const Alphabet &a) : lx(t), alpha(a) {}

  MonitorPtr primary() {
    if (lx.try_punct("(")) {
      auto m = par_or();
      lx.expect_punct(")");
      return m;
    }
    std::string id = lx.peek_ident();
    if (id.empty()) lx.error("expected monitor");
    if (id == "yes") {
      lx.ident();
      return m_yes();
    }
    if (id == "no") {
      lx.ident();
      return m_no();
    }
    if (id == "end") {
      lx.ident();
      return m_end();
    }
    if (id == "rec") {
      lx.ident();
      std::string x = lx.ident();
      lx.expect_punct(".");
      return m_rec(x, par_or());
    }
    if (id == "tau") lx.error("'tau' cannot appear in a monitor");
    lx.ident();
    if (lx.try_punct(".")) {
      Action a = alpha.require(id);
      return m_act(a, primary());
    }
    return m_var(id);
  }

  MonitorPtr sum() {
    auto l = primary();
    while (lx.try_punct("+")) l = m_sum(l, primary());
    return l;
  }

  MonitorPtr par_and() {
    auto l = sum();
    while (lx.try_punct("&&")) l = m_conj(l, sum());
    return l;
  }

  MonitorPtr par_or() {
    auto l = par_and();
    while (lx.try_punct("||")) l = m_disj(l, par_and());
    return l;
  }

  MonitorPtr parse() {
    auto m = par_or();
    if (!lx.eof()) lx.error("unexpected trailing input");
    return uniquify_binders(m);
  }
};

// ---------------------------------------------------------------------------
// Processes

struct ProcessParser {
  Lexer lx;
  const Alphabet &alpha;

  ProcessParser(const std::string &t, const Alphabet &a) : lx(t), alpha(a) {}

  ProcessPtr primary() {
    if (lx.try_punct("(")) {
      auto p = sum();
      lx.expect_punct(")");
      return p;
    }
    std::string id = lx.peek_ident();
    if (id.empty()) lx.error("expected process");
    if (id == "nil") {
      lx.ident();
      return p_nil();
    }
    if (id == "rec") {
      lx.ident();
      std::string x = lx.ident();
      lx.expect_punct(".");
      return p_rec(x, sum());
    }
    lx.ident();
    if (lx.try_punct(".")) {
      Action a = id == "tau" ? kTau : alpha.require(id);
      return p_act(a, primary());
    }
    if (id == "tau") lx.error("'tau' must prefix a process");
    return p_var(id);
  }

  ProcessPtr sum() {
    auto l = primary();
    while (lx.try_punct("+")) l = p_sum(l, primary());
    return l;
  }

  ProcessPtr parse() {
    auto p = sum();
    if (!lx.eof()) lx.error("unexpected trailing input");
    return uniquify_binders(p);
  }
};

// ---------------------------------------------------------------------------
// Traces

struct TraceParser {
  Lexer lx;
  const Alphabet &alpha;

  TraceParser(const std::string &t, const Alphabet &a) : lx(t), alpha(a) {}

  // Single-character actions may be run together ("ab" over {a,b} reads as
  // a.b); anything else must be dot-separated.
  void append_actions(std::vector<Action> &out) {
    std::string id = lx.ident();
    if (id == "tau") lx.error("'tau' cannot appear in a trace");
    if (alpha.index_of(id) >= 0) {
      out.push_back(alpha.index_of(id));
      return;
    }
    std::vector<Action> split;
    for (char c : id) {
      int i = alpha.index_of(std::string(1, c));
      if (i < 0) fail(Errc::input, "action '" + id + "' not in alphabet");
      split.push_back(i);
    }
    out.insert(out.end(), split.begin(), split.end());
  }

  std::vector<Action> action_seq(const char stop) {
    std::vector<Action> out;
    if (lx.eof() || lx.peek() == stop || lx.peek() == '(') return out;
    append_actions(out);
    while (lx.try_punct(".")) append_actions(out);
    return out;
  }

  TraceSpec parse() {
    TraceSpec t;
    t.prefix = action_seq('(');
    if (lx.try_punct("(")) {
      t.cycle = action_seq(')');
      if (t.cycle.empty()) lx.error("lasso cycle must be non-empty");
      lx.expect_punct(")");
    }
    if (!lx.eof()) lx.error("unexpected trailing input");
    return t;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string &text, const Alphabet &alpha) {
  return FormulaParser(text, alpha).parse();
}

MonitorPtr parse_monitor(const std::string &text, const Alphabet &alpha) {
  return MonitorParser(text, alpha).parse();
}

ProcessPtr parse_process(const std::string &text, const Alphabet &alpha) {
  return ProcessParser(text, alpha).parse();
}

TraceSpec parse_trace(const std::string &text, const Alphabet &alpha) {
  return TraceParser(text, alpha).parse();
}

}  // namespace recmon
