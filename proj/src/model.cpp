#include "tatl/model.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace tatl {

namespace {

struct Token {
    enum Kind { Ident, Number, Punct, End } kind;
    std::string text;
    int64_t num = 0;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& s) : s_(s) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(tok_.line, tok_.col, msg);
    }

  private:
    void advance() {
        skip_ws();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= s_.size()) {
            tok_.kind = Token::End;
            tok_.text = "<eof>";
            return;
        }
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                    s_[pos_] == '_'))
                bump();
            tok_.kind = Token::Ident;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isdigit(static_cast<unsigned char>(s_[pos_])))
                bump();
            tok_.kind = Token::Number;
            tok_.text = s_.substr(start, pos_ - start);
            tok_.num = std::stoll(tok_.text);
            return;
        }
        // Multi-char operators first.
        for (const char* op : {"<=", ">=", "==", "->", "&&"}) {
            if (s_.compare(pos_, 2, op) == 0) {
                tok_.kind = Token::Punct;
                tok_.text = op;
                bump();
                bump();
                return;
            }
        }
        tok_.kind = Token::Punct;
        tok_.text = std::string(1, c);
        bump();
    }

    void skip_ws() {
        for (;;) {
            while (pos_ < s_.size() &&
                   std::isspace(static_cast<unsigned char>(s_[pos_])))
                bump();
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && s_[pos_ + 1] == '/') {
                while (pos_ < s_.size() && s_[pos_] != '\n') bump();
                continue;
            }
            break;
        }
    }

    void bump() {
        if (s_[pos_] == '\n') { ++line_; col_ = 1; }
        else ++col_;
        ++pos_;
    }

    const std::string& s_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class ModelParser {
  public:
    explicit ModelParser(const std::string& text) : lx_(text) {}

    Tmg parse() {
        bool seen_system = false;
        while (lx_.peek().kind != Token::End) {
            std::string kw = expect_ident();
            if (kw == "system") {
                if (seen_system) lx_.fail("duplicate system block");
                seen_system = true;
                parse_system();
            } else if (kw == "location") {
                parse_location();
            } else if (kw == "edge") {
                parse_edge();
            } else {
                lx_.fail("expected 'system', 'location' or 'edge'");
            }
        }
        if (!seen_system) lx_.fail("missing system block");
        finish();
        return m_;
    }

  private:
    void parse_system() {
        expect("{");
        while (!accept("}")) {
            std::string kw = expect_ident();
            expect(":");
            if (kw == "clocks") {
                do {
                    std::string n = expect_ident();
                    if (m_.find_clock(n) >= 0) lx_.fail("duplicate clock " + n);
                    m_.clocks.push_back(n);
                } while (accept(","));
            } else if (kw == "players") {
                do {
                    std::string n = expect_ident();
                    if (m_.find_player(n) >= 0)
                        lx_.fail("duplicate player " + n);
                    m_.players.push_back(n);
                } while (accept(","));
            } else if (kw == "ceiling") {
                if (lx_.peek().kind != Token::Number)
                    lx_.fail("expected ceiling constant");
                m_.ceiling = lx_.next().num;
                have_ceiling_ = true;
            } else {
                lx_.fail("unknown system field '" + kw + "'");
            }
            expect(";");
        }
    }

    void parse_location() {
        Location loc;
        loc.name = expect_ident();
        if (m_.find_location(loc.name) >= 0)
            lx_.fail("duplicate location " + loc.name);
        expect("{");
        while (!accept("}")) {
            std::string kw = expect_ident();
            if (kw == "init") {
                loc.initial = true;
                expect(";");
            } else if (kw == "invariant") {
                expect(":");
                loc.invariant = parse_conjunction(/*invariant=*/true);
                expect(";");
            } else if (kw == "labels") {
                expect(":");
                do { loc.labels.push_back(expect_ident()); } while (accept(","));
                expect(";");
            } else {
                lx_.fail("unknown location field '" + kw + "'");
            }
        }
        m_.locations.push_back(std::move(loc));
    }

    void parse_edge() {
        Edge e;
        e.action = expect_ident();
        for (const Edge& other : m_.edges)
            if (other.action == e.action)
                lx_.fail("duplicate action " + e.action);
        expect(":");
        e.src = expect_location();
        expect("->");
        e.dst = expect_location();
        e.player = -1;
        expect("{");
        while (!accept("}")) {
            std::string kw = expect_ident();
            expect(":");
            if (kw == "player") {
                std::string n = expect_ident();
                e.player = m_.find_player(n);
                if (e.player < 0) lx_.fail("unknown player " + n);
            } else if (kw == "guard") {
                e.guard = parse_conjunction(/*invariant=*/false);
            } else if (kw == "reset") {
                do {
                    std::string n = expect_ident();
                    int c = m_.find_clock(n);
                    if (c < 0) lx_.fail("unknown clock " + n);
                    e.resets.push_back(c);
                } while (accept(","));
            } else {
                lx_.fail("unknown edge field '" + kw + "'");
            }
            expect(";");
        }
        if (e.player < 0) lx_.fail("edge " + e.action + " has no player");
        m_.edges.push_back(std::move(e));
    }

    std::vector<ClockCmp> parse_conjunction(bool invariant) {
        std::vector<ClockCmp> out;
        do {
            ClockCmp c;
            std::string n = expect_ident();
            c.clock = m_.find_clock(n);
            if (c.clock < 0) lx_.fail("unknown clock " + n);
            std::string op = lx_.peek().text;
            if (op == "<") c.op = CmpOp::Lt;
            else if (op == "<=") c.op = CmpOp::Le;
            else if (op == "==") c.op = CmpOp::Eq;
            else if (op == ">=") c.op = CmpOp::Ge;
            else if (op == ">") c.op = CmpOp::Gt;
            else lx_.fail("expected comparison operator");
            if (invariant && c.op == CmpOp::Lt)
                lx_.fail("strict upper bounds are not allowed in invariants");
            lx_.next();
            if (lx_.peek().kind != Token::Number)
                lx_.fail("expected integer constant");
            c.k = lx_.next().num;
            out.push_back(c);
        } while (accept("&&"));
        return out;
    }

    void finish() {
        if (!have_ceiling_) lx_.fail("system block lacks a ceiling");
        if (m_.players.empty()) lx_.fail("no players declared");
        int inits = 0;
        for (size_t i = 0; i < m_.locations.size(); ++i)
            if (m_.locations[i].initial) {
                ++inits;
                m_.init_location = static_cast<int>(i);
            }
        if (inits != 1)
            lx_.fail("expected exactly one init location, found " +
                     std::to_string(inits));
        for (const Location& l : m_.locations)
            for (const ClockCmp& c : l.invariant)
                if (c.k > m_.ceiling)
                    lx_.fail("invariant constant exceeds ceiling in " + l.name);
        for (const Edge& e : m_.edges)
            for (const ClockCmp& c : e.guard)
                if (c.k > m_.ceiling)
                    lx_.fail("guard constant exceeds ceiling on " + e.action);
    }

    int expect_location() {
        std::string n = expect_ident();
        int l = m_.find_location(n);
        if (l < 0) lx_.fail("unknown location " + n);
        return l;
    }

    std::string expect_ident() {
        if (lx_.peek().kind != Token::Ident)
            lx_.fail("expected identifier, got '" + lx_.peek().text + "'");
        return lx_.next().text;
    }

    void expect(const std::string& p) {
        if (lx_.peek().kind != Token::Punct || lx_.peek().text != p)
            lx_.fail("expected '" + p + "', got '" + lx_.peek().text + "'");
        lx_.next();
    }

    bool accept(const std::string& p) {
        if (lx_.peek().kind == Token::Punct && lx_.peek().text == p) {
            lx_.next();
            return true;
        }
        return false;
    }

    Lexer lx_;
    Tmg m_;
    bool have_ceiling_ = false;
};

std::string op_str(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "==";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

std::string cmps_str(const Tmg& m, const std::vector<ClockCmp>& cs) {
    std::ostringstream os;
    for (size_t i = 0; i < cs.size(); ++i) {
        if (i) os << " && ";
        os << m.clocks[cs[i].clock] << " " << op_str(cs[i].op) << " " << cs[i].k;
    }
    return os.str();
}

} // namespace

Tmg parse_model(const std::string& text) {
    return ModelParser(text).parse();
}

std::string print_model(const Tmg& m) {
    std::ostringstream os;
    os << "system {\n  clocks:";
    for (size_t i = 0; i < m.clocks.size(); ++i)
        os << (i ? ", " : " ") << m.clocks[i];
    os << ";\n  players:";
    for (size_t i = 0; i < m.players.size(); ++i)
        os << (i ? ", " : " ") << m.players[i];
    os << ";\n  ceiling: " << m.ceiling << ";\n}\n";
    for (const Location& l : m.locations) {
        os << "location " << l.name << " {";
        if (!l.invariant.empty())
            os << " invariant: " << cmps_str(m, l.invariant) << ";";
        if (l.initial) os << " init;";
        if (!l.labels.empty()) {
            os << " labels:";
            for (size_t i = 0; i < l.labels.size(); ++i)
                os << (i ? ", " : " ") << l.labels[i];
            os << ";";
        }
        os << " }\n";
    }
    for (const Edge& e : m.edges) {
        os << "edge " << e.action << ": " << m.locations[e.src].name << " -> "
           << m.locations[e.dst].name << " { player: "
           << m.players[e.player] << ";";
        if (!e.guard.empty()) os << " guard: " << cmps_str(m, e.guard) << ";";
        if (!e.resets.empty()) {
            os << " reset:";
            for (size_t i = 0; i < e.resets.size(); ++i)
                os << (i ? ", " : " ") << m.clocks[e.resets[i]];
            os << ";";
        }
        os << " }\n";
    }
    return os.str();
}

ConstraintConjunction to_constraints(const std::vector<ClockCmp>& cmps) {
    ConstraintConjunction out;
    for (const ClockCmp& c : cmps) {
        switch (c.op) {
            case CmpOp::Lt: out.push_back(atom_lt(c.clock, c.k)); break;
            case CmpOp::Le: out.push_back(atom_le(c.clock, c.k)); break;
            case CmpOp::Ge: out.push_back(atom_ge(c.clock, c.k)); break;
            case CmpOp::Gt: out.push_back(atom_gt(c.clock, c.k)); break;
            case CmpOp::Eq:
                out.push_back(atom_le(c.clock, c.k));
                out.push_back(atom_ge(c.clock, c.k));
                break;
        }
    }
    return out;
}

namespace {

bool cmp_holds(CmpOp op, Rational v, int64_t k) {
    Rational r(k);
    switch (op) {
        case CmpOp::Lt: return v < r;
        case CmpOp::Le: return v <= r;
        case CmpOp::Eq: return v == r;
        case CmpOp::Ge: return v >= r;
        case CmpOp::Gt: return v > r;
    }
    return false;
}

} // namespace

bool invariant_holds(const Tmg& m, const ConcreteState& s) {
    for (const ClockCmp& c : m.locations[s.loc].invariant)
        if (!cmp_holds(c.op, s.val[c.clock], c.k)) return false;
    for (size_t i = 0; i < m.clocks.size(); ++i)
        if (s.val[i] > Rational(m.ceiling)) return false;
    return true;
}

bool guard_holds(const Tmg& m, int edge, const ConcreteState& s) {
    for (const ClockCmp& c : m.edges[edge].guard)
        if (!cmp_holds(c.op, s.val[c.clock], c.k)) return false;
    return true;
}

bool action_enabled(const Tmg& m, int edge, const ConcreteState& s) {
    if (m.edges[edge].src != s.loc) return false;
    if (!guard_holds(m, edge, s)) return false;
    ConcreteState t = s;
    t.loc = m.edges[edge].dst;
    for (int c : m.edges[edge].resets) t.val[c] = Rational(0);
    return invariant_holds(m, t);
}

std::optional<ConcreteState> discrete_step(const Tmg& m, int edge,
                                           const ConcreteState& s) {
    if (!action_enabled(m, edge, s)) return std::nullopt;
    ConcreteState t = s;
    t.loc = m.edges[edge].dst;
    for (int c : m.edges[edge].resets) t.val[c] = Rational(0);
    return t;
}

std::optional<ConcreteState> delay_step(const Tmg& m, const ConcreteState& s,
                                        Rational delta) {
    ConcreteState t = s;
    for (Rational& v : t.val) v = v + delta;
    // Invariants are convex and delays monotone, so checking the endpoint
    // suffices for the upper bounds; lower bounds held already at s.
    if (!invariant_holds(m, t)) return std::nullopt;
    return t;
}

std::vector<int> enabled_actions(const Tmg& m, const ConcreteState& s) {
    std::vector<int> out;
    for (size_t e = 0; e < m.edges.size(); ++e)
        if (action_enabled(m, static_cast<int>(e), s))
            out.push_back(static_cast<int>(e));
    return out;
}

} // namespace tatl
