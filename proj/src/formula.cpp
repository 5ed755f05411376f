#include "tatl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace tatl {

namespace {

FormulaPtr mk(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

std::shared_ptr<Formula> mut(FKind k) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    return f;
}

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

} // namespace

FormulaPtr f_true() { return mk(FKind::True); }
FormulaPtr f_false() { return mk(FKind::False); }

FormulaPtr f_atom(const std::string& label) {
    auto f = mut(FKind::Atom);
    f->name = label;
    return f;
}

FormulaPtr f_cmp(std::vector<NamedCmp> cmps) {
    auto f = mut(FKind::Constraint);
    f->cmps = std::move(cmps);
    return f;
}

FormulaPtr f_not(FormulaPtr a) {
    auto f = mut(FKind::Not);
    f->children = {std::move(a)};
    return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
    auto f = mut(FKind::And);
    f->children = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
    auto f = mut(FKind::Or);
    f->children = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr f_next(std::vector<int> coalition, FormulaPtr a) {
    auto f = mut(FKind::Next);
    f->coalition = std::move(coalition);
    f->children = {std::move(a)};
    return f;
}

FormulaPtr f_forced_until(std::vector<int> coalition, FormulaPtr a, FormulaPtr b) {
    auto f = mut(FKind::ForcedUntil);
    f->coalition = std::move(coalition);
    f->children = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr f_possible_until(std::vector<int> coalition, FormulaPtr a, FormulaPtr b) {
    auto f = mut(FKind::PossibleUntil);
    f->coalition = std::move(coalition);
    f->children = {std::move(a), std::move(b)};
    return f;
}

FormulaPtr f_freeze(const std::string& clock, FormulaPtr a) {
    auto f = mut(FKind::Freeze);
    f->name = clock;
    f->children = {std::move(a)};
    return f;
}

std::string Formula::str() const {
    std::ostringstream os;
    auto coal = [&](bool poss) {
        os << (poss ? "[[" : "<<");
        for (size_t i = 0; i < coalition.size(); ++i)
            os << (i ? "," : "") << "p" << coalition[i];
        os << (poss ? "]]" : ">>");
    };
    switch (kind) {
        case FKind::True: os << "true"; break;
        case FKind::False: os << "false"; break;
        case FKind::Atom: os << name; break;
        case FKind::Constraint:
            for (size_t i = 0; i < cmps.size(); ++i) {
                if (i) os << " && ";
                os << cmps[i].clock << " " << op_str(cmps[i].op) << " "
                   << cmps[i].k;
            }
            break;
        case FKind::Not: os << "!(" << children[0]->str() << ")"; break;
        case FKind::And:
            os << "(" << children[0]->str() << " && " << children[1]->str()
               << ")";
            break;
        case FKind::Or:
            os << "(" << children[0]->str() << " || " << children[1]->str()
               << ")";
            break;
        case FKind::Next:
            coal(false);
            os << " X (" << children[0]->str() << ")";
            break;
        case FKind::ForcedUntil:
            coal(false);
            os << " (" << children[0]->str() << " U " << children[1]->str()
               << ")";
            break;
        case FKind::PossibleUntil:
            coal(true);
            os << " (" << children[0]->str() << " U " << children[1]->str()
               << ")";
            break;
        case FKind::Freeze:
            os << name << ".(" << children[0]->str() << ")";
            break;
        case FKind::SugarEventually:
            coal(possible);
            os << " F";
            if (has_bound) os << op_str(bound_op) << bound_k;
            os << " (" << children[0]->str() << ")";
            break;
        case FKind::SugarGlobally:
            coal(possible);
            os << " G (" << children[0]->str() << ")";
            break;
        case FKind::SugarUntil:
            coal(possible);
            os << " (" << children[0]->str() << " U" << op_str(bound_op)
               << bound_k << " " << children[1]->str() << ")";
            break;
        case FKind::SugarNext:
            coal(true);
            os << " X (" << children[0]->str() << ")";
            break;
    }
    return os.str();
}

namespace {

// Query-line tokenizer; positions are within the line.
class QLexer {
  public:
    QLexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

    struct Tok {
        enum Kind { Ident, Number, Punct, End } kind;
        std::string text;
        int64_t num = 0;
        int col;
    };

    const Tok& peek() const { return tok_; }
    Tok next() {
        Tok t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, tok_.col, msg);
    }

  private:
    void advance() {
        while (pos_ < s_.size() &&
               std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        tok_.col = static_cast<int>(pos_) + 1;
        if (pos_ >= s_.size()) {
            tok_.kind = Tok::End;
            tok_.text = "<eol>";
            return;
        }
        char c = s_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                    s_[pos_] == '_'))
                ++pos_;
            tok_.kind = Tok::Ident;
            tok_.text = s_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            tok_.kind = Tok::Number;
            tok_.text = s_.substr(start, pos_ - start);
            tok_.num = std::stoll(tok_.text);
            return;
        }
        for (const char* op :
             {"<<", ">>", "[[", "]]", "||", "&&", "<=", ">=", "==", "=>"}) {
            if (s_.compare(pos_, 2, op) == 0) {
                tok_.kind = Tok::Punct;
                tok_.text = op;
                pos_ += 2;
                return;
            }
        }
        tok_.kind = Tok::Punct;
        tok_.text = std::string(1, c);
        ++pos_;
    }

    std::string s_;
    size_t pos_ = 0;
    int line_;
    Tok tok_;
};

class FormulaParser {
  public:
    FormulaParser(const std::string& text, const Tmg& model, int line)
        : lx_(text, line), m_(model) {}

    FormulaPtr parse_toplevel() {
        FormulaPtr f = parse_or();
        return f;
    }

    QLexer& lexer() { return lx_; }

  private:
    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (accept("||")) f = f_or(f, parse_and());
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_unary();
        while (accept("&&")) f = f_and(f, parse_unary());
        return f;
    }

    FormulaPtr parse_unary() {
        if (accept("!")) return f_not(parse_unary());
        return parse_atom();
    }

    FormulaPtr parse_atom() {
        const auto& t = lx_.peek();
        if (t.kind == QLexer::Tok::Punct && t.text == "(") {
            lx_.next();
            FormulaPtr f = parse_or();
            expect(")");
            return f;
        }
        if (t.kind == QLexer::Tok::Punct && (t.text == "<<" || t.text == "[[")) {
            bool possible = t.text == "[[";
            lx_.next();
            std::vector<int> coal = parse_coalition(possible);
            return parse_path(std::move(coal), possible);
        }
        if (t.kind == QLexer::Tok::Ident) {
            std::string id = lx_.next().text;
            if (id == "true") return f_true();
            if (id == "false") return f_false();
            if (accept(".")) {
                // Freeze quantifier; the bound clock shadows nothing since
                // clock names are a separate namespace per formula.
                scope_.push_back(id);
                FormulaPtr body = parse_or();
                scope_.pop_back();
                return f_freeze(id, body);
            }
            if (is_cmp_op()) {
                CmpOp op = parse_cmp_op();
                if (lx_.peek().kind != QLexer::Tok::Number)
                    lx_.fail("expected integer constant");
                int64_t k = lx_.next().num;
                if (m_.find_clock(id) < 0 && !in_scope(id))
                    lx_.fail("unknown clock " + id);
                return f_cmp({{id, op, k}});
            }
            return f_atom(id);
        }
        lx_.fail("expected formula, got '" + t.text + "'");
    }

    std::vector<int> parse_coalition(bool possible) {
        std::vector<int> coal;
        const std::string close = possible ? "]]" : ">>";
        if (!accept(close)) {
            do {
                std::string n = expect_ident();
                int p = m_.find_player(n);
                if (p < 0) lx_.fail("unknown player " + n);
                coal.push_back(p);
            } while (accept(","));
            expect(close);
        }
        std::sort(coal.begin(), coal.end());
        coal.erase(std::unique(coal.begin(), coal.end()), coal.end());
        return coal;
    }

    FormulaPtr parse_path(std::vector<int> coal, bool possible) {
        if (accept_ident("X")) {
            FormulaPtr body = parse_unary();
            if (!possible) return f_next(std::move(coal), body);
            auto f = mut(FKind::SugarNext);
            f->coalition = std::move(coal);
            f->possible = true;
            f->children = {body};
            return f;
        }
        if (accept_ident("F")) {
            auto f = mut(FKind::SugarEventually);
            f->coalition = std::move(coal);
            f->possible = possible;
            if (is_cmp_op()) {
                f->bound_op = parse_bound_op();
                if (lx_.peek().kind != QLexer::Tok::Number)
                    lx_.fail("expected integer bound");
                f->bound_k = lx_.next().num;
                f->has_bound = true;
            }
            f->children = {parse_unary()};
            return f;
        }
        if (accept_ident("G")) {
            auto f = mut(FKind::SugarGlobally);
            f->coalition = std::move(coal);
            f->possible = possible;
            f->children = {parse_unary()};
            return f;
        }
        if (accept("(")) {
            FormulaPtr a = parse_or();
            if (!accept_ident("U")) lx_.fail("expected 'U'");
            bool bounded = is_cmp_op();
            CmpOp bop = CmpOp::Lt;
            int64_t bk = 0;
            if (bounded) {
                bop = parse_bound_op();
                if (lx_.peek().kind != QLexer::Tok::Number)
                    lx_.fail("expected integer bound");
                bk = lx_.next().num;
            }
            FormulaPtr b = parse_or();
            expect(")");
            if (!bounded) {
                return possible ? f_possible_until(std::move(coal), a, b)
                                : f_forced_until(std::move(coal), a, b);
            }
            auto f = mut(FKind::SugarUntil);
            f->coalition = std::move(coal);
            f->possible = possible;
            f->bound_op = bop;
            f->bound_k = bk;
            f->has_bound = true;
            f->children = {a, b};
            return f;
        }
        lx_.fail("expected path operator after coalition");
    }

    bool is_cmp_op() const {
        const auto& t = lx_.peek();
        return t.kind == QLexer::Tok::Punct &&
               (t.text == "<" || t.text == "<=" || t.text == "==" ||
                t.text == ">=" || t.text == ">");
    }

    CmpOp parse_cmp_op() {
        std::string op = lx_.next().text;
        if (op == "<") return CmpOp::Lt;
        if (op == "<=") return CmpOp::Le;
        if (op == "==") return CmpOp::Eq;
        if (op == ">=") return CmpOp::Ge;
        return CmpOp::Gt;
    }

    CmpOp parse_bound_op() {
        std::string op = lx_.peek().text;
        if (op != "<" && op != "<=")
            lx_.fail("time bounds admit only < and <=");
        return parse_cmp_op();
    }

    bool in_scope(const std::string& n) const {
        for (const auto& s : scope_)
            if (s == n) return true;
        return false;
    }

    std::string expect_ident() {
        if (lx_.peek().kind != QLexer::Tok::Ident)
            lx_.fail("expected identifier");
        return lx_.next().text;
    }

    bool accept_ident(const std::string& id) {
        if (lx_.peek().kind == QLexer::Tok::Ident && lx_.peek().text == id) {
            lx_.next();
            return true;
        }
        return false;
    }

    void expect(const std::string& p) {
        if (lx_.peek().kind != QLexer::Tok::Punct || lx_.peek().text != p)
            lx_.fail("expected '" + p + "', got '" + lx_.peek().text + "'");
        lx_.next();
    }

    bool accept(const std::string& p) {
        if (lx_.peek().kind == QLexer::Tok::Punct && lx_.peek().text == p) {
            lx_.next();
            return true;
        }
        return false;
    }

    QLexer lx_;
    const Tmg& m_;
    std::vector<std::string> scope_;
};

} // namespace

FormulaPtr parse_formula(const std::string& text, const Tmg& model) {
    FormulaParser p(text, model, 1);
    FormulaPtr f = p.parse_toplevel();
    if (p.lexer().peek().kind != QLexer::Tok::End)
        p.lexer().fail("trailing input after formula");
    return f;
}

std::vector<Query> parse_queries(const std::string& text, const Tmg& model) {
    std::vector<Query> out;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        auto comment = line.find("//");
        if (comment != std::string::npos) line.resize(comment);
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(ln, 1, "expected 'name: formula'");
        std::string name = line.substr(0, colon);
        // Trim.
        while (!name.empty() && std::isspace((unsigned char)name.front()))
            name.erase(name.begin());
        while (!name.empty() && std::isspace((unsigned char)name.back()))
            name.pop_back();
        if (name.empty()) throw ParseError(ln, 1, "empty query name");

        Query q;
        q.name = name;
        FormulaParser p(line.substr(colon + 1), model, ln);
        q.formula = p.parse_toplevel();
        auto& lx = p.lexer();
        if (lx.peek().kind == QLexer::Tok::Punct && lx.peek().text == "=>") {
            lx.next();
            if (lx.peek().kind != QLexer::Tok::Ident ||
                (lx.peek().text != "true" && lx.peek().text != "false"))
                lx.fail("expected true or false after '=>'");
            q.expected = lx.next().text == "true";
        }
        if (lx.peek().kind != QLexer::Tok::End)
            lx.fail("trailing input after query");
        out.push_back(std::move(q));
    }
    return out;
}

namespace {

class Desugarer {
  public:
    FormulaPtr run(const FormulaPtr& f) { return walk(f); }

  private:
    FormulaPtr walk(const FormulaPtr& f) {
        switch (f->kind) {
            case FKind::SugarNext:
                // [[S]] X f is the dual of <<S>> X !f.
                return f_not(f_next(f->coalition, f_not(walk(f->children[0]))));
            case FKind::SugarEventually: {
                FormulaPtr body = f->has_bound ? bounded(f, f_true(), f)
                                               : nullptr;
                if (f->has_bound) return body;
                FormulaPtr inner = walk(f->children[0]);
                return f->possible
                           ? f_possible_until(f->coalition, f_true(), inner)
                           : f_forced_until(f->coalition, f_true(), inner);
            }
            case FKind::SugarGlobally: {
                FormulaPtr inner = walk(f->children[0]);
                FormulaPtr until =
                    f->possible
                        ? f_forced_until(f->coalition, f_true(), f_not(inner))
                        : f_possible_until(f->coalition, f_true(), f_not(inner));
                return f_not(until);
            }
            case FKind::SugarUntil:
                return bounded(f, walk(f->children[0]), f);
            default: {
                if (f->children.empty()) return f;
                auto g = std::make_shared<Formula>(*f);
                for (auto& c : g->children) c = walk(c);
                return g;
            }
        }
    }

    // z.<<S>>((phi1 && z < k) U phi2) with a fresh z.
    FormulaPtr bounded(const FormulaPtr& f, FormulaPtr phi1,
                       const FormulaPtr& orig) {
        std::string z = "_z" + std::to_string(fresh_++);
        FormulaPtr guard = f_cmp({{z, f->bound_op, f->bound_k}});
        FormulaPtr left = phi1->kind == FKind::True ? guard : f_and(phi1, guard);
        FormulaPtr phi2 = walk(orig->children.back());
        FormulaPtr until = f->possible
                               ? f_possible_until(f->coalition, left, phi2)
                               : f_forced_until(f->coalition, left, phi2);
        return f_freeze(z, until);
    }

    int fresh_ = 0;
};

FormulaPtr negate(const FormulaPtr& f);

FormulaPtr push(const FormulaPtr& f) {
    if (f->kind == FKind::Not) return negate(push(f->children[0]));
    if (f->children.empty()) return f;
    auto g = std::make_shared<Formula>(*f);
    for (auto& c : g->children) c = push(c);
    return g;
}

// f is already negation-pushed; produce pushed !f.
FormulaPtr negate(const FormulaPtr& f) {
    switch (f->kind) {
        case FKind::True: return f_false();
        case FKind::False: return f_true();
        case FKind::Not: return f->children[0];
        case FKind::And: return f_or(negate(f->children[0]), negate(f->children[1]));
        case FKind::Or: return f_and(negate(f->children[0]), negate(f->children[1]));
        case FKind::Constraint: {
            if (f->cmps.size() == 1) {
                NamedCmp c = f->cmps[0];
                switch (c.op) {
                    case CmpOp::Lt: c.op = CmpOp::Ge; return f_cmp({c});
                    case CmpOp::Le: c.op = CmpOp::Gt; return f_cmp({c});
                    case CmpOp::Ge: c.op = CmpOp::Lt; return f_cmp({c});
                    case CmpOp::Gt: c.op = CmpOp::Le; return f_cmp({c});
                    case CmpOp::Eq: {
                        NamedCmp lo = c, hi = c;
                        lo.op = CmpOp::Lt;
                        hi.op = CmpOp::Gt;
                        return f_or(f_cmp({lo}), f_cmp({hi}));
                    }
                }
                return f_not(f);
            }
            // De Morgan over the conjuncts.
            FormulaPtr out = nullptr;
            for (const NamedCmp& c : f->cmps) {
                FormulaPtr piece = negate(f_cmp({c}));
                out = out ? f_or(out, piece) : piece;
            }
            return out;
        }
        default:
            // Atoms, untils, next and freeze keep the negation in front.
            return f_not(f);
    }
}

} // namespace

FormulaPtr desugar(FormulaPtr f) {
    return Desugarer().run(f);
}

FormulaPtr push_negations(FormulaPtr f) {
    return push(f);
}

int negation_depth(const FormulaPtr& f) {
    int best = 0;
    for (const auto& c : f->children) best = std::max(best, negation_depth(c));
    return best + (f->kind == FKind::Not ? 1 : 0);
}

std::vector<std::pair<std::string, int64_t>> formula_clocks(const FormulaPtr& f,
                                                            const Tmg& model) {
    std::vector<std::pair<std::string, int64_t>> out;
    auto find = [&](const std::string& n) -> int {
        for (size_t i = 0; i < out.size(); ++i)
            if (out[i].first == n) return static_cast<int>(i);
        return -1;
    };
    // Pre-order walk: freeze clocks appear in first-occurrence order.
    std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& g) {
        if (g->kind == FKind::Freeze && model.find_clock(g->name) < 0 &&
            find(g->name) < 0)
            out.emplace_back(g->name, 0);
        if (g->kind == FKind::Constraint)
            for (const NamedCmp& c : g->cmps) {
                if (model.find_clock(c.clock) >= 0) continue;
                int i = find(c.clock);
                if (i < 0) {
                    // Compared before its binder shows up in pre-order;
                    // register it now to keep the order deterministic.
                    out.emplace_back(c.clock, c.k);
                } else {
                    out[i].second = std::max(out[i].second, c.k);
                }
            }
        for (const auto& c : g->children) walk(c);
    };
    walk(f);
    return out;
}

FramePtr build_frame(const Tmg& model, const FormulaPtr& f) {
    std::vector<std::string> names = model.clocks;
    std::vector<int64_t> consts(names.size(), model.ceiling);
    for (const auto& [n, k] : formula_clocks(f, model)) {
        names.push_back(n);
        consts.push_back(k);
    }
    return std::make_shared<const ClockFrame>(std::move(names), model.clocks.size(),
                                              std::move(consts));
}

} // namespace tatl
