// Recursive-descent parser for the .scpl concrete syntax.
//
//   program  := { fundef }
//   fundef   := NAME "{" { sentence } "}"
//   sentence := expr? "=" expr? ";"
//   term     := 'chars' | NAME | s.IDENT | e.IDENT | "(" expr ")" | "<" NAME expr ">"
//
// Comments are /* ... */; whitespace separates terms. The first function
// defined is the entry. Well-formedness checks (call-free patterns, one
// e-variable per bracket level, no repeated e-variables, body variables bound
// by the pattern, defined call targets) run after parsing.
#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "lang.hpp"

namespace scp {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                             std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : src_(text) {}

    Program parse_program() {
        Program p;
        skip_ws();
        while (!eof()) {
            p.functions.push_back(parse_fundef());
            skip_ws();
        }
        if (p.functions.empty()) fail("empty program");
        p.entry = p.functions.front().name;
        validate(p);
        return p;
    }

    Expression parse_single_expression() {
        skip_ws();
        Expression e = parse_expr();
        skip_ws();
        if (!eof()) fail("trailing input after expression");
        return e;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                advance();
                advance();
                while (!eof() && !(peek() == '*' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/'))
                    advance();
                if (eof()) fail("unterminated comment");
                advance();
                advance();
            } else {
                break;
            }
        }
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string parse_name() {
        if (eof() || !std::isupper(static_cast<unsigned char>(peek())))
            fail("expected a name (uppercase start)");
        std::string out;
        while (!eof() && name_char(peek())) out += advance();
        return out;
    }

    std::string parse_var_ident() {
        if (eof() || !name_char(peek())) fail("expected a variable name after 's.'/'e.'");
        std::string out;
        while (!eof() && name_char(peek())) out += advance();
        return out;
    }

    Function parse_fundef() {
        Function f;
        f.name = parse_name();
        skip_ws();
        expect('{');
        skip_ws();
        while (!eof() && peek() != '}') {
            f.sentences.push_back(parse_sentence());
            skip_ws();
        }
        expect('}');
        return f;
    }

    Sentence parse_sentence() {
        Sentence s;
        s.pattern = parse_expr();
        skip_ws();
        expect('=');
        s.body = parse_expr();
        skip_ws();
        expect(';');
        return s;
    }

    Expression parse_expr() {
        Expression e;
        for (;;) {
            skip_ws();
            if (eof()) break;
            char c = peek();
            if (c == '\'') {
                advance();
                bool any = false;
                while (!eof() && peek() != '\'') {
                    e.push_back(sym(chr(advance())));
                    any = true;
                }
                if (eof()) fail("unterminated character literal");
                advance();
                if (!any) fail("empty character literal");
            } else if (c == '(') {
                advance();
                Expression body = parse_expr();
                skip_ws();
                expect(')');
                e.push_back(bracket(std::move(body)));
            } else if (c == '<') {
                advance();
                skip_ws();
                std::string fn = parse_name();
                Expression arg = parse_expr();
                skip_ws();
                expect('>');
                e.push_back(call(std::move(fn), std::move(arg)));
            } else if ((c == 's' || c == 'e') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
                advance();
                advance();
                std::string n = parse_var_ident();
                e.push_back(c == 's' ? svar(std::move(n)) : evar(std::move(n)));
            } else if (std::isupper(static_cast<unsigned char>(c))) {
                e.push_back(id(parse_name()));
            } else {
                break;   // '=', ';', ')', '>', '}' end the expression
            }
        }
        return e;
    }

    // --- well-formedness ---------------------------------------------------

    void check_pattern(const Expression& pat, std::set<std::string>& evars,
                       const std::string& where) {
        int level_evars = 0;
        for (const Term& t : pat) {
            switch (t.kind) {
            case Term::Kind::Call:
                fail("call in pattern in " + where);
            case Term::Kind::EVar:
                if (!evars.insert(t.name).second)
                    fail("repeated e-variable e." + t.name + " in " + where);
                if (++level_evars > 1)
                    fail("more than one open e-variable per level in " + where);
                break;
            case Term::Kind::Bracket:
                check_pattern(t.items, evars, where);
                break;
            default:
                break;
            }
        }
    }

    void check_body(const Program& p, const Expression& body,
                    const std::vector<VarRef>& bound, const std::string& where) {
        for (const VarRef& v : free_vars(body)) {
            bool ok = false;
            for (const auto& b : bound)
                if (b == v) ok = true;
            if (!ok)
                fail(std::string(v.is_evar ? "e." : "s.") + v.name +
                     " in body is not bound by the pattern in " + where);
        }
        check_calls(p, body, where);
    }

    void check_calls(const Program& p, const Expression& e, const std::string& where) {
        for (const Term& t : e) {
            if (t.kind == Term::Kind::Call) {
                if (!p.find(t.name)) fail("undefined function " + t.name + " called in " + where);
                check_calls(p, t.items, where);
            } else if (t.kind == Term::Kind::Bracket) {
                check_calls(p, t.items, where);
            }
        }
    }

    void validate(const Program& p) {
        std::set<std::string> names;
        for (const Function& f : p.functions) {
            if (!names.insert(f.name).second) fail("duplicate function " + f.name);
        }
        for (const Function& f : p.functions) {
            int k = 0;
            for (const Sentence& s : f.sentences) {
                ++k;
                std::string where = f.name + " sentence " + std::to_string(k);
                std::set<std::string> evars;
                check_pattern(s.pattern, evars, where);
                check_body(p, s.body, free_vars(s.pattern), where);
            }
        }
    }
};

}   // namespace detail

inline Program parse_program(std::string_view text) {
    return detail::Parser(text).parse_program();
}

inline Expression parse_expression(std::string_view text) {
    return detail::Parser(text).parse_single_expression();
}

}   // namespace scp
