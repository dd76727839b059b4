/*
 *  Copyright (C) 2026  The cauto authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */

#include <cctype>
#include <sstream>

#include "cauto/parse.hpp"

namespace cauto {

namespace {

class Lexer {
public:
    explicit Lexer(std::istream& in) : in(in) { advance(); }

    int line() const { return curLine; }
    int column() const { return curCol; }
    int peek() const { return cur; }
    bool eof() const { return cur == EOF; }

    void advance() {
        cur = in.get();
        if (cur == '\n') {
            curLine++;
            curCol = 0;
        } else {
            curCol++;
        }
    }

    void skipWhitespaceAndComments() {
        for (;;) {
            while (!eof() && std::isspace(cur)) advance();
            if (cur == '%') {
                while (!eof() && cur != '\n') advance();
                continue;
            }
            return;
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(curLine, curCol, msg);
    }

private:
    std::istream& in;
    int cur = EOF;
    int curLine = 1;
    int curCol = 0;
};

bool isNameStart(int c) { return std::isalpha(c) || c == '_'; }
bool isNameChar(int c) { return std::isalnum(c) || c == '_'; }

// `name` or `name(arg,...,arg)` with balanced parentheses; the whole token
// is kept as an opaque string.
std::string readAtomToken(Lexer& lx) {
    std::string tok;
    if (!isNameStart(lx.peek())) lx.fail("expected atom");
    while (isNameChar(lx.peek())) {
        tok.push_back(static_cast<char>(lx.peek()));
        lx.advance();
    }
    if (lx.peek() == '(') {
        int depth = 0;
        do {
            int c = lx.peek();
            if (c == EOF) lx.fail("unterminated atom arguments");
            if (std::isspace(c)) lx.fail("whitespace inside atom arguments");
            if (c == '(') depth++;
            if (c == ')') depth--;
            tok.push_back(static_cast<char>(c));
            lx.advance();
        } while (depth > 0);
    }
    return tok;
}

}  // namespace

Program parseAsp(std::istream& in) {
    Program p;
    Lexer lx(in);

    for (;;) {
        lx.skipWhitespaceAndComments();
        if (lx.eof()) break;

        Rule r;
        bool hasHead = false;
        if (lx.peek() != ':') {
            std::string head = readAtomToken(lx);
            if (head == "not") lx.fail("'not' is a reserved keyword");
            r.head = p.atoms.intern(head);
            hasHead = true;
            lx.skipWhitespaceAndComments();
        }

        if (lx.peek() == '.') {
            if (!hasHead) lx.fail("expected ':-' or atom");
            lx.advance();  // fact
            p.rules.push_back(std::move(r));
            continue;
        }

        if (lx.peek() != ':') lx.fail("expected ':-' or '.'");
        lx.advance();
        if (lx.peek() != '-') lx.fail("expected ':-'");
        lx.advance();

        lx.skipWhitespaceAndComments();
        if (lx.peek() == '.') {  // bodyless constraint, immediate incoherence
            lx.advance();
            p.rules.push_back(std::move(r));
            continue;
        }

        for (;;) {
            lx.skipWhitespaceAndComments();
            bool negated = false;
            std::string tok = readAtomToken(lx);
            if (tok == "not") {
                negated = true;
                lx.skipWhitespaceAndComments();
                tok = readAtomToken(lx);
                if (tok == "not") lx.fail("nested negation 'not not' is unsupported");
            }
            Atom a = p.atoms.intern(tok);
            (negated ? r.negBody : r.posBody).push_back(a);

            lx.skipWhitespaceAndComments();
            if (lx.peek() == ',') {
                lx.advance();
                continue;
            }
            if (lx.peek() == '.') {
                lx.advance();
                break;
            }
            lx.fail("expected ',' or '.'");
        }
        r.posBody = normalizedAtomList(std::move(r.posBody));
        r.negBody = normalizedAtomList(std::move(r.negBody));
        p.rules.push_back(std::move(r));
    }

    p.query = p.allAtoms();
    return p;
}

Program parseAsp(const std::string& text) {
    std::istringstream in(text);
    return parseAsp(in);
}

AtomSet parseQuery(std::istream& in, Program& p) {
    AtomSet q;
    std::string lineText;
    int lineNo = 0;
    while (std::getline(in, lineText)) {
        lineNo++;
        size_t begin = lineText.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (lineText[begin] == '%') continue;
        size_t end = lineText.find_last_not_of(" \t\r");
        std::string name = lineText.substr(begin, end - begin + 1);
        if (name == kBotName)
            throw ParseError(lineNo, static_cast<int>(begin) + 1,
                             "the false-atom cannot be queried");
        q.insert(p.atoms.intern(name));
    }
    return q;
}

AtomSet parseQuery(const std::string& text, Program& p) {
    std::istringstream in(text);
    return parseQuery(in, p);
}

SourceFormat detectFormat(const std::string& text) {
    std::istringstream in(text);
    std::string lineText;
    while (std::getline(in, lineText)) {
        size_t begin = lineText.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        if (lineText[begin] == 'c' &&
            (begin + 1 == lineText.size() || std::isspace(lineText[begin + 1])))
            continue;  // DIMACS comment; harmless to skip for ASP inputs too
        if (lineText.compare(begin, 5, "p cnf") == 0) return SourceFormat::DimacsCnf;
        return SourceFormat::AspText;
    }
    return SourceFormat::AspText;
}

}  // namespace cauto
